//! The table of improved bounds: fixture parsing, regeneration and comparison.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{a_lower, log2_fixed_ratio, union_bound_rational, BoundRecord, UPolicy};
use crate::{Error, Result};

/// The bundled table, one row per improved `(n, d)` cell.
pub const BUNDLED_FIXTURE: &str = include_str!("../data/improved_bounds.tsv");

/// SHA-256 of [`BUNDLED_FIXTURE`], hex encoded.
pub const BUNDLED_FIXTURE_SHA256: &str = "b5aae8943f6b810dda8b6d260df6db052bfacf2588824b838b9c51c6c313a79a";

pub const FIXTURE_HEADER: [&str; 5] = ["n", "d", "new", "old", "ratio"];

/// Agreement window for recomputed log2 values, in units of 0.0001.
pub const TOLERANCE: i64 = 20;

/// A decimal with exactly four fractional digits, stored in units of 0.0001.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decimal4(pub i64);

impl Decimal4 {
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 1e4
    }
}

impl FromStr for Decimal4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("not a 4-decimal number: {s:?}"));
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || frac.len() > 4 || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: i64 = int.parse().map_err(|_| bad())?;
        let frac: i64 = format!("{frac:0<4}").parse().map_err(|_| bad())?;
        let v = int
            .checked_mul(10_000)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Ok(Decimal4(if negative { -v } else { v }))
    }
}

impl fmt::Display for Decimal4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:04}", a / 10_000, a % 10_000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixtureRow {
    pub n: u64,
    pub d: u64,
    pub new_log2: Decimal4,
    pub old_log2: Decimal4,
    pub ratio: Decimal4,
}

impl FixtureRow {
    /// `|ratio - 2^(new - old)|`.
    pub fn ratio_deviation(&self) -> f64 {
        let expected = (self.new_log2.to_f64() - self.old_log2.to_f64()).exp2();
        (self.ratio.to_f64() - expected).abs()
    }

    pub fn ratio_consistent(&self) -> bool {
        self.ratio_deviation() <= 0.0005 + 1e-9
    }
}

impl FromStr for FixtureRow {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(Error::invalid(format!(
                "expected 5 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let int = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::invalid(format!("not an integer: {s:?}")))
        };
        Ok(FixtureRow {
            n: int(fields[0])?,
            d: int(fields[1])?,
            new_log2: fields[2].parse()?,
            old_log2: fields[3].parse()?,
            ratio: fields[4].parse()?,
        })
    }
}

/// A line of a fixture file that could not be read as a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureError {
    /// 1-based line number.
    pub line: usize,
    pub content: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fixture {
    pub rows: Vec<FixtureRow>,
    pub errors: Vec<FixtureError>,
}

impl Fixture {
    /// Parses TSV text. Bad rows are collected in `errors`; the parse fails
    /// only when there are data lines and none of them is readable.
    pub fn parse(text: &str) -> Result<Fixture> {
        let mut fixture = Fixture::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            if fields == FIXTURE_HEADER {
                continue;
            }
            match line.parse() {
                Ok(row) => fixture.rows.push(row),
                Err(e) => fixture.errors.push(FixtureError {
                    line: i + 1,
                    content: line.to_string(),
                    reason: e.to_string(),
                }),
            }
        }
        if fixture.rows.is_empty() && !fixture.errors.is_empty() {
            return Err(Error::invalid(format!(
                "no readable rows ({} malformed lines)",
                fixture.errors.len()
            )));
        }
        Ok(fixture)
    }

    pub fn load(path: &Path) -> Result<Fixture> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Fixture::parse(&text)
    }

    pub fn find(&self, n: u64, d: u64) -> Option<&FixtureRow> {
        self.rows.iter().find(|r| r.n == n && r.d == d)
    }
}

pub fn bundled_fixture() -> Fixture {
    Fixture::parse(BUNDLED_FIXTURE).expect("bundled fixture parses")
}

/// A recomputed row set against one fixture row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowComparison {
    pub row: FixtureRow,
    pub heuristic: Decimal4,
    pub best: Decimal4,
    pub heuristic_u: u64,
    pub best_u: u64,
    /// Log2 of the un-ceiled rational bound under the heuristic residue,
    /// filled in only when neither policy matches.
    pub fallback: Option<Decimal4>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Both,
    Heuristic,
    Best,
    Neither,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Both => "both",
            Winner::Heuristic => "fixed",
            Winner::Best => "best",
            Winner::Neither => "none",
        })
    }
}

impl RowComparison {
    pub fn heuristic_matches(&self) -> bool {
        (self.heuristic.0 - self.row.new_log2.0).abs() <= TOLERANCE
    }

    pub fn best_matches(&self) -> bool {
        (self.best.0 - self.row.new_log2.0).abs() <= TOLERANCE
    }

    pub fn matches(&self) -> bool {
        self.heuristic_matches() || self.best_matches()
    }

    pub fn winner(&self) -> Winner {
        match (self.heuristic_matches(), self.best_matches()) {
            (true, true) => Winner::Both,
            (true, false) => Winner::Heuristic,
            (false, true) => Winner::Best,
            (false, false) => Winner::Neither,
        }
    }

    /// The best-residue bound is strictly larger than the published value.
    pub fn exceeds(&self) -> bool {
        self.best > self.row.new_log2
    }
}

pub fn record_log2(record: &BoundRecord) -> Decimal4 {
    record.log2.parse().expect("log2 strings have four decimals")
}

pub fn compare_row(row: &FixtureRow) -> Result<RowComparison> {
    let heuristic = a_lower(row.n, row.d, UPolicy::Heuristic)?;
    let best = a_lower(row.n, row.d, UPolicy::Best)?;
    let mut cmp = RowComparison {
        row: *row,
        heuristic: record_log2(&heuristic),
        best: record_log2(&best),
        heuristic_u: heuristic.u_used,
        best_u: best.u_used,
        fallback: None,
    };
    if !cmp.matches() {
        if let Some(c) = &heuristic.c_used {
            let exact = union_bound_rational(heuristic.length, heuristic.h, heuristic.u_used, c)?;
            cmp.fallback = Some(log2_fixed_ratio(exact.numer(), exact.denom())?.parse()?);
        }
    }
    Ok(cmp)
}

/// Compares every row in parallel; results keep the fixture's order.
pub fn compare_fixture(fixture: &Fixture) -> Vec<Result<RowComparison>> {
    fixture.rows.par_iter().map(compare_row).collect()
}

/// The `(n, d)` cells of a table request, ordered by distance then length.
pub fn table_cells(nmin: u64, nmax: u64, dmin: u64, dmax: u64) -> Vec<(u64, u64)> {
    (dmin..=dmax).flat_map(|d| (nmin..=nmax).map(move |n| (n, d))).collect()
}

pub fn generate_table(nmin: u64, nmax: u64, dmin: u64, dmax: u64, policy: UPolicy) -> Result<Vec<BoundRecord>> {
    if nmin == 0 {
        return Err(Error::invalid("lengths start at 1"));
    }
    if dmin < 3 {
        return Err(Error::invalid(format!("distances start at 3, got {dmin}")));
    }
    table_cells(nmin, nmax, dmin, dmax)
        .par_iter()
        .map(|&(n, d)| a_lower(n, d, policy))
        .collect()
}
