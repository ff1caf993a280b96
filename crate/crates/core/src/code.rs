//! Explicit codes from B_h-sequences.
//!
//! Words of a fixed weight are bucketed by their image under `phi`; every
//! bucket has minimum distance at least `2h + 2`, and the largest one holds
//! at least `C(n, w) / |G|` words.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::Polynomial;
use crate::bose_chowla::{BhSequence, GroupElement};
use crate::bounds::binomial;
use crate::{Budget, Error, Result};

/// A word of `F_2^n`, packed 64 bits per block.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BinaryWord {
    pub fn zeros(len: usize) -> Self {
        BinaryWord {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        let mut w = Self::zeros(len);
        for &i in support {
            if i >= len {
                return Err(Error::invalid(format!("position {i} out of range for length {len}")));
            }
            w.set(i, true);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.blocks[i / 64] |= mask;
        } else {
            self.blocks[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let b = self.get(i);
        self.set(i, !b);
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Positions holding a one, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Hamming distance; both words must have the same length.
    pub fn distance(&self, other: &BinaryWord) -> usize {
        assert_eq!(self.len, other.len, "words of different lengths");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i, true),
                _ => return Err(Error::invalid(format!("unexpected character {ch:?} in binary word"))),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

#[derive(Debug, Clone)]
pub struct CodeInstance {
    pub n: usize,
    pub words: Vec<BinaryWord>,
    pub claimed_d: usize,
    pub claimed_w: Option<usize>,
    pub verified: bool,
    /// The `phi` image shared by all words, for single-bucket codes.
    pub bucket_element: Option<GroupElement>,
}

impl CodeInstance {
    pub fn new(n: usize, words: Vec<BinaryWord>, claimed_d: usize, claimed_w: Option<usize>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::invalid("a code needs at least one word"));
        }
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::invalid(format!("word {w} does not have length {n}")));
        }
        Ok(CodeInstance {
            n,
            words,
            claimed_d,
            claimed_w,
            verified: false,
            bucket_element: None,
        })
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Header line `# n=<n> d=<d> w=<w|mixed> size=<k>` followed by one word per line.
    pub fn export(&self) -> String {
        let w = self.claimed_w.map_or_else(|| "mixed".to_string(), |w| w.to_string());
        let mut out = format!("# n={} d={} w={} size={}\n", self.n, self.claimed_d, w, self.size());
        for word in &self.words {
            out.push_str(&word.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the export format; the result is unverified.
    pub fn parse_export(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::invalid("empty code file"))?;
        let fields: HashMap<&str, &str> = header
            .strip_prefix('#')
            .ok_or_else(|| Error::invalid("code file must start with a '#' header"))?
            .split_whitespace()
            .filter_map(|kv| kv.split_once('='))
            .collect();
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::invalid(format!("header lacks {k}=")))
        };
        let parse = |k: &str| -> Result<usize> {
            get(k)?
                .parse()
                .map_err(|_| Error::invalid(format!("header field {k} is not an integer")))
        };
        let n = parse("n")?;
        let d = parse("d")?;
        let w = match get("w")? {
            "mixed" => None,
            _ => Some(parse("w")?),
        };
        let words = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse())
            .collect::<Result<Vec<BinaryWord>>>()?;
        if words.len() != parse("size")? {
            return Err(Error::invalid("header size does not match the number of words"));
        }
        Self::new(n, words, d, w)
    }
}

/// `ceil(C(n, w) / order)`: the size the largest bucket is guaranteed to reach.
pub fn pigeonhole_floor(n: u64, w: u64, order: &BigUint) -> Result<BigUint> {
    Ok(binomial(n, w)?.div_ceil(order))
}

/// Visits every weight-`w` support of `{0, .., n-1}` in colexicographic order
/// together with the product of the sequence elements on it.
fn for_each_weight_class(seq: &BhSequence, w: usize, mut visit: impl FnMut(&[usize], &Polynomial)) {
    fn descend(
        seq: &BhSequence,
        remaining: usize,
        upper: usize,
        prefix: &Polynomial,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &Polynomial),
    ) {
        if remaining == 0 {
            visit(chosen, prefix);
            return;
        }
        for top in remaining - 1..upper {
            let next = seq.group().mul_reps(prefix, seq.elements()[top].rep());
            chosen.push(top);
            descend(seq, remaining - 1, top, &next, chosen, visit);
            chosen.pop();
        }
    }
    let one = Polynomial::one(seq.group().field());
    let mut chosen = Vec::with_capacity(w);
    descend(seq, w, seq.len(), &one, &mut chosen, &mut visit);
}

fn check_weight(seq: &BhSequence, w: usize, budget: Budget) -> Result<()> {
    let n = seq.len();
    if w > n {
        return Err(Error::invalid(format!("weight {w} exceeds length {n}")));
    }
    budget.check(binomial(n as u64, w as u64)?.to_u128().unwrap_or(u128::MAX))
}

fn word_of(n: usize, support: &[usize]) -> BinaryWord {
    BinaryWord::from_support(n, support).expect("positions are in range")
}

/// Every nonempty bucket `phi^-1(g)` among the weight-`w` words, ordered by
/// the canonical coefficient tuple of `g`.
pub fn phi_buckets(seq: &BhSequence, w: usize, budget: Budget) -> Result<Vec<(GroupElement, Vec<BinaryWord>)>> {
    check_weight(seq, w, budget)?;
    let n = seq.len();
    let mut buckets: HashMap<Vec<u32>, (Polynomial, Vec<BinaryWord>)> = HashMap::new();
    for_each_weight_class(seq, w, |support, rep| {
        buckets
            .entry(seq.group().key_of(rep))
            .or_insert_with(|| (rep.clone(), Vec::new()))
            .1
            .push(word_of(n, support));
    });
    let mut out: Vec<_> = buckets.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter()
        .map(|(_, (rep, words))| Ok((seq.group().element(&rep)?, words)))
        .collect()
}

/// The largest `phi` bucket among weight-`w` words, as a code of minimum
/// distance `2h + 2`. Ties go to the lexicographically least coefficient tuple.
pub fn build_constant_weight_code(seq: &BhSequence, w: usize, budget: Budget) -> Result<CodeInstance> {
    check_weight(seq, w, budget)?;
    let n = seq.len();
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for_each_weight_class(seq, w, |_, rep| {
        *counts.entry(seq.group().key_of(rep)).or_default() += 1
    });
    let (winner, _) = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("at least one word of each weight <= n");

    let mut words = Vec::new();
    let mut element = None;
    for_each_weight_class(seq, w, |support, rep| {
        if seq.group().key_of(rep) == winner {
            if element.is_none() {
                element = Some(rep.clone());
            }
            words.push(word_of(n, support));
        }
    });
    let mut code = CodeInstance::new(n, words, 2 * seq.h() as usize + 2, Some(w))?;
    code.bucket_element = element.map(|rep| seq.group().element(&rep)).transpose()?;
    Ok(code)
}

/// Union of the largest buckets over all weights `w = u (mod 2h + 2)`.
pub fn build_union_code(seq: &BhSequence, u: usize, budget: Budget) -> Result<CodeInstance> {
    let n = seq.len();
    let modulus = 2 * seq.h() as usize + 2;
    let mut words = Vec::new();
    for w in (u % modulus..=n).step_by(modulus) {
        words.extend(build_constant_weight_code(seq, w, budget)?.words);
    }
    if words.is_empty() {
        return Err(Error::invalid(format!(
            "no weight in 0..={n} is congruent to {u} mod {modulus}"
        )));
    }
    CodeInstance::new(n, words, modulus, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    /// Fewer than two words.
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

fn check_pairs(code: &CodeInstance, budget: Budget) -> Result<()> {
    let k = code.words.len() as u128;
    budget.check(k * k.saturating_sub(1) / 2)
}

/// Exact minimum pairwise Hamming distance.
pub fn min_distance(code: &CodeInstance, budget: Budget) -> Result<Distance> {
    check_pairs(code, budget)?;
    Ok(closest_pair(&code.words).map_or(Distance::Infinite, |(_, _, d)| Distance::Finite(d)))
}

fn closest_pair(words: &[BinaryWord]) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = words[i].distance(&words[j]);
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Word at `index` does not have the claimed weight.
    Weight { index: usize, weight: usize },
    /// Words at `first` and `second` are closer than the claimed distance.
    Distance {
        first: usize,
        second: usize,
        distance: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Weight { index, weight } => write!(f, "word {index} has weight {weight}"),
            Violation::Distance {
                first,
                second,
                distance,
            } => {
                write!(f, "words {first} and {second} are at distance {distance}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub min_distance: Distance,
    pub violation: Option<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the weight claim and the distance claim exhaustively and records
/// the outcome in `code.verified`.
pub fn verify_code(code: &mut CodeInstance, budget: Budget) -> Result<VerifyReport> {
    check_pairs(code, budget)?;
    code.verified = false;
    let weight_violation = code.claimed_w.and_then(|w| {
        code.words
            .iter()
            .position(|word| word.weight() != w)
            .map(|index| Violation::Weight {
                index,
                weight: code.words[index].weight(),
            })
    });
    let closest = closest_pair(&code.words);
    let min_distance = closest.map_or(Distance::Infinite, |(_, _, d)| Distance::Finite(d));
    let violation = weight_violation.or_else(|| {
        closest
            .filter(|&(_, _, d)| d < code.claimed_d)
            .map(|(first, second, distance)| Violation::Distance {
                first,
                second,
                distance,
            })
    });
    code.verified = violation.is_none();
    Ok(VerifyReport {
        min_distance,
        violation,
    })
}
