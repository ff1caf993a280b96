use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use bhcodes_core::algebra::{GaloisField, PrimePower};
use bhcodes_core::bose_chowla::{build_sequence_a, build_sequence_b, plan_sequence, verify_bh, GroupMode};
use bhcodes_core::bounds::{a_lower, log2_fixed, BoundRecord, ClassMethod, UPolicy};
use bhcodes_core::code::{build_constant_weight_code, build_union_code, pigeonhole_floor, verify_code};
use bhcodes_core::mu::{mu_brute_force, mu_case, mu_closed_form, MuResult};
use bhcodes_core::table::{self, bundled_fixture, compare_fixture, Fixture};
use bhcodes_core::{Budget, Error};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

/// Lower bounds and explicit constructions for binary codes from B_h-sequences.
#[derive(Parser)]
#[command(name = "bhcodes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bounds on log2 A(n, d) over a grid of lengths and distances.
    Table {
        #[arg(long, default_value_t = 1)]
        nmin: u64,
        #[arg(long, default_value_t = 512)]
        nmax: u64,
        #[arg(long, default_value_t = 5)]
        dmin: u64,
        #[arg(long, default_value_t = 29)]
        dmax: u64,
        #[arg(long, value_enum, default_value_t = Policy::Best)]
        policy: Policy,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Fixture to annotate rows with: a TSV path or `bundled`.
        #[arg(long)]
        fixture: Option<String>,
        /// Allow lengths above 512.
        #[arg(long)]
        force: bool,
        /// Prefix the output with a generation timestamp.
        #[arg(long)]
        timestamp: bool,
    },
    /// Lower bound on A(n, d).
    Bound {
        n: u64,
        d: u64,
        #[arg(long, value_enum, default_value_t = Policy::Best)]
        policy: Policy,
        /// Print the bound for every weight class that was summed.
        #[arg(long)]
        explain: bool,
    },
    /// Build and verify a constant-weight code (or a union over a residue class).
    Construct {
        n: u64,
        h: u64,
        /// Weight of the code; required unless --union is given.
        w: Option<u64>,
        /// Take every weight congruent to this residue mod 2h + 2.
        #[arg(long, conflicts_with = "w")]
        union: Option<u64>,
        /// Write the code in export format to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a B_h-sequence over GF(q) and check it exhaustively.
    VerifyBh {
        q: u64,
        h: u64,
        /// Sequence length; in mode b this counts the identity element.
        n: u64,
        /// Construction to use; by default mode a, or mode b where mode a has no valid modulus.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// The minimal unit count mu(q, n, h).
    Mu {
        q: u64,
        n: u64,
        h: u64,
        /// Also search exhaustively and require agreement.
        #[arg(long)]
        brute: bool,
    },
    /// Recompute a fixture table under both residue policies.
    Compare {
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Fixed,
    Best,
}

impl From<Policy> for UPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Fixed => UPolicy::Heuristic,
            Policy::Best => UPolicy::Best,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    A,
    B,
}

enum Failure {
    Usage(String),
    Verification(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table {
            nmin,
            nmax,
            dmin,
            dmax,
            policy,
            format,
            fixture,
            force,
            timestamp,
        } => table_cmd(nmin, nmax, dmin, dmax, policy.into(), format, fixture, force, timestamp),
        Command::Bound { n, d, policy, explain } => bound_cmd(n, d, policy.into(), explain),
        Command::Construct { n, h, w, union, out } => construct_cmd(n, h, w, union, out),
        Command::VerifyBh { q, h, n, mode } => verify_bh_cmd(q, h, n, mode),
        Command::Mu { q, n, h, brute } => mu_cmd(q, n, h, brute),
        Command::Compare { fixture } => compare_cmd(fixture),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn budget() -> Result<Budget, Failure> {
    Ok(Budget::from_env()?)
}

fn load_fixture(source: &str) -> Result<Fixture, Failure> {
    Ok(if source == "bundled" {
        bundled_fixture()
    } else {
        Fixture::load(source.as_ref())?
    })
}

#[allow(clippy::too_many_arguments)]
fn table_cmd(
    nmin: u64,
    nmax: u64,
    dmin: u64,
    dmax: u64,
    policy: UPolicy,
    format: Format,
    fixture: Option<String>,
    force: bool,
    timestamp: bool,
) -> CmdResult {
    if nmax > 512 && !force {
        return Err(Failure::Usage(format!(
            "--nmax {nmax} is above 512; pass --force to allow it"
        )));
    }
    let fixture = fixture.as_deref().map(load_fixture).transpose()?;
    let records = table::generate_table(nmin, nmax, dmin, dmax, policy)?;
    let sep = match format {
        Format::Tsv => "\t",
        Format::Csv => ",",
    };
    let mut out = String::new();
    if timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        writeln!(out, "# generated at unix time {secs}").unwrap();
    }
    let mut header = vec![
        "n",
        "d",
        "new",
        "policy",
        "u",
        "c",
        "route",
        "q",
        "bc_classes",
        "gv_classes",
    ];
    if fixture.is_some() {
        header.extend(["old", "ratio"]);
    }
    writeln!(out, "{}", header.join(sep)).unwrap();
    for r in &records {
        let (c, route, q) = match &r.c_used {
            Some(c) => (c.value.to_string(), c.route.to_string(), c.q_used.q().to_string()),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let mut fields = vec![
            r.n.to_string(),
            r.d.to_string(),
            r.log2.clone(),
            r.policy.to_string(),
            r.u_used.to_string(),
            c,
            route,
            q,
            r.count_by_method(ClassMethod::BoseChowla).to_string(),
            r.count_by_method(ClassMethod::GilbertVarshamov).to_string(),
        ];
        if let Some(f) = &fixture {
            match f.find(r.n, r.d) {
                Some(row) => {
                    let new = table::record_log2(r);
                    fields.push(row.old_log2.to_string());
                    fields.push(format!("{:.4}", (new.to_f64() - row.old_log2.to_f64()).exp2()));
                }
                None => fields.extend(["-".to_string(), "-".to_string()]),
            }
        }
        writeln!(out, "{}", fields.join(sep)).unwrap();
    }
    Ok(out)
}

fn describe(record: &BoundRecord, out: &mut String) {
    writeln!(out, "n\t{}", record.n).unwrap();
    writeln!(out, "d\t{}", record.d).unwrap();
    writeln!(out, "log2_lower_bound\t{}", record.log2).unwrap();
    writeln!(out, "lower_bound\t{}", record.lower_bound).unwrap();
    writeln!(out, "solved_as\tA({}, {})", record.length, 2 * record.h + 2).unwrap();
    writeln!(out, "policy\t{}", record.policy).unwrap();
    writeln!(out, "u\t{}", record.u_used).unwrap();
    match &record.c_used {
        Some(c) => {
            writeln!(out, "c\t{}\troute={}\tq={}", c.value, c.route, c.q_used.q()).unwrap();
            if let Some((route, value, q)) = &c.alternative {
                writeln!(out, "c_alternative\t{value}\troute={route}\tq={}", q.q()).unwrap();
            }
        }
        None => writeln!(out, "c\t-\tdistance exceeds length").unwrap(),
    }
}

fn bound_cmd(n: u64, d: u64, policy: UPolicy, explain: bool) -> CmdResult {
    let record = a_lower(n, d, policy)?;
    let mut out = String::new();
    describe(&record, &mut out);
    if explain {
        writeln!(out, "w\tlog2_bc\tlog2_gv\tmethod").unwrap();
        for b in &record.per_weight {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                b.w,
                log2_fixed(&b.bc_value)?,
                log2_fixed(&b.gv_value)?,
                b.method
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn construct_cmd(n: u64, h: u64, w: Option<u64>, union: Option<u64>, out_path: Option<PathBuf>) -> CmdResult {
    let budget = budget()?;
    let plan = plan_sequence(n, h)?;
    let seq = plan.build()?;
    let (mut code, floor) = match (w, union) {
        (Some(w), None) => {
            if w > n {
                return Err(Failure::Usage(format!("weight {w} exceeds length {n}")));
            }
            (
                build_constant_weight_code(&seq, w as usize, budget)?,
                pigeonhole_floor(n, w, &plan.group_order)?,
            )
        }
        (None, Some(u)) => {
            let code = build_union_code(&seq, u as usize, budget)?;
            let mut floor = BigUint::ZERO;
            for w in (u..=n).step_by(2 * h as usize + 2) {
                floor += pigeonhole_floor(n, w, &plan.group_order)?;
            }
            (code, floor)
        }
        _ => return Err(Failure::Usage("give either a weight or --union".into())),
    };
    let report = verify_code(&mut code, budget)?;
    let mode = match plan.mode {
        GroupMode::FullUnitGroup => "a",
        GroupMode::ModScalars => "b",
    };
    let mut out = String::new();
    writeln!(out, "group\tGF({}) mode {} order {}", plan.q, mode, plan.group_order).unwrap();
    writeln!(out, "modulus\t{}", seq.modulus()).unwrap();
    writeln!(out, "size\t{}", code.size()).unwrap();
    writeln!(out, "claimed_distance\t{}", code.claimed_d).unwrap();
    writeln!(out, "min_distance\t{}", report.min_distance).unwrap();
    writeln!(out, "pigeonhole_floor\t{floor}").unwrap();
    if let Some(path) = out_path {
        std::fs::write(&path, code.export())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        writeln!(out, "written\t{}", path.display()).unwrap();
    }
    match report.violation {
        None => {
            writeln!(out, "verified\tyes").unwrap();
            Ok(out)
        }
        Some(v) => {
            writeln!(out, "verified\tno ({v})").unwrap();
            Err(Failure::Verification(out))
        }
    }
}

fn verify_bh_cmd(q: u64, h: u64, n: u64, mode: Option<Mode>) -> CmdResult {
    let budget = budget()?;
    let field = GaloisField::new(q)?;
    let mode = mode.unwrap_or(if matches!(mu_case(q, n, h), Err(Error::Impossible { .. })) {
        Mode::B
    } else {
        Mode::A
    });
    let seq = match mode {
        Mode::A => build_sequence_a(&field, h, n as usize)?,
        Mode::B => {
            if n == 0 {
                return Err(Failure::Usage(
                    "mode b sequences contain the identity, so n >= 1".into(),
                ));
            }
            build_sequence_b(&field, h, n as usize - 1)?
        }
    };
    let report = verify_bh(&seq, budget)?;
    let mut out = String::new();
    let mode = match mode {
        Mode::A => "a",
        Mode::B => "b",
    };
    writeln!(out, "mode\t{mode}").unwrap();
    writeln!(out, "modulus\t{}", seq.modulus()).unwrap();
    writeln!(out, "group_order\t{}", seq.group_order()).unwrap();
    writeln!(out, "elements\t{}", seq.len()).unwrap();
    writeln!(out, "multisets_checked\t{}", report.checked).unwrap();
    match report.collision {
        None => {
            writeln!(out, "result\tpass").unwrap();
            Ok(out)
        }
        Some((a, b)) => {
            writeln!(out, "result\tfail: multisets {a:?} and {b:?} have equal products").unwrap();
            Err(Failure::Verification(out))
        }
    }
}

fn mu_line(label: &str, r: &MuResult) -> String {
    let witness = r.witness.as_ref().map_or_else(String::new, |p| format!("\tP = {p}"));
    format!("{label}\t{}\tcase {}{witness}\n", r.value, r.case)
}

fn mu_cmd(q: u64, n: u64, h: u64, brute: bool) -> CmdResult {
    let pq = PrimePower::new(q)?;
    let mut out = String::new();
    match mu_case(q, n, h) {
        Err(Error::Impossible { .. }) => {
            writeln!(
                out,
                "closed_form\tIMPOSSIBLE: every linear P has a root among the {n} avoided points"
            )
            .unwrap();
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
        Ok(_) => {}
    }
    let closed = mu_closed_form(pq, n, h)?;
    out.push_str(&mu_line("closed_form", &closed));
    if brute {
        let field = GaloisField::from_prime_power(pq)?;
        let points: Vec<_> = field.elements().into_iter().take(n as usize).collect();
        let found = mu_brute_force(&field, &points, h, budget()?)?;
        out.push_str(&mu_line("brute_force", &found));
        if found.value != closed.value {
            writeln!(out, "result\tdisagree").unwrap();
            return Err(Failure::Verification(out));
        }
        writeln!(out, "result\tagree").unwrap();
    }
    Ok(out)
}

fn compare_cmd(path: Option<PathBuf>) -> CmdResult {
    let fixture = match path {
        Some(p) => Fixture::load(&p)?,
        None => bundled_fixture(),
    };
    for e in &fixture.errors {
        eprintln!("malformed line {}: {} ({})", e.line, e.content, e.reason);
    }
    let mut out = String::new();
    writeln!(out, "n\td\tnew\tfixed\tbest\twinner\tratio_ok\tnote").unwrap();
    let (mut matched, mut fixed, mut best, mut exceeding, mut ratio_bad) = (0, 0, 0, 0, 0);
    let results = compare_fixture(&fixture);
    for (row, result) in fixture.rows.iter().zip(results) {
        let cmp = result?;
        let ratio_ok = row.ratio_consistent();
        let mut note = String::new();
        if cmp.exceeds() {
            exceeding += 1;
            note = "exceeds".into();
        }
        if let Some(f) = cmp.fallback {
            note = format!("unceiled {f}");
        }
        matched += cmp.matches() as usize;
        fixed += cmp.heuristic_matches() as usize;
        best += cmp.best_matches() as usize;
        ratio_bad += (!ratio_ok) as usize;
        let winner = cmp.winner();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            row.n,
            row.d,
            row.new_log2,
            cmp.heuristic,
            cmp.best,
            winner,
            if ratio_ok { "yes" } else { "no" },
            note
        )
        .unwrap();
    }
    let total = fixture.rows.len();
    writeln!(out, "# rows {total}, matched {matched}, fixed {fixed}, best {best}, exceeding {exceeding}, ratio mismatches {ratio_bad}").unwrap();
    if matched == total && ratio_bad == 0 {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
