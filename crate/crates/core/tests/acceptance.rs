//! The acceptance gate: one line per criterion, nonzero exit if any fails.
//! Set UPDATE_GOLDEN=1 to rewrite the CLI golden files.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sheffer::check::{run_suite, CheckOptions, Report, Suite};
use sheffer::Rational;

struct Criterion {
    id: usize,
    title: &'static str,
    suite: Option<Suite>,
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 13] = [
    Criterion { id: 1, title: "group axioms", suite: Some(Suite::Groups), budget: Some(Duration::from_secs(60)) },
    Criterion { id: 2, title: "exp/log round trips", suite: Some(Suite::Explog), budget: None },
    Criterion { id: 3, title: "build is a homomorphism", suite: Some(Suite::Isomorphism), budget: None },
    Criterion { id: 4, title: "row generating functions", suite: Some(Suite::Rowgf), budget: None },
    Criterion { id: 5, title: "Lie algebra realization", suite: Some(Suite::Liealgebra), budget: None },
    Criterion { id: 6, title: "Weyl relations", suite: Some(Suite::Weyl), budget: None },
    Criterion { id: 7, title: "classical tables", suite: Some(Suite::Classical), budget: Some(Duration::from_secs(5)) },
    Criterion { id: 8, title: "worked closed forms", suite: Some(Suite::ClosedForms), budget: None },
    Criterion { id: 9, title: "BCH", suite: Some(Suite::Bch), budget: None },
    Criterion { id: 10, title: "flows", suite: Some(Suite::Flows), budget: None },
    Criterion { id: 11, title: "dual representation", suite: Some(Suite::Dual), budget: None },
    Criterion { id: 12, title: "membership", suite: Some(Suite::Membership), budget: None },
    Criterion { id: 13, title: "CLI golden files", suite: None, budget: None },
];

/// (file, arguments) of each golden invocation.
const GOLDEN: [(&str, &[&str]); 5] = [
    ("sequence_hermite.txt", &["sequence", "hermite", "--order", "6", "--n", "3"]),
    ("mul_identity.txt", &["mul", "identity", "identity", "--dim", "1", "--order", "4"]),
    ("riordan_pascal_transposed.txt", &["riordan", "pascal", "--order", "5", "--transpose", "--format", "table"]),
    ("check_classical.txt", &["check", "classical", "--order", "10", "--format", "table"]),
    ("factor_bernoulli.txt", &["factor", "bernoulli", "--order", "6", "--format", "table"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn render(args: &[&str]) -> String {
    let out = sheffer::cli::run(std::iter::once("sheffer").chain(args.iter().copied()));
    format!("$ sheffer {}\nexit {}\n{}{}", args.join(" "), out.code, out.stdout, out.stderr)
}

fn goldens() -> Result<String, String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for (file, args) in GOLDEN {
        let path = golden_dir().join(file);
        let got = render(args);
        if update {
            std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
            std::fs::write(&path, &got).map_err(|e| e.to_string())?;
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(_) => mismatched.push(format!("{file} differs")),
            Err(e) => mismatched.push(format!("{file}: {e}")),
        }
    }
    if mismatched.is_empty() {
        Ok(format!("{} files byte-identical", GOLDEN.len()))
    } else {
        Err(mismatched.join("; "))
    }
}

fn summary(report: &Report) -> Result<String, String> {
    let instances: usize = report.results.iter().map(|r| r.instances).sum();
    let failed: Vec<String> = report
        .results
        .iter()
        .filter(|r| !r.ok())
        .map(|r| format!("{} at N={} K={}: {}", r.name, r.dim, r.order, r.first_failure.clone().unwrap_or_default()))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} properties, {instances} instances", report.results.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let opts = CheckOptions::default();
    let mut all_ok = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = match c.suite {
            Some(suite) => run_suite::<Rational>(suite, &opts).map_err(|e| e.to_string()).and_then(|r| summary(&r)),
            None => goldens(),
        };
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {detail} ({elapsed:.2?})", c.id, c.title),
            Err(why) => {
                all_ok = false;
                println!("criterion {:>2} FAIL  {}: {why} ({elapsed:.2?})", c.id, c.title);
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
