//! Property suites. Every instance draws from its own ChaCha stream derived
//! from (seed, suite, property, context, index), so reports do not depend on
//! how rayon schedules the work.

mod oracles;
mod suites;

pub use oracles::{bernoulli_numbers, binomial_row, hermite_coeffs, stirling1, stirling2};

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Context, RingKind, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Groups,
    Explog,
    Isomorphism,
    Rowgf,
    Liealgebra,
    Weyl,
    Riordan,
    Flows,
    Classical,
    ClosedForms,
    Bch,
    Dual,
    Membership,
    All,
}

impl Suite {
    pub const EACH: [Suite; 13] = [
        Suite::Groups,
        Suite::Explog,
        Suite::Isomorphism,
        Suite::Rowgf,
        Suite::Liealgebra,
        Suite::Weyl,
        Suite::Riordan,
        Suite::Flows,
        Suite::Classical,
        Suite::ClosedForms,
        Suite::Bch,
        Suite::Dual,
        Suite::Membership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Groups => "groups",
            Suite::Explog => "explog",
            Suite::Isomorphism => "isomorphism",
            Suite::Rowgf => "rowgf",
            Suite::Liealgebra => "liealgebra",
            Suite::Weyl => "weyl",
            Suite::Riordan => "riordan",
            Suite::Flows => "flows",
            Suite::Classical => "classical",
            Suite::ClosedForms => "closed_forms",
            Suite::Bch => "bch",
            Suite::Dual => "dual",
            Suite::Membership => "membership",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Run every property at this (dim, order) instead of the suite defaults.
    pub context: Option<(usize, usize)>,
    /// Instances per randomized property instead of the suite defaults.
    pub instances: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub suite: Suite,
    pub name: String,
    pub dim: usize,
    pub order: usize,
    pub instances: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub ring: RingKind,
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.results.iter().all(PropertyResult::ok)
    }

    pub fn to_json(&self) -> Value {
        let props: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                let mut v = json!({
                    "suite": r.suite.name(),
                    "property": r.name,
                    "dim": r.dim,
                    "order": r.order,
                    "instances": r.instances,
                    "passed": r.passed,
                    "status": if r.ok() { "pass" } else { "fail" },
                });
                if let Some(f) = &r.first_failure {
                    v["first_failure"] = json!(f);
                }
                v
            })
            .collect();
        json!({
            "kind": "check_report",
            "seed": self.seed,
            "ring": self.ring.to_string(),
            "status": if self.ok() { "pass" } else { "fail" },
            "properties": props,
        })
    }

    /// One aligned line per property.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .results
            .iter()
            .map(|r| {
                [
                    if r.ok() { "PASS".into() } else { "FAIL".into() },
                    r.suite.name().into(),
                    r.name.clone(),
                    format!("N={} K={}", r.dim, r.order),
                    format!("{}/{}", r.passed, r.instances),
                ]
            })
            .collect();
        let mut widths = [0usize; 5];
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for (row, r) in rows.iter().zip(&self.results) {
            let cells: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            if let Some(f) = &r.first_failure {
                out.push_str(&format!("  ({f})"));
            }
            out.push('\n');
        }
        out.push_str(if self.ok() { "all properties pass\n" } else { "some properties FAILED\n" });
        out
    }
}

pub(crate) type Check = std::result::Result<(), String>;

/// Turns a library error into a failure message.
pub(crate) fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub(crate) struct Runner<'a> {
    suite: Suite,
    opts: &'a CheckOptions,
    results: Vec<PropertyResult>,
}

impl<'a> Runner<'a> {
    fn new(suite: Suite, opts: &'a CheckOptions) -> Self {
        Runner { suite, opts, results: Vec::new() }
    }

    /// The suite's default contexts unless the caller fixed one.
    pub(crate) fn contexts<S: Scalar>(&self, defaults: &[(usize, usize)]) -> Result<Vec<Context>> {
        match self.opts.context {
            Some((d, k)) => Ok(vec![Context::of::<S>(d, k)?]),
            None => defaults.iter().map(|&(d, k)| Context::of::<S>(d, k)).collect(),
        }
    }

    /// Randomized property: `f` runs once per instance with its own stream.
    pub(crate) fn random<F>(&mut self, name: &str, ctx: &Context, default_n: usize, f: F)
    where
        F: Fn(&mut ChaCha8Rng) -> Check + Sync,
    {
        let n = self.opts.instances.unwrap_or(default_n);
        let key = fnv(&format!("{}/{}/{}/{}", self.suite, name, ctx.dim(), ctx.order()));
        let base = splitmix(self.opts.seed ^ key);
        let outcomes: Vec<Check> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(splitmix(base.wrapping_add(i as u64)));
                f(&mut rng)
            })
            .collect();
        self.record(name, ctx, outcomes);
    }

    /// Deterministic property with a list of cases.
    pub(crate) fn cases(&mut self, name: &str, ctx: &Context, outcomes: Vec<Check>) {
        self.record(name, ctx, outcomes);
    }

    fn record(&mut self, name: &str, ctx: &Context, outcomes: Vec<Check>) {
        let instances = outcomes.len();
        let passed = outcomes.iter().filter(|o| o.is_ok()).count();
        let first_failure = outcomes.into_iter().find_map(|o| o.err());
        self.results.push(PropertyResult {
            suite: self.suite,
            name: name.to_string(),
            dim: ctx.dim(),
            order: ctx.order(),
            instances,
            passed,
            first_failure,
        });
    }
}

pub fn run_suite<S: Scalar>(suite: Suite, opts: &CheckOptions) -> Result<Report> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut results = Vec::new();
    for s in suites {
        let mut runner = Runner::new(s, opts);
        suites::run::<S>(s, &mut runner)?;
        results.extend(runner.results);
    }
    Ok(Report { seed: opts.seed, ring: S::RING, results })
}
