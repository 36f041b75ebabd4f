use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use clap::ValueEnum;
use lefschetz_core::bounds::{is_unimodal, max_hvector, min_hvector, wlp_predicted};
use lefschetz_core::inverse_system::{hilbert_function, TrialConfig};
use lefschetz_core::lefschetz::{check_wlp, higher_hessians, watanabe_pairs};
use lefschetz_core::perazzo::{max_example, min_example, random_perazzo};
use lefschetz_core::poly::{monomials_of_degree, random_linear_form_with, Monomial, Polynomial, VariableContext};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Format, RunConfig, Status};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Minimal examples reach the lower h-vector.
    Lower,
    /// Maximal examples reach the upper h-vector.
    Upper,
    /// WLP verdicts agree with the h-vector criterion.
    Wlp,
    /// Random forms have unimodal h-vectors.
    Unimodal,
    /// Higher Hessian values agree with multiplication map ranks.
    Watanabe,
}

/// Inclusive range written `a..b`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: usize,
    pub end: usize,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(IntRange { start, end })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl IntRange {
    fn values(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

#[derive(Serialize)]
struct Check {
    label: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    theorem: Theorem,
    checks: Vec<Check>,
    passed: usize,
    total: usize,
}

/// One unit of work: a label and a job that returns `(pass, detail)`.
type Job = (String, Box<dyn Fn() -> Result<(bool, String), CliError> + Send + Sync>);

fn perazzo_grid(n: IntRange, d_max: usize) -> Vec<(usize, usize)> {
    n.values().flat_map(|n| (n + 1..=d_max).map(move |d| (n, d))).collect()
}

/// Independent seeds for the sampled checks, drawn up front in job order.
fn seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

fn extremal_jobs(upper: bool, n: IntRange, d_max: usize) -> Vec<Job> {
    perazzo_grid(n, d_max)
        .into_iter()
        .map(|(n, d)| {
            let job: Job = (
                format!("n={n} d={d}"),
                Box::new(move || {
                    let (pf, expected) =
                        if upper { (max_example(n, d)?, max_hvector(n, d)?) } else { (min_example(n, d)?, min_hvector(n, d)?) };
                    let h = hilbert_function(pf.assembled())?;
                    Ok((h == expected, format!("h={h} formula={expected}")))
                }),
            );
            job
        })
        .collect()
}

fn wlp_jobs(n: IntRange, d: IntRange, samples: usize, config: &RunConfig) -> Vec<Job> {
    let points: Vec<(usize, usize)> =
        n.values().flat_map(|n| d.values().filter(move |&d| d > n).map(move |d| (n, d))).collect();
    let seeds = seeds(config.seed, points.len() * samples);
    let (trials, bound) = (config.trials, config.coeff_bound);
    let mut jobs: Vec<Job> = Vec::new();
    for (k, (n, d)) in points.iter().flat_map(|&p| std::iter::repeat(p).take(samples)).enumerate() {
        let seed = seeds[k];
        jobs.push((
            format!("n={n} d={d} seed={seed}"),
            Box::new(move || {
                let pf = random_perazzo(n, 2, d, seed, bound)?;
                let report = check_wlp(pf.assembled(), &TrialConfig { trials, coeff_bound: bound, seed })?;
                let predicted = wlp_predicted(&report.hvector, d);
                let verdict = serde_json::to_value(report.verdict).expect("verdict serializes");
                Ok((
                    report.verdict.holds() == predicted,
                    format!("h={} predicate={predicted} verdict={}", report.hvector, verdict.as_str().unwrap_or_default()),
                ))
            }),
        ));
    }
    jobs
}

fn unimodal_jobs(n: IntRange, d_max: usize, samples: usize, config: &RunConfig) -> Vec<Job> {
    let points = perazzo_grid(n, d_max);
    let seeds = seeds(config.seed, points.len() * samples);
    let bound = config.coeff_bound;
    points
        .iter()
        .flat_map(|&p| std::iter::repeat(p).take(samples))
        .zip(seeds)
        .map(|((n, d), seed)| {
            let job: Job = (
                format!("n={n} d={d} seed={seed}"),
                Box::new(move || {
                    let h = hilbert_function(random_perazzo(n, 2, d, seed, bound)?.assembled())?;
                    Ok((is_unimodal(&h), format!("h={h}")))
                }),
            );
            job
        })
        .collect()
}

/// Sparse form in 2 to 5 variables of degree 2 to 6.
fn random_form(rng: &mut ChaCha8Rng) -> Polynomial {
    let nvars = rng.gen_range(2..=5);
    let names: Vec<String> = (0..nvars).map(|i| format!("z{i}")).collect();
    let ctx = Arc::new(VariableContext::new(names, 0).expect("generated names are valid"));
    let monomials = monomials_of_degree(nvars, rng.gen_range(2..=6));
    let size = rng.gen_range(1..=6).min(monomials.len());
    let terms: Vec<(Monomial, BigRational)> = monomials
        .choose_multiple(rng, size)
        .map(|m| (m.clone(), BigRational::from_integer(rng.gen_range(1i64..=9).into())))
        .collect();
    Polynomial::from_terms(&ctx, terms)
}

fn watanabe_jobs(samples: usize, config: &RunConfig) -> Vec<Job> {
    seeds(config.seed, samples)
        .into_iter()
        .map(|seed| {
            let job: Job = (
                format!("seed={seed}"),
                Box::new(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let f = random_form(&mut rng);
                    // Small coefficients make degenerate linear forms likely.
                    let ell = random_linear_form_with(&mut rng, f.context(), 3);
                    let h = hilbert_function(&f)?;
                    let pairs = watanabe_pairs(&f, &higher_hessians(&f)?, &h, &ell)?;
                    let pass = pairs.iter().all(|p| p.consistent());
                    let parts: Vec<String> = pairs
                        .iter()
                        .map(|p| format!("t={} hess={} rank={}/{}", p.t, p.hessian_value, p.rank, p.h_t))
                        .collect();
                    Ok((pass, format!("f={f} l={ell} {}", parts.join(" "))))
                }),
            );
            job
        })
        .collect()
}

pub fn run(
    theorem: Theorem,
    n: IntRange,
    d_max: usize,
    d: IntRange,
    samples: usize,
    config: &RunConfig,
) -> Result<Status, CliError> {
    if n.start < 2 {
        return Err(CliError::Input(format!("--n must start at 2 or more, got {n}")));
    }
    let jobs = match theorem {
        Theorem::Lower => extremal_jobs(false, n, d_max),
        Theorem::Upper => extremal_jobs(true, n, d_max),
        Theorem::Wlp => wlp_jobs(n, d, samples, config),
        Theorem::Unimodal => unimodal_jobs(n, d_max, samples, config),
        Theorem::Watanabe => watanabe_jobs(samples, config),
    };
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|(label, job)| match job() {
            Ok((pass, detail)) => Check { label: label.clone(), pass, detail },
            Err(e) => Check { label: label.clone(), pass: false, detail: format!("error: {e}") },
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    let report = VerifyReport { theorem, total: checks.len(), passed, checks };
    match config.output.unwrap_or(Format::Text) {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
        Format::Text => {
            for c in &report.checks {
                println!("{}  {}  {}", if c.pass { "PASS" } else { "FAIL" }, c.label, c.detail);
            }
            let name = serde_json::to_value(theorem).expect("theorem serializes");
            println!("{}: {} of {} checks passed", name.as_str().unwrap_or_default(), report.passed, report.total);
        }
    }
    Ok(if report.passed == report.total { Status::Holds } else { Status::Fails })
}
