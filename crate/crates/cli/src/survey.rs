use lefschetz_core::bounds::{is_unimodal, max_hvector, min_hvector, sperner, wlp_predicted};
use lefschetz_core::hvector::HVector;
use lefschetz_core::inverse_system::TrialConfig;
use lefschetz_core::lefschetz::{check_wlp, Verdict};
use lefschetz_core::perazzo::random_perazzo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, RunConfig, Status};

#[derive(Serialize)]
struct Record {
    index: usize,
    seed: u64,
    form: String,
    hvector: HVector,
    sperner: usize,
    wlp_predicate: bool,
    wlp_verdict: Verdict,
    unimodal: bool,
    within_bounds: bool,
}

#[derive(Serialize)]
struct Summary {
    n: usize,
    m: usize,
    d: usize,
    count: usize,
    seed: u64,
    min_hvector: HVector,
    max_hvector: HVector,
    within_bounds: usize,
    unimodal: usize,
    wlp_agreement: usize,
    wlp_holds: usize,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct SummaryLine {
    summary: Summary,
}

/// Seed of form `index`: first draw of stream `index` of the run seed, so
/// the form does not depend on scheduling.
fn form_seed(seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng.gen()
}

pub fn run(n: usize, d: usize, count: usize, config: &RunConfig) -> Result<Status, CliError> {
    let lo = min_hvector(n, d)?;
    let hi = max_hvector(n, d)?;
    let results: Vec<Result<Record, String>> = (0..count)
        .into_par_iter()
        .map(|index| {
            let seed = form_seed(config.seed, index);
            let pf = random_perazzo(n, 2, d, seed, config.coeff_bound).map_err(|e| format!("form {index}: {e}"))?;
            let trials = TrialConfig { trials: config.trials, coeff_bound: config.coeff_bound, seed };
            let report = check_wlp(pf.assembled(), &trials).map_err(|e| format!("form {index}: {e}"))?;
            let h = report.hvector;
            Ok(Record {
                index,
                seed,
                form: pf.assembled().to_string(),
                sperner: sperner(&h),
                wlp_predicate: wlp_predicted(&h, d),
                wlp_verdict: report.verdict,
                unimodal: is_unimodal(&h),
                within_bounds: lo.le_componentwise(&h) && h.le_componentwise(&hi),
                hvector: h,
            })
        })
        .collect();

    let mut summary = Summary {
        n,
        m: 2,
        d,
        count,
        seed: config.seed,
        min_hvector: lo,
        max_hvector: hi,
        within_bounds: 0,
        unimodal: 0,
        wlp_agreement: 0,
        wlp_holds: 0,
        violations: Vec::new(),
    };
    for result in results {
        let record = match result {
            Ok(record) => record,
            Err(e) => {
                summary.violations.push(e);
                continue;
            }
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
        let agrees = record.wlp_verdict.holds() == record.wlp_predicate;
        summary.within_bounds += usize::from(record.within_bounds);
        summary.unimodal += usize::from(record.unimodal);
        summary.wlp_agreement += usize::from(agrees);
        summary.wlp_holds += usize::from(record.wlp_verdict.holds());
        let i = record.index;
        if !record.within_bounds {
            summary.violations.push(format!("form {i}: {} outside the bounds", record.hvector));
        }
        if !record.unimodal {
            summary.violations.push(format!("form {i}: {} not unimodal", record.hvector));
        }
        if !agrees {
            summary.violations.push(format!("form {i}: verdict disagrees with the h-vector criterion"));
        }
    }
    let clean = summary.violations.is_empty();
    println!("{}", serde_json::to_string(&SummaryLine { summary }).expect("summary serializes"));
    Ok(if clean { Status::Holds } else { Status::Fails })
}
