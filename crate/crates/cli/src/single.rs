use lefschetz_core::bounds::{check_macaulay_growth, is_symmetric, is_unimodal, sperner};
use lefschetz_core::hvector::HVector;
use lefschetz_core::inverse_system::hilbert_function;
use lefschetz_core::lefschetz::{check_slp, check_wlp, LefschetzReport};
use serde::Serialize;

use crate::input::{read_form, FormSource};
use crate::{CliError, Format, RunConfig, Status};

#[derive(Serialize)]
struct HvectorReport {
    form: String,
    hvector: HVector,
    sperner: usize,
    symmetric: bool,
    unimodal: bool,
    macaulay_growth: bool,
}

pub fn hvector(src: &FormSource, config: &RunConfig) -> Result<Status, CliError> {
    let f = read_form(src)?;
    let h = hilbert_function(&f)?;
    let report = HvectorReport {
        form: f.to_string(),
        sperner: sperner(&h),
        symmetric: is_symmetric(&h),
        unimodal: is_unimodal(&h),
        macaulay_growth: check_macaulay_growth(&h),
        hvector: h,
    };
    match config.output.unwrap_or(Format::Text) {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
        Format::Text => {
            println!("h = {}", report.hvector);
            println!("sperner = {}", report.sperner);
            println!("symmetric = {}", report.symmetric);
            println!("unimodal = {}", report.unimodal);
            println!("macaulay_growth = {}", report.macaulay_growth);
        }
    }
    Ok(Status::Holds)
}

#[derive(Debug, Clone, Copy)]
pub enum Which {
    Wlp,
    Slp,
}

fn print_text(report: &LefschetzReport) {
    let verdict = serde_json::to_value(report.verdict).expect("verdict serializes");
    println!("verdict: {}", verdict.as_str().unwrap_or_default());
    println!("h = {}", report.hvector);
    if !report.failure_degrees.is_empty() {
        let degrees: Vec<String> = report.failure_degrees.iter().map(ToString::to_string).collect();
        println!("failure degrees: {}", degrees.join(", "));
    }
    for rec in &report.per_degree {
        println!(
            "  x l^{} : A_{} -> A_{}  rank {} of {} after {} trial(s)",
            rec.power,
            rec.degree,
            rec.degree + rec.power,
            rec.achieved_rank,
            rec.required_rank,
            rec.trials_used
        );
    }
    for eval in report.hessian_evals.iter().flatten() {
        println!("  hess^{} = {}", eval.t, eval.value);
    }
    if let Some(witness) = &report.witness {
        println!("witness: ({})", witness.join(","));
    }
    if let Some(cert) = &report.certification {
        println!("certified by: {}", serde_json::to_string(cert).expect("certification serializes"));
    }
}

pub fn lefschetz(src: &FormSource, config: &RunConfig, which: Which) -> Result<Status, CliError> {
    let f = read_form(src)?;
    let trials = config.trial_config();
    let report = match which {
        Which::Wlp => check_wlp(&f, &trials)?,
        Which::Slp => check_slp(&f, &trials)?,
    };
    match config.output.unwrap_or(Format::Json) {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
        Format::Text => print_text(&report),
    }
    Ok(if report.verdict.holds() { Status::Holds } else { Status::Fails })
}
