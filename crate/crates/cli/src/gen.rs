use lefschetz_core::bounds::{max_hvector, min_hvector};
use lefschetz_core::hvector::HVector;
use lefschetz_core::perazzo::{max_example, min_example, random_perazzo};
use serde::Serialize;

use crate::{CliError, GenKind, RunConfig, Status};

/// Second output line. `wlp`, `slp` and `hvector` read the variables back
/// from it when the form is piped in.
#[derive(Serialize)]
struct Sidecar {
    kind: &'static str,
    n: usize,
    m: usize,
    d: usize,
    vars: Vec<String>,
    /// Exact h-vector for min and max; absent for random forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_hvector: Option<HVector>,
    min_hvector: HVector,
    max_hvector: HVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

pub fn run(kind: GenKind, n: usize, d: usize, config: &RunConfig) -> Result<Status, CliError> {
    let lo = min_hvector(n, d)?;
    let hi = max_hvector(n, d)?;
    let (name, form, predicted, seed) = match kind {
        GenKind::Min => ("min", min_example(n, d)?, Some(lo.clone()), None),
        GenKind::Max => ("max", max_example(n, d)?, Some(hi.clone()), None),
        GenKind::Random => ("random", random_perazzo(n, 2, d, config.seed, config.coeff_bound)?, None, Some(config.seed)),
    };
    let sidecar = Sidecar {
        kind: name,
        n,
        m: 2,
        d,
        vars: form.context().names().to_vec(),
        predicted_hvector: predicted,
        min_hvector: lo,
        max_hvector: hi,
        seed,
    };
    println!("{}", form.assembled());
    println!("{}", serde_json::to_string(&sidecar).expect("sidecar serializes"));
    Ok(Status::Holds)
}
