//! Weak and strong Lefschetz properties of `A_f`.
//!
//! The WLP check samples linear forms and compares the rank of every
//! multiplication map `A_i -> A_{i+1}` against `min(h_i, h_{i+1})`. The SLP
//! check evaluates the higher Hessians at the coefficients of sampled linear
//! forms (nonvanishing of all of them is equivalent to `l` being a strong
//! Lefschetz element) and cross-checks every evaluation against the rank of
//! `x l^{d-2t} : A_t -> A_{d-t}`.
//!
//! A linear form that achieves every required rank is an exact witness, so
//! positive verdicts are always certified. Negative verdicts are certified
//! only when a structural argument applies; otherwise they rest on the
//! sampling and are reported as probable.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::wlp_predicted;
use crate::error::{Error, Result};
use crate::exact_linalg::{determinant, RationalMatrix};
use crate::hvector::HVector;
use crate::inverse_system::{hilbert_function, mult_map_rank, standard_basis, TrialConfig};
use crate::perazzo::{recognize, PerazzoForm};
use crate::poly::{apolar_apply, monomials_of_degree, random_linear_form_with, Monomial, Polynomial, VariableContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsProbable,
    HoldsCertified,
    FailsProbable,
    FailsCertified,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::HoldsProbable | Verdict::HoldsCertified)
    }

    pub fn is_certified(self) -> bool {
        matches!(self, Verdict::HoldsCertified | Verdict::FailsCertified)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    Wlp,
    Slp,
}

/// Why a verdict is certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    /// A sampled linear form achieved every required rank.
    Witness,
    /// Perazzo form over two back variables: WLP holds iff at most one
    /// entry of the h-vector equals `d + 2`.
    PerazzoCriterion,
    /// The Hessian of order `degree` has a zero block of size `zero_block`
    /// in a basis of size `basis_size`, so it vanishes identically.
    ZeroHessianBlock { degree: usize, zero_block: usize, basis_size: usize },
    /// Perazzo form: the classical Hessian vanishes identically.
    VanishingHessian,
}

/// Rank data of one multiplication map `x l^power : A_degree -> A_{degree+power}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub power: usize,
    pub required_rank: usize,
    /// Best rank seen over the trials.
    pub achieved_rank: usize,
    pub trials_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HessianEval {
    pub t: usize,
    /// Exact rational value, as text.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub property: Property,
    pub hvector: HVector,
    /// Empty when a structural criterion decided the verdict without sampling.
    pub per_degree: Vec<DegreeRecord>,
    pub verdict: Verdict,
    /// WLP: degrees `j` where `A_{j-1} -> A_j` lacks maximal rank.
    /// SLP: degrees `t` where `A_t -> A_{d-t}` is not bijective.
    pub failure_degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hessian_evals: Option<Vec<HessianEval>>,
    /// Coefficients of the linear form that witnessed the property.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
}

/// `Hess^t_f = (w_i w_j ∘ f)` over a monomial basis `w` of `A_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherHessian {
    pub t: usize,
    pub basis: Vec<Monomial>,
    /// Row-major `basis.len() x basis.len()` entries.
    pub entries: Vec<Polynomial>,
}

impl HigherHessian {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size() + j]
    }

    /// The matrix with `point` substituted into every entry.
    pub fn at(&self, point: &[BigRational]) -> Result<RationalMatrix> {
        let values = self.entries.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>>>()?;
        RationalMatrix::new(self.size(), self.size(), values)
    }

    /// `hess^t_f(point)`: substitute first, then take a numeric determinant.
    pub fn determinant_at(&self, point: &[BigRational]) -> Result<BigRational> {
        determinant(&self.at(point)?)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }
}

fn form_degree(f: &Polynomial) -> Result<usize> {
    match f.homogeneous_degree()? {
        Some(d) => Ok(d as usize),
        None => Err(Error::ZeroPolynomial),
    }
}

fn hessian_over(f: &Polynomial, t: usize, basis: Vec<Monomial>) -> Result<HigherHessian> {
    let ctx = f.context();
    let mut entries = Vec::with_capacity(basis.len() * basis.len());
    for wi in &basis {
        for wj in &basis {
            let op = Polynomial::monomial(ctx, wi.mul(wj), BigRational::from_integer(1.into()));
            entries.push(apolar_apply(&op, f)?);
        }
    }
    Ok(HigherHessian { t, basis, entries })
}

/// The `t`-th relative Hessian, `1 <= t <= d/2`, over the basis of `A_t`
/// given by the first independent catalecticant rows.
pub fn higher_hessian(f: &Polynomial, t: usize) -> Result<HigherHessian> {
    let d = form_degree(f)?;
    if t == 0 || t > d / 2 {
        return Err(Error::DegreeOutOfRange { degree: t, max: d / 2 });
    }
    let basis = standard_basis(f, t)?;
    hessian_over(f, t, basis)
}

/// Matrix of all second partials over every variable.
pub fn classical_hessian(f: &Polynomial) -> Result<HigherHessian> {
    hessian_over(f, 1, monomials_of_degree(f.context().len(), 1))
}

fn random_point(rng: &mut ChaCha8Rng, ctx: &Arc<VariableContext>, bound: i64) -> Vec<BigRational> {
    (0..ctx.len()).map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into())).collect()
}

/// Whether `det` of the classical Hessian vanished at `trials` random
/// integer points. A single nonzero value proves it does not vanish.
pub fn hessian_vanishes_identically(f: &Polynomial, trials: usize, rng_seed: u64) -> Result<bool> {
    let config = TrialConfig { trials, seed: rng_seed, ..TrialConfig::default() };
    let hess = classical_hessian(f)?;
    let mut rng = config.rng();
    for _ in 0..trials.max(1) {
        let point = random_point(&mut rng, f.context(), config.coeff_bound);
        if !hess.determinant_at(&point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a form linear in the front block, Hessian entries `w_i w_j ∘ f`
/// vanish whenever both basis monomials involve front variables. If those
/// monomials are more than half the basis in the middle degree, the Hessian
/// is identically zero and WLP fails for every linear form.
fn zero_block_failure(f: &Polynomial, d: usize, h: &HVector) -> Result<Option<(Certification, Vec<usize>)>> {
    let ctx = f.context();
    let front = ctx.n_front();
    if front == 0 || d < 3 || f.terms().keys().any(|m| m.partial_degree(0..front) > 1) {
        return Ok(None);
    }
    let t = (d - 1) / 2;
    let power = d - 2 * t;
    // For power 2 the two maps around the middle must both be square.
    if power == 2 && h.at(t) != h.at(t + 1) {
        return Ok(None);
    }
    let basis = standard_basis(f, t)?;
    let zero_block = basis.iter().filter(|m| m.partial_degree(0..front) > 0).count();
    if 2 * zero_block <= basis.len() {
        return Ok(None);
    }
    // For power 2, x l : A_t -> A_{t+1} and A_{t+1} -> A_{t+2} are dual under
    // the Gorenstein pairing, so they fail together.
    let degrees = if power == 1 { vec![t + 1] } else { vec![t + 1, t + 2] };
    Ok(Some((Certification::ZeroHessianBlock { degree: t, zero_block, basis_size: basis.len() }, degrees)))
}

fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn perazzo_over_two(f: &Polynomial) -> Option<PerazzoForm> {
    recognize(f).ok().filter(|pf| pf.m() == 2)
}

/// Decides the weak Lefschetz property.
///
/// Forms linear in the front block whose middle Hessian has a forced zero
/// block fail without sampling. Otherwise `config.trials` linear forms are
/// sampled and the first that reaches maximal rank in every degree
/// certifies WLP. Validated Perazzo forms over two back variables are then
/// decided by the h-vector criterion, and the sampled verdict must agree
/// with it.
pub fn check_wlp(f: &Polynomial, config: &TrialConfig) -> Result<LefschetzReport> {
    let d = form_degree(f)?;
    let h = hilbert_function(f)?;
    let perazzo = perazzo_over_two(f);
    let predicted = perazzo.as_ref().map(|_| wlp_predicted(&h, d));

    if let Some((certification, failure_degrees)) = zero_block_failure(f, d, &h)? {
        if predicted == Some(true) {
            return Err(Error::Internal(format!("zero Hessian block contradicts the h-vector criterion for {h}")));
        }
        return Ok(LefschetzReport {
            property: Property::Wlp,
            hvector: h,
            per_degree: Vec::new(),
            verdict: Verdict::FailsCertified,
            failure_degrees,
            hessian_evals: None,
            witness: None,
            certification: Some(certification),
        });
    }

    let mut per_degree: Vec<DegreeRecord> = (0..d)
        .map(|i| DegreeRecord {
            degree: i,
            power: 1,
            required_rank: h[i].min(h[i + 1]),
            achieved_rank: 0,
            trials_used: 0,
        })
        .collect();
    let mut rng = config.rng();
    let mut witness = None;
    for trial in 1..=config.trials.max(1) {
        let ell = random_linear_form_with(&mut rng, f.context(), config.coeff_bound);
        let mut all = true;
        for rec in per_degree.iter_mut() {
            let r = mult_map_rank(f, &ell, rec.degree, 1)?;
            rec.achieved_rank = rec.achieved_rank.max(r);
            rec.trials_used = trial;
            all &= r == rec.required_rank;
        }
        if all {
            witness = Some(rational_strings(&ell.linear_coefficients()));
            break;
        }
    }
    let failure_degrees: Vec<usize> =
        per_degree.iter().filter(|r| r.achieved_rank < r.required_rank).map(|r| r.degree + 1).collect();

    let (verdict, certification) = match (witness.is_some(), predicted) {
        (true, Some(false)) => {
            return Err(Error::Internal(format!("found a Lefschetz element although {h} predicts failure")))
        }
        (false, Some(true)) => {
            return Err(Error::Internal(format!(
                "no Lefschetz element in {} trials although {h} predicts WLP",
                config.trials
            )))
        }
        (true, _) => (Verdict::HoldsCertified, Certification::Witness),
        (false, Some(false)) => (Verdict::FailsCertified, Certification::PerazzoCriterion),
        (false, None) => (Verdict::FailsProbable, Certification::Witness),
    };
    let certification = verdict.is_certified().then_some(certification);
    Ok(LefschetzReport {
        property: Property::Wlp,
        hvector: h,
        per_degree,
        verdict,
        failure_degrees,
        hessian_evals: None,
        witness,
        certification,
    })
}

/// One Watanabe comparison: `hess^t_f` at the coefficients of `l` against
/// the rank of `x l^{d-2t} : A_t -> A_{d-t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WatanabePair {
    pub t: usize,
    pub hessian_value: BigRational,
    pub rank: usize,
    pub h_t: usize,
}

impl WatanabePair {
    /// Nonzero Hessian value iff the map is bijective.
    pub fn consistent(&self) -> bool {
        !self.hessian_value.is_zero() == (self.rank == self.h_t)
    }
}

/// Hessian values and map ranks for every `1 <= t <= d/2`.
pub fn watanabe_pairs(f: &Polynomial, hessians: &[HigherHessian], h: &HVector, ell: &Polynomial) -> Result<Vec<WatanabePair>> {
    let d = form_degree(f)?;
    let point = ell.linear_coefficients();
    hessians
        .iter()
        .map(|hess| {
            Ok(WatanabePair {
                t: hess.t,
                hessian_value: hess.determinant_at(&point)?,
                rank: mult_map_rank(f, ell, hess.t, d - 2 * hess.t)?,
                h_t: h.at(hess.t),
            })
        })
        .collect()
}

/// All higher Hessians `t = 1..=d/2`.
pub fn higher_hessians(f: &Polynomial) -> Result<Vec<HigherHessian>> {
    let d = form_degree(f)?;
    (1..=d / 2).map(|t| higher_hessian(f, t)).collect()
}

/// Decides the strong Lefschetz property (narrow sense) via higher Hessians.
///
/// Every Hessian value is cross-checked against the corresponding map rank;
/// a mismatch is an internal error. Perazzo forms fail with certainty since
/// their first Hessian vanishes identically.
pub fn check_slp(f: &Polynomial, config: &TrialConfig) -> Result<LefschetzReport> {
    let d = form_degree(f)?;
    let h = hilbert_function(f)?;
    let hessians = higher_hessians(f)?;
    let mut per_degree: Vec<DegreeRecord> = hessians
        .iter()
        .map(|hess| DegreeRecord {
            degree: hess.t,
            power: d - 2 * hess.t,
            required_rank: h.at(hess.t),
            achieved_rank: 0,
            trials_used: 0,
        })
        .collect();

    let mut rng = config.rng();
    let mut witness = None;
    let mut evals = Vec::new();
    for trial in 1..=config.trials.max(1) {
        let ell = random_linear_form_with(&mut rng, f.context(), config.coeff_bound);
        let pairs = watanabe_pairs(f, &hessians, &h, &ell)?;
        if let Some(bad) = pairs.iter().find(|p| !p.consistent()) {
            return Err(Error::Internal(format!(
                "Hessian of order {} is {} but the map has rank {} of {}",
                bad.t, bad.hessian_value, bad.rank, bad.h_t
            )));
        }
        for (rec, pair) in per_degree.iter_mut().zip(&pairs) {
            rec.achieved_rank = rec.achieved_rank.max(pair.rank);
            rec.trials_used = trial;
        }
        evals = pairs.iter().map(|p| HessianEval { t: p.t, value: p.hessian_value.to_string() }).collect();
        if pairs.iter().all(|p| !p.hessian_value.is_zero()) {
            witness = Some(rational_strings(&ell.linear_coefficients()));
            break;
        }
    }
    let failure_degrees: Vec<usize> =
        per_degree.iter().filter(|r| r.achieved_rank < r.required_rank).map(|r| r.degree).collect();

    let perazzo = recognize(f).ok();
    let (verdict, certification) = match (&witness, &perazzo) {
        (Some(_), Some(_)) => {
            return Err(Error::Internal("strong Lefschetz element found for a Perazzo form".into()));
        }
        (Some(_), None) => (Verdict::HoldsCertified, Some(Certification::Witness)),
        (None, Some(_)) => (Verdict::FailsCertified, Some(Certification::VanishingHessian)),
        (None, None) => (Verdict::FailsProbable, None),
    };
    Ok(LefschetzReport {
        property: Property::Slp,
        hvector: h,
        per_degree,
        verdict,
        failure_degrees,
        hessian_evals: Some(evals),
        witness,
        certification,
    })
}
