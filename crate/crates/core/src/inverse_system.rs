//! Macaulay inverse systems: everything about `A_f = R / Ann(f)` is read off
//! from ranks of catalecticant matrices, the matrices of the pairing
//! `R_t x {f} -> forms of degree d - t`, `u -> u ∘ f`.
//!
//! No quotient ring is ever built. `h_t` is the rank of the degree-`t`
//! catalecticant, `Ann(f)_t` is its left kernel, and the rank of
//! multiplication by `l^k` from `A_i` is `h_i` of the algebra with dual
//! generator `l^k ∘ f`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_linalg::{kernel_basis, pivot_columns, rank, RationalMatrix};
pub use crate::hvector::HVector;
use crate::poly::{apolar_apply, monomials_of_degree, random_linear_form_with, Monomial, Polynomial, DEFAULT_COEFF_BOUND};

/// How "general" linear forms are sampled: `trials` independent draws with
/// integer coefficients in `[-coeff_bound, coeff_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub trials: usize,
    pub coeff_bound: i64,
    pub seed: u64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { trials: 5, coeff_bound: DEFAULT_COEFF_BOUND, seed: 0 }
    }
}

impl TrialConfig {
    pub fn with_seed(seed: u64) -> Self {
        TrialConfig { seed, ..Self::default() }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Labeled matrix of `u ∘ f` for `u` ranging over degree-`t` monomials
/// (rows) and read off in degree-`(d-t)` monomials (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalecticantMatrix {
    pub degree: usize,
    pub row_labels: Vec<Monomial>,
    pub col_labels: Vec<Monomial>,
    pub matrix: RationalMatrix,
}

impl CatalecticantMatrix {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// Degree of a nonzero homogeneous form.
fn form_degree(f: &Polynomial) -> Result<usize> {
    match f.homogeneous_degree()? {
        Some(d) => Ok(d as usize),
        None => Err(Error::ZeroPolynomial),
    }
}

fn check_degree(t: usize, d: usize) -> Result<()> {
    if t > d {
        return Err(Error::DegreeOutOfRange { degree: t, max: d });
    }
    Ok(())
}

/// Calls `visit(a, b - a)` for every divisor `a` of `b` of degree `t`.
fn for_each_divisor(b: &Monomial, t: u32, mut visit: impl FnMut(Monomial, Monomial)) {
    fn go(b: &[u32], k: usize, left: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if k == b.len() {
            if left == 0 {
                visit(cur);
            }
            return;
        }
        let rest: u32 = b[k + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for e in (lo..=b[k].min(left)).rev() {
            cur.push(e);
            go(b, k + 1, left - e, cur, visit);
            cur.pop();
        }
    }
    let exps = b.exponents();
    go(exps, 0, t, &mut Vec::with_capacity(exps.len()), &mut |a| {
        let a = Monomial::new(a.to_vec());
        let q = a.quotient_of(b).expect("a divides b");
        visit(a, q);
    });
}

fn falling(a: &Monomial, b: &Monomial) -> BigInt {
    let mut acc = BigInt::one();
    for (&ak, &bk) in a.exponents().iter().zip(b.exponents()) {
        for j in 0..ak {
            acc *= bk - j;
        }
    }
    acc
}

/// Nonzero entries of the degree-`t` catalecticant keyed by (row, column)
/// monomial.
fn catalecticant_entries(f: &Polynomial, t: u32) -> Vec<(Monomial, Monomial, BigRational)> {
    let mut out = Vec::new();
    for (b, c) in f.terms() {
        for_each_divisor(b, t, |a, q| {
            let value = c * BigRational::from_integer(falling(&a, b));
            out.push((a, q, value));
        });
    }
    out
}

/// Full catalecticant of a nonzero form, rows and columns in graded-lex order
/// (largest monomial first).
pub fn catalecticant(f: &Polynomial, t: usize) -> Result<CatalecticantMatrix> {
    let d = form_degree(f)?;
    check_degree(t, d)?;
    let n = f.context().len();
    let row_labels = monomials_of_degree(n, t as u32);
    let col_labels = monomials_of_degree(n, (d - t) as u32);
    let row_index: HashMap<&Monomial, usize> = row_labels.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let col_index: HashMap<&Monomial, usize> = col_labels.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = RationalMatrix::zeros(row_labels.len(), col_labels.len());
    for (a, q, v) in catalecticant_entries(f, t as u32) {
        // Each (a, q) pair comes from exactly one term a*q of f.
        matrix.set(row_index[&a], col_index[&q], v);
    }
    Ok(CatalecticantMatrix { degree: t, row_labels, col_labels, matrix })
}

/// The catalecticant restricted to its nonzero rows and columns, still in
/// label order. Same rank and same pivot rows as the full matrix.
fn compact_catalecticant(f: &Polynomial, t: u32) -> (Vec<Monomial>, RationalMatrix) {
    let entries = catalecticant_entries(f, t);
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (a, q, _) in &entries {
        rows.entry(a.clone()).or_insert(0);
        cols.entry(q.clone()).or_insert(0);
    }
    // Largest first.
    for (i, v) in rows.values_mut().rev().enumerate() {
        *v = i;
    }
    for (i, v) in cols.values_mut().rev().enumerate() {
        *v = i;
    }
    let mut matrix = RationalMatrix::zeros(rows.len(), cols.len());
    for (a, q, v) in entries {
        matrix.set(rows[&a], cols[&q], v);
    }
    let labels = rows.into_keys().rev().collect();
    (labels, matrix)
}

/// `h_t(A_f)` without materialising zero rows and columns.
pub fn catalecticant_rank(f: &Polynomial, t: usize) -> Result<usize> {
    let d = form_degree(f)?;
    check_degree(t, d)?;
    Ok(rank(&compact_catalecticant(f, t as u32).1))
}

/// Monomials of degree `t` whose classes form a basis of `A_t`: the first
/// linearly independent rows of the catalecticant in label order.
pub fn standard_basis(f: &Polynomial, t: usize) -> Result<Vec<Monomial>> {
    let d = form_degree(f)?;
    check_degree(t, d)?;
    let (labels, matrix) = compact_catalecticant(f, t as u32);
    Ok(pivot_columns(&matrix.transpose()).into_iter().map(|i| labels[i].clone()).collect())
}

/// `h_0..h_d` of `A_f` for a nonzero form `f` of degree `d`.
pub fn hilbert_function(f: &Polynomial) -> Result<HVector> {
    let d = form_degree(f)?;
    (0..=d).map(|t| catalecticant_rank(f, t)).collect::<Result<Vec<_>>>().map(HVector::new)
}

/// Basis of `Ann(f)_t` as degree-`t` operators.
pub fn annihilator_component(f: &Polynomial, t: usize) -> Result<Vec<Polynomial>> {
    let cat = catalecticant(f, t)?;
    let ctx = f.context();
    Ok(kernel_basis(&cat.matrix.transpose())
        .into_iter()
        .map(|v| Polynomial::from_terms(ctx, cat.row_labels.iter().cloned().zip(v)))
        .collect())
}

fn require_linear(ell: &Polynomial) -> Result<()> {
    if ell.is_linear_form() {
        Ok(())
    } else {
        Err(Error::NotLinear)
    }
}

/// Rank of `x ell^k : A_i -> A_{i+k}`, computed as `h_i` of the algebra with
/// dual generator `ell^k ∘ f`.
pub fn mult_map_rank(f: &Polynomial, ell: &Polynomial, i: usize, k: usize) -> Result<usize> {
    let d = form_degree(f)?;
    require_linear(ell)?;
    if i + k > d {
        return Err(Error::DegreeOutOfRange { degree: i + k, max: d });
    }
    let g = apolar_apply(&ell.pow(k as u32), f)?;
    if g.is_zero() {
        return Ok(0);
    }
    catalecticant_rank(&g, i)
}

/// Largest rank of `x ell^k : A_i -> A_{i+k}` over `config.trials` random
/// linear forms. Rank is lower semicontinuous, so this is the generic rank
/// with high probability.
pub fn generic_mult_map_rank(f: &Polynomial, i: usize, k: usize, config: &TrialConfig) -> Result<usize> {
    let mut rng = config.rng();
    let mut best = 0;
    for _ in 0..config.trials.max(1) {
        let ell = random_linear_form_with(&mut rng, f.context(), config.coeff_bound);
        best = best.max(mult_map_rank(f, &ell, i, k)?);
    }
    Ok(best)
}

/// Hilbert function of `R / (Ann(f), ell)` from the exact sequence
/// `0 -> A_{ell∘f}(-1) -> A_f -> R/(Ann f, ell) -> 0`:
/// `h'_i = h_i(A_f) - h_{i-1}(A_{ell∘f})`.
pub fn quotient_hvector(f: &Polynomial, ell: &Polynomial) -> Result<HVector> {
    require_linear(ell)?;
    if f.is_zero() {
        return Ok(HVector::new(Vec::new()));
    }
    let h = hilbert_function(f)?;
    let derived = apolar_apply(ell, f)?;
    if derived.is_zero() {
        if h.len() > 1 {
            return Err(Error::ZeroDerivative);
        }
        return Ok(h);
    }
    let h_tilde = hilbert_function(&derived)?;
    let entries = (0..h.len())
        .map(|i| {
            let below = if i == 0 { 0 } else { h_tilde.at(i - 1) };
            h[i].checked_sub(below).ok_or_else(|| {
                Error::Internal(format!("exact sequence gives negative dimension in degree {i}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HVector::new(entries))
}

/// Whether `op ∘ f = 0` for every operator in the list.
pub fn annihilates(ops: &[Polynomial], f: &Polynomial) -> Result<bool> {
    for op in ops {
        if !apolar_apply(op, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
