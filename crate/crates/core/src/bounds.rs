//! Numerical side of Hilbert functions: binomial expansions, the Macaulay
//! and Green growth bounds, shape predicates on h-vectors, and the closed
//! forms for extremal Perazzo h-vectors.
//!
//! Everything here is arithmetic on integer sequences. Whether a sequence
//! really is the h-vector of a Perazzo algebra is the caller's business.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hvector::HVector;
use crate::poly::{monomials_of_degree, Monomial};

/// `C(x, y)`, zero when `x < y`.
pub fn binomial(x: u64, y: u64) -> BigUint {
    if x < y {
        return BigUint::zero();
    }
    let k = y.min(x - y);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

/// `a = C(m_r, r) + C(m_{r-1}, r-1) + ... + C(m_e, e)` with
/// `m_r > m_{r-1} > ... > m_e >= e >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialExpansion {
    pub value: u64,
    pub index: u64,
    /// `(m_i, i)` pairs, highest `i` first.
    pub terms: Vec<(u64, u64)>,
}

impl BinomialExpansion {
    fn shifted_sum(&self, shift: impl Fn(u64, u64) -> (u64, u64)) -> BigUint {
        self.terms
            .iter()
            .map(|&(m, i)| {
                let (x, y) = shift(m, i);
                binomial(x, y)
            })
            .sum()
    }
}

/// The `r`-th binomial expansion of `a`, built greedily. `a = 0` gives the
/// empty expansion.
pub fn binomial_expansion(a: u64, r: u64) -> BinomialExpansion {
    let mut terms = Vec::new();
    let mut rest = BigUint::from(a);
    let mut i = r;
    while !rest.is_zero() && i >= 1 {
        // C(i + rest, i) > rest, so the largest admissible m is below i + rest.
        let rest_u = rest.to_u64().expect("remainder fits in u64");
        let (mut lo, mut hi) = (i, i + rest_u);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, i) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= binomial(lo, i);
        terms.push((lo, i));
        i -= 1;
    }
    BinomialExpansion { value: a, index: r, terms }
}

/// `a^<t>`: every `C(m_i, i)` becomes `C(m_i + 1, i + 1)`.
pub fn macaulay_upper(a: u64, t: u64) -> BigUint {
    binomial_expansion(a, t).shifted_sum(|m, i| (m + 1, i + 1))
}

/// `a_<t>`: every `C(m_i, i)` becomes `C(m_i - 1, i)`.
pub fn green_bound(a: u64, t: u64) -> BigUint {
    binomial_expansion(a, t).shifted_sum(|m, i| (m - 1, i))
}

/// `h_0 = 1` and `h_{t+1} <= h_t^<t>` for every `t >= 1`.
pub fn check_macaulay_growth(h: &[usize]) -> bool {
    if h.first() != Some(&1) {
        return false;
    }
    (1..h.len().saturating_sub(1)).all(|t| BigUint::from(h[t + 1]) <= macaulay_upper(h[t] as u64, t as u64))
}

pub fn is_unimodal(h: &[usize]) -> bool {
    let peak = h.windows(2).take_while(|w| w[0] <= w[1]).count();
    h[peak..].windows(2).all(|w| w[0] >= w[1])
}

pub fn is_symmetric(h: &[usize]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// Largest entry (the Sperner number); 0 for an empty sequence.
pub fn sperner(h: &[usize]) -> usize {
    h.iter().copied().max().unwrap_or(0)
}

fn check_perazzo_params(n: usize, d: usize) -> Result<()> {
    if n < 2 || d < n + 1 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and d >= n+1, got n={n}, d={d}")));
    }
    Ok(())
}

/// Fills `h_0..h_d` from the lower half `h_1..h_{d/2}` by symmetry.
fn symmetric_completion(d: usize, half: impl Fn(usize) -> usize) -> HVector {
    let mut h = vec![0; d + 1];
    h[0] = 1;
    h[d] = 1;
    for i in 1..=d / 2 {
        h[i] = half(i);
        h[d - i] = h[i];
    }
    HVector::new(h)
}

/// Smallest h-vector of a Perazzo algebra in `n+3` variables over a
/// two-variable back block: `h_i = min(2n+2, d+2, n+2+i)`.
pub fn min_hvector(n: usize, d: usize) -> Result<HVector> {
    check_perazzo_params(n, d)?;
    Ok(symmetric_completion(d, |i| (2 * n + 2).min(d + 2).min(n + 2 + i)))
}

/// Largest such h-vector: `h_i = min((n+2)i + 1, d+2)`.
pub fn max_hvector(n: usize, d: usize) -> Result<HVector> {
    check_perazzo_params(n, d)?;
    Ok(symmetric_completion(d, |i| ((n + 2) * i + 1).min(d + 2)))
}

/// WLP criterion for Perazzo algebras with a two-variable back block: at most
/// one entry reaches `d + 2`.
pub fn wlp_predicted(h: &[usize], d: usize) -> bool {
    h.iter().filter(|&&x| x == d + 2).count() <= 1
}

/// `h_i <= (i+3)(2d-3i)/2` for every `0 <= i <= d/2 - 1`.
pub fn unimodality_bound_check(h: &[usize], d: usize) -> bool {
    let d = d as i128;
    (0..)
        .take_while(|&i: &i128| 2 * i + 2 <= d)
        .all(|i| 2 * h.get(i as usize).copied().unwrap_or(0) as i128 <= (i + 3) * (2 * d - 3 * i))
}

/// Hilbert function of `K[x_1..x_n]/(generators)` for a monomial ideal,
/// counting standard monomials degree by degree.
pub fn hf_monomial_quotient(generators: &[Monomial], n_vars: usize) -> Result<HVector> {
    if let Some(g) = generators.iter().find(|g| g.nvars() != n_vars) {
        return Err(Error::DimensionMismatch { expected: n_vars, got: g.nvars() });
    }
    // Every variable needs a pure power; the largest standard monomial then
    // has degree at most sum(e_k - 1).
    let mut top_degree = 0u32;
    for k in 0..n_vars {
        let pure = generators
            .iter()
            .filter(|g| g.degree() > 0 && g.exponents()[k] == g.degree())
            .map(Monomial::degree)
            .min()
            .ok_or(Error::NotArtinian(k))?;
        top_degree += pure - 1;
    }
    let mut h = Vec::new();
    for t in 0..=top_degree {
        let count = monomials_of_degree(n_vars, t)
            .iter()
            .filter(|m| !generators.iter().any(|g| g.divides(m)))
            .count();
        if count == 0 {
            break;
        }
        h.push(count);
    }
    Ok(HVector::new(h))
}
