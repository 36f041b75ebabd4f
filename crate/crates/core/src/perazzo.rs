//! Perazzo forms `f = x_0 p_0 + ... + x_n p_n + g`, where the `p_i` are
//! forms of degree `d-1` in the back variables `u_1..u_m` that are linearly
//! independent but algebraically dependent, and `g` is a form of degree `d`
//! in the back variables.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{rank, RationalMatrix};
use crate::poly::{apolar_apply, count_monomials, monomials_of_degree, Monomial, Polynomial, VariableContext};

/// Random points used by the Jacobian test for algebraic dependence.
pub const JACOBIAN_POINTS: usize = 3;
/// Attempts before the random sampler gives up.
pub const SAMPLER_RETRIES: usize = 100;

/// How algebraic dependence of `p_0..p_n` was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    /// More forms than back variables: always dependent.
    Automatic,
    /// The Jacobian was rank deficient at every sampled point. Strong
    /// evidence, not a proof.
    JacobianDeficient { points: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerazzoForm {
    n: usize,
    m: usize,
    d: usize,
    p: Vec<Polynomial>,
    g: Polynomial,
    assembled: Polynomial,
    dependence: Dependence,
}

impl PerazzoForm {
    /// Number of front variables minus one.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &[Polynomial] {
        &self.p
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn assembled(&self) -> &Polynomial {
        &self.assembled
    }

    pub fn dependence(&self) -> Dependence {
        self.dependence
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        self.assembled.context()
    }
}

fn back_only(p: &Polynomial) -> bool {
    let front = p.context().n_front();
    p.terms().keys().all(|m| m.partial_degree(0..front) == 0)
}

/// Validates the data and assembles `f`. The `p_i` and `g` must live in a
/// context with `n + 1` front and `m` back variables.
pub fn build(n: usize, m: usize, p: Vec<Polynomial>, g: Polynomial) -> Result<PerazzoForm> {
    build_seeded(n, m, p, g, 0)
}

/// As [`build`], with an explicit seed for the Jacobian sample points.
pub fn build_seeded(n: usize, m: usize, p: Vec<Polynomial>, g: Polynomial, seed: u64) -> Result<PerazzoForm> {
    if n < 2 || m < 2 || p.len() < 3 {
        return Err(Error::TooFewForms { forms: p.len(), back: m });
    }
    if p.len() != n + 1 {
        return Err(Error::InvalidParameters(format!("expected {} forms p_i, got {}", n + 1, p.len())));
    }
    let ctx = Arc::clone(g.context());
    if ctx.n_front() != n + 1 || ctx.m_back() != m {
        return Err(Error::InvalidParameters(format!(
            "context has {} front and {} back variables, expected {} and {m}",
            ctx.n_front(),
            ctx.m_back(),
            n + 1
        )));
    }
    if p.iter().any(|pi| pi.context() != &ctx && **pi.context() != *ctx) {
        return Err(Error::ContextMismatch);
    }
    if !p.iter().chain([&g]).all(back_only) {
        return Err(Error::InvalidParameters("p_i and g may only involve the back variables".into()));
    }

    let mut degree = None;
    for (i, pi) in p.iter().enumerate() {
        match (pi.homogeneous_degree()?, degree) {
            (None, _) => return Err(Error::LinearlyDependent { rank: rank_of_forms(&p), count: n + 1 }),
            (Some(e), None) => degree = Some(e),
            (Some(e), Some(prev)) if e != prev => {
                return Err(Error::DegreeMismatch(format!("p_{i} has degree {e}, p_0 has degree {prev}")))
            }
            _ => {}
        }
    }
    let d = degree.expect("at least three forms") as usize + 1;
    if let Some(e) = g.homogeneous_degree()? {
        if e as usize != d {
            return Err(Error::DegreeMismatch(format!("g has degree {e}, expected {d}")));
        }
    }
    if d < 2 {
        return Err(Error::DegreeMismatch("p_i must have positive degree".into()));
    }

    let r = rank_of_forms(&p);
    if r < n + 1 {
        return Err(Error::LinearlyDependent { rank: r, count: n + 1 });
    }
    // Implied by independence, kept as a cheap sanity bound.
    if n + 1 > count_monomials(m, d as u32) {
        return Err(Error::InvalidParameters(format!("n+1 = {} exceeds C(d+m-1, m-1)", n + 1)));
    }

    let dependence = if n + 1 > m {
        Dependence::Automatic
    } else {
        jacobian_test(&p, &ctx, seed)?
    };

    let mut assembled = g.clone();
    for (i, pi) in p.iter().enumerate() {
        assembled = &assembled + &(&Polynomial::variable(&ctx, i) * pi);
    }
    Ok(PerazzoForm { n, m, d, p, g, assembled, dependence })
}

/// Rank of the coefficient matrix of the forms over all monomials they use.
fn rank_of_forms(p: &[Polynomial]) -> usize {
    let mut support: Vec<&Monomial> = p.iter().flat_map(|pi| pi.terms().keys()).collect();
    support.sort();
    support.dedup();
    let rows: Vec<Vec<BigRational>> = p.iter().map(|pi| support.iter().map(|mono| pi.coefficient(mono)).collect()).collect();
    RationalMatrix::from_rows(rows).map(|mat| rank(&mat)).unwrap_or(0)
}

/// Jacobian criterion: the forms are algebraically independent iff the
/// Jacobian has full row rank at a general point.
fn jacobian_test(p: &[Polynomial], ctx: &Arc<VariableContext>, seed: u64) -> Result<Dependence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let back: Vec<usize> = (ctx.n_front()..ctx.len()).collect();
    let partials: Vec<Vec<Polynomial>> = p.iter().map(|pi| back.iter().map(|&j| pi.derivative(j)).collect()).collect();
    for _ in 0..JACOBIAN_POINTS {
        let point: Vec<BigRational> =
            (0..ctx.len()).map(|_| BigRational::from_integer(rng.gen_range(-50i64..=50).into())).collect();
        let rows = partials
            .iter()
            .map(|row| row.iter().map(|q| q.evaluate(&point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let r = rank(&RationalMatrix::from_rows(rows)?);
        if r == p.len() {
            return Err(Error::AlgebraicallyIndependent(r));
        }
    }
    Ok(Dependence::JacobianDeficient { points: JACOBIAN_POINTS })
}

/// Reads a form in a context with front block `x_0..x_n` and back block
/// `u_1..u_m` as a Perazzo form, validating it.
pub fn recognize(f: &Polynomial) -> Result<PerazzoForm> {
    recognize_seeded(f, 0)
}

pub fn recognize_seeded(f: &Polynomial, seed: u64) -> Result<PerazzoForm> {
    let ctx = f.context();
    let front = ctx.n_front();
    if f.is_zero() {
        return Err(Error::NotPerazzo("zero polynomial".into()));
    }
    if front == 0 {
        return Err(Error::NotPerazzo("no front variables".into()));
    }
    f.homogeneous_degree()?;
    let mut p = vec![Polynomial::zero(ctx); front];
    let mut g = Polynomial::zero(ctx);
    for (mono, c) in f.terms() {
        match mono.partial_degree(0..front) {
            0 => g = &g + &Polynomial::monomial(ctx, mono.clone(), c.clone()),
            1 => {
                let i = mono.exponents()[..front].iter().position(|&e| e == 1).expect("front degree 1");
                let rest = Monomial::variable(ctx.len(), i).quotient_of(mono).expect("x_i divides the term");
                p[i] = &p[i] + &Polynomial::monomial(ctx, rest, c.clone());
            }
            _ => return Err(Error::NotPerazzo(format!("term of degree > 1 in the front variables: {}", mono.display(ctx)))),
        }
    }
    if p.iter().all(Polynomial::is_zero) {
        return Err(Error::NotPerazzo("no terms involve the front variables".into()));
    }
    build_seeded(front - 1, ctx.m_back(), p, g, seed)
}

fn check_extremal_params(n: usize, d: usize) -> Result<()> {
    if n < 2 || d < n + 1 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and d >= n+1, got n={n}, d={d}")));
    }
    Ok(())
}

/// `u^{d-1-i} v^i` in the context `x0..xn | u,v`.
fn uv_monomial(ctx: &Arc<VariableContext>, d: usize, i: usize) -> Polynomial {
    let mut e = vec![0u32; ctx.len()];
    e[ctx.n_front()] = (d - 1 - i) as u32;
    e[ctx.n_front() + 1] = i as u32;
    Polynomial::monomial(ctx, Monomial::new(e), BigRational::one())
}

/// `x_0 u^{d-1} + x_1 u^{d-2} v + ... + x_n u^{d-1-n} v^n`, whose h-vector
/// is the smallest possible.
pub fn min_example(n: usize, d: usize) -> Result<PerazzoForm> {
    check_extremal_params(n, d)?;
    let ctx = Arc::new(VariableContext::perazzo(n, 2));
    let p = (0..=n).map(|j| uv_monomial(&ctx, d, j)).collect();
    build(n, 2, p, Polynomial::zero(&ctx))
}

/// Form with the largest possible h-vector. Write `d = (n+1) r + eps` with
/// `0 <= eps <= n`; the `d` monomials `u^{d-1-i} v^i` are cut into `n+1`
/// consecutive blocks, the first `eps` of length `r+1` and the rest of length
/// `r`, and `p_j` is the sum of block `j`.
pub fn max_example(n: usize, d: usize) -> Result<PerazzoForm> {
    check_extremal_params(n, d)?;
    let ctx = Arc::new(VariableContext::perazzo(n, 2));
    let (r, eps) = (d / (n + 1), d % (n + 1));
    let p = (0..=n)
        .map(|j| {
            let block = if j < eps { j * (r + 1)..(j + 1) * (r + 1) } else { j * r + eps..(j + 1) * r + eps };
            block.fold(Polynomial::zero(&ctx), |acc, i| &acc + &uv_monomial(&ctx, d, i))
        })
        .collect();
    build(n, 2, p, Polynomial::zero(&ctx))
}

/// Random Perazzo form with sparse `p_i`: each uses one to four monomials of
/// degree `d-1` with nonzero integer coefficients in `[-coeff_bound,
/// coeff_bound]`. `g = 0`. Invalid draws are retried.
pub fn random_perazzo(n: usize, m: usize, d: usize, seed: u64, coeff_bound: i64) -> Result<PerazzoForm> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and m >= 2, got n={n}, m={m}")));
    }
    if d < 2 {
        return Err(Error::InvalidParameters(format!("degree {d} too small")));
    }
    let ctx = Arc::new(VariableContext::perazzo(n, m));
    let back_monomials: Vec<Monomial> = monomials_of_degree(m, (d - 1) as u32)
        .into_iter()
        .map(|b| {
            let mut e = vec![0u32; n + 1];
            e.extend_from_slice(b.exponents());
            Monomial::new(e)
        })
        .collect();
    if n + 1 > back_monomials.len() {
        return Err(Error::InvalidParameters(format!(
            "{} independent forms of degree {} in {m} variables do not exist",
            n + 1,
            d - 1
        )));
    }
    let bound = coeff_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLER_RETRIES {
        let p: Vec<Polynomial> = (0..=n)
            .map(|_| {
                let size = rng.gen_range(1..=back_monomials.len().min(4));
                let terms: Vec<(Monomial, BigRational)> = back_monomials
                    .choose_multiple(&mut rng, size)
                    .map(|mono| {
                        let c = loop {
                            let c = rng.gen_range(-bound..=bound);
                            if c != 0 {
                                break c;
                            }
                        };
                        (mono.clone(), BigRational::from_integer(c.into()))
                    })
                    .collect();
                Polynomial::from_terms(&ctx, terms)
            })
            .collect();
        match build_seeded(n, m, p, Polynomial::zero(&ctx), rng.gen()) {
            Ok(form) => return Ok(form),
            Err(Error::LinearlyDependent { .. } | Error::AlgebraicallyIndependent(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplerExhausted(SAMPLER_RETRIES))
}

/// `ell ∘ f` read back as a Perazzo form of degree `d - 1`. Its forms are
/// `sum_j b_j dp_i/du_j` where `b` are the back coefficients of `ell`, so
/// special choices of `ell` can break linear independence.
pub fn derived_form(pf: &PerazzoForm, ell: &Polynomial) -> Result<PerazzoForm> {
    if !ell.is_linear_form() {
        return Err(Error::NotLinear);
    }
    if pf.d < pf.n + 2 {
        return Err(Error::DegreeTooSmall { degree: pf.d, min: pf.n + 2 });
    }
    let derived = apolar_apply(ell, &pf.assembled)?;
    recognize(&derived).map_err(|e| match e {
        Error::NotPerazzo(_) => e,
        other => Error::NotPerazzo(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse_system::hilbert_function;

    fn parse(s: &str, ctx: &Arc<VariableContext>) -> Polynomial {
        Polynomial::parse(s, ctx).unwrap()
    }

    #[test]
    fn perazzo_cubic_is_valid() {
        let ctx = Arc::new(VariableContext::perazzo(2, 2));
        let p = vec![parse("u^2", &ctx), parse("u*v", &ctx), parse("v^2", &ctx)];
        let pf = build(2, 2, p, Polynomial::zero(&ctx)).unwrap();
        assert_eq!(pf.assembled().to_string(), "x0*u^2+x1*u*v+x2*v^2");
        assert_eq!(pf.degree(), 3);
        assert_eq!(pf.dependence(), Dependence::Automatic);
    }

    #[test]
    fn repeated_form_is_dependent() {
        let ctx = Arc::new(VariableContext::perazzo(2, 2));
        let p = vec![parse("u^2", &ctx), parse("u^2", &ctx), parse("v^2", &ctx)];
        assert!(matches!(build(2, 2, p, Polynomial::zero(&ctx)), Err(Error::LinearlyDependent { rank: 2, count: 3 })));
    }

    #[test]
    fn squares_in_three_variables_are_independent() {
        let ctx = Arc::new(VariableContext::perazzo(2, 3));
        let p = vec![parse("u^2", &ctx), parse("v^2", &ctx), parse("w^2", &ctx)];
        assert_eq!(build(2, 3, p, Polynomial::zero(&ctx)), Err(Error::AlgebraicallyIndependent(3)));
    }

    #[test]
    fn dependent_quadrics_in_three_variables() {
        // (uv)^2 = u^2 v^2: dependent, independent, and as many forms as variables.
        let ctx = Arc::new(VariableContext::perazzo(2, 3));
        let p = vec![parse("u^2", &ctx), parse("v^2", &ctx), parse("u*v", &ctx)];
        let pf = build(2, 3, p, Polynomial::zero(&ctx)).unwrap();
        assert_eq!(pf.dependence(), Dependence::JacobianDeficient { points: JACOBIAN_POINTS });
    }

    #[test]
    fn shape_errors() {
        let ctx = Arc::new(VariableContext::perazzo(2, 2));
        let p = vec![parse("u^2", &ctx), parse("u*v", &ctx), parse("v^3", &ctx)];
        assert!(matches!(build(2, 2, p, Polynomial::zero(&ctx)), Err(Error::DegreeMismatch(_))));
        let p = vec![parse("u^2", &ctx), parse("u*v", &ctx)];
        assert!(matches!(build(2, 2, p, Polynomial::zero(&ctx)), Err(Error::TooFewForms { forms: 2, back: 2 })));
        let p = vec![parse("u^2", &ctx), parse("u*v", &ctx), parse("v^2", &ctx)];
        assert!(matches!(build(2, 2, p, parse("u^2", &ctx)), Err(Error::DegreeMismatch(_))));
        let p = vec![parse("u^2", &ctx), parse("u*v", &ctx), parse("x0*v", &ctx)];
        assert!(matches!(build(2, 2, p, Polynomial::zero(&ctx)), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn extremal_examples() {
        let pf = min_example(2, 4).unwrap();
        assert_eq!(pf.assembled().to_string(), "x0*u^3+x1*u^2*v+x2*u*v^2");
        assert_eq!(hilbert_function(pf.assembled()).unwrap().entries(), &[1, 5, 6, 5, 1]);
        let pf = min_example(3, 4).unwrap();
        assert_eq!(pf.assembled().to_string(), "x0*u^3+x1*u^2*v+x2*u*v^2+x3*v^3");
        assert_eq!(hilbert_function(pf.assembled()).unwrap().entries(), &[1, 6, 6, 6, 1]);
        assert_eq!(
            hilbert_function(max_example(2, 8).unwrap().assembled()).unwrap().entries(),
            &[1, 5, 9, 10, 10, 10, 9, 5, 1]
        );
        assert_eq!(hilbert_function(max_example(4, 6).unwrap().assembled()).unwrap().entries(), &[1, 7, 8, 8, 8, 7, 1]);
        assert!(matches!(min_example(1, 4), Err(Error::InvalidParameters(_))));
        assert!(matches!(max_example(3, 3), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn derived_forms() {
        let pf = min_example(2, 4).unwrap();
        let ctx = pf.context().clone();
        let derived = derived_form(&pf, &parse("u", &ctx)).unwrap();
        assert_eq!(derived.assembled(), &parse("3*x0*u^2+2*x1*u*v+x2*v^2", &ctx));
        assert_eq!(derived.degree(), 3);
        assert!(matches!(derived_form(&pf, &parse("x0", &ctx)), Err(Error::NotPerazzo(_))));
        let low = min_example(2, 3).unwrap();
        assert_eq!(derived_form(&low, &parse("u", &ctx)), Err(Error::DegreeTooSmall { degree: 3, min: 4 }));
    }

    #[test]
    fn recognition_round_trip() {
        let pf = max_example(3, 7).unwrap();
        assert_eq!(recognize(pf.assembled()).unwrap(), pf);
        let ctx = pf.context().clone();
        assert!(matches!(recognize(&parse("x0*x1*u^5", &ctx)), Err(Error::NotPerazzo(_))));
    }

    #[test]
    fn random_sampler_is_deterministic() {
        let a = random_perazzo(3, 2, 6, 7, 50).unwrap();
        let b = random_perazzo(3, 2, 6, 7, 50).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 6);
        assert!(matches!(random_perazzo(5, 2, 4, 0, 5), Err(Error::InvalidParameters(_))));
    }
}
