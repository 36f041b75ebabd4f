#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use lefschetz_core::poly::{monomials_of_degree, Monomial, Polynomial, VariableContext};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Plain rational row reduction, returns the reduced nonzero rows.
pub fn naive_row_reduce(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn naive_rank(rows: Vec<Vec<BigRational>>) -> usize {
    naive_row_reduce(rows).len()
}

/// Determinant by cofactor-free elimination with rationals.
pub fn naive_determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let factor = &a[i][c] / &a[c][c];
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

/// Basis of `{x : rows * x = 0}`.
pub fn naive_kernel(rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let reduced = naive_row_reduce(rows);
    let pivots: Vec<usize> = reduced.iter().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of polynomials over the union of their monomials.
pub fn coordinate_rows(polys: &[Polynomial]) -> Vec<Vec<BigRational>> {
    let mut index = BTreeMap::new();
    for p in polys {
        for m in p.terms().keys() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect()
}

/// Partial derivative of `f` along a monomial, by repeated differentiation.
pub fn partial(f: &Polynomial, alpha: &Monomial) -> Polynomial {
    let mut g = f.clone();
    for (var, &e) in alpha.exponents().iter().enumerate() {
        for _ in 0..e {
            g = g.derivative(var);
        }
    }
    g
}

/// `h_t` as the dimension of the span of all order-`t` partials of `f`.
pub fn span_dimension(f: &Polynomial, t: usize) -> usize {
    let partials: Vec<Polynomial> =
        monomials_of_degree(f.context().len(), t as u32).iter().map(|a| partial(f, a)).collect();
    naive_rank(coordinate_rows(&partials))
}

pub fn span_hilbert_function(f: &Polynomial) -> Vec<usize> {
    let d = f.degree().unwrap() as usize;
    (0..=d).map(|t| span_dimension(f, t)).collect()
}

/// `dim R_i / (Ann(f)_i + l R_{i-1})` computed from an explicit kernel.
pub fn direct_quotient_dimension(f: &Polynomial, ell: &Polynomial, i: usize) -> usize {
    let n = f.context().len();
    let basis = monomials_of_degree(n, i as u32);
    let position: BTreeMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    // Columns: operators w in R_i. Rows: coefficients of w ∘ f.
    let images: Vec<Polynomial> = basis.iter().map(|w| partial(f, w)).collect();
    let by_column = coordinate_rows(&images);
    let width = by_column.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigRational>> =
        (0..width).map(|r| by_column.iter().map(|col| col[r].clone()).collect()).collect();
    let mut generators = if rows.is_empty() {
        // f has no terms of this order: everything annihilates.
        (0..basis.len())
            .map(|k| {
                let mut v = vec![BigRational::zero(); basis.len()];
                v[k] = BigRational::one();
                v
            })
            .collect()
    } else {
        naive_kernel(rows, basis.len())
    };
    if i >= 1 {
        for w in monomials_of_degree(n, i as u32 - 1) {
            let mut v = vec![BigRational::zero(); basis.len()];
            for (m, c) in ell.terms() {
                v[position[&m.mul(&w)]] += c.clone();
            }
            generators.push(v);
        }
    }
    basis.len() - naive_rank(generators)
}

/// Random homogeneous form of degree `d` with `terms` random monomials.
pub fn random_form<R: Rng>(rng: &mut R, ctx: &Arc<VariableContext>, d: u32, terms: usize) -> Polynomial {
    let monomials = monomials_of_degree(ctx.len(), d);
    loop {
        let chosen: Vec<(Monomial, BigRational)> = monomials
            .choose_multiple(rng, terms.min(monomials.len()))
            .map(|m| (m.clone(), q(rng.gen_range(1..=9) * if rng.gen() { 1 } else { -1 })))
            .collect();
        let f = Polynomial::from_terms(ctx, chosen);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn generic_context(nvars: usize) -> Arc<VariableContext> {
    let names: Vec<String> = (0..nvars).map(|i| format!("z{i}")).collect();
    Arc::new(VariableContext::new(names, 0).unwrap())
}

/// The last `a` degree-`t` monomials of `nvars` variables in lex order.
fn lex_final_segment(nvars: usize, t: u32, a: usize) -> Vec<Monomial> {
    let mut all = monomials_of_degree(nvars, t);
    all.sort_by(|x, y| x.exponents().cmp(y.exponents()));
    all.truncate(a);
    all
}

fn variables_for(a: usize, t: u32) -> usize {
    (1..).find(|&n| lefschetz_core::poly::count_monomials(n, t) >= a).unwrap() + 1
}

/// Largest `h_{t+1}` when `h_t = a`: degree-`(t+1)` monomials all of whose
/// degree-`t` divisors lie in the lex-final segment of size `a`.
pub fn lex_upper(a: usize, t: u32) -> usize {
    if a == 0 {
        return 0;
    }
    let n = variables_for(a, t);
    let segment = lex_final_segment(n, t, a);
    monomials_of_degree(n, t + 1)
        .into_iter()
        .filter(|m| {
            (0..n).filter(|&k| m.exponents()[k] > 0).all(|k| {
                let mut e = m.exponents().to_vec();
                e[k] -= 1;
                segment.contains(&Monomial::new(e))
            })
        })
        .count()
}

/// Members of the lex-final segment of size `a` that avoid the last variable.
pub fn lex_restriction(a: usize, t: u32) -> usize {
    if a == 0 {
        return 0;
    }
    let n = variables_for(a, t);
    lex_final_segment(n, t, a).iter().filter(|m| m.exponents()[n - 1] == 0).count()
}

pub fn perazzo_context(n: usize, m: usize) -> Arc<VariableContext> {
    Arc::new(VariableContext::perazzo(n, m))
}

pub fn quartic() -> Polynomial {
    Polynomial::parse("x0*u^3+x1*u^2*v+x2*u*v^2+x3*v^3", &perazzo_context(3, 2)).unwrap()
}

pub fn minimal_quartic() -> Polynomial {
    Polynomial::parse("x0*u^3+x1*u^2*v+x2*u*v^2", &perazzo_context(2, 2)).unwrap()
}

pub fn stanley_form() -> Polynomial {
    Polynomial::parse(
        "x0*u^3+x1*v^3+x2*w^3+x3*u^2*v+x4*u^2*w+x5*v^2*u+x6*v^2*w+x7*w^2*u+x8*w^2*v+x9*u*v*w",
        &perazzo_context(9, 3),
    )
    .unwrap()
}

pub fn sextic() -> Polynomial {
    Polynomial::parse(
        "x0*u^5+x0*u^4*v+x0*u^4*w+x0*u*v^4+x1*v^5+x1*v^4*w+x1*u*w^4+x1*v*w^4\
         +x2*w^5+x2*u^3*v*w+x2*u*v^3*w+x2*u*v*w^3+x3*u^2*v*w^2+x3*u^2*v^2*w+x3*u*v^2*w^2",
        &perazzo_context(3, 3),
    )
    .unwrap()
}
