mod common;

use common::*;
use lefschetz_core::bounds::{check_macaulay_growth, green_bound, is_symmetric, is_unimodal, macaulay_upper};
use lefschetz_core::inverse_system::{hilbert_function, mult_map_rank, quotient_hvector, TrialConfig};
use lefschetz_core::lefschetz::{check_wlp, higher_hessian, higher_hessians, watanabe_pairs};
use lefschetz_core::perazzo::{derived_form, random_perazzo};
use lefschetz_core::poly::{apolar_apply, random_linear_form_with, Polynomial, DEFAULT_COEFF_BOUND};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse random forms in 2 to 5 variables of degree 2 to 6.
fn random_forms(seed: u64, count: usize) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(2..=5);
            let d = rng.gen_range(2..=6);
            let terms = rng.gen_range(1..=6);
            random_form(&mut rng, &generic_context(nvars), d, terms)
        })
        .collect()
}

#[test]
fn gorenstein_symmetry_and_growth() {
    for f in random_forms(11, 60) {
        let h = hilbert_function(&f).unwrap();
        assert_eq!(h.len(), f.degree().unwrap() as usize + 1);
        assert!(is_symmetric(&h), "{f}: {h}");
        assert!(check_macaulay_growth(&h), "{f}: {h}");
    }
}

#[test]
fn hilbert_function_matches_derivative_spans() {
    for f in random_forms(12, 40) {
        let h = hilbert_function(&f).unwrap();
        assert_eq!(h.entries(), span_hilbert_function(&f).as_slice(), "{f}");
    }
}

#[test]
fn multiplication_ranks_are_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for f in random_forms(13, 30) {
        let h = hilbert_function(&f).unwrap();
        let ell = random_linear_form_with(&mut rng, f.context(), DEFAULT_COEFF_BOUND);
        for i in 0..h.len() - 1 {
            assert!(mult_map_rank(&f, &ell, i, 1).unwrap() <= h[i].min(h[i + 1]));
        }
    }
}

#[test]
fn exact_sequence_against_direct_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for f in random_forms(14, 30) {
        let ell = random_linear_form_with(&mut rng, f.context(), DEFAULT_COEFF_BOUND);
        let h = hilbert_function(&f).unwrap();
        let quotient = quotient_hvector(&f, &ell).unwrap();
        let derived = hilbert_function(&apolar_apply(&ell, &f).unwrap()).unwrap();
        for i in 0..h.len() {
            assert_eq!(quotient[i], direct_quotient_dimension(&f, &ell, i), "{f} at {i}");
            let below = if i == 0 { 0 } else { derived.at(i - 1) };
            assert_eq!(h[i], quotient[i] + below);
        }
        assert!(check_macaulay_growth(&quotient), "{f}: {quotient}");
    }
}

#[test]
fn green_bound_on_general_restrictions() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for f in random_forms(15, 40) {
        // A form killing f is not general; draw again.
        let ell = loop {
            let ell = random_linear_form_with(&mut rng, f.context(), DEFAULT_COEFF_BOUND);
            if !apolar_apply(&ell, &f).unwrap().is_zero() {
                break ell;
            }
        };
        let h = hilbert_function(&f).unwrap();
        let quotient = quotient_hvector(&f, &ell).unwrap();
        for i in 1..h.len() {
            assert!(BigUint::from(quotient[i]) <= green_bound(h[i] as u64, i as u64), "{f} at {i}");
        }
    }
}

#[test]
fn watanabe_consistency_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let (mut nonzero, mut zero) = (0, 0);
    for f in random_forms(16, 30) {
        let h = hilbert_function(&f).unwrap();
        let hessians = higher_hessians(&f).unwrap();
        for hess in &hessians {
            assert!(hess.is_symmetric());
            assert_eq!(hess.size(), h[hess.t]);
        }
        let ell = random_linear_form_with(&mut rng, f.context(), 3);
        for pair in watanabe_pairs(&f, &hessians, &h, &ell).unwrap() {
            assert!(pair.consistent(), "{f}: {pair:?}");
            if pair.hessian_value == q(0) {
                zero += 1;
            } else {
                nonzero += 1;
            }
        }
    }
    assert!(zero > 0 && nonzero > 0, "only one outcome seen: {zero} zero, {nonzero} nonzero");
}

#[test]
fn hessian_determinant_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in random_forms(17, 20) {
        let d = f.degree().unwrap() as usize;
        let hess = higher_hessian(&f, d / 2).unwrap();
        let point: Vec<_> = (0..f.context().len()).map(|_| q(rng.gen_range(-5..=5))).collect();
        let m = hess.at(&point).unwrap();
        let rows = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        assert_eq!(hess.determinant_at(&point).unwrap(), naive_determinant(rows));
    }
}

#[test]
fn derived_forms_follow_the_exact_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for seed in 0..10 {
        let pf = random_perazzo(2, 2, 5, seed, 9).unwrap();
        let ell = random_linear_form_with(&mut rng, pf.context(), DEFAULT_COEFF_BOUND);
        let derived = derived_form(&pf, &ell).unwrap();
        let h_derived = hilbert_function(derived.assembled()).unwrap();
        for i in 0..h_derived.len() {
            assert_eq!(h_derived[i], mult_map_rank(pf.assembled(), &ell, i, 1).unwrap());
        }
    }
}

#[test]
fn wlp_implies_unimodal() {
    for f in random_forms(19, 25) {
        let report = check_wlp(&f, &TrialConfig::with_seed(19)).unwrap();
        if report.verdict.holds() {
            assert!(is_unimodal(&report.hvector), "{f}");
        }
    }
}

#[test]
fn macaulay_bound_is_attained_by_lex_segments() {
    for t in 1..=8u32 {
        let mut prev_upper = BigUint::from(0u32);
        let mut prev_green = BigUint::from(0u32);
        for a in 0..=60usize {
            let upper = macaulay_upper(a as u64, t as u64);
            let green = green_bound(a as u64, t as u64);
            assert_eq!(upper, BigUint::from(lex_upper(a, t)), "a={a} t={t}");
            assert_eq!(green, BigUint::from(lex_restriction(a, t)), "a={a} t={t}");
            assert!(upper >= prev_upper && green >= prev_green);
            prev_upper = upper;
            prev_green = green;
        }
    }
}
