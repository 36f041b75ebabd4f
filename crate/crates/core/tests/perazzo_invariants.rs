mod common;

use common::*;
use lefschetz_core::bounds::{check_macaulay_growth, is_symmetric, is_unimodal, max_hvector, min_hvector, sperner};
use lefschetz_core::inverse_system::{hilbert_function, TrialConfig};
use lefschetz_core::lefschetz::{check_slp, check_wlp, hessian_vanishes_identically, Verdict};
use lefschetz_core::perazzo::{max_example, min_example, random_perazzo};

fn hits(h: &[usize], d: usize) -> usize {
    h.iter().filter(|&&x| x == d + 2).count()
}

#[test]
fn extremal_vectors_over_the_grid() {
    for n in 2..=6 {
        for d in n + 1..=12 {
            let lo = min_hvector(n, d).unwrap();
            let hi = max_hvector(n, d).unwrap();
            assert!(lo.le_componentwise(&hi), "n={n} d={d}");
            for h in [&lo, &hi] {
                assert!(is_symmetric(h) && is_unimodal(h) && check_macaulay_growth(h), "n={n} d={d}: {h}");
            }
            assert_eq!(hits(&lo, d) >= 2, d < 2 * n, "n={n} d={d}: {lo}");
            // At n=2, d=4 the extremes coincide as (1,5,6,5,1), which has WLP.
            assert_eq!(hits(&hi, d) >= 2, (n, d) != (2, 4), "n={n} d={d}: {hi}");
        }
    }
}

#[test]
fn random_forms_sit_between_the_extremes() {
    for (n, d) in [(2, 3), (2, 5), (3, 4), (3, 6), (4, 7)] {
        let lo = min_hvector(n, d).unwrap();
        let hi = max_hvector(n, d).unwrap();
        for seed in 0..6 {
            let pf = random_perazzo(n, 2, d, seed, 20).unwrap();
            let h = hilbert_function(pf.assembled()).unwrap();
            assert!(lo.le_componentwise(&h) && h.le_componentwise(&hi), "n={n} d={d}: {h}");
            assert!(is_unimodal(&h));
            assert_eq!(h[1], n + 3);
            if d >= n + 2 {
                assert!(h[2] >= n + 4);
            }
            assert!(sperner(&h) <= d + 2);
            assert!(hessian_vanishes_identically(pf.assembled(), 5, seed).unwrap());
        }
    }
}

#[test]
fn extremal_examples_match_span_oracle() {
    for n in 2..=3 {
        for d in n + 1..=6 {
            for pf in [min_example(n, d).unwrap(), max_example(n, d).unwrap()] {
                let h = hilbert_function(pf.assembled()).unwrap();
                assert_eq!(h.entries(), span_hilbert_function(pf.assembled()).as_slice(), "n={n} d={d}");
            }
        }
    }
}

#[test]
fn wlp_verdicts_agree_with_the_criterion() {
    for (n, d) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
        for seed in 0..4 {
            let pf = random_perazzo(n, 2, d, seed, 20).unwrap();
            let report = check_wlp(pf.assembled(), &TrialConfig::with_seed(seed)).unwrap();
            assert!(report.verdict.is_certified());
            assert_eq!(report.verdict.holds(), hits(&report.hvector, d) <= 1, "n={n} d={d} seed={seed}");
        }
    }
}

#[test]
fn paper_forms() {
    let report = check_wlp(&quartic(), &TrialConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::FailsCertified);
    assert_eq!(report.hvector.entries(), &[1, 6, 6, 6, 1]);

    let report = check_wlp(&minimal_quartic(), &TrialConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::HoldsCertified);

    let report = check_wlp(&sextic(), &TrialConfig::default()).unwrap();
    assert_eq!(report.hvector.entries(), &[1, 7, 18, 20, 18, 7, 1]);
    assert_eq!(report.verdict, Verdict::FailsProbable);
    assert!(report.failure_degrees.contains(&3));

    let h = hilbert_function(&stanley_form()).unwrap();
    assert_eq!(h.entries(), &[1, 13, 12, 13, 1]);
    assert!(!is_unimodal(&h));

    for f in [quartic(), minimal_quartic(), sextic()] {
        assert_eq!(check_slp(&f, &TrialConfig::default()).unwrap().verdict, Verdict::FailsCertified);
    }
}
