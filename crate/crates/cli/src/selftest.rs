//! The desk-scale self-test suite: every library-level guarantee checked
//! across all configurations with n <= 5, m <= 3 (section identities up
//! to n = 6, generator counts up to n = 6, m = 4).

use uinv_core::canonical::{bring_to_section, find_conjugator, reconstruct_section_single};
use uinv_core::invariants::{enumerate_generators, evaluate_invariants, ordered_pairs, p_pair};
use uinv_core::matrix::Matrix;
use uinv_core::ring::Ring;
use uinv_core::rng::{
    random_generic_section_matrix, random_generic_tuple, random_matrix, random_tuple, SplitMix64,
};
use uinv_core::scalar::Scalar;
use uinv_core::{
    adjoint_tuple, certify_action_rules, certify_full_rank, certify_invariance,
    certify_section_identities, certify_section_square, FieldSpec, UnitriangularMatrix,
    DEFAULT_CERTIFICATE_PRIME,
};

struct Tally {
    run: usize,
    failed: usize,
}

fn check(tally: &mut Tally, name: impl Into<String>, ok: bool) {
    println!("{} {}", if ok { "ok  " } else { "FAIL" }, name.into());
    tally.run += 1;
    if !ok {
        tally.failed += 1;
    }
}

/// Runs the whole suite, printing one line per check. Returns true iff
/// everything passed.
pub fn run(seed: u64, trials: usize) -> bool {
    let mut checks = Tally { run: 0, failed: 0 };
    let q = FieldSpec::Rational;
    let fp = FieldSpec::prime(DEFAULT_CERTIFICATE_PRIME).expect("default prime is valid");

    for n in 1..=6usize {
        for m in 1..=4usize {
            let expected = m * n * n - n * (n - 1) / 2;
            check(
                &mut checks,
                format!("generator count n={n} m={m} equals {expected}"),
                enumerate_generators(n, m).len() == expected,
            );
        }
    }

    check(
        &mut checks,
        "n=3 pairing invariants match their displayed expansions",
        displayed_formulas_agree(seed),
    );

    for n in 1..=5usize {
        for m in 1..=3usize {
            for field in [q, fp] {
                let cert = certify_invariance(n, m, field, seed, trials);
                check(&mut checks, cert.to_string(), cert.passed());
            }
        }
    }

    for n in 2..=5usize {
        let cert = certify_action_rules(n, q, seed, trials.min(25));
        check(&mut checks, cert.to_string(), cert.passed());
    }

    for n in 1..=6usize {
        let cert = certify_section_identities(n, q, seed, trials);
        check(&mut checks, cert.to_string(), cert.passed());
    }

    for n in 1..=5usize {
        for m in 1..=3usize {
            let cert = certify_full_rank(n, m, DEFAULT_CERTIFICATE_PRIME, seed);
            check(&mut checks, cert.to_string(), cert.passed());
            let cert = certify_section_square(n, m, DEFAULT_CERTIFICATE_PRIME, seed);
            check(&mut checks, cert.to_string(), cert.passed());
        }
    }

    let mut rng = SplitMix64::new(seed ^ 0xCA50);
    for (n, m) in [(2, 1), (3, 2), (4, 2), (5, 3)] {
        let mut ok = true;
        for _ in 0..trials.min(20) {
            let t = random_generic_tuple(n, m, q, &mut rng);
            let g = UnitriangularMatrix::from_rng(n, q, &mut rng);
            let (_, s1) = bring_to_section(&t).expect("generic");
            let (_, s2) =
                bring_to_section(&adjoint_tuple(&g, &t).expect("same n")).expect("generic");
            ok &= s1 == s2;
            ok &= evaluate_invariants(&s1.to_tuple()) == evaluate_invariants(&t);
            if m == 1 {
                let rebuilt = reconstruct_section_single(&evaluate_invariants(&t), n)
                    .expect("generic");
                ok &= &rebuilt == s1.first();
            }
        }
        check(
            &mut checks,
            format!("canonical form is orbit-invariant and faithful at n={n} m={m}"),
            ok,
        );
    }

    for n in 2..=5usize {
        let mut ok = true;
        for _ in 0..trials.min(20) {
            let s = random_generic_section_matrix(n, q, &mut rng);
            let y = random_matrix(n, q, &mut rng);
            let d_y: Vec<Scalar> = (1..=n).map(|k| y.corner_d(k).unwrap()).collect();
            let p_sy = ordered_pairs(n)
                .into_iter()
                .map(|(i, k)| ((i, k), p_pair(&s, &y, i, k).unwrap()))
                .collect();
            let table = match uinv_core::recover_cross_minors(&s, &d_y, &p_sy) {
                Ok(t) => t,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            ok &= table
                .iter()
                .all(|((j, k), v)| v == &y.minor_n(*j, *k).unwrap());
        }
        check(
            &mut checks,
            format!("cross-minor recovery matches direct minors at n={n}"),
            ok,
        );
    }

    let mut orbit_ok = true;
    let mut separation_ok = true;
    for (n, m) in [(3, 1), (4, 2), (5, 3)] {
        let t = random_generic_tuple(n, m, fp, &mut rng);
        let u = UnitriangularMatrix::from_rng(n, fp, &mut rng);
        let moved = adjoint_tuple(&u, &t).expect("same n");
        orbit_ok &= evaluate_invariants(&t) == evaluate_invariants(&moved);
        orbit_ok &= match find_conjugator(&t, &moved) {
            Some(w) => adjoint_tuple(&w, &t).expect("same n") == moved,
            None => false,
        };
        for _ in 0..trials.min(40) {
            let a = random_tuple(n, m, fp, &mut rng);
            let b = random_tuple(n, m, fp, &mut rng);
            if a != b {
                separation_ok &= evaluate_invariants(&a) != evaluate_invariants(&b);
            }
        }
    }
    check(
        &mut checks,
        "conjugate pairs are detected with a verified conjugator",
        orbit_ok,
    );
    check(
        &mut checks,
        "independent random tuples have distinct invariant vectors",
        separation_ok,
    );

    println!("selftest: {} checks, {} failed", checks.run, checks.failed);
    checks.failed == 0
}

/// Multi-point agreement of the n = 3 pairing invariants with their
/// hand-expanded displayed forms.
fn displayed_formulas_agree(seed: u64) -> bool {
    let q = FieldSpec::Rational;
    let mut rng = SplitMix64::new(seed ^ 0xF0C5);
    let e = |x: &Matrix<Scalar>, i: usize, j: usize| x.entry(i, j).clone();
    let det2 = |a: Scalar, b: Scalar, c: Scalar, d: Scalar| a.mul(&d).sub(&b.mul(&c));
    for _ in 0..20 {
        let x = random_matrix(3, q, &mut rng);
        let y = random_matrix(3, q, &mut rng);
        let p33 = e(&x, 3, 1)
            .mul(&e(&y, 1, 1))
            .add(&e(&x, 3, 2).mul(&e(&y, 2, 1)))
            .add(&e(&x, 3, 3).mul(&e(&y, 3, 1)));
        let p23 = det2(e(&x, 2, 1), e(&x, 2, 2), e(&x, 3, 1), e(&x, 3, 2))
            .mul(&e(&y, 2, 1))
            .add(&det2(e(&x, 2, 1), e(&x, 2, 3), e(&x, 3, 1), e(&x, 3, 3)).mul(&e(&y, 3, 1)));
        let p32 = e(&x, 3, 1)
            .mul(&det2(e(&y, 1, 1), e(&y, 1, 2), e(&y, 3, 1), e(&y, 3, 2)))
            .add(&e(&x, 3, 2).mul(&det2(e(&y, 2, 1), e(&y, 2, 2), e(&y, 3, 1), e(&y, 3, 2))));
        if p_pair(&x, &y, 3, 3).unwrap() != p33
            || p_pair(&x, &y, 2, 3).unwrap() != p23
            || p_pair(&x, &y, 3, 2).unwrap() != p32
        {
            return false;
        }
    }
    true
}
