//! Bad-prime data of the genus 2, 3, 4 example curves.

use hecl_core::reduction::{analyze_prime, bad_prime_candidates, PrimeAnalysis};
use hecl_core::{CurveSpec, IntPoly};
use num_bigint::{BigInt, BigUint};

fn product(factors: &[&[i64]]) -> Vec<BigInt> {
    factors
        .iter()
        .fold(IntPoly::one(), |acc, f| acc.mul(&IntPoly::from_i64(f)))
        .coeffs()
        .to_vec()
}

/// Checks the bad primes of `curve` and each (factor, f_p) against the
/// expected list.
fn check(curve: &CurveSpec, expected: &[(u64, Vec<BigInt>, usize)]) {
    let primes: Vec<BigUint> = expected.iter().map(|e| BigUint::from(e.0)).collect();
    assert_eq!(bad_prime_candidates(curve).unwrap(), primes);
    for (p, factor, f_p) in expected {
        let PrimeAnalysis::Bad(report) = analyze_prime(curve, &BigUint::from(*p)).unwrap() else {
            panic!("p={p} reported good");
        };
        let lf = &report.local_factor_inv;
        assert_eq!(lf.f_p, *f_p, "f_p at {p}");
        match lf.truncated_at {
            None => assert_eq!(&lf.coeffs, factor, "factor at {p}"),
            Some(k) => assert_eq!(lf.coeffs[..], factor[..=k], "factor at {p}"),
        }
    }
}

#[test]
fn genus_two_curve() {
    let curve = CurveSpec::from_i64(&[-1, -3, -3, -3, -3, 1], &[1, 3, 1]).unwrap();
    check(
        &curve,
        &[
            (2, product(&[&[1, 0, 1]]), 2),
            (3, product(&[&[1, 1], &[1, -1, 3]]), 1),
            (7, product(&[&[1, -1], &[1, 3, 7]]), 1),
            (101, product(&[&[1, 1], &[1, 3, 101]]), 1),
            (163, product(&[&[1, -1], &[1, 11, 163]]), 1),
        ],
    );
}

#[test]
fn genus_three_curve() {
    let curve =
        CurveSpec::from_i64(&[-1, 0, 0, 2, 2, 2, 1, 1], &[2, 1, 1, -1]).unwrap();
    check(
        &curve,
        &[
            (2, product(&[&[1, -1], &[1, 1], &[1, -1, 2]]), 2),
            (3, product(&[&[1, 1], &[1, 0, -1]]), 3),
            (11, product(&[&[1, 1], &[1, 1], &[1, -4, 11]]), 2),
            (37, product(&[&[1, -1], &[1, 4, 14, 148, 37 * 37]]), 1),
        ],
    );
}

#[test]
fn genus_four_curve() {
    let curve = CurveSpec::from_i64(
        &[0, 1, 2, 2, -2, 0, 0, 1, -2, 1],
        &[-1, -1, -2, 1, -2],
    )
    .unwrap();
    check(
        &curve,
        &[
            (3, product(&[&[1, -1], &[1, 1], &[1, 2, 4, 6, 9]]), 2),
            (7, product(&[&[1, 0, 0, 1], &[1, 3, 7]]), 3),
            (31, product(&[&[1, -1], &[1, 0, 51, 36, 1581, 0, 31 * 31 * 31]]), 1),
            (
                53,
                product(&[&[1, 1], &[1, 3, 29, 670, 1537, 8427, 53 * 53 * 53]]),
                1,
            ),
        ],
    );
}

#[test]
fn genus_three_curve_with_good_reduction_at_two() {
    let curve = CurveSpec::from_i64(&[0, 1, 3, 1, -2, 0, -2, 1], &[1, 2, 3, 3]).unwrap();
    assert_eq!(
        curve.f(),
        &IntPoly::from_i64(&[1, 8, 22, 22, 13, 18, 1, 4])
    );
    for (p, factor, f_p) in [
        (3u64, product(&[&[1, -1], &[1, 1, 0, 3, 9]]), 1usize),
        (13, product(&[&[1, 0, 1], &[1, 5, 13]]), 2),
        (97, product(&[&[1, 1], &[1, 6, 78, 582, 97 * 97]]), 1),
    ] {
        let PrimeAnalysis::Bad(report) = analyze_prime(&curve, &BigUint::from(p)).unwrap() else {
            panic!("p={p} reported good");
        };
        assert_eq!(report.local_factor_inv.coeffs, factor, "p={p}");
        assert_eq!(report.f_p, f_p);
    }
    let err = analyze_prime(&curve, &BigUint::from(5u32)).unwrap_err();
    assert!(err.to_string().contains("p=5 not semistable"), "{err}");
}

#[test]
fn genus_four_curve_bad_at_two_only_in_naive_model() {
    let curve =
        CurveSpec::from_i64(&[0, 0, 0, 1, 0, 1, 0, 1, -1, 1], &[1, 0, 0, 0, -1]).unwrap();
    let err = analyze_prime(&curve, &BigUint::from(2u32)).unwrap_err();
    assert_eq!(err.to_string(), "p=2 not semistable (gcd(h̄,h̄′,ḡ′) ≠ 1)");
    let PrimeAnalysis::Bad(report) = analyze_prime(&curve, &BigUint::from(317u32)).unwrap() else {
        panic!("317 reported good");
    };
    assert_eq!(report.f_p, 1);
    // (1 + T)(1 - 32 T + 991 T^2 + ...), known through T^2 within the
    // counting budget
    let lf = &report.local_factor_inv;
    assert!(lf.truncated_at.is_some_and(|k| k >= 2));
    let expected = product(&[&[1, 1], &[1, -32, 991]]);
    assert_eq!(lf.coeffs[..3], expected[..3]);
}
