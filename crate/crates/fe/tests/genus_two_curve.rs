//! Functional equation of a genus-two curve with conductor about 10^6.

use std::sync::OnceLock;

use hecl_core::lseries::LSeriesData;
use hecl_core::reduction::{analyze_prime, bad_prime_candidates, PrimeAnalysis};
use hecl_core::zeta::good_local_factors;
use hecl_core::CurveSpec;
use hecl_fe::theta::theta;
use hecl_fe::verify::{DEFAULT_TEST_POINTS, DEFAULT_TOLERANCE};
use hecl_fe::{choose_m, verify_fe, Verdict};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rug::Float;

fn series(cutoff: Option<u64>) -> LSeriesData {
    let curve = CurveSpec::from_i64(&[-1, -3, -3, -3, -3, 1], &[1, 3, 1]).unwrap();
    let bad = bad_prime_candidates(&curve).unwrap();
    let mut n = BigUint::from(1u32);
    let mut reports = Vec::new();
    for p in &bad {
        let PrimeAnalysis::Bad(r) = analyze_prime(&curve, p).unwrap() else {
            panic!("{p} reported good")
        };
        n *= p.pow(r.f_p as u32);
        reports.push(r);
    }
    let m = cutoff.unwrap_or_else(|| choose_m(&n, 2, 12));
    let skip: Vec<u64> = bad.iter().map(|p| p.to_u64().unwrap()).collect();
    let mut factors = good_local_factors(&curve, m, &skip).unwrap();
    for r in reports {
        factors.insert(r.p.to_u64().unwrap(), r.local_factor_for_cutoff(m).unwrap());
    }
    LSeriesData::assemble(2, n, m, &factors, &[]).unwrap()
}

fn default_series() -> &'static LSeriesData {
    static DATA: OnceLock<LSeriesData> = OnceLock::new();
    DATA.get_or_init(|| series(None))
}

#[test]
fn root_number_is_plus_one() {
    let data = default_series();
    assert_eq!(data.conductor, BigUint::from(4u64 * 3 * 7 * 101 * 163));
    let report = verify_fe(data, &DEFAULT_TEST_POINTS, DEFAULT_TOLERANCE, 128).unwrap();
    assert_eq!(report.verdict, Verdict::Verified, "{report:?}");
    assert_eq!(report.root_number, Some(1));
    assert!(report.separation().unwrap() >= 1e3);
}

#[test]
fn theta_stable_when_cutoff_doubles() {
    let data = default_series();
    let doubled = series(Some(2 * data.cutoff));
    let t = Float::with_val(128, 1.1);
    let a = theta(data, &t, 128).unwrap();
    let b = theta(&doubled, &t, 128).unwrap();
    let rel = (Float::with_val(128, &a - &b) / &b).abs().to_f64();
    assert!(rel < 1e-10, "{rel}");
}

#[test]
fn theta_stable_when_precision_doubles() {
    let data = default_series();
    let t = Float::with_val(256, 1.3);
    let lo = theta(data, &Float::with_val(128, &t), 128).unwrap();
    let hi = theta(data, &t, 256).unwrap();
    let diff = Float::with_val(256, &hi - &lo).abs() / hi.abs();
    assert!(diff.to_f64() < 2f64.powi(-64), "{diff}");
}
