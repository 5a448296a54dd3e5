//! Random search for semistable curves of small conductor.

use std::collections::BTreeSet;

use hecl_core::reduction::{
    analyze_prime, bad_prime_candidates, check_semistable_p2, check_semistable_podd, PrimeAnalysis,
};
use hecl_core::{CurveSpec, IntPoly};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PipelineError, Result};
use crate::io::CurveInput;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Samples drawn per requested curve before giving up.
pub const DEFAULT_BUDGET_PER_CURVE: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub genus: usize,
    pub coeff_bound: i64,
    pub max_conductor: BigUint,
    pub count: usize,
    pub seed: u64,
    /// Total samples; `None` means `count * DEFAULT_BUDGET_PER_CURVE`.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub curves: Vec<CurveInput>,
    pub samples: u64,
    /// Set when the budget ran out before `count` curves were found.
    pub exhausted: bool,
}

/// Odd primes up to `bound`, for stripping the discriminant cheaply.
fn small_odd_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            if i > 2 {
                out.push(i as u64);
            }
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    out
}

/// Conductor of a curve that is semistable everywhere, or `None` if some
/// prime fails the test or the conductor exceeds `max`.
fn semistable_conductor(curve: &CurveSpec, max: &BigUint, small: &[u64]) -> Result<Option<BigUint>> {
    if !check_semistable_p2(curve).is_semistable() {
        return Ok(None);
    }
    // Every odd prime of the discriminant is bad, so the odd part of
    // the radical is a lower bound for the conductor.
    let mut rest = curve.disc_abs();
    while (&rest % 2u32).is_zero() {
        rest /= 2u32;
    }
    let mut radical = BigUint::one();
    for &p in small {
        if rest.is_one() || &radical > max {
            break;
        }
        if (&rest % p).is_zero() {
            radical *= p;
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
    }
    // an unstripped cofactor is a product of odd bad primes
    if radical * &rest > *max {
        return Ok(None);
    }

    let mut n = BigUint::one();
    for p in bad_prime_candidates(curve)? {
        if p != BigUint::from(2u32) && !check_semistable_podd(curve, &p)?.is_semistable() {
            return Ok(None);
        }
        if let PrimeAnalysis::Bad(r) = analyze_prime(curve, &p)? {
            n *= p.pow(r.f_p as u32);
            if &n > max {
                return Ok(None);
            }
        }
    }
    Ok(Some(n))
}

fn sample(rng: &mut ChaCha8Rng, genus: usize, bound: i64) -> (Vec<i64>, Vec<i64>) {
    let mut g: Vec<i64> = (0..2 * genus + 1).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.push(1);
    let h: Vec<i64> = (0..=genus).map(|_| rng.gen_range(-bound..=bound)).collect();
    (g, h)
}

/// Rejection sampling: draw `(g, h)` with coefficients in
/// `[-bound, bound]`, keep curves that are semistable at every prime and
/// have conductor at most `max_conductor`.
pub fn search(params: &SearchParams) -> Result<SearchOutcome> {
    if params.genus < 2 {
        return Err(PipelineError::Input("search needs genus >= 2".into()));
    }
    if params.coeff_bound < 1 {
        return Err(PipelineError::Input("coefficient bound must be at least 1".into()));
    }
    let budget = params
        .budget
        .unwrap_or(params.count as u64 * DEFAULT_BUDGET_PER_CURVE);
    let small_bound = u64::try_from(&params.max_conductor).unwrap_or(u64::MAX).min(1 << 20);
    let small = small_odd_primes(small_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut seen = BTreeSet::new();
    let mut curves = Vec::new();
    let mut samples = 0;
    while curves.len() < params.count && samples < budget {
        samples += 1;
        let (g, h) = sample(&mut rng, params.genus, params.coeff_bound);
        if h.iter().all(|c| c % 2 == 0) || !seen.insert((g.clone(), h.clone())) {
            continue;
        }
        let Ok(curve) = CurveSpec::new(IntPoly::from_i64(&g), IntPoly::from_i64(&h)) else {
            continue;
        };
        if semistable_conductor(&curve, &params.max_conductor, &small)?.is_some() {
            curves.push(CurveInput::hyperelliptic(&g, &h));
        }
    }
    Ok(SearchOutcome {
        exhausted: curves.len() < params.count,
        curves,
        samples,
    })
}

/// The conductor of a curve that passes every semistability test.
pub fn conductor_of(curve: &CurveInput) -> Result<BigUint> {
    Ok(crate::pipeline::bad_prime_stage(curve)?.conductor)
}
