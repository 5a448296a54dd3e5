//! Point counts against brute-force enumeration, zeta numerator
//! identities, reduction cross-checks and Dirichlet series properties.

use std::collections::HashMap;

use hecl_core::arith::field::{is_square, ExtField, Field, PrimeField};
use hecl_core::arith::fpoly::FPoly;
use hecl_core::lseries::LSeriesData;
use hecl_core::reduction::{analyze_prime, bad_prime_candidates, NormalizationEq, PrimeAnalysis};
use hecl_core::zeta::{
    good_local_factors, good_model, series_inverse, zeta_numerator_from_counts, CountVector,
    LocalFactorInv, PlaneModel,
};
use hecl_core::{CurveSpec, IntPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BRUTE_LIMIT: u64 = 2048;

fn random_curve(rng: &mut ChaCha8Rng, genus: usize) -> CurveSpec {
    loop {
        let mut g: Vec<i64> = (0..=2 * genus).map(|_| rng.gen_range(-3..=3)).collect();
        g.push(1);
        let h: Vec<i64> = (0..=genus).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(c) = CurveSpec::from_i64(&g, &h) {
            return c;
        }
    }
}

/// Binary field `F_(2^n)` on bitmasks, reduction by `modulus` (bit `n` set).
struct Gf2n {
    n: u32,
    modulus: u64,
}

impl Gf2n {
    fn new(n: u32) -> Self {
        let base = PrimeField::new(2).unwrap();
        for m in (1u64 << n)..(1u64 << (n + 1)) {
            let c: Vec<u64> = (0..=n).map(|i| (m >> i) & 1).collect();
            if FPoly::new(base, c).is_irreducible() {
                return Self { n, modulus: m };
            }
        }
        unreachable!()
    }

    fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.n) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r
    }

    fn eval(&self, f: &[u64], x: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| self.mul(acc, x) ^ (c & 1))
    }

    /// Projective count of `y^2 + h y = g` with `deg g` odd.
    fn count(&self, h: &[u64], g: &[u64]) -> u64 {
        let q = 1u64 << self.n;
        let sq: Vec<u64> = (0..q).map(|y| self.mul(y, y)).collect();
        let mut total = 1;
        for x in 0..q {
            let h0 = self.eval(h, x);
            let g0 = self.eval(g, x);
            total += (0..q)
                .filter(|&y| sq[y as usize] ^ self.mul(h0, y) == g0)
                .count() as u64;
        }
        total
    }
}

/// Projective count of `y^2 = f` over `F_(p^n)`, `p` odd, `deg f` odd.
fn brute_odd(p: u64, n: u32, f: &[u64], rng: &mut ChaCha8Rng) -> u64 {
    let base = PrimeField::new(p).unwrap();
    let ext = ExtField::random(&base, n as usize, rng);
    let elems = ext.elements();
    let mut squares: HashMap<Vec<u64>, u64> = HashMap::new();
    for y in &elems {
        *squares.entry(ext.mul(y, y)).or_default() += 1;
    }
    let f = FPoly::new(base, f.to_vec());
    1 + elems
        .iter()
        .map(|x| squares.get(&ext.eval_base_poly(&f, x)).copied().unwrap_or(0))
        .sum::<u64>()
}

fn brute_count(model: &PlaneModel, n: u32, rng: &mut ChaCha8Rng) -> u64 {
    match model {
        PlaneModel::Char2 { h, g } => Gf2n::new(n).count(h, g),
        PlaneModel::Odd { p, f } => brute_odd(*p, n, f, rng),
        PlaneModel::Superelliptic { .. } => unreachable!(),
    }
}

#[test]
fn random_smooth_models_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    let mut models = 0;
    while models < 100 {
        let genus = if models % 2 == 0 { 2 } else { 3 };
        let curve = random_curve(&mut rng, genus);
        let p = [2u64, 3, 5, 7, 11, 13][rng.gen_range(0..6)];
        let Ok(model) = good_model(&curve, p) else {
            continue;
        };
        models += 1;
        let mut counts = Vec::new();
        let mut n = 1;
        while n <= genus as u32 + 1 {
            let c = model.count(n).unwrap();
            if p.pow(n) <= BRUTE_LIMIT {
                assert_eq!(c, brute_count(&model, n, &mut rng), "p={p} n={n} {model:?}");
                checked += 1;
            }
            counts.push(c);
            n += 1;
        }
        // the extra count is cross-checked against the recovered numerator
        let zeta =
            zeta_numerator_from_counts(&CountVector { q: p, counts }, genus).unwrap();
        assert!(zeta.is_complete());
        assert!(zeta.satisfies_functional_equation(), "{zeta:?}");
        assert!(zeta.weil_deviation().unwrap() < 1e-6, "{zeta:?}");
    }
    assert!(checked >= 200, "{checked}");
}

/// Counts of the singular fibre and of its normalization differ by
/// `sum over double points of d * eps^(n/d)` for `d | n`.
#[test]
fn singular_fibre_counts_match_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut cases = 0;
    let mut trials = 0;
    while cases < 40 {
        trials += 1;
        assert!(trials < 5000, "too few semistable bad primes");
        let curve = random_curve(&mut rng, 2);
        for p in bad_prime_candidates(&curve).unwrap() {
            let Some(pu) = p.to_u64().filter(|&p| p <= 7) else {
                continue;
            };
            let Ok(PrimeAnalysis::Bad(report)) = analyze_prime(&curve, &p) else {
                continue;
            };
            let field = PrimeField::new(pu).unwrap();
            let (singular, normal) = match &report.normalization {
                NormalizationEq::Char2 { h, g } => (
                    PlaneModel::Char2 {
                        h: curve.h().reduce_mod(&field).into_coeffs(),
                        g: curve.g().reduce_mod(&field).into_coeffs(),
                    },
                    PlaneModel::Char2 { h: h.clone(), g: g.clone() },
                ),
                NormalizationEq::Odd { unit, s } => {
                    let u = unit.to_u64().unwrap();
                    (
                        PlaneModel::Odd {
                            p: pu,
                            f: curve.f().reduce_mod(&field).into_coeffs(),
                        },
                        PlaneModel::Odd {
                            p: pu,
                            f: s.iter().map(|c| c.to_u64().unwrap() * u % pu).collect(),
                        },
                    )
                }
            };
            for n in 1..=2u32 {
                let lhs = brute_count(&singular, n, &mut rng) as i64;
                let correction: i64 = report
                    .points
                    .iter()
                    .filter(|pt| n as usize % pt.degree == 0)
                    .map(|pt| {
                        let e = (pt.epsilon as i64).pow(n / pt.degree as u32);
                        pt.degree as i64 * e
                    })
                    .sum();
                let rhs = brute_count(&normal, n, &mut rng) as i64 - correction;
                assert_eq!(lhs, rhs, "p={pu} n={n} {report:?}");
            }
            cases += 1;
        }
    }
}

#[test]
fn is_square_is_modulus_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(121);
    for p in [3u64, 5, 7, 11] {
        let base = PrimeField::new(p).unwrap();
        let mut d = 1;
        while p.pow(d) <= 121 {
            let fields = [
                ExtField::random(&base, d as usize, &mut rng),
                ExtField::random(&base, d as usize, &mut rng),
            ];
            let mut per_field = Vec::new();
            for ext in &fields {
                let elems = ext.elements();
                let squares: std::collections::HashSet<Vec<u64>> =
                    elems.iter().map(|y| ext.mul(y, y)).collect();
                let mut n_sq = 0;
                for a in elems.iter().filter(|a| !ext.is_zero(a)) {
                    let s = is_square(ext, a).unwrap();
                    assert_eq!(s, squares.contains(a));
                    n_sq += s as u64;
                }
                assert_eq!(n_sq, (p.pow(d) - 1) / 2);
                let from_base: Vec<bool> = (1..p)
                    .map(|c| is_square(ext, &ext.from_base(&c)).unwrap())
                    .collect();
                per_field.push(from_base);
            }
            assert_eq!(per_field[0], per_field[1], "p={p} d={d}");
            d += 1;
        }
    }
}

fn genus_two_series(cutoff: u64) -> (CurveSpec, LSeriesData) {
    let curve = CurveSpec::from_i64(&[-1, -3, -3, -3, -3, 1], &[1, 3, 1]).unwrap();
    let bad: Vec<BigUint> = bad_prime_candidates(&curve).unwrap();
    let skip: Vec<u64> = bad.iter().map(|p| p.to_u64().unwrap()).collect();
    let mut factors = good_local_factors(&curve, cutoff, &skip).unwrap();
    let mut n = BigUint::from(1u32);
    for p in &bad {
        let PrimeAnalysis::Bad(r) = analyze_prime(&curve, p).unwrap() else {
            panic!()
        };
        let lf = r.local_factor_for_cutoff(cutoff).unwrap();
        n *= p.pow(lf.f_p as u32);
        factors.insert(p.to_u64().unwrap(), lf);
    }
    let data = LSeriesData::assemble(2, n, cutoff, &factors, &[]).unwrap();
    (curve, data)
}

#[test]
fn dirichlet_series_properties() {
    let cutoff = 20_000;
    let (curve, data) = genus_two_series(cutoff);
    assert_eq!(data.a(1), &BigInt::from(1));
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut pairs = 0;
    while pairs < 1000 {
        let m = rng.gen_range(2..=cutoff / 2);
        let n = rng.gen_range(2..=cutoff / m);
        if m.gcd(&n) != 1 {
            continue;
        }
        assert_eq!(data.a(m * n), &(data.a(m) * data.a(n)), "m={m} n={n}");
        pairs += 1;
    }

    // prime-power recurrences, p <= 50, k <= 5
    let skip = [2u64, 3, 7, 101, 163];
    for p in (2..=50u64).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let factor: LocalFactorInv = match skip.contains(&p) {
            true => data.factors.iter().find(|f| f.p == BigUint::from(p)).unwrap().clone(),
            false => hecl_core::zeta::good_local_factor(&curve, p, p.pow(5)).unwrap(),
        };
        assert!(factor.valid_degree() >= 4, "p={p}");
        let b = series_inverse(&factor.coeffs, 5);
        for k in 1..=5usize {
            let mut acc = BigInt::zero();
            for (i, c) in factor.coeffs.iter().enumerate().take(k + 1) {
                acc += c * &b[k - i];
            }
            assert!(acc.is_zero(), "p={p} k={k}");
            if p.pow(k as u32) <= cutoff {
                assert_eq!(data.a(p.pow(k as u32)), &b[k], "p={p} k={k}");
            }
        }
    }

    // Weil bound at good primes
    for p in (2..=cutoff).filter(|&p| !skip.contains(&p) && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        let ap = data.a(p);
        assert!(ap * ap <= BigInt::from(16 * p), "p={p} a_p={ap}");
    }
}

#[test]
fn lseries_round_trips_through_json() {
    let (_, data) = genus_two_series(500);
    let text = serde_json::to_string(&data).unwrap();
    let back: LSeriesData = serde_json::from_str(&text).unwrap();
    assert_eq!(back, data);
    assert_eq!(
        IntPoly::new(data.factors[0].coeffs.clone()),
        IntPoly::from_i64(&[1, 0, 1])
    );
}
