//! Point counts over `F_(p^n)`, zeta numerators and local factors.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::factor::DEFAULT_SEED;
use crate::arith::field::PrimeField;
use crate::arith::fpoly::FPoly;
use crate::arith::intpoly::IntPoly;
use crate::arith::primes::{ilog, primes_up_to};
use crate::arith::tables::{
    jacobi, power_root_count_prime, quadratic_character_sum_prime, SmallFq, MAX_TABLE_ORDER,
};
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::reduction::{BadPrimeReport, NormalizationEq};
use crate::serde_str;

/// Bad primes are counted completely when `p^n` stays below this bound,
/// even if the cutoff `M` would allow truncation.
pub const BAD_PRIME_COUNT_BUDGET: u64 = 1 << 22;

/// Relative tolerance of the numerical Weil root check.
pub const WEIL_TOLERANCE: f64 = 1e-6;

/// `N_1, ..., N_m` for a curve over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub q: u64,
    pub counts: Vec<u64>,
}

/// `P(T) = 1 + c_1 T + ... + c_(2g) T^(2g)`, possibly only known up to
/// degree `truncated_at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaNumerator {
    pub q: u64,
    pub genus: usize,
    pub coeffs: Vec<BigInt>,
    pub truncated_at: Option<usize>,
}

impl ZetaNumerator {
    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    /// `c_(2g-i) = q^(g-i) c_i` for `0 <= i <= g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        if !self.is_complete() || self.coeffs.len() != 2 * self.genus + 1 {
            return false;
        }
        let q = BigInt::from(self.q);
        (0..=self.genus).all(|i| {
            let scale = num_traits::pow(q.clone(), self.genus - i);
            self.coeffs[2 * self.genus - i] == &self.coeffs[i] * scale
        })
    }

    /// Largest `| |alpha| / sqrt(q) - 1 |` over the reciprocal roots.
    pub fn weil_deviation(&self) -> Result<f64> {
        if !self.is_complete() {
            return Err(Error::InvalidArgument(
                "Weil check needs a complete numerator".into(),
            ));
        }
        weil_deviation(&self.coeffs, self.q)
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

/// Inverse local factor: an integer polynomial in `T = p^(-s)` with
/// constant term 1, valid up to degree `truncated_at` when truncated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFactorInv {
    #[serde(with = "serde_str::uint")]
    pub p: BigUint,
    #[serde(with = "serde_str::int_vec")]
    pub coeffs: Vec<BigInt>,
    pub truncated_at: Option<usize>,
    pub f_p: usize,
}

impl LocalFactorInv {
    pub fn new(
        p: BigUint,
        coeffs: Vec<BigInt>,
        truncated_at: Option<usize>,
        f_p: usize,
    ) -> Result<Self> {
        let poly = IntPoly::new(coeffs);
        if poly.coeff(0) != BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "inverse local factor at {p} must have constant term 1"
            )));
        }
        let mut coeffs = poly.coeffs().to_vec();
        if let Some(k) = truncated_at {
            coeffs.truncate(k + 1);
            coeffs = IntPoly::new(coeffs).coeffs().to_vec();
        }
        Ok(Self {
            p,
            coeffs,
            truncated_at,
            f_p,
        })
    }

    /// Highest degree whose coefficient is known.
    pub fn valid_degree(&self) -> usize {
        self.truncated_at.unwrap_or(usize::MAX)
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn p_u64(&self) -> Option<u64> {
        self.p.to_u64()
    }
}

/// Smooth plane models whose points can be enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneModel {
    /// `y^2 + h y = g` over `F_2`, one point at infinity.
    Char2 { h: Vec<u64>, g: Vec<u64> },
    /// `y^2 = f` over `F_p`, `p` odd.
    Odd { p: u64, f: Vec<u64> },
    /// `y^m = f` over `F_p` with `gcd(m, deg f) = 1`.
    Superelliptic { p: u64, m: u32, f: Vec<u64> },
}

impl PlaneModel {
    pub fn p(&self) -> u64 {
        match self {
            Self::Char2 { .. } => 2,
            Self::Odd { p, .. } | Self::Superelliptic { p, .. } => *p,
        }
    }

    /// `|C(F_(p^n))|`.
    pub fn count(&self, n: u32) -> Result<u64> {
        let p = self.p();
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree 0".into()));
        }
        let owned;
        let field = if n == 1 && p != 2 {
            None
        } else {
            owned = SmallFq::new(p, n, DEFAULT_SEED)?;
            Some(&owned)
        };
        let q = field.map_or(p, SmallFq::q);
        match self {
            Self::Char2 { h, g } => {
                let t = field.expect("char 2 always tabulated");
                Ok(1 + t.artin_schreier_count(h, g))
            }
            Self::Odd { f, .. } => {
                let s = match field {
                    None => quadratic_character_sum_prime(f, p),
                    Some(t) => t.quadratic_character_sum(f),
                };
                let affine = q as i64 + s;
                let deg = f.len().saturating_sub(1);
                let at_inf = if deg % 2 == 1 {
                    1
                } else {
                    let lc = *f.last().unwrap_or(&0);
                    if lc == 0 {
                        return Err(Error::InvalidArgument("zero polynomial".into()));
                    }
                    if n % 2 == 0 || jacobi(lc, p) == 1 {
                        2
                    } else {
                        0
                    }
                };
                Ok((affine + at_inf) as u64)
            }
            Self::Superelliptic { m, f, .. } => {
                let affine = match field {
                    None => power_root_count_prime(f, p, *m),
                    Some(t) => t.power_root_count(f, *m),
                };
                Ok(affine + 1)
            }
        }
    }

    /// Counts for `n = 1..=n_max`.
    pub fn count_vector(&self, n_max: u32) -> Result<CountVector> {
        let p = self.p();
        let counts = (1..=n_max)
            .map(|n| self.count(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(CountVector { q: p, counts })
    }
}

/// `|C(F_(2^n))|` for `y^2 + h y = g`, one point at infinity.
pub fn count_char2(h: &FPoly<PrimeField>, g: &FPoly<PrimeField>, n: u32) -> Result<u64> {
    if h.field().p() != 2 {
        return Err(Error::InvalidArgument("count_char2 needs F_2".into()));
    }
    PlaneModel::Char2 {
        h: h.coeffs().to_vec(),
        g: g.coeffs().to_vec(),
    }
    .count(n)
}

/// `|C(F_(p^n))|` for `y^2 = f`, `p` odd. Even degree contributes two or
/// zero points at infinity according to the square class of `lc(f)`.
pub fn count_odd(f: &FPoly<PrimeField>, n: u32) -> Result<u64> {
    let p = f.field().p();
    if p == 2 {
        return Err(Error::InvalidArgument("count_odd needs odd p".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    PlaneModel::Odd {
        p,
        f: f.coeffs().to_vec(),
    }
    .count(n)
}

fn newton_coefficients(q: u64, counts: &[u64]) -> Result<Vec<BigInt>> {
    let q = BigInt::from(q);
    let s: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| num_traits::pow(q.clone(), i + 1) + 1 - BigInt::from(n))
        .collect();
    let mut c = vec![BigInt::one()];
    for k in 1..=counts.len() {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &s[i - 1] * &c[k - i];
        }
        let kk = BigInt::from(k);
        if !(&acc % &kk).is_zero() {
            return Err(Error::DataIntegrity(format!(
                "Newton recovery of c_{k} is not integral (counts {counts:?})"
            )));
        }
        c.push(-(acc / kk));
    }
    Ok(c)
}

/// Recovers `P(T)` from `N_1..N_m`. With `m >= g` the upper half follows
/// from `c_(2g-i) = q^(g-i) c_i`; any counts beyond `g` are cross-checked.
pub fn zeta_numerator_from_counts(counts: &CountVector, genus: usize) -> Result<ZetaNumerator> {
    let q = counts.q;
    let m = counts.counts.len();
    let newton = newton_coefficients(q, &counts.counts)?;
    if let Some(c1) = newton.get(1) {
        // |c_1| <= 2 g sqrt(q)
        let bound = BigInt::from(4 * genus as u64 * genus as u64) * BigInt::from(q);
        if c1 * c1 > bound {
            return Err(Error::DataIntegrity(format!(
                "c_1 = {c1} violates the Weil bound for genus {genus}, q = {q}"
            )));
        }
    }
    if m < genus {
        return Ok(ZetaNumerator {
            q,
            genus,
            coeffs: IntPoly::new(newton).coeffs().to_vec(),
            truncated_at: Some(m),
        });
    }
    let mut full = vec![BigInt::zero(); 2 * genus + 1];
    full[..=genus].clone_from_slice(&newton[..=genus]);
    let qb = BigInt::from(q);
    for i in 0..genus {
        full[2 * genus - i] = &full[i] * num_traits::pow(qb.clone(), genus - i);
    }
    for (k, c) in newton.iter().enumerate().skip(genus + 1) {
        let expect = full.get(k).cloned().unwrap_or_default();
        if *c != expect {
            return Err(Error::DataIntegrity(format!(
                "count N_{k} contradicts the functional equation (c_{k} = {c}, expected {expect})"
            )));
        }
    }
    Ok(ZetaNumerator {
        q,
        genus,
        coeffs: full,
        truncated_at: None,
    })
}

fn weil_deviation(coeffs: &[BigInt], q: u64) -> Result<f64> {
    let poly = IntPoly::new(coeffs.to_vec());
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(0.0);
    }
    let sf = poly.squarefree_part();
    let sq = (q as f64).sqrt();
    // u = sqrt(q) T puts the roots on the unit circle
    let scaled: Vec<Complex64> = sf
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| Complex64::new(c.to_f64().unwrap_or(f64::INFINITY) / sq.powi(k as i32), 0.0))
        .collect();
    let roots = aberth(&scaled)?;
    Ok(roots
        .iter()
        .map(|r| (r.norm() - 1.0).abs())
        .fold(0.0, f64::max))
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous root finding (Aberth–Ehrlich) for a polynomial with
/// simple roots.
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
    }
    if z.iter().all(|r| r.is_finite()) {
        Ok(z)
    } else {
        Err(Error::InternalConsistency("root finder diverged".into()))
    }
}

/// Number of counts needed for a genus-`g` curve at `p` under cutoff `m`,
/// and whether that leaves the numerator truncated.
fn count_depth(p: u64, genus: usize, cutoff: u64) -> (u32, bool) {
    let j = ilog(p, cutoff) as usize;
    if j >= genus {
        (genus as u32, false)
    } else {
        (j as u32, true)
    }
}

/// `1/L_p` at a prime of good reduction, truncated at `floor(log_p M)`.
pub fn good_local_factor(curve: &CurveSpec, p: u64, cutoff: u64) -> Result<LocalFactorInv> {
    let model = good_model(curve, p)?;
    local_factor_from_model(&model, curve.genus(), cutoff)
}

/// The smooth reduction of `curve` at a good prime.
pub fn good_model(curve: &CurveSpec, p: u64) -> Result<PlaneModel> {
    let field = PrimeField::new(p)?;
    if p == 2 {
        let h = curve.h().reduce_mod(&field);
        let g = curve.g().reduce_mod(&field);
        let t = h.derivative().square().mul(&g).add(&g.derivative().square());
        let bad = h.is_zero() || crate::arith::fpoly::gcd_poly(&h, &t)?.degree() != Some(0);
        if bad {
            return Err(Error::InvalidArgument("p=2 is not a prime of good reduction".into()));
        }
        return Ok(PlaneModel::Char2 {
            h: h.into_coeffs(),
            g: g.into_coeffs(),
        });
    }
    if !curve.is_good_odd(p) {
        return Err(Error::InvalidArgument(format!(
            "p={p} divides the discriminant"
        )));
    }
    Ok(PlaneModel::Odd {
        p,
        f: curve.f().reduce_mod(&field).into_coeffs(),
    })
}

/// Counts `model` as deeply as the cutoff requires and returns the inverse
/// local factor of a smooth genus-`genus` curve.
pub fn local_factor_from_model(
    model: &PlaneModel,
    genus: usize,
    cutoff: u64,
) -> Result<LocalFactorInv> {
    let p = model.p();
    let (depth, truncated) = count_depth(p, genus, cutoff);
    let counts = model.count_vector(depth)?;
    let zeta = zeta_numerator_from_counts(&counts, genus)?;
    debug_assert_eq!(zeta.is_complete(), !truncated || genus == 0);
    LocalFactorInv::new(BigUint::from(p), zeta.coeffs, zeta.truncated_at, 0)
}

/// Good-prime factors for every prime `<= cutoff` not in `skip`, computed
/// in parallel and collected in prime order.
pub fn good_local_factors(
    curve: &CurveSpec,
    cutoff: u64,
    skip: &[u64],
) -> Result<BTreeMap<u64, LocalFactorInv>> {
    let primes: Vec<u64> = primes_up_to(cutoff)
        .into_iter()
        .filter(|p| !skip.contains(p))
        .collect();
    local_factors_for(&primes, cutoff, |p| good_model(curve, p), curve.genus())
}

/// Parallel map over primes with a deterministic result order.
pub fn local_factors_for(
    primes: &[u64],
    cutoff: u64,
    model: impl Fn(u64) -> Result<PlaneModel> + Sync,
    genus: usize,
) -> Result<BTreeMap<u64, LocalFactorInv>> {
    // Large primes first so the expensive sweeps start early.
    let mut order: Vec<u64> = primes.to_vec();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let results: Vec<(u64, Result<LocalFactorInv>)> = order
        .par_iter()
        .map(|&p| (p, model(p).and_then(|m| local_factor_from_model(&m, genus, cutoff))))
        .collect();
    let mut out = BTreeMap::new();
    for (p, r) in results {
        out.insert(p, r?);
    }
    Ok(out)
}

/// The plane model of the normalization in a bad-prime report.
pub fn normalization_model(report: &BadPrimeReport) -> Result<PlaneModel> {
    let p = report.p.to_u64().filter(|&p| p < MAX_TABLE_ORDER);
    match &report.normalization {
        NormalizationEq::Char2 { h, g } => Ok(PlaneModel::Char2 {
            h: h.clone(),
            g: g.clone(),
        }),
        NormalizationEq::Odd { unit, s } => {
            let p = p.ok_or_else(|| Error::FieldTooLarge(report.p.to_string()))?;
            let unit = unit.to_u64().expect("residue below p");
            let f = s
                .iter()
                .map(|c| c.to_u64().expect("residue below p") * unit % p)
                .collect();
            Ok(PlaneModel::Odd { p, f })
        }
    }
}

/// `P(Y_0, T) * prod(1 - eps T^d)` for a bad semistable prime. With
/// `cutoff = None` the normalization is counted completely when
/// `p^g0 <= BAD_PRIME_COUNT_BUDGET`; otherwise the count depth follows
/// the larger of the cutoff and the budget.
pub fn bad_local_factor(report: &BadPrimeReport, cutoff: Option<u64>) -> Result<LocalFactorInv> {
    let g0 = report.genus0;
    let effective = cutoff.unwrap_or(0).max(BAD_PRIME_COUNT_BUDGET);
    let depth = match report.p.to_u64() {
        Some(p) if g0 > 0 => count_depth(p, g0, effective).0,
        _ => 0,
    };
    let numerator = if g0 == 0 {
        ZetaNumerator {
            q: 0,
            genus: 0,
            coeffs: vec![BigInt::one()],
            truncated_at: None,
        }
    } else if depth == 0 {
        ZetaNumerator {
            q: 0,
            genus: g0,
            coeffs: vec![BigInt::one()],
            truncated_at: Some(0),
        }
    } else {
        let model = normalization_model(report)?;
        let counts = model.count_vector(depth)?;
        zeta_numerator_from_counts(&counts, g0)?
    };
    let mut poly = numerator.as_poly();
    for pt in &report.points {
        let mut c = vec![BigInt::zero(); pt.degree + 1];
        c[0] = BigInt::one();
        c[pt.degree] = BigInt::from(-pt.epsilon as i64);
        poly = poly.mul(&IntPoly::new(c));
    }
    LocalFactorInv::new(
        report.p.clone(),
        poly.coeffs().to_vec(),
        numerator.truncated_at,
        report.f_p,
    )
}

/// Power-series inverse of `1/L_p` to degree `k`: `b_0..b_k`.
pub fn series_inverse(factor: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); k + 1];
    b[0] = BigInt::one();
    for n in 1..=k {
        let mut acc = BigInt::zero();
        for i in 1..=n.min(factor.len().saturating_sub(1)) {
            acc += &factor[i] * &b[n - i];
        }
        b[n] = -acc;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{ExtField, Field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64, c: &[i64]) -> FPoly<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        FPoly::new(f, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    fn brute_odd(p: u64, f: &[i64], n: usize) -> u64 {
        let base = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ext = ExtField::random(&base, n, &mut rng);
        let poly = fp(p, f);
        let elems = ext.elements();
        let squares: std::collections::BTreeMap<Vec<u64>, u64> =
            elems.iter().fold(Default::default(), |mut m, y| {
                *m.entry(ext.mul(y, y)).or_insert(0) += 1;
                m
            });
        let affine: u64 = elems
            .iter()
            .map(|x| squares.get(&ext.eval_base_poly(&poly, x)).copied().unwrap_or(0))
            .sum();
        affine + 1
    }

    #[test]
    fn count_odd_examples() {
        assert_eq!(count_odd(&fp(3, &[2, 0, 1, 1]), 1).unwrap(), 3);
        assert_eq!(count_odd(&fp(5, &[0, 1]), 1).unwrap(), 6);
        // 4(x^3 + x + 4) over F_5
        let f = fp(5, &[16, 4, 0, 4]);
        assert_eq!(count_odd(&f, 1).unwrap(), 9);
        assert_eq!(count_odd(&f, 1).unwrap(), brute_odd(5, &[16, 4, 0, 4], 1));
    }

    #[test]
    fn count_odd_even_degree_branch() {
        // v^2 = 2 x^2 + 1 over F_3: lc 2 nonsquare -> no points at infinity
        let f = fp(3, &[1, 0, 2]);
        let affine = (0..3u64)
            .map(|x| {
                let v = (2 * x * x + 1) % 3;
                (0..3u64).filter(|y| y * y % 3 == v).count() as u64
            })
            .sum::<u64>();
        assert_eq!(count_odd(&f, 1).unwrap(), affine);
        // over F_9 the leading coefficient becomes a square: conic has q+1 points
        assert_eq!(count_odd(&f, 2).unwrap(), 10);
    }

    #[test]
    fn genus_zero_char2() {
        let h = fp(2, &[1]);
        let g = fp(2, &[1, 1]);
        assert_eq!(count_char2(&h, &g, 1).unwrap(), 3);
        assert_eq!(count_char2(&h, &g, 3).unwrap(), 9);
    }

    #[test]
    fn numerator_examples() {
        let z = zeta_numerator_from_counts(&CountVector { q: 3, counts: vec![3] }, 1).unwrap();
        assert_eq!(z.coeffs, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(3)]);
        let z = zeta_numerator_from_counts(&CountVector { q: 5, counts: vec![] }, 0).unwrap();
        assert_eq!(z.coeffs, vec![BigInt::one()]);
        assert!(z.is_complete());
    }

    #[test]
    fn y2_x3_plus_x_over_f5() {
        let f = fp(5, &[0, 1, 0, 1]);
        let n1 = count_odd(&f, 1).unwrap();
        assert_eq!(n1, 4);
        let z = zeta_numerator_from_counts(&CountVector { q: 5, counts: vec![n1] }, 1).unwrap();
        assert_eq!(z.coeffs, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(5)]);
        // alpha^2 + conj^2 = c_1^2 - 2q = 4 - 10 = -6
        let n2 = brute_odd(5, &[0, 1, 0, 1], 2);
        assert_eq!(n2 as i64, 25 + 1 - (-6));
        assert_eq!(count_odd(&f, 2).unwrap(), n2);
    }

    #[test]
    fn inconsistent_counts_rejected() {
        // genus 1 over F_3 with N_1 = 3 forces N_2 = 9 + 1 - (1 - 6) = 15
        let good = CountVector { q: 3, counts: vec![3, 15] };
        assert!(zeta_numerator_from_counts(&good, 1).is_ok());
        let bad = CountVector { q: 3, counts: vec![3, 14] };
        assert!(matches!(
            zeta_numerator_from_counts(&bad, 1),
            Err(Error::DataIntegrity(_))
        ));
        // Newton integrality: k c_k must be divisible by k
        let bad = CountVector { q: 3, counts: vec![3, 12] };
        assert!(matches!(
            zeta_numerator_from_counts(&bad, 2),
            Err(Error::DataIntegrity(_))
        ));
        // Weil bound on c_1
        let bad = CountVector { q: 3, counts: vec![12] };
        assert!(zeta_numerator_from_counts(&bad, 1).is_err());
    }

    #[test]
    fn weil_check_handles_repeated_roots() {
        // (1 + 3T^2)^2, supersingular-looking, roots of multiplicity two
        let c: Vec<BigInt> = [1, 0, 6, 0, 9].iter().map(|&x| BigInt::from(x)).collect();
        assert!(weil_deviation(&c, 3).unwrap() < 1e-9);
        // 1 + T + 3T^2 has |alpha| = sqrt 3; 1 + 4T + 3T^2 = (1+T)(1+3T) does not
        let c: Vec<BigInt> = [1, 4, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert!(weil_deviation(&c, 3).unwrap() > 0.1);
    }

    #[test]
    fn series_inverse_of_geometric() {
        let f: Vec<BigInt> = [1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        let b = series_inverse(&f, 6);
        let expect: Vec<BigInt> = [1, 0, -1, 0, 1, 0, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(b, expect);
    }
}
