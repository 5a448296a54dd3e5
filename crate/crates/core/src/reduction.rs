//! Semistability tests and the structure of the special fibre at bad
//! primes: singular locus, split/non-split double points, normalization.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::char2::{quad_solutions, sqrt_mod};
use crate::arith::factor::factor;
use crate::arith::field::{
    is_square, BigPrimeField, ExtField, PrimeField, PrimeFieldLike, MACHINE_PRIME_LIMIT,
};
use crate::arith::fpoly::{gcd_many, gcd_poly, FPoly};
use crate::arith::primes::factor_integer;
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::serde_str;
use crate::zeta::{bad_local_factor, LocalFactorInv};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Semistability {
    Semistable,
    NotSemistable { criterion: String },
}

impl Semistability {
    pub fn is_semistable(&self) -> bool {
        matches!(self, Self::Semistable)
    }
}

/// A closed double point of the special fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPoint {
    /// Monic irreducible minimal polynomial of the x-coordinate, ascending.
    #[serde(with = "serde_str::uint_vec")]
    pub poly: Vec<BigUint>,
    pub degree: usize,
    /// +1 split, -1 non-split.
    pub epsilon: i8,
}

/// Affine equation of the normalization of the special fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum NormalizationEq {
    /// `y^2 + h y = g` over `F_2` (coefficients 0/1, ascending).
    Char2 { h: Vec<u64>, g: Vec<u64> },
    /// `v^2 = unit * s` with `s` monic (residues, ascending).
    Odd {
        #[serde(with = "serde_str::uint")]
        unit: BigUint,
        #[serde(with = "serde_str::uint_vec")]
        s: Vec<BigUint>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BadPrimeReport {
    #[serde(with = "serde_str::uint")]
    pub p: BigUint,
    /// Monic singular-locus polynomial, ascending residues.
    #[serde(with = "serde_str::uint_vec")]
    pub r: Vec<BigUint>,
    pub points: Vec<SingularPoint>,
    pub normalization: NormalizationEq,
    pub f_p: usize,
    pub genus0: usize,
    pub local_factor_inv: LocalFactorInv,
    /// Set when some double point has degree > 1, so its split test was
    /// made in the residue field `F_(p^d)` rather than `F_p`.
    pub residue_field_extension: bool,
}

impl BadPrimeReport {
    fn finish(mut self) -> Result<Self> {
        let deg_r = self.r.len() - 1;
        let sum_d: usize = self.points.iter().map(|pt| pt.degree).sum();
        if deg_r != sum_d || self.f_p != deg_r {
            return Err(Error::InternalConsistency(format!(
                "p={}: deg r = {deg_r}, sum of point degrees = {sum_d}",
                self.p
            )));
        }
        self.residue_field_extension = self.points.iter().any(|pt| pt.degree > 1);
        self.local_factor_inv = bad_local_factor(&self, None)?;
        Ok(self)
    }

    /// Recomputes the local factor so it is valid to `floor(log_p M)`.
    pub fn local_factor_for_cutoff(&self, cutoff: u64) -> Result<LocalFactorInv> {
        bad_local_factor(self, Some(cutoff))
    }
}

fn residues<F: PrimeFieldLike>(poly: &FPoly<F>) -> Vec<BigUint> {
    poly.coeffs().iter().map(|c| poly.field().residue(c)).collect()
}

fn bits(poly: &FPoly<PrimeField>) -> Vec<u64> {
    poly.coeffs().to_vec()
}

fn not_semistable(p: &BigUint, criterion: impl Into<String>) -> Error {
    Error::NotSemistable {
        prime: p.clone(),
        criterion: criterion.into(),
    }
}

/// `gcd(h, (h')^2 g + (g')^2)` over `F_2`; `None` when `h = 0`.
fn singular_locus_p2(h: &FPoly<PrimeField>, g: &FPoly<PrimeField>) -> Result<Option<FPoly<PrimeField>>> {
    if h.is_zero() {
        return Ok(None);
    }
    let t = h.derivative().square().mul(g).add(&g.derivative().square());
    Ok(Some(gcd_poly(h, &t)?))
}

fn reductions_p2(curve: &CurveSpec) -> (FPoly<PrimeField>, FPoly<PrimeField>) {
    let f2 = PrimeField::new(2).expect("2 is prime");
    (curve.h().reduce_mod(&f2), curve.g().reduce_mod(&f2))
}

/// Semistable at 2 iff `h != 0 mod 2` and `gcd(h, h', g') = 1` over `F_2`.
pub fn check_semistable_p2(curve: &CurveSpec) -> Semistability {
    let (h, g) = reductions_p2(curve);
    if h.is_zero() {
        return Semistability::NotSemistable {
            criterion: "h = 0 mod 2".into(),
        };
    }
    let d = gcd_many(&[h.clone(), h.derivative(), g.derivative()]).expect("h nonzero");
    if d.is_one() {
        Semistability::Semistable
    } else {
        Semistability::NotSemistable {
            criterion: "gcd(h̄,h̄′,ḡ′) ≠ 1".into(),
        }
    }
}

/// Degree of the singular locus at 2, or `None` when `h = 0 mod 2`.
pub fn singular_degree_p2(curve: &CurveSpec) -> Result<Option<usize>> {
    let (h, g) = reductions_p2(curve);
    Ok(singular_locus_p2(&h, &g)?.map(|r| r.degree().unwrap_or(0)))
}

/// Analysis at 2. `Ok(None)` means good reduction.
pub fn analyze_p2(curve: &CurveSpec) -> Result<Option<BadPrimeReport>> {
    let two = BigUint::from(2u32);
    if let Semistability::NotSemistable { criterion } = check_semistable_p2(curve) {
        return Err(not_semistable(&two, criterion));
    }
    let (h, g) = reductions_p2(curve);
    let r = singular_locus_p2(&h, &g)?.expect("h nonzero");
    let deg_r = r.degree().expect("nonzero");
    if deg_r == 0 {
        return Ok(None);
    }
    let s = sqrt_mod(&g, &r)?;
    let num = g.add(&s.square()).add(&h.mul(&s));
    let r2 = r.square();
    let (g_t, rem) = num.div_rem(&r2)?;
    if !rem.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "r^2 does not divide g + s^2 + h s at p=2 (r = {r})"
        )));
    }
    let h_t = h.exact_div(&r)?;
    if !gcd_poly(&h_t, &r)?.is_one() {
        return Err(Error::InternalConsistency(format!(
            "gcd(h/r, r) != 1 at p=2 (r = {r})"
        )));
    }
    // the normalization must itself be smooth
    match singular_locus_p2(&h_t, &g_t)? {
        Some(rt) if rt.is_one() => {}
        _ => {
            return Err(Error::InternalConsistency(format!(
                "normalization y^2 + ({h_t}) y = {g_t} is singular"
            )))
        }
    }
    let mut points = Vec::new();
    for (ri, _) in factor(&r)?.factors {
        let ext = ExtField::new(&ri)?;
        let a = ext.generator();
        let h0 = ext.eval_base_poly(&h_t, &a);
        let g0 = ext.eval_base_poly(&g_t, &a);
        let eps = match quad_solutions(&ext, &h0, &g0)? {
            2 => 1,
            0 => -1,
            _ => {
                return Err(Error::InternalConsistency(
                    "h/r vanishes at a singular point".into(),
                ))
            }
        };
        points.push(SingularPoint {
            poly: residues(&ri),
            degree: ri.degree().unwrap(),
            epsilon: eps,
        });
    }
    BadPrimeReport {
        p: two.clone(),
        r: residues(&r),
        points,
        normalization: NormalizationEq::Char2 {
            h: bits(&h_t),
            g: bits(&g_t),
        },
        f_p: deg_r,
        genus0: curve.genus() - deg_r,
        local_factor_inv: placeholder(&two, deg_r),
        residue_field_extension: false,
    }
    .finish()
    .map(Some)
}

fn placeholder(p: &BigUint, f_p: usize) -> LocalFactorInv {
    LocalFactorInv::new(p.clone(), vec![1.into()], Some(0), f_p).expect("constant 1")
}

fn odd_field_dispatch<T>(
    p: &BigUint,
    small: impl FnOnce(PrimeField) -> Result<T>,
    big: impl FnOnce(BigPrimeField) -> Result<T>,
) -> Result<T> {
    if p == &BigUint::from(2u32) {
        return Err(Error::InvalidArgument("expected an odd prime".into()));
    }
    match p.to_u64() {
        Some(q) if q < MACHINE_PRIME_LIMIT => small(PrimeField::new(q)?),
        _ => big(BigPrimeField::new(p.clone())?),
    }
}

fn check_podd_in<F: PrimeFieldLike>(curve: &CurveSpec, field: F) -> Result<Semistability> {
    let f = curve.f().reduce_mod(&field);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let g = gcd_many(&[f, d1, d2])?;
    Ok(if g.is_one() {
        Semistability::Semistable
    } else {
        Semistability::NotSemistable {
            criterion: "gcd(f̄,f̄′,f̄″) ≠ 1".into(),
        }
    })
}

/// Semistable at odd `p` iff `gcd(f, f', f'') = 1` over `F_p`.
pub fn check_semistable_podd(curve: &CurveSpec, p: &BigUint) -> Result<Semistability> {
    odd_field_dispatch(
        p,
        |f| check_podd_in(curve, f),
        |f| check_podd_in(curve, f),
    )
}

struct OddData {
    r: Vec<BigUint>,
    points: Vec<SingularPoint>,
    unit: BigUint,
    s: Vec<BigUint>,
}

fn analyze_podd_in<F: PrimeFieldLike>(curve: &CurveSpec, field: F) -> Result<OddData> {
    let p = field.characteristic();
    if let Semistability::NotSemistable { criterion } = check_podd_in(curve, field.clone())? {
        return Err(not_semistable(&p, criterion));
    }
    let f = curve.f().reduce_mod(&field);
    let r = gcd_poly(&f, &f.derivative())?;
    let (unit, f_monic) = f.monic_parts();
    let s = f_monic.exact_div(&r.square())?;
    if r.square().mul(&s).scale(&unit) != f {
        return Err(Error::InternalConsistency(format!(
            "f != unit r^2 s at p={p}"
        )));
    }
    if !s.is_squarefree() || !r.is_squarefree() || !gcd_poly(&r, &s)?.is_one() {
        return Err(Error::InternalConsistency(format!(
            "r = {r}, s = {s} not separable and coprime at p={p}"
        )));
    }
    let us = s.scale(&unit);
    let mut points = Vec::new();
    if r.degree() != Some(0) {
        for (ri, _) in factor(&r)?.factors {
            let ext = ExtField::new(&ri)?;
            let a = ext.generator();
            let v = ext.eval_base_poly(&us, &a);
            let eps = if is_square(&ext, &v)? { 1 } else { -1 };
            points.push(SingularPoint {
                poly: residues(&ri),
                degree: ri.degree().unwrap(),
                epsilon: eps,
            });
        }
    }
    Ok(OddData {
        r: residues(&r),
        points,
        unit: field.residue(&unit),
        s: residues(&s),
    })
}

/// Analysis at an odd prime. `Ok(None)` when `p` does not divide the
/// discriminant.
pub fn analyze_podd(curve: &CurveSpec, p: &BigUint) -> Result<Option<BadPrimeReport>> {
    if !(curve.disc_abs() % p).is_zero() {
        return Ok(None);
    }
    let data = odd_field_dispatch(
        p,
        |f| analyze_podd_in(curve, f),
        |f| analyze_podd_in(curve, f),
    )?;
    let deg_r = data.r.len() - 1;
    if deg_r == 0 {
        return Err(Error::InternalConsistency(format!(
            "p={p} divides the discriminant but f has no double root"
        )));
    }
    BadPrimeReport {
        p: p.clone(),
        r: data.r,
        points: data.points,
        normalization: NormalizationEq::Odd {
            unit: data.unit,
            s: data.s,
        },
        f_p: deg_r,
        genus0: curve.genus() - deg_r,
        local_factor_inv: placeholder(p, deg_r),
        residue_field_extension: false,
    }
    .finish()
    .map(Some)
}

/// Odd prime divisors of the discriminant, plus 2 when the reduction at 2
/// is singular (including the case `h = 0 mod 2`). Ascending.
pub fn bad_prime_candidates(curve: &CurveSpec) -> Result<Vec<BigUint>> {
    if curve.disc() == &BigInt::zero() {
        return Err(Error::InvalidCurve("discriminant is zero".into()));
    }
    let mut out = Vec::new();
    match singular_degree_p2(curve)? {
        Some(0) => {}
        _ => out.push(BigUint::from(2u32)),
    }
    for (q, _) in factor_integer(&curve.disc_abs())? {
        if q != BigUint::from(2u32) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Outcome of analysing one candidate prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeAnalysis {
    Good,
    Bad(Box<BadPrimeReport>),
}

pub fn analyze_prime(curve: &CurveSpec, p: &BigUint) -> Result<PrimeAnalysis> {
    let report = if p == &BigUint::from(2u32) {
        analyze_p2(curve)?
    } else {
        analyze_podd(curve, p)?
    };
    Ok(match report {
        None => PrimeAnalysis::Good,
        Some(r) => PrimeAnalysis::Bad(Box::new(r)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ex1() -> CurveSpec {
        CurveSpec::from_i64(&[-1, -3, -3, -3, -3, 1], &[1, 3, 1]).unwrap()
    }

    fn sec61() -> CurveSpec {
        CurveSpec::from_i64(&[0, 1, 3, 1, -2, 0, -2, 1], &[1, 2, 3, 3]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn candidates() {
        let c: Vec<BigUint> = [2u64, 3, 7, 101, 163].into_iter().map(big).collect();
        assert_eq!(bad_prime_candidates(&ex1()).unwrap(), c);
        let c: Vec<BigUint> = [3u64, 5, 13, 97].into_iter().map(big).collect();
        assert_eq!(bad_prime_candidates(&sec61()).unwrap(), c);
    }

    #[test]
    fn semistability_at_two() {
        assert!(check_semistable_p2(&ex1()).is_semistable());
        let even_h = CurveSpec::from_i64(&[1, 1, 0, 0, 0, 1], &[2, 0, 2]).unwrap();
        assert!(!check_semistable_p2(&even_h).is_semistable());
        let sec62 = CurveSpec::from_i64(&[0, 0, 0, 1, 0, 1, 0, 1, -1, 1], &[1, 0, 0, 0, -1]).unwrap();
        assert_eq!(
            check_semistable_p2(&sec62),
            Semistability::NotSemistable {
                criterion: "gcd(h̄,h̄′,ḡ′) ≠ 1".into()
            }
        );
        assert!(matches!(
            analyze_p2(&sec62),
            Err(Error::NotSemistable { .. })
        ));
    }

    #[test]
    fn semistability_at_odd_primes() {
        let c = sec61();
        for p in [3u64, 13, 97] {
            assert!(check_semistable_podd(&c, &big(p)).unwrap().is_semistable());
        }
        assert!(!check_semistable_podd(&c, &big(5)).unwrap().is_semistable());
        assert!(check_semistable_podd(&c, &big(7)).unwrap().is_semistable());
        assert!(matches!(
            analyze_podd(&c, &big(5)),
            Err(Error::NotSemistable { .. })
        ));
    }

    #[test]
    fn genus_two_example_at_two() {
        let rep = analyze_p2(&ex1()).unwrap().unwrap();
        assert_eq!(rep.r, vec![big(1), big(1), big(1)]);
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].epsilon, -1);
        assert_eq!(rep.points[0].degree, 2);
        assert_eq!(
            rep.normalization,
            NormalizationEq::Char2 {
                h: vec![1],
                g: vec![1, 1]
            }
        );
        assert_eq!(rep.genus0, 0);
        assert_eq!(rep.f_p, 2);
        assert_eq!(rep.local_factor_inv.coeffs, ints(&[1, 0, 1]));
        assert!(rep.residue_field_extension);
    }

    #[test]
    fn genus_two_example_at_three() {
        let rep = analyze_podd(&ex1(), &big(3)).unwrap().unwrap();
        assert_eq!(rep.r, vec![big(0), big(1)]);
        assert_eq!(rep.points[0].epsilon, -1);
        assert_eq!(rep.f_p, 1);
        assert_eq!(rep.genus0, 1);
        // (1 + T)(3T^2 - T + 1)
        assert_eq!(rep.local_factor_inv.coeffs, ints(&[1, 0, 2, 3]));
        assert!(analyze_podd(&ex1(), &big(5)).unwrap().is_none());
    }

    #[test]
    fn genus_three_example_at_thirteen() {
        let rep = analyze_podd(&sec61(), &big(13)).unwrap().unwrap();
        assert_eq!(rep.f_p, 2);
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].degree, 2);
        assert_eq!(rep.points[0].epsilon, -1);
        // (1 + T^2)(13T^2 + 5T + 1)
        let expect = IntPoly::from_i64(&[1, 0, 1]).mul(&IntPoly::from_i64(&[1, 5, 13]));
        assert_eq!(rep.local_factor_inv.coeffs, expect.coeffs());
        assert!(rep.local_factor_inv.truncated_at.is_none());
    }

    use crate::arith::intpoly::IntPoly;
}
