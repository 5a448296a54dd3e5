//! Characteristic-two helpers: square roots modulo a separable polynomial,
//! absolute traces and the Artin–Schreier root count.

use num_bigint::BigUint;

use super::factor::factor;
use super::field::Field;
use super::fpoly::{gcd_poly, FPoly};
use crate::error::{Error, Result};

fn require_char2<F: Field>(field: &F) -> Result<()> {
    if field.characteristic() != BigUint::from(2u32) {
        return Err(Error::InvalidArgument(
            "operation requires characteristic 2".into(),
        ));
    }
    Ok(())
}

/// Absolute trace to the prime field, `a + a^2 + ... + a^(2^(n-1))`.
pub fn trace<F: Field>(field: &F, a: &F::Elem) -> F::Elem {
    let mut term = a.clone();
    let mut acc = a.clone();
    for _ in 1..field.degree() {
        term = field.mul(&term, &term);
        acc = field.add(&acc, &term);
    }
    acc
}

/// Number of roots of `T^2 + h0 T + g0` in a field of characteristic 2.
pub fn quad_solutions<F: Field>(field: &F, h0: &F::Elem, g0: &F::Elem) -> Result<u8> {
    require_char2(field)?;
    if field.is_zero(h0) {
        return Ok(1);
    }
    let h2 = field.mul(h0, h0);
    let c = field.div(g0, &h2).expect("nonzero");
    Ok(if field.is_zero(&trace(field, &c)) { 2 } else { 0 })
}

/// The unique `s` with `deg s < deg r` and `s^2 = g (mod r)`, for separable
/// `r` in characteristic 2.
pub fn sqrt_mod<F: Field>(g: &FPoly<F>, r: &FPoly<F>) -> Result<FPoly<F>> {
    let field = r.field();
    require_char2(field)?;
    let Some(deg_r) = r.degree() else {
        return Err(Error::InvalidArgument("sqrt_mod modulo zero".into()));
    };
    if deg_r == 0 {
        return Ok(FPoly::zero(field));
    }
    if gcd_poly(r, &r.derivative())?.degree() != Some(0) {
        return Err(Error::InvalidArgument(format!("{r} is not separable")));
    }
    let r = r.monic();
    let fac = factor(&r)?;
    let mut s = FPoly::zero(field);
    for (ri, _) in &fac.factors {
        let d = ri.degree().expect("nonconstant");
        // In F_(2^(kd)) the square root is the (kd-1)-fold Frobenius.
        let steps = field.degree() * d - 1;
        let mut si = g.rem(ri)?;
        for _ in 0..steps {
            si = si.mul_mod(&si, ri)?;
        }
        // CRT idempotent for ri: (r/ri) * ((r/ri)^-1 mod ri)
        let cof = r.exact_div(ri)?;
        let (one, inv, _) = cof.rem(ri)?.xgcd(ri)?;
        debug_assert!(one.is_one());
        s = s.add(&si.mul(&inv).rem(ri)?.mul(&cof));
    }
    s = s.rem(&r)?;
    if s.square().sub(g).rem(&r)?.is_zero() {
        Ok(s)
    } else {
        Err(Error::InternalConsistency(format!(
            "square root of {g} mod {r} failed"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{ExtField, PrimeField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2(c: &[u64]) -> FPoly<PrimeField> {
        FPoly::new(PrimeField::new(2).unwrap(), c.iter().map(|x| x % 2).collect())
    }

    #[test]
    fn sqrt_mod_examples() {
        let g = f2(&[1, 1, 1, 1, 1, 1]);
        let r = f2(&[1, 1, 1]);
        assert!(sqrt_mod(&g, &r).unwrap().is_zero());
        // r^2 (x + 1) = g
        assert_eq!(r.square().mul(&f2(&[1, 1])), g);
        assert!(sqrt_mod(&f2(&[1]), &f2(&[0, 1])).unwrap().is_one());
        assert!(sqrt_mod(&g, &f2(&[1, 0, 1])).is_err());
    }

    #[test]
    fn quad_solutions_examples() {
        let base = PrimeField::new(2).unwrap();
        assert_eq!(quad_solutions(&base, &1, &0).unwrap(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f4 = ExtField::random(&base, 2, &mut rng);
        // a is a root of x^2 + x + 1; T^2 + T = 1 + a has no roots
        let a = f4.generator();
        let one = f4.one();
        let rhs = f4.add(&one, &a);
        // Only meaningful if the chosen modulus is x^2 + x + 1, which is the
        // unique irreducible quadratic over F_2.
        assert_eq!(f4.modulus(), f2(&[1, 1, 1]));
        assert_eq!(quad_solutions(&f4, &one, &rhs).unwrap(), 0);
    }

    #[test]
    fn quad_solutions_matches_enumeration_over_f8() {
        let base = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f8 = ExtField::random(&base, 3, &mut rng);
        let elems = f8.elements();
        for h0 in &elems {
            for g0 in &elems {
                let brute = elems
                    .iter()
                    .filter(|t| {
                        let v = f8.add(&f8.mul(t, t), &f8.mul(h0, t));
                        f8.add(&v, g0) == f8.zero()
                    })
                    .count();
                assert_eq!(quad_solutions(&f8, h0, g0).unwrap() as usize, brute);
            }
        }
    }

    #[test]
    fn trace_is_modulus_invariant() {
        // Count trace-zero elements under two different moduli of degree 4.
        let base = PrimeField::new(2).unwrap();
        let m1 = FPoly::new(base, vec![1, 1, 0, 0, 1]);
        let m2 = FPoly::new(base, vec![1, 0, 0, 1, 1]);
        for m in [m1, m2] {
            let f16 = ExtField::new(&m).unwrap();
            let zeros = f16
                .elements()
                .iter()
                .filter(|a| f16.is_zero(&trace(&f16, a)))
                .count();
            assert_eq!(zeros, 8);
        }
    }

    fn irreducibles(max_deg: usize) -> Vec<FPoly<PrimeField>> {
        let mut out = Vec::new();
        for d in 1..=max_deg {
            for idx in 0..(1u64 << d) {
                let mut c: Vec<u64> = (0..d).map(|k| (idx >> k) & 1).collect();
                c.push(1);
                let p = f2(&c);
                if p.is_irreducible() {
                    out.push(p);
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn sqrt_mod_random(
            i in 0usize..5,
            j in 0usize..5,
            g in prop::collection::vec(0u64..2, 0..12),
        ) {
            let irr = irreducibles(3);
            prop_assume!(i != j);
            let r = irr[i].mul(&irr[j]);
            let g = f2(&g);
            let s = sqrt_mod(&g, &r).unwrap();
            prop_assert!(s.degree().map_or(true, |d| d < r.degree().unwrap()));
            prop_assert!(s.square().sub(&g).rem(&r).unwrap().is_zero());
        }
    }
}
