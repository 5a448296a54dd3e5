//! Curve models `y^2 + h(x) y = g(x)` over the integers.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arith::intpoly::IntPoly;
use crate::error::{Error, Result};

/// A hyperelliptic curve `y^2 + h y = g` with `g` monic of degree
/// `2 genus + 1` and `deg h <= genus`, together with `f = 4g + h^2` and its
/// discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    g: IntPoly,
    h: IntPoly,
    f: IntPoly,
    genus: usize,
    disc: BigInt,
}

impl CurveSpec {
    pub fn new(g: IntPoly, h: IntPoly) -> Result<Self> {
        let deg_g = g
            .degree()
            .ok_or_else(|| Error::InvalidCurve("g is zero".into()))?;
        if !g.is_monic() {
            return Err(Error::InvalidCurve(format!("g = {g} is not monic")));
        }
        if deg_g % 2 == 0 {
            return Err(Error::InvalidCurve(format!(
                "deg g = {deg_g} must be odd"
            )));
        }
        let genus = (deg_g - 1) / 2;
        if genus < 2 {
            return Err(Error::InvalidCurve(format!(
                "genus {genus} is below 2"
            )));
        }
        if h.degree().is_some_and(|d| d > genus) {
            return Err(Error::InvalidCurve(format!(
                "deg h = {} exceeds the genus {genus}",
                h.degree().unwrap()
            )));
        }
        let f = g.scale(&BigInt::from(4)).add(&h.mul(&h));
        let disc = f.disc()?;
        if disc.is_zero() {
            return Err(Error::InvalidCurve(
                "4g + h^2 has a repeated root".into(),
            ));
        }
        Ok(Self {
            g,
            h,
            f,
            genus,
            disc,
        })
    }

    pub fn from_i64(g: &[i64], h: &[i64]) -> Result<Self> {
        Self::new(IntPoly::from_i64(g), IntPoly::from_i64(h))
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn h(&self) -> &IntPoly {
        &self.h
    }

    /// `4g + h^2`.
    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn disc_abs(&self) -> BigUint {
        self.disc.magnitude().clone()
    }

    /// True when `p` is odd and does not divide the discriminant, so the
    /// reduction `u^2 = f` is smooth.
    pub fn is_good_odd(&self, p: u64) -> bool {
        p % 2 == 1 && !(self.disc_abs() % p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape() {
        assert!(CurveSpec::from_i64(&[-1, -3, -3, -3, -3, 1], &[1, 3, 1]).is_ok());
        // even degree
        assert!(CurveSpec::from_i64(&[1, 0, 0, 0, 0, 0, 1], &[1]).is_err());
        // not monic
        assert!(CurveSpec::from_i64(&[1, 0, 0, 0, 0, 2], &[1]).is_err());
        // genus 1
        assert!(CurveSpec::from_i64(&[1, 0, 0, 1], &[1]).is_err());
        // deg h too large
        assert!(CurveSpec::from_i64(&[1, 0, 0, 0, 0, 1], &[1, 0, 0, 1]).is_err());
        // singular: y^2 = x^5 - x^4 has f = 4x^4(x - 1)
        assert!(CurveSpec::from_i64(&[0, 0, 0, 0, -1, 1], &[]).is_err());
    }

    #[test]
    fn f_is_4g_plus_h_squared() {
        let c = CurveSpec::from_i64(&[0, 1, 3, 1, -2, 0, -2, 1], &[1, 2, 3, 3]).unwrap();
        assert_eq!(c.f(), &IntPoly::from_i64(&[1, 8, 22, 22, 13, 18, 1, 4]));
        assert_eq!(c.genus(), 3);
    }
}
