//! Plane curves `y^m = F(x)` with `gcd(m, deg F) = 1`, counted naively at
//! good primes. Used for curves that are not hyperelliptic.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::field::PrimeField;
use crate::arith::intpoly::IntPoly;
use crate::arith::primes::{factor_integer, primes_up_to};
use crate::error::{Error, Result};
use crate::zeta::{local_factors_for, LocalFactorInv, PlaneModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticSpec {
    m: u32,
    f: IntPoly,
    genus: usize,
    disc: BigInt,
}

impl SuperellipticSpec {
    pub fn new(m: u32, f: IntPoly) -> Result<Self> {
        let d = f
            .degree()
            .ok_or_else(|| Error::InvalidCurve("F is zero".into()))?;
        if m < 2 || d < 1 {
            return Err(Error::InvalidCurve(format!("need m >= 2 and deg F >= 1, got m={m}, deg={d}")));
        }
        if (m as usize).gcd(&d) != 1 {
            return Err(Error::InvalidCurve(format!(
                "gcd(m, deg F) = gcd({m}, {d}) must be 1"
            )));
        }
        let disc = if d == 1 { BigInt::from(1) } else { f.disc()? };
        if disc.is_zero() {
            return Err(Error::InvalidCurve("F has a repeated root".into()));
        }
        let genus = (m as usize - 1) * (d - 1) / 2;
        Ok(Self { m, f, genus, disc })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Primes dividing `m * lc(F) * disc(F)`; reduction may be bad there
    /// and local data has to be supplied.
    pub fn bad_primes(&self) -> Result<Vec<BigUint>> {
        let n = BigInt::from(self.m) * self.f.leading().expect("nonzero") * &self.disc;
        Ok(factor_integer(n.magnitude())?
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }

    pub fn model(&self, p: u64) -> Result<PlaneModel> {
        let field = PrimeField::new(p)?;
        Ok(PlaneModel::Superelliptic {
            p,
            m: self.m,
            f: self.f.reduce_mod(&field).into_coeffs(),
        })
    }

    /// Local factors at all primes `<= cutoff` outside `bad`.
    pub fn good_local_factors(&self, cutoff: u64) -> Result<BTreeMap<u64, LocalFactorInv>> {
        let bad: Vec<u64> = self
            .bad_primes()?
            .iter()
            .filter_map(ToPrimitive::to_u64)
            .collect();
        let primes: Vec<u64> = primes_up_to(cutoff)
            .into_iter()
            .filter(|p| !bad.contains(p))
            .collect();
        local_factors_for(&primes, cutoff, |p| self.model(p), self.genus)
    }
}
