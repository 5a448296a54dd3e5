//! Finite fields: prime fields on machine words, prime fields on big
//! integers, and extensions `F[x]/(m)` of either.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::fpoly::FPoly;
use super::primes::{is_prime, is_prime_u64, mul_mod};
use crate::error::{Error, Result};

/// Primes at or above this bound use [`BigPrimeField`].
pub const MACHINE_PRIME_LIMIT: u64 = 1 << 62;

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> BigUint;
    /// Degree over the prime subfield.
    fn degree(&self) -> usize;
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn order(&self) -> BigUint {
        num_traits::pow(self.characteristic(), self.degree())
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        if self.degree() == 1 {
            return a.clone();
        }
        let e = self.order() / self.characteristic();
        self.pow(a, &e)
    }
}

/// Prime field with `p < 2^62`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MACHINE_PRIME_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "{p} exceeds the machine-word prime limit"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn degree(&self) -> usize {
        1
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Prime field backed by big integers, for primes at or above
/// [`MACHINE_PRIME_LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigPrimeField {
    p: Arc<BigUint>,
}

impl BigPrimeField {
    pub fn new(p: BigUint) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Self { p: Arc::new(p) })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }
}

impl Field for BigPrimeField {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= *self.p {
            s - &*self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &*self.p - b
        }
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &*self.p - a
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &*self.p
    }
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from_biguint(Sign::Plus, (*self.p).clone());
        let ext = BigInt::from_biguint(Sign::Plus, a.clone()).extended_gcd(&p);
        ext.x.mod_floor(&p).to_biguint()
    }
    fn characteristic(&self) -> BigUint {
        (*self.p).clone()
    }
    fn degree(&self) -> usize {
        1
    }
    fn from_u64(&self, n: u64) -> BigUint {
        BigUint::from(n) % &*self.p
    }
    fn from_bigint(&self, n: &BigInt) -> BigUint {
        let p = BigInt::from_biguint(Sign::Plus, (*self.p).clone());
        n.mod_floor(&p).to_biguint().expect("nonnegative residue")
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }
}

/// Prime fields whose elements have a canonical integer residue.
pub trait PrimeFieldLike: Field {
    fn residue(&self, a: &Self::Elem) -> BigUint;
}

impl PrimeFieldLike for PrimeField {
    fn residue(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
}

impl PrimeFieldLike for BigPrimeField {
    fn residue(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

#[derive(Debug)]
struct ExtInner<F: Field> {
    base: F,
    /// Monic modulus, ascending, length `degree + 1`.
    modulus: Vec<F::Elem>,
}

/// Extension field `F[x]/(m)` for a monic irreducible `m`. Elements are
/// coefficient vectors of length `deg m`.
#[derive(Clone, Debug)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> ExtField<F> {
    /// Builds the extension, verifying that `modulus` is monic and
    /// irreducible.
    pub fn new(modulus: &FPoly<F>) -> Result<Self> {
        let d = modulus
            .degree()
            .ok_or_else(|| Error::InvalidArgument("zero modulus".into()))?;
        if d == 0 {
            return Err(Error::InvalidArgument("constant modulus".into()));
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument("modulus must be monic".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus} is reducible"
            )));
        }
        Ok(Self::new_unchecked(modulus))
    }

    pub(crate) fn new_unchecked(modulus: &FPoly<F>) -> Self {
        Self {
            inner: Arc::new(ExtInner {
                base: modulus.field().clone(),
                modulus: modulus.coeffs().to_vec(),
            }),
        }
    }

    /// Random search for a monic irreducible modulus of degree `d`.
    pub fn random(base: &F, d: usize, rng: &mut dyn RngCore) -> Self {
        assert!(d >= 1);
        loop {
            let mut coeffs: Vec<F::Elem> = (0..d).map(|_| base.random(rng)).collect();
            coeffs.push(base.one());
            let m = FPoly::new(base.clone(), coeffs);
            if m.is_irreducible() {
                return Self::new_unchecked(&m);
            }
        }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> FPoly<F> {
        FPoly::new(self.inner.base.clone(), self.inner.modulus.clone())
    }

    pub fn ext_degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn from_base(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.inner.base.zero(); self.ext_degree()];
        v[0] = a.clone();
        v
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> Vec<F::Elem> {
        let d = self.ext_degree();
        if d == 1 {
            let base = &self.inner.base;
            return vec![base.neg(&self.inner.modulus[0])];
        }
        let mut v = vec![self.inner.base.zero(); d];
        v[1] = self.inner.base.one();
        v
    }

    /// Reduces a polynomial modulo the modulus.
    pub fn from_poly(&self, f: &FPoly<F>) -> Vec<F::Elem> {
        let r = f.rem(&self.modulus()).expect("nonzero modulus");
        let mut v = r.coeffs().to_vec();
        v.resize(self.ext_degree(), self.inner.base.zero());
        v
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> FPoly<F> {
        FPoly::new(self.inner.base.clone(), a.to_vec())
    }

    /// Evaluates `f` (coefficients in the base field) at `a`.
    pub fn eval_base_poly(&self, f: &FPoly<F>, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, &a.to_vec());
            acc[0] = self.inner.base.add(&acc[0], c);
        }
        acc
    }

    /// All elements, in lexicographic order of coefficient vectors. Only
    /// sensible for tiny fields.
    pub fn elements(&self) -> Vec<Vec<F::Elem>>
    where
        F: PrimeFieldLike,
    {
        let p = self
            .inner
            .base
            .characteristic()
            .to_u64()
            .expect("tiny field");
        let d = self.ext_degree();
        let total = p.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                (0..d)
                    .map(|_| {
                        let digit = idx % p;
                        idx /= p;
                        self.inner.base.from_u64(digit)
                    })
                    .collect()
            })
            .collect()
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.ext_degree()]
    }
    fn one(&self) -> Self::Elem {
        self.from_base(&self.inner.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.inner.base.is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.inner.base.add(x, y))
            .collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.inner.base.sub(x, y))
            .collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.inner.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = &self.inner.base;
        let d = self.ext_degree();
        let mut prod = vec![base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = base.mul(x, y);
                prod[i + j] = base.add(&prod[i + j], &t);
            }
        }
        let m = &self.inner.modulus;
        for i in (d..2 * d - 1).rev() {
            let c = prod[i].clone();
            if base.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let t = base.mul(&c, &m[j]);
                prod[i - d + j] = base.sub(&prod[i - d + j], &t);
            }
        }
        prod.truncate(d);
        prod
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let e = self.order() - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }
    fn characteristic(&self) -> BigUint {
        self.inner.base.characteristic()
    }
    fn degree(&self) -> usize {
        self.ext_degree() * self.inner.base.degree()
    }
    fn from_u64(&self, n: u64) -> Self::Elem {
        self.from_base(&self.inner.base.from_u64(n))
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_base(&self.inner.base.from_bigint(n))
    }
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem {
        (0..self.ext_degree())
            .map(|_| self.inner.base.random(rng))
            .collect()
    }
}

/// Quadratic residuosity in a field of odd order: `a^((q-1)/2) == 1`.
pub fn is_square<F: Field>(field: &F, a: &F::Elem) -> Result<bool> {
    if field.characteristic() == BigUint::from(2u32) {
        return Err(Error::InvalidArgument(
            "is_square requires odd characteristic".into(),
        ));
    }
    if field.is_zero(a) {
        return Err(Error::InvalidArgument("is_square of zero".into()));
    }
    let e = (field.order() - BigUint::one()) >> 1;
    Ok(field.pow(a, &e) == field.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert!(f.inv(&0).is_none());
        assert!(PrimeField::new(91).is_err());
    }

    #[test]
    fn big_prime_field_matches_small() {
        let small = PrimeField::new(1_000_003).unwrap();
        let big = BigPrimeField::new(BigUint::from(1_000_003u64)).unwrap();
        for a in [1u64, 2, 17, 999_999, 123_456] {
            let bi = big.inv(&BigUint::from(a)).unwrap();
            assert_eq!(bi, BigUint::from(small.inv(&a).unwrap()));
        }
    }

    #[test]
    fn is_square_in_f3_and_f9() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(!is_square(&f3, &2).unwrap());
        assert!(is_square(&f3, &1).unwrap());
        assert!(is_square(&f3, &0).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f9 = ExtField::random(&f3, 2, &mut rng);
        let elems = f9.elements();
        let nonzero: Vec<_> = elems.iter().filter(|a| !f9.is_zero(a)).collect();
        let squares: std::collections::BTreeSet<_> =
            nonzero.iter().map(|b| f9.mul(b, b)).collect();
        assert_eq!(squares.len(), 4);
        for a in &nonzero {
            assert_eq!(is_square(&f9, a).unwrap(), squares.contains(*a));
        }
    }

    #[test]
    fn is_square_rejects_char_two() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(is_square(&f2, &1).is_err());
    }

    #[test]
    fn frobenius_power_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, d) in [(2u64, 1usize), (2, 5), (2, 10), (3, 4), (3, 6), (5, 3), (7, 2), (31, 2)] {
            let base = PrimeField::new(p).unwrap();
            let ext = ExtField::random(&base, d, &mut rng);
            let q = ext.order();
            for a in ext.elements() {
                assert_eq!(ext.pow(&a, &q), a, "p={p} d={d}");
            }
            // Frobenius fixes exactly the prime field.
            let fixed = ext
                .elements()
                .into_iter()
                .filter(|a| ext.pow(a, &BigUint::from(p)) == *a)
                .count();
            assert_eq!(fixed as u64, p);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f2 = PrimeField::new(2).unwrap();
        // x^2 + 1 = (x + 1)^2 over F_2
        let m = FPoly::new(f2, vec![1, 0, 1]);
        assert!(ExtField::new(&m).is_err());
        let m = FPoly::new(f2, vec![1, 1, 1]);
        assert!(ExtField::new(&m).is_ok());
    }
}
