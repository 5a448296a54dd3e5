//! Univariate polynomials over a finite field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use super::field::Field;
use super::primes::primes_up_to;
use crate::error::{Error, Result};

/// Polynomial over `F`, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug)]
pub struct FPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for FPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for FPoly<F> {}

impl<F: Field> Hash for FPoly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl<F: Field> Ord for FPoly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> PartialOrd for FPoly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> FPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: &F) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field.clone(), vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &F) -> Self {
        Self::new(field.clone(), vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        Self::new(field.clone(), vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == self.field.one())
    }

    /// Splits off the leading coefficient: returns `(lc, self / lc)`.
    /// The zero polynomial maps to `(0, 0)`.
    pub fn monic_parts(&self) -> (F::Elem, Self) {
        match self.leading() {
            None => (self.field.zero(), self.clone()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (lc.clone(), self.scale(&inv))
            }
        }
    }

    pub fn monic(&self) -> Self {
        self.monic_parts().1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        Self::new(
            f.clone(),
            (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        Self::new(
            f.clone(),
            (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), coeffs)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.degree() else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        let f = &self.field;
        let lc_inv = f.inv(d.leading().expect("nonzero")).expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dc);
                rem[i - dd + j] = f.sub(&rem[i - dd + j], &t);
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InternalConsistency(format!(
                "{d} does not divide {self}"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| f.mul(a, &f.from_u64(i as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Self::constant(&self.field, c.clone()));
        }
        acc
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = f.inv(r0.leading().expect("nonzero")).expect("nonzero");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, other: &Self) -> F::Elem {
        let f = &self.field;
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return f.zero();
        };
        if n == 0 {
            return f.pow(&other.coeffs[0], &BigUint::from(m));
        }
        let r = self.rem(other).expect("nonzero divisor");
        let Some(k) = r.degree() else {
            return f.zero();
        };
        let mut out = f.pow(other.leading().unwrap(), &BigUint::from(m - k));
        out = f.mul(&out, &other.resultant(&r));
        if (m * n) % 2 == 1 {
            out = f.neg(&out);
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        match gcd_poly(self, &self.derivative()) {
            Ok(g) => g.degree() == Some(0),
            Err(_) => false,
        }
    }

    /// Inverse of the Frobenius on coefficients for a polynomial in
    /// `x^p`: returns `h` with `h^p = self`.
    pub(crate) fn pth_root(&self) -> Result<Self> {
        let p = self
            .field
            .characteristic()
            .try_into()
            .map_err(|_| Error::InvalidArgument("characteristic too large for p-th root".into()))?;
        let p: usize = p;
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(self.field.pth_root(c));
            } else if !self.field.is_zero(c) {
                return Err(Error::InvalidArgument(format!(
                    "{self} is not a polynomial in x^p"
                )));
            }
        }
        Ok(Self::new(self.field.clone(), coeffs))
    }

    /// `x^(q^i) mod self` for `i = 0..=n`, where `q` is the field order.
    pub(crate) fn frobenius_powers(&self, n: usize) -> Result<Vec<Self>> {
        let q = self.field.order();
        let x = Self::x(&self.field).rem(self)?;
        let mut out = vec![x.clone()];
        let mut cur = x;
        for _ in 0..n {
            cur = cur.pow_mod(&q, self)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let Ok(frob) = self.frobenius_powers(d) else {
            return false;
        };
        let x = Self::x(&self.field);
        if frob[d] != x.rem(self).expect("nonzero") {
            return false;
        }
        for l in primes_up_to(d as u64) {
            let l = l as usize;
            if d % l != 0 {
                continue;
            }
            let t = frob[d / l].sub(&x);
            match gcd_poly(&t, self) {
                Ok(g) if g.degree() == Some(0) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Monic greatest common divisor. Both zero is an error.
pub fn gcd_poly<F: Field>(a: &FPoly<F>, b: &FPoly<F>) -> Result<FPoly<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Folded gcd over a list; zero entries are skipped, all zero is an error.
pub fn gcd_many<F: Field>(polys: &[FPoly<F>]) -> Result<FPoly<F>> {
    let mut acc: Option<FPoly<F>> = None;
    for p in polys {
        acc = Some(match acc {
            None if p.is_zero() => continue,
            None => p.monic(),
            Some(g) => gcd_poly(&g, p)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("gcd of zero polynomials".into()))
}

impl<F: Field> fmt::Display for FPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .map(|c| (self.field.is_zero(c), false, format!("{c:?}")))
            .collect();
        super::intpoly::write_poly(f, terms, "x")
    }
}
