//! Factorization over finite fields: squarefree decomposition,
//! distinct-degree and equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::fpoly::{gcd_poly, FPoly};
use crate::error::{Error, Result};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x4c5f_7365_6564;

/// `f = unit * prod(factor^mult)`, factors monic irreducible, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(FPoly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self, field: &F) -> FPoly<F> {
        let mut acc = FPoly::constant(field, self.unit.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(&g.pow(*e));
        }
        acc
    }
}

pub fn factor<F: Field>(f: &FPoly<F>) -> Result<Factorization<F>> {
    factor_seeded(f, DEFAULT_SEED)
}

pub fn factor_seeded<F: Field>(f: &FPoly<F>, seed: u64) -> Result<Factorization<F>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let (unit, monic) = f.monic_parts();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FPoly<F>, u32)> = Vec::new();
    for (part, mult) in squarefree(&monic)? {
        for (block, d) in distinct_degree(&part)? {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces)?;
            out.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort();
    let mut merged: Vec<(FPoly<F>, u32)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(a_i, i)` with
/// `f = prod a_i^i`, each `a_i` squarefree and nonconstant.
pub fn squarefree<F: Field>(f: &FPoly<F>) -> Result<Vec<(FPoly<F>, u32)>> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let fd = f.derivative();
    let mut c = gcd_poly(f, &fd)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd_poly(&w, &c)?;
        let z = w.exact_div(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if !c.is_one() {
        let p: u32 = f
            .field()
            .characteristic()
            .try_into()
            .map_err(|_| Error::InvalidArgument("characteristic too large".into()))?;
        let root = c.pth_root()?;
        for (g, e) in squarefree(&root)? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(block, d)`.
pub fn distinct_degree<F: Field>(f: &FPoly<F>) -> Result<Vec<(FPoly<F>, usize)>> {
    let mut out = Vec::new();
    let q = f.field().order();
    let x = FPoly::x(f.field());
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut i = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&q, &rest)?;
        let g = gcd_poly(&rest, &h.sub(&x))?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((rest, d));
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus in odd characteristic, trace splitting in
/// characteristic 2.
fn equal_degree<F: Field>(
    f: &FPoly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FPoly<F>>,
) -> Result<()> {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let field = f.field();
    let char2 = field.characteristic() == BigUint::from(2u32);
    let q = field.order();
    let qd = num_traits::pow(q.clone(), d);
    let half = (&qd - BigUint::one()) >> 1;
    loop {
        let a = FPoly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if char2 {
            // a + a^2 + a^4 + ... + a^(2^(k d - 1)), with q = 2^k
            let steps = field.degree() * d;
            let mut term = a.rem(f)?;
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.mul_mod(&term, f)?;
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod(&half, f)?.sub(&FPoly::one(field))
        };
        let g = gcd_poly(f, &b)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            equal_degree(&g, d, rng, out)?;
            equal_degree(&f.exact_div(&g)?, d, rng, out)?;
            return Ok(());
        }
    }
}
