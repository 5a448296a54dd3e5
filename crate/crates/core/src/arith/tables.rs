//! Table-driven arithmetic for enumerating small fields.
//!
//! Prime fields are swept with forward differences so evaluating a
//! polynomial at consecutive points costs one addition per degree. Small
//! extension fields use discrete-log and Zech tables: every nonzero element
//! is stored as its logarithm to a primitive element, so products are
//! additions of logs and sums are a single table lookup.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::fpoly::FPoly;
use super::primes::{factor_integer, mul_mod};
use crate::error::{Error, Result};

/// Sentinel log of the zero element.
pub const ZERO_LOG: u32 = u32::MAX;

/// Largest field that may be tabulated.
pub const MAX_TABLE_ORDER: u64 = 1 << 27;

/// Prime fields up to this size use a residue table rather than the
/// Jacobi symbol.
pub const QR_TABLE_LIMIT: u64 = 1 << 20;

/// Jacobi symbol `(a / n)` for odd `n`.
pub fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Bitset of nonzero `m`-th powers modulo `p`.
fn power_residue_table(p: u64, m: u32) -> Vec<u64> {
    let mut bits = vec![0u64; (p as usize >> 6) + 1];
    if m == 2 {
        // consecutive squares by adding odd numbers
        let mut sq = 0u64;
        for x in 0..p.div_ceil(2) {
            if x > 0 {
                bits[(sq >> 6) as usize] |= 1 << (sq & 63);
            }
            sq += 2 * x + 1;
            if sq >= p {
                sq -= p;
            }
        }
    } else {
        for x in 1..p {
            let mut v = 1u64;
            for _ in 0..m {
                v = mul_mod(v, x, p);
            }
            bits[(v >> 6) as usize] |= 1 << (v & 63);
        }
    }
    bits
}

/// Visits `f(0), f(1), ..., f(p-1)` modulo `p` (coefficients ascending).
pub fn sweep_prime_field(coeffs: &[u64], p: u64, mut visit: impl FnMut(u64)) {
    let deg = coeffs.len().saturating_sub(1);
    let horner = |x: u64| {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c % p) % p)
    };
    if coeffs.is_empty() {
        for _ in 0..p {
            visit(0);
        }
        return;
    }
    if p <= deg as u64 + 1 {
        for x in 0..p {
            visit(horner(x));
        }
        return;
    }
    // Forward differences at 0: d[k] = Delta^k f(0).
    let mut d: Vec<u64> = (0..=deg as u64).map(horner).collect();
    for k in 1..=deg {
        for i in (k..=deg).rev() {
            d[i] = (d[i] + p - d[i - 1]) % p;
        }
    }
    for _ in 0..p {
        visit(d[0]);
        for i in 0..deg {
            let s = d[i] + d[i + 1];
            d[i] = if s >= p { s - p } else { s };
        }
    }
}

/// `sum_x chi(f(x))` over `F_p`, `p` odd, with `chi` the quadratic character.
pub fn quadratic_character_sum_prime(coeffs: &[u64], p: u64) -> i64 {
    let mut total = 0i64;
    if p <= QR_TABLE_LIMIT {
        let qr = power_residue_table(p, 2);
        sweep_prime_field(coeffs, p, |v| {
            if v != 0 {
                total += if qr[(v >> 6) as usize] >> (v & 63) & 1 == 1 { 1 } else { -1 };
            }
        });
    } else {
        sweep_prime_field(coeffs, p, |v| total += jacobi(v, p) as i64);
    }
    total
}

/// `sum_x #{y : y^m = F(x)}` over `F_p`.
pub fn power_root_count_prime(coeffs: &[u64], p: u64, m: u32) -> u64 {
    let e = num_integer::gcd(m as u64, p - 1);
    if e == 1 {
        // y -> y^m is a bijection
        return p;
    }
    let table = power_residue_table(p, e as u32);
    let mut total = 0u64;
    sweep_prime_field(coeffs, p, |v| {
        if v == 0 {
            total += 1;
        } else if table[(v >> 6) as usize] >> (v & 63) & 1 == 1 {
            total += e;
        }
    });
    total
}

/// A field `F_(p^n)` with log and Zech tables. Elements outside the tables
/// are integers `sum d_i p^i` built from coefficient digits.
#[derive(Clone, Debug)]
pub struct SmallFq {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    /// `exp[k]` is the integer form of `g^k`, `k < q - 1`.
    exp: Vec<u32>,
    /// `log[r]` for integer form `r`; `ZERO_LOG` at 0.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`.
    zech: Vec<u32>,
}

impl SmallFq {
    /// Builds the tables for `F_(p^n)` with a random primitive modulus
    /// chosen reproducibly from `seed`.
    pub fn new(p: u64, n: u32, seed: u64) -> Result<Self> {
        let q = BigUint::from(p).pow(n);
        let q = match q.to_u64() {
            Some(q) if q <= MAX_TABLE_ORDER => q,
            _ => return Err(Error::FieldTooLarge(q.to_string())),
        };
        let base = PrimeField::new(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ n as u64);
        let ell: Vec<u64> = factor_integer(&BigUint::from(q - 1))?
            .into_iter()
            .map(|(l, _)| l.to_u64().expect("small"))
            .collect();
        loop {
            let mut m: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            let poly = FPoly::new(base, m.clone());
            if n > 1 && !poly.is_irreducible() {
                continue;
            }
            if !x_is_primitive(&poly, q, &ell) {
                continue;
            }
            return Ok(Self::build(p, n, q, m));
        }
    }

    fn build(p: u64, n: u32, q: u64, modulus: Vec<u64>) -> Self {
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![ZERO_LOG; q as usize];
        let mut digits = vec![0u64; n as usize];
        digits[0] = 1;
        let pow: Vec<u64> = (0..n).map(|i| p.pow(i)).collect();
        for (k, slot) in exp.iter_mut().enumerate() {
            let r: u64 = digits.iter().zip(&pow).map(|(d, w)| d * w).sum();
            *slot = r as u32;
            debug_assert_eq!(log[r as usize], ZERO_LOG, "modulus not primitive");
            log[r as usize] = k as u32;
            // multiply by x
            let top = digits[n as usize - 1];
            for i in (1..n as usize).rev() {
                digits[i] = (digits[i - 1] + (p - top * modulus[i] % p)) % p;
            }
            digits[0] = (p - top * modulus[0] % p) % p;
        }
        let mut zech = vec![0u32; order];
        for (k, z) in zech.iter_mut().enumerate() {
            let r = exp[k] as u64;
            // adding 1 touches only the constant digit
            let r1 = if r % p == p - 1 { r + 1 - p } else { r + 1 };
            *z = log[r1 as usize];
        }
        Self {
            p,
            n,
            q,
            modulus,
            exp,
            log,
            zech,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, ascending.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn log_of(&self, repr: u64) -> u32 {
        self.log[repr as usize]
    }

    #[inline]
    pub fn repr_of(&self, l: u32) -> u64 {
        if l == ZERO_LOG {
            0
        } else {
            self.exp[l as usize] as u64
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO_LOG || b == ZERO_LOG {
            return ZERO_LOG;
        }
        let s = a as u64 + b as u64;
        let m = self.q - 1;
        (if s >= m { s - m } else { s }) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO_LOG {
            return b;
        }
        if b == ZERO_LOG {
            return a;
        }
        let m = self.q - 1;
        let d = if b >= a { b - a } else { (b as u64 + m - a as u64) as u32 };
        let z = self.zech[d as usize];
        if z == ZERO_LOG {
            return ZERO_LOG;
        }
        let s = a as u64 + z as u64;
        (if s >= m { s - m } else { s }) as u32
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == ZERO_LOG {
            None
        } else if a == 0 {
            Some(0)
        } else {
            Some((self.q - 1 - a as u64) as u32)
        }
    }

    /// Logs of prime-field coefficients.
    pub fn coeff_logs(&self, coeffs: &[u64]) -> Vec<u32> {
        coeffs.iter().map(|&c| self.log[(c % self.p) as usize]).collect()
    }

    /// Horner evaluation in the log domain.
    #[inline]
    pub fn eval_logs(&self, coeff_logs: &[u32], x: u32) -> u32 {
        let mut acc = ZERO_LOG;
        for &c in coeff_logs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// All elements as logs: zero first, then `g^0 .. g^(q-2)`.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        std::iter::once(ZERO_LOG).chain(0..(self.q - 1) as u32)
    }

    /// `sum_x chi(f(x))`, `p` odd. The generator is a nonsquare so the
    /// character is the parity of the log.
    pub fn quadratic_character_sum(&self, coeffs: &[u64]) -> i64 {
        debug_assert!(self.p % 2 == 1);
        let cl = self.coeff_logs(coeffs);
        let mut total = 0i64;
        for x in self.elements() {
            let v = self.eval_logs(&cl, x);
            if v != ZERO_LOG {
                total += if v & 1 == 0 { 1 } else { -1 };
            }
        }
        total
    }

    /// `sum_x #{y : y^m = F(x)}`.
    pub fn power_root_count(&self, coeffs: &[u64], m: u32) -> u64 {
        let e = num_integer::gcd(m as u64, self.q - 1);
        if e == 1 {
            return self.q;
        }
        let cl = self.coeff_logs(coeffs);
        let mut total = 0u64;
        for x in self.elements() {
            let v = self.eval_logs(&cl, x);
            if v == ZERO_LOG {
                total += 1;
            } else if v as u64 % e == 0 {
                total += e;
            }
        }
        total
    }

    /// Bitmask `t` with `Tr(r) = popcount(r & t) mod 2` on integer forms.
    /// Characteristic 2 only.
    fn trace_mask(&self) -> u64 {
        debug_assert_eq!(self.p, 2);
        let mut mask = 0u64;
        for i in 0..self.n {
            // log of x^i is the log of the integer form 2^i
            let a = self.log[1usize << i];
            let mut term = a;
            let mut acc = a;
            for _ in 1..self.n {
                term = self.mul(term, term);
                acc = self.add(acc, term);
            }
            if acc != ZERO_LOG {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// `sum_x #{y : y^2 + h(x) y = g(x)}` in characteristic 2.
    pub fn artin_schreier_count(&self, h: &[u64], g: &[u64]) -> u64 {
        let mask = self.trace_mask();
        let hl = self.coeff_logs(h);
        let gl = self.coeff_logs(g);
        let mut total = 0u64;
        for x in self.elements() {
            let hv = self.eval_logs(&hl, x);
            if hv == ZERO_LOG {
                total += 1;
                continue;
            }
            let gv = self.eval_logs(&gl, x);
            if gv == ZERO_LOG {
                total += 2;
                continue;
            }
            // c = g / h^2
            let m = self.q - 1;
            let c = ((gv as u64 + 2 * (m - hv as u64)) % m) as u32;
            let r = self.exp[c as usize] as u64;
            if (r & mask).count_ones() % 2 == 0 {
                total += 2;
            }
        }
        total
    }
}

fn x_is_primitive(m: &FPoly<PrimeField>, q: u64, ell: &[u64]) -> bool {
    let field = m.field();
    let x = FPoly::x(field);
    let one = FPoly::one(field);
    let Ok(full) = x.pow_mod(&BigUint::from(q - 1), m) else {
        return false;
    };
    if full != one {
        return false;
    }
    ell.iter().all(|&l| {
        x.pow_mod(&BigUint::from((q - 1) / l), m)
            .map(|v| v != one)
            .unwrap_or(false)
    })
}
