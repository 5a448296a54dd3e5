//! Primality testing, sieving and integer factorization.
//!
//! Inputs here are discriminants of small-coefficient polynomials, so trial
//! division followed by Pollard–Brent rho is enough in practice.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_ROUNDS_BIG: usize = 64;
const TRIAL_LIMIT: u64 = 1 << 16;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test: deterministic below 2^64, 64 Miller–Rabin rounds with
/// pseudo-random bases above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let two = BigUint::from(2u32);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_9a11);
    'rounds: for _ in 0..MR_ROUNDS_BIG {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Smallest prime factor for every integer in `0..=n` (0 and 1 map to 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pollard–Brent rho on a composite `n < 2^64`.
fn rho_u64(n: u64, seed: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut c = seed % (n - 1) + 1;
    for _attempt in 0..64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = seed % n;
        let mut r: u64 = 1;
        let mut q: u64 = 1;
        let mut g: u64 = 1;
        let mut x = y;
        let mut ys = y;
        let m: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
            if r > (1 << 26) {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
        c = c % (n - 1) + 1;
    }
    None
}

fn rho_big(n: &BigUint, seed: u64, max_iters: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..16 {
        let c = rng.gen_biguint_below(n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = rng.gen_biguint_below(n);
        let mut y = x.clone();
        let mut power: u64 = 1;
        let mut lam: u64 = 1;
        let mut acc = BigUint::one();
        let mut steps: u64 = 0;
        loop {
            if power == lam {
                x = y.clone();
                power *= 2;
                lam = 0;
            }
            y = f(&y);
            lam += 1;
            steps += 1;
            let diff = if x > y { &x - &y } else { &y - &x };
            acc = (acc * diff) % n;
            if steps % 64 == 0 || steps >= max_iters {
                let g = acc.gcd(n);
                if g == *n {
                    break;
                }
                if g > one {
                    return Some(g);
                }
                if steps >= max_iters {
                    return None;
                }
            }
        }
    }
    None
}

fn split_composite(n: &BigUint, budget: u64, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(n) {
        out.push(n.clone());
        return Ok(());
    }
    let divisor = match n.to_u64() {
        Some(small) => rho_u64(small, 2 + out.len() as u64).map(BigUint::from),
        None => rho_big(n, 0xfac7 + out.len() as u64, budget),
    };
    let d = divisor.ok_or_else(|| Error::Factorization(n.to_string()))?;
    split_composite(&d, budget, out)?;
    split_composite(&(n / &d), budget, out)
}

/// Full prime factorization of `n >= 1`, primes ascending.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    factor_integer_with_budget(n, 1 << 24)
}

/// As [`factor_integer`] but giving up (with an error) once the rho stage
/// has spent `budget` iterations on a single cofactor.
pub fn factor_integer_with_budget(n: &BigUint, budget: u64) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut rest = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        if (&rest % d).is_zero() {
            while (&rest % d).is_zero() {
                rest /= d;
                primes.push(BigUint::from(d));
            }
        }
        if BigUint::from(d) * BigUint::from(d) > rest {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        split_composite(&rest, budget, &mut primes)?;
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// `floor(log_p(m))`, i.e. the largest `k` with `p^k <= m`.
pub fn ilog(p: u64, m: u64) -> u32 {
    if p < 2 || m == 0 {
        return 0;
    }
    let mut k = 0;
    let mut pk: u128 = 1;
    while pk * p as u128 <= m as u128 {
        pk *= p as u128;
        k += 1;
    }
    k
}
