//! Dirichlet coefficients of `L(Y, s) = prod_p 1/P_p(p^-s)` and the
//! conductor.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::primes::{ilog, primes_up_to, smallest_prime_factors};
use crate::error::{Error, Result};
use crate::serde_str;
use crate::zeta::{series_inverse, LocalFactorInv};

/// Truncated L-series: `a_1..a_M` plus the local factors they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LSeriesData {
    pub genus: usize,
    #[serde(with = "serde_str::uint")]
    pub conductor: BigUint,
    pub cutoff: u64,
    /// `coeffs[n - 1] = a_n`.
    #[serde(with = "serde_str::int_vec")]
    pub coeffs: Vec<BigInt>,
    /// Local factors, ascending by prime.
    pub factors: Vec<LocalFactorInv>,
}

impl LSeriesData {
    /// Assembles `a_1..a_M` from the local factors of all primes `<= M`.
    pub fn assemble(
        genus: usize,
        conductor: BigUint,
        cutoff: u64,
        factors: &BTreeMap<u64, LocalFactorInv>,
        extra: &[LocalFactorInv],
    ) -> Result<Self> {
        let coeffs = dirichlet_coefficients(factors, cutoff)?;
        let mut all: Vec<LocalFactorInv> = factors.values().cloned().collect();
        for lf in extra {
            if !all.iter().any(|x| x.p == lf.p) {
                all.push(lf.clone());
            }
        }
        all.sort_by(|a, b| a.p.cmp(&b.p));
        Ok(Self {
            genus,
            conductor,
            cutoff,
            coeffs,
            factors: all,
        })
    }

    /// `a_n` for `1 <= n <= M`.
    pub fn a(&self, n: u64) -> &BigInt {
        &self.coeffs[(n - 1) as usize]
    }
}

/// `prod p^(f_p)`, requiring exactly one source for each bad prime and no
/// source for any other prime.
pub fn conductor(bad_primes: &[BigUint], sources: &[LocalFactorInv]) -> Result<BigUint> {
    let bad: BTreeSet<&BigUint> = bad_primes.iter().collect();
    let mut seen: BTreeSet<&BigUint> = BTreeSet::new();
    let mut n = BigUint::one();
    for s in sources {
        if !bad.contains(&s.p) {
            return Err(Error::Configuration(format!(
                "local data supplied for p={}, which is not a bad prime",
                s.p
            )));
        }
        if !seen.insert(&s.p) {
            return Err(Error::Configuration(format!(
                "bad prime p={} has more than one data source",
                s.p
            )));
        }
        n *= s.p.pow(s.f_p as u32);
    }
    if let Some(missing) = bad.iter().find(|p| !seen.contains(*p)) {
        return Err(Error::Configuration(format!(
            "bad prime p={missing} has no data source"
        )));
    }
    Ok(n)
}

/// `a_1..a_M` from the local factors, which must cover every prime `<= M`
/// to degree `floor(log_p M)`.
pub fn dirichlet_coefficients(
    factors: &BTreeMap<u64, LocalFactorInv>,
    cutoff: u64,
) -> Result<Vec<BigInt>> {
    let m = cutoff as usize;
    if m == 0 {
        return Ok(Vec::new());
    }
    // b[p][k] = coefficient of T^k in L_p(T)
    let mut local: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for p in primes_up_to(cutoff) {
        let k = ilog(p, cutoff) as usize;
        let lf = factors.get(&p).ok_or(Error::InsufficientData {
            prime: p,
            have: 0,
            needed: k,
        })?;
        if lf.valid_degree() < k {
            return Err(Error::InsufficientData {
                prime: p,
                have: lf.valid_degree(),
                needed: k,
            });
        }
        local.insert(p, series_inverse(&lf.coeffs, k));
    }
    let spf = smallest_prime_factors(m);
    let mut a: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    a[1] = BigInt::one();
    for n in 2..=m {
        let p = spf[n] as usize;
        let mut rest = n;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        let bpk = &local[&(p as u64)][k];
        a[n] = if bpk.is_zero() || a[rest].is_zero() {
            BigInt::zero()
        } else {
            bpk * &a[rest]
        };
    }
    a.remove(0);
    Ok(a)
}
