//! Heuristic choice of the cutoff `M`.
//!
//! `M` is the smallest integer with
//! `sum_(n > M) B(n) phi_g((2 pi)^g n / sqrt(N)) < 10^-digits`, where
//! `B(n) = n * d(n)^(2g)` bounds `|a_n|` and `d` counts divisors. The sum
//! uses the leading asymptotic of `phi_g` in double precision.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::kernel::{ln_phi_asymptotic, ln_tail_integral};

fn divisor_counts(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for i in 1..=n {
        for j in (i..=n).step_by(i) {
            d[j] += 1;
        }
    }
    d
}

/// Log of the tail beyond `end` under the cruder bound `d(n) <= 2 sqrt(n)`,
/// i.e. `B(n) <= 4^g n^(g+1)`.
fn ln_crude_tail(genus: usize, c: f64, end: f64) -> f64 {
    let g = genus as f64;
    // n^(g+1) phi(c n) decays once the exponential dominates; bound the sum
    // by the integral with the polynomial factor frozen at a doubled point
    let x = c * end;
    g * 4f64.ln() + (g + 1.0) * (2.0 * end).ln() - c.ln() + ln_tail_integral(genus, x)
}

/// Smallest `M` whose coefficient-bound tail is below `10^-digits`.
pub fn choose_m(conductor: &BigUint, genus: usize, digits: u32) -> u64 {
    assert!(genus >= 1, "genus must be at least 1");
    let n = conductor.to_f64().unwrap_or(f64::MAX).max(1.0);
    let g = genus as f64;
    let c = (2.0 * std::f64::consts::PI).powf(g) / n.sqrt();
    let ln_eps = -(digits as f64) * std::f64::consts::LN_10;

    // pick an end point past which even the crude bound is negligible
    let mut end = 1024usize;
    while ln_crude_tail(genus, c, end as f64) > ln_eps - 10.0 {
        end *= 2;
    }
    let dc = divisor_counts(end);
    let terms: Vec<f64> = (1..=end)
        .map(|k| {
            let x = c * k as f64;
            let ln_b = (k as f64).ln() + 2.0 * g * (dc[k] as f64).ln();
            (ln_b + ln_phi_asymptotic(genus, x)).exp()
        })
        .collect();
    let eps = ln_eps.exp();
    let mut tail = ln_crude_tail(genus, c, end as f64).exp();
    // tail holds sum_(n > m) after processing m
    let mut m = end;
    while m > 0 {
        let next = tail + terms[m - 1];
        if next >= eps {
            return m as u64;
        }
        tail = next;
        m -= 1;
    }
    1
}
