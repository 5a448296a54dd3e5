//! `Theta(t) = sum_(n <= M) a_n phi_g((2 pi)^g n t / sqrt(N))`.

use hecl_core::lseries::LSeriesData;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{FeError, Result};
use crate::kernel::{eval_escalating, ln_tail_integral, working_precision, Kernel};

/// Terms summed per parallel task; the chunk sums are then added in order
/// so the result does not depend on the thread count.
const CHUNK: usize = 2048;

/// Default bound on the estimated tail, relative to `|Theta(t)|`.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-8;

fn to_integer(a: &BigInt) -> Integer {
    a.to_string().parse().expect("decimal integer")
}

/// `(2 pi)^g / sqrt(N)` at `prec` bits.
pub fn scale(data: &LSeriesData, prec: u32) -> Float {
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let n: Integer = data.conductor.to_string().parse().expect("decimal integer");
    let root_n = Float::with_val(prec, &n).sqrt();
    Float::with_val(prec, two_pi.pow(data.genus as u32)) / root_n
}

/// `max |a_n|` over the stored coefficients, as a tail envelope.
fn envelope(data: &LSeriesData) -> f64 {
    data.coeffs
        .iter()
        .map(|a| a.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(1.0, f64::max)
}

/// Estimated `|sum_(n > M) a_n phi_g(c n t)|`: twice the coefficient
/// envelope times `(1 / c t) integral_(c M t)^inf phi_g`, in log form.
fn ln_tail(genus: usize, ct: f64, m: u64, env: f64) -> f64 {
    (2.0 * env).ln() - ct.ln() + ln_tail_integral(genus, ct * m as f64)
}

/// Smallest cutoff whose estimated tail at `ct` is below `bound`.
fn required_cutoff(genus: usize, ct: f64, env: f64, ln_bound: f64, from: u64) -> u64 {
    let ok = |m: u64| ln_tail(genus, ct, m, env) < ln_bound;
    let mut hi = from.max(1);
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `sum_(n <= upto) a_n phi_g(c n t)` at `prec` bits.
fn partial_sum(data: &LSeriesData, c: &Float, t: &Float, g: usize, prec: u32, upto: u64) -> Result<Float> {
    let ct = Float::with_val(prec + 64, c * t);
    let x_max = ct.to_f64() * upto as f64;
    let wp = working_precision(g, x_max, prec);
    let kernel = Kernel::for_range(g, wp, x_max)?;
    let ct_w = Float::with_val(wp, c * t);

    let terms: Vec<(u64, &BigInt)> = data.coeffs[..upto as usize]
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i as u64 + 1, a))
        .collect();
    let partials: Vec<Result<Float>> = terms
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Float::new(wp);
            for &(n, a) in chunk {
                let x = Float::with_val(wp, &ct_w * n);
                let phi = match kernel.eval(&x) {
                    Some(ev) if ev.cancellation_bits.saturating_add(prec + 8) <= wp => ev.value,
                    _ => eval_escalating(&x, g, prec, wp * 2)?,
                };
                acc += Float::with_val(wp, &phi * &to_integer(a));
            }
            Ok(acc)
        })
        .collect();
    let mut sum = Float::new(wp);
    for p in partials {
        sum += p?;
    }
    Ok(Float::with_val(prec, &sum))
}

/// `Theta(t)` correct to about `prec` bits, with the tail beyond `M`
/// required to be below `tail_tolerance * |Theta(t)|`.
pub fn theta_checked(
    data: &LSeriesData,
    t: &Float,
    prec: u32,
    tail_tolerance: f64,
) -> Result<Float> {
    if !t.is_finite() || *t <= 0 {
        return Err(FeError::Domain(format!("theta needs t > 0, got {t}")));
    }
    if data.genus == 0 {
        return Err(FeError::InvalidArgument("genus must be at least 1".into()));
    }
    if data.coeffs.len() as u64 != data.cutoff {
        return Err(FeError::InvalidArgument(format!(
            "{} coefficients stored for cutoff {}",
            data.coeffs.len(),
            data.cutoff
        )));
    }
    let g = data.genus;
    let m = data.cutoff;
    let c = scale(data, prec + 64);
    let ct = Float::with_val(prec + 64, &c * t);
    let ctf = ct.to_f64();
    let env = envelope(data);

    // Terms whose total is far below the first one cannot change the sum
    // at this precision; they are skipped and the skip is rechecked below.
    let first = eval_escalating(&ct, g, 64, 64)?.abs().to_f64();
    let ln_negligible = |reference: f64| reference.ln() - (prec + 32) as f64 * std::f64::consts::LN_2;
    let mut upto = if first > 0.0 && m > 1 {
        required_cutoff(g, ctf, env, ln_negligible(first), 1).min(m)
    } else {
        m
    };
    let value = loop {
        let value = partial_sum(data, &c, t, g, prec, upto)?;
        let size = value.to_f64().abs();
        if upto == m || ln_tail(g, ctf, upto, env) < ln_negligible(size) {
            break value;
        }
        upto = m;
    };

    let size = value.to_f64().abs();
    let ln_bound = (tail_tolerance * size).ln();
    if !(ln_tail(g, ctf, m, env) < ln_bound) {
        let required = if size > 0.0 {
            required_cutoff(g, ctf, env, ln_bound, m)
        } else {
            u64::MAX
        };
        return Err(FeError::InsufficientM {
            have: m,
            required,
            t: t.to_f64(),
        });
    }
    Ok(value)
}

/// `Theta(t)` with the default tail tolerance.
pub fn theta(data: &LSeriesData, t: &Float, prec: u32) -> Result<Float> {
    theta_checked(data, t, prec, DEFAULT_TAIL_TOLERANCE)
}
