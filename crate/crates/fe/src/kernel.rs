//! The inverse Mellin transform `phi_g` of `Gamma(s)^g`,
//!
//! ```text
//! phi_g(x) = (1 / 2 pi i) * integral Gamma(s)^g x^(-s) ds,
//! ```
//!
//! summed as residues at `s = 0, -1, -2, ...`. The residue at `s = -k` is
//! `x^k * Q_k(log x)` with `deg Q_k = g - 1`. Writing `s = -k + e`,
//!
//! ```text
//! Gamma(s) = Gamma(1 + e) / (e (e - 1) ... (e - k))
//!          = ((-1)^k / k!) e^-1 exp(log Gamma(1 + e) - sum_j log(1 - e/j)),
//! ```
//!
//! so the coefficients of `Q_k` come from a short power series exponential
//! in `e` whose inputs are Euler's constant, `zeta(m)` and the generalized
//! harmonic numbers `H_k^(m)`.

use rug::float::Constant;
use rug::{Assign, Float};

use crate::error::{FeError, Result};

/// Arbitrary-precision real.
pub type BigFloat = Float;

pub const DEFAULT_PRECISION: u32 = 300;

/// Consecutive negligible terms required before the series is stopped.
const QUIET_TERMS: usize = 50;

/// Extra bits on top of the predicted cancellation.
const GUARD_BITS: u32 = 32;

/// Escalation stops once the working precision exceeds this.
const MAX_PRECISION: u32 = 1 << 16;

/// Predicted bits lost to cancellation at `x`: the largest residue term is
/// about `exp(g x^(1/g))` and the sum about `exp(-g x^(1/g))`.
pub fn cancellation_estimate(genus: usize, x: f64) -> u32 {
    if x <= 1.0 {
        return 0;
    }
    let u = genus as f64 * x.powf(1.0 / genus as f64);
    (2.0 * u / std::f64::consts::LN_2).ceil() as u32
}

/// Number of residue terms needed at `x` for `prec` bits, with slack for
/// the quiet-term rule.
pub fn terms_needed(genus: usize, x: f64, prec: u32) -> usize {
    let g = genus as f64;
    let lx = x.ln();
    let peak = if x > 1.0 { g * x.powf(1.0 / g) } else { 0.0 };
    let floor = peak - prec as f64 * std::f64::consts::LN_2 - 20.0;
    let mut ln_fact = 0.0;
    let mut k = 0usize;
    loop {
        let ln_term = k as f64 * lx - g * ln_fact;
        if (k as f64) > x.powf(1.0 / g) && ln_term < floor {
            return k + QUIET_TERMS + 16;
        }
        k += 1;
        ln_fact += (k as f64).ln();
    }
}

/// Residue coefficients of `phi_g` at a fixed precision.
#[derive(Clone, Debug)]
pub struct Kernel {
    genus: usize,
    prec: u32,
    /// `coeffs[k][j]` multiplies `x^k (log x)^j`.
    coeffs: Vec<Vec<Float>>,
}

/// A single evaluation with its cancellation record.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Float,
    /// `log2(max |term| / |sum|)`, rounded up.
    pub cancellation_bits: u32,
}

impl Kernel {
    pub fn new(genus: usize, prec: u32, terms: usize) -> Result<Self> {
        if genus == 0 {
            return Err(FeError::InvalidArgument("genus must be at least 1".into()));
        }
        let g = genus;
        let wp = prec + 16;
        let euler = Float::with_val(wp, Constant::Euler);
        // zeta[m] for 2 <= m < g
        let zeta: Vec<Float> = (0..g)
            .map(|m| {
                if m >= 2 {
                    Float::with_val(wp, Float::zeta_u(m as u32))
                } else {
                    Float::new(wp)
                }
            })
            .collect();
        let mut harmonic: Vec<Float> = (0..g).map(|_| Float::new(wp)).collect();
        let mut inv_fact = Float::with_val(wp, 1);
        let mut inv_j_fact: Vec<Float> = Vec::with_capacity(g);
        let mut acc = Float::with_val(wp, 1);
        for j in 0..g {
            if j > 0 {
                acc /= j as u32;
            }
            inv_j_fact.push(acc.clone());
        }
        let mut coeffs = Vec::with_capacity(terms);
        for k in 0..terms {
            if k > 0 {
                let kk = Float::with_val(wp, k as u32);
                let mut pw = Float::with_val(wp, 1);
                for h in harmonic.iter_mut().skip(1) {
                    pw /= &kk;
                    *h += &pw;
                }
                inv_fact /= k as u32;
            }
            // e_m, the coefficients of g * (log Gamma(1+e) - sum_j log(1 - e/j))
            let mut e: Vec<Float> = vec![Float::new(wp); g];
            for (m, em) in e.iter_mut().enumerate().skip(1) {
                let mut v = if m == 1 {
                    Float::with_val(wp, &harmonic[1] - &euler)
                } else {
                    let mut z = Float::with_val(wp, &zeta[m]);
                    if m % 2 == 1 {
                        z = -z;
                    }
                    (z + &harmonic[m]) / m as u32
                };
                v *= g as u32;
                *em = v;
            }
            // alpha = exp(sum e_m eps^m) to degree g - 1
            let mut alpha: Vec<Float> = vec![Float::with_val(wp, 1)];
            for n in 1..g {
                let mut s = Float::new(wp);
                for m in 1..=n {
                    s += Float::with_val(wp, &e[m] * &alpha[n - m]) * m as u32;
                }
                alpha.push(s / n as u32);
            }
            // ((-1)^k / k!)^g
            let mut scale = Float::with_val(wp, 1);
            for _ in 0..g {
                scale *= &inv_fact;
            }
            if (k * g) % 2 == 1 {
                scale = -scale;
            }
            let row: Vec<Float> = (0..g)
                .map(|j| {
                    let mut c = Float::with_val(prec, &scale * &alpha[g - 1 - j]);
                    c *= &inv_j_fact[j];
                    if j % 2 == 1 {
                        c = -c;
                    }
                    c
                })
                .collect();
            coeffs.push(row);
        }
        Ok(Self {
            genus,
            prec,
            coeffs,
        })
    }

    /// A kernel with enough terms for every argument up to `x_max`.
    pub fn for_range(genus: usize, prec: u32, x_max: f64) -> Result<Self> {
        Self::new(genus, prec, terms_needed(genus, x_max.max(1.0), prec))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Sums the residue series at `x > 0` in this kernel's precision.
    /// Returns `None` if the terms run out before the series settles.
    pub fn eval(&self, x: &Float) -> Option<Evaluation> {
        let prec = self.prec;
        let log_x = Float::with_val(prec, x.ln_ref());
        let mut sum = Float::new(prec);
        let mut xk = Float::with_val(prec, 1);
        let mut poly = Float::new(prec);
        let mut term = Float::new(prec);
        let mut max_exp: Option<i32> = None;
        let mut quiet = 0usize;
        for row in &self.coeffs {
            poly.assign(&row[self.genus - 1]);
            for c in row[..self.genus - 1].iter().rev() {
                poly *= &log_x;
                poly += c;
            }
            term.assign(&poly * &xk);
            sum += &term;
            match (term.get_exp(), max_exp) {
                (Some(te), Some(me)) if te > me => {
                    max_exp = Some(te);
                    quiet = 0;
                }
                (Some(te), Some(me)) if te > me - prec as i32 => quiet = 0,
                (Some(te), None) => max_exp = Some(te),
                _ => quiet += 1,
            }
            if quiet >= QUIET_TERMS {
                let cancellation = match (max_exp, sum.get_exp()) {
                    (Some(me), Some(se)) => (me - se + 1).max(0) as u32,
                    _ => u32::MAX,
                };
                return Some(Evaluation {
                    value: sum,
                    cancellation_bits: cancellation,
                });
            }
            xk *= x;
        }
        None
    }
}

fn check_domain(x: &Float, genus: usize) -> Result<()> {
    if genus == 0 {
        return Err(FeError::InvalidArgument("genus must be at least 1".into()));
    }
    if !x.is_finite() || *x <= 0 {
        return Err(FeError::Domain(format!("phi_g needs x > 0, got {x}")));
    }
    Ok(())
}

/// Evaluates with escalation until at least `prec` bits survive the
/// cancellation, starting from `start` bits.
pub(crate) fn eval_escalating(x: &Float, genus: usize, prec: u32, start: u32) -> Result<Float> {
    let xf = x.to_f64();
    let mut wp = start.max(prec);
    loop {
        let kernel = Kernel::for_range(genus, wp, xf)?;
        let xw = Float::with_val(wp, x);
        if let Some(ev) = kernel.eval(&xw) {
            if ev.cancellation_bits.saturating_add(prec + 8) <= wp {
                return Ok(Float::with_val(prec, &ev.value));
            }
        }
        wp = wp.checked_mul(2).filter(|&w| w <= MAX_PRECISION).ok_or_else(|| {
            FeError::NumericFailure(format!(
                "phi_{genus}({xf}) needs more than {MAX_PRECISION} bits"
            ))
        })?;
    }
}

/// Starting working precision for arguments up to `x_max`.
pub(crate) fn working_precision(genus: usize, x_max: f64, prec: u32) -> u32 {
    prec + cancellation_estimate(genus, x_max) + GUARD_BITS
}

/// `phi_g(x)` correct to about `prec` bits.
pub fn phi_g(x: &Float, genus: usize, prec: u32) -> Result<Float> {
    check_domain(x, genus)?;
    eval_escalating(x, genus, prec, working_precision(genus, x.to_f64(), prec))
}

/// Leading asymptotic of `phi_g` for large `x`, in log form:
/// `phi_g(x) ~ sqrt((2 pi)^(g-1) / g) x^((1-g)/(2g)) exp(-g x^(1/g))`.
pub fn ln_phi_asymptotic(genus: usize, x: f64) -> f64 {
    let g = genus as f64;
    0.5 * ((g - 1.0) * (2.0 * std::f64::consts::PI).ln() - g.ln())
        + (1.0 - g) / (2.0 * g) * x.ln()
        - g * x.powf(1.0 / g)
}

/// Log of an upper estimate of `integral_X^inf phi_g(x) dx` based on the
/// leading asymptotic, using
/// `integral_U^inf u^(g-1) e^-u du = (g-1)! e^-U sum_(j<g) U^j / j!`.
pub fn ln_tail_integral(genus: usize, x: f64) -> f64 {
    let g = genus as f64;
    let u = g * x.powf(1.0 / g);
    let mut s = 0.0;
    let mut term = 1.0;
    let mut fact_gm1 = 1.0;
    for j in 0..genus {
        if j > 0 {
            term *= u / j as f64;
            fact_gm1 *= j as f64;
        }
        s += term;
    }
    0.5 * ((g - 1.0) * (2.0 * std::f64::consts::PI).ln() - g.ln())
        + (1.0 - g) / (2.0 * g) * x.ln()
        - (g - 1.0) * g.ln()
        + fact_gm1.ln()
        + s.ln()
        - u
}
