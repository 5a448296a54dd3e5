//! Root-number test: the residual of `Theta(1/t) = w t^2 Theta(t)` for
//! `w = +1` and `w = -1`.

use hecl_core::lseries::LSeriesData;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::theta::theta_checked;

pub const DEFAULT_TEST_POINTS: [f64; 3] = [1.05, 1.1, 1.3];
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Required gap between the rejected and the accepted sign.
pub const SEPARATION: f64 = 1e3;

/// Tail estimates must stay this far below the tolerance.
const TAIL_MARGIN: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    NotVerified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignResidual {
    pub sign: i8,
    /// One residual per test point.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// `Theta(t)` and `Theta(1/t)` as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaValues {
    pub t: String,
    pub theta_t: String,
    pub theta_inv_t: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEReport {
    pub candidates: Vec<SignResidual>,
    pub verdict: Verdict,
    pub root_number: Option<i8>,
    pub test_points: Vec<f64>,
    pub tolerance: f64,
    pub cutoff: u64,
    pub precision_bits: u32,
    pub theta: Vec<ThetaValues>,
}

impl FEReport {
    pub fn residual(&self, sign: i8) -> Option<f64> {
        self.candidates
            .iter()
            .find(|c| c.sign == sign)
            .map(|c| c.max_residual)
    }

    /// Rejected residual over accepted residual, when a sign was accepted.
    pub fn separation(&self) -> Option<f64> {
        let w = self.root_number?;
        Some(self.residual(-w)? / self.residual(w)?)
    }
}

fn digits(x: &Float) -> String {
    let d = ((x.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
    x.to_string_radix(10, Some(d.max(1)))
}

/// Evaluates both signs at every test point and decides, trying `+1`
/// before `-1`.
pub fn verify_fe(
    data: &LSeriesData,
    test_points: &[f64],
    tolerance: f64,
    prec: u32,
) -> Result<FEReport> {
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    for &tp in test_points {
        let t = Float::with_val(prec, tp);
        let inv = Float::with_val(prec, 1u32) / &t;
        let th_t = theta_checked(data, &t, prec, tolerance * TAIL_MARGIN)?;
        let th_inv = theta_checked(data, &inv, prec, tolerance * TAIL_MARGIN)?;
        values.push(ThetaValues {
            t: tp.to_string(),
            theta_t: digits(&th_t),
            theta_inv_t: digits(&th_inv),
        });
        thetas.push((t, th_t, th_inv));
    }
    let mut candidates = Vec::new();
    for sign in [1i8, -1] {
        let residuals: Vec<f64> = thetas
            .iter()
            .map(|(t, th_t, th_inv)| {
                let rhs = Float::with_val(prec, t * t) * th_t;
                let num = if sign == 1 {
                    Float::with_val(prec, th_inv - &rhs)
                } else {
                    Float::with_val(prec, th_inv + &rhs)
                };
                let den = Float::with_val(prec, th_inv.abs_ref()) + rhs.abs();
                (num.abs() / den).to_f64()
            })
            .collect();
        let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
        candidates.push(SignResidual {
            sign,
            residuals,
            max_residual,
        });
    }
    let r = |s: i8| candidates.iter().find(|c| c.sign == s).unwrap().max_residual;
    let (plus, minus) = (r(1), r(-1));
    let (verdict, root_number) = match (plus < tolerance, minus < tolerance) {
        (true, true) => (Verdict::Inconclusive, None),
        (true, false) if minus > SEPARATION * tolerance => (Verdict::Verified, Some(1)),
        (false, true) if plus > SEPARATION * tolerance => (Verdict::Verified, Some(-1)),
        (false, false) => (Verdict::NotVerified, None),
        _ => (Verdict::Inconclusive, None),
    };
    Ok(FEReport {
        candidates,
        verdict,
        root_number,
        test_points: test_points.to_vec(),
        tolerance,
        cutoff: data.cutoff,
        precision_bits: prec,
        theta: values,
    })
}
