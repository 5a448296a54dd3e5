//! validate -> bad primes -> conductor and M -> local factors -> a_n ->
//! functional equation.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use hecl_core::lseries::{conductor, LSeriesData};
use hecl_core::reduction::{
    analyze_prime, bad_prime_candidates, check_semistable_p2, check_semistable_podd, BadPrimeReport,
    NormalizationEq, PrimeAnalysis, Semistability, SingularPoint,
};
use hecl_core::serde_str;
use hecl_core::superelliptic::SuperellipticSpec;
use hecl_core::zeta::{good_local_factors, LocalFactorInv};
use hecl_core::{CurveSpec, IntPoly};
use hecl_fe::verify::{DEFAULT_TEST_POINTS, DEFAULT_TOLERANCE};
use hecl_fe::{choose_m, verify_fe, FEReport, DEFAULT_PRECISION};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{PipelineError, Result};
use crate::io::{self, CacheFile, CurveInput, SCHEMA_VERSION};

/// Decimal digits asked of the coefficient tail when `M` is not given.
pub const DEFAULT_DIGITS: u32 = 12;

pub enum Model {
    Hyperelliptic(CurveSpec),
    Superelliptic(SuperellipticSpec),
}

impl Model {
    pub fn genus(&self) -> usize {
        match self {
            Self::Hyperelliptic(c) => c.genus(),
            Self::Superelliptic(s) => s.genus(),
        }
    }
}

/// Checks the shape of the input and builds the curve model.
pub fn validate(input: &CurveInput) -> Result<Model> {
    if input.version != SCHEMA_VERSION {
        return Err(PipelineError::Input(format!(
            "unsupported schema version {}",
            input.version
        )));
    }
    if let Some(t) = input.tolerance {
        if !(t > 0.0 && t < 1.0) {
            return Err(PipelineError::Input(format!("tolerance {t} must lie in (0, 1)")));
        }
    }
    if input.precision_bits == Some(0) {
        return Err(PipelineError::Input("precision_bits must be positive".into()));
    }
    if input.cutoff == Some(0) {
        return Err(PipelineError::Input("M must be positive".into()));
    }
    let model = match (&input.g, &input.h, &input.superelliptic) {
        (Some(g), Some(h), None) => {
            let h = IntPoly::new(h.clone());
            if h.all_divisible_by(&BigInt::from(2)) {
                return Err(PipelineError::Input("h must not be 0 mod 2".into()));
            }
            Model::Hyperelliptic(CurveSpec::new(IntPoly::new(g.clone()), h)?)
        }
        (None, None, Some(s)) => Model::Superelliptic(SuperellipticSpec::new(s.m, IntPoly::new(s.f.clone()))?),
        _ => {
            return Err(PipelineError::Input(
                "give either both g and h, or superelliptic".into(),
            ))
        }
    };
    Ok(model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Computed,
    Override,
}

/// Per-bad-prime summary in a run report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BadPrimeSummary {
    #[serde(with = "serde_str::uint")]
    pub p: BigUint,
    pub source: Source,
    pub f_p: usize,
    /// Inverse local factor, ascending in `T`.
    #[serde(with = "serde_str::int_vec")]
    pub factor_inv: Vec<BigInt>,
    /// Highest degree known, when the factor is truncated.
    pub truncated_at: Option<usize>,
    /// Singular locus and double points; absent for overrides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSummary {
    #[serde(with = "serde_str::uint_vec")]
    pub r: Vec<BigUint>,
    pub points: Vec<SingularPoint>,
    pub normalization: NormalizationEq,
    pub genus0: usize,
    pub residue_field_extension: bool,
}

impl BadPrimeSummary {
    fn computed(r: &BadPrimeReport) -> Self {
        Self {
            p: r.p.clone(),
            source: Source::Computed,
            f_p: r.f_p,
            factor_inv: r.local_factor_inv.coeffs.clone(),
            truncated_at: r.local_factor_inv.truncated_at,
            reduction: Some(ReductionSummary {
                r: r.r.clone(),
                points: r.points.clone(),
                normalization: r.normalization.clone(),
                genus0: r.genus0,
                residue_field_extension: r.residue_field_extension,
            }),
        }
    }

    fn overridden(lf: &LocalFactorInv) -> Self {
        Self {
            p: lf.p.clone(),
            source: Source::Override,
            f_p: lf.f_p,
            factor_inv: lf.coeffs.clone(),
            truncated_at: lf.truncated_at,
            reduction: None,
        }
    }
}

/// Everything known once the bad primes are settled.
pub struct BadPrimeStage {
    pub model: Model,
    pub summaries: Vec<BadPrimeSummary>,
    /// Computed reports, for recomputing factors at the final cutoff.
    pub reports: Vec<BadPrimeReport>,
    pub overrides: Vec<LocalFactorInv>,
    pub conductor: BigUint,
}

fn override_factor(p: u64, o: &io::Override) -> Result<LocalFactorInv> {
    Ok(LocalFactorInv::new(BigUint::from(p), o.factor_inv.clone(), None, o.f_p)?)
}

/// Bad-prime candidates, semistability checks, local analysis, and the
/// conductor.
pub fn bad_prime_stage(input: &CurveInput) -> Result<BadPrimeStage> {
    let model = validate(input)?;
    let mut summaries = Vec::new();
    let mut reports = Vec::new();
    let mut overrides = Vec::new();
    let mut bad = Vec::new();

    let candidates = match &model {
        Model::Hyperelliptic(c) => bad_prime_candidates(c)?,
        Model::Superelliptic(s) => s.bad_primes()?,
    };
    for p in candidates {
        let supplied = p.to_u64().and_then(|q| input.overrides.get(&q).map(|o| (q, o)));
        match (&model, supplied) {
            (Model::Hyperelliptic(curve), Some((q, o))) => {
                let check = if q == 2 {
                    check_semistable_p2(curve)
                } else {
                    check_semistable_podd(curve, &p)?
                };
                if check == Semistability::Semistable {
                    return Err(hecl_core::Error::Configuration(format!(
                        "override given for p={p}, whose local data is computable"
                    ))
                    .into());
                }
                let lf = override_factor(q, o)?;
                summaries.push(BadPrimeSummary::overridden(&lf));
                overrides.push(lf);
                bad.push(p);
            }
            (Model::Hyperelliptic(curve), None) => match analyze_prime(curve, &p)? {
                PrimeAnalysis::Good => {}
                PrimeAnalysis::Bad(report) => {
                    summaries.push(BadPrimeSummary::computed(&report));
                    reports.push(*report);
                    bad.push(p);
                }
            },
            (Model::Superelliptic(_), Some((q, o))) => {
                let lf = override_factor(q, o)?;
                summaries.push(BadPrimeSummary::overridden(&lf));
                overrides.push(lf);
                bad.push(p);
            }
            (Model::Superelliptic(_), None) => {
                return Err(PipelineError::OverrideRequired {
                    prime: p,
                    reason: "no local algorithm for this model".into(),
                })
            }
        }
    }
    let mut sources: Vec<LocalFactorInv> = reports.iter().map(|r| r.local_factor_inv.clone()).collect();
    sources.extend(overrides.iter().cloned());
    let n = conductor(&bad, &sources)?;
    let stray: Vec<u64> = input
        .overrides
        .keys()
        .copied()
        .filter(|q| !bad.contains(&BigUint::from(*q)))
        .collect();
    if !stray.is_empty() {
        return Err(hecl_core::Error::Configuration(format!(
            "overrides given for primes of good reduction: {stray:?}"
        ))
        .into());
    }
    Ok(BadPrimeStage {
        model,
        summaries,
        reports,
        overrides,
        conductor: n,
    })
}

/// Settings that the command line may impose over the curve file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cutoff: Option<u64>,
    pub precision_bits: Option<u32>,
    pub tolerance: Option<f64>,
    pub test_points: Option<Vec<f64>>,
    pub cache: Option<PathBuf>,
}

/// Wall-clock seconds per stage.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub analysis: f64,
    pub counting: f64,
    pub coefficients: f64,
    pub functional_equation: f64,
    pub total: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffSource {
    Option,
    Input,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub version: u32,
    pub curve: CurveInput,
    pub genus: usize,
    pub bad_primes: Vec<BadPrimeSummary>,
    #[serde(with = "serde_str::uint")]
    pub conductor: BigUint,
    pub cutoff: u64,
    pub cutoff_source: CutoffSource,
    /// SHA-256 over `a_1..a_M` in decimal, one per line.
    pub coefficient_checksum: String,
    pub from_cache: bool,
    pub fe: FEReport,
    pub timings: Timings,
}

/// Local factors for every prime `<= cutoff` plus all bad primes.
fn local_factors(stage: &BadPrimeStage, cutoff: u64) -> Result<BTreeMap<u64, LocalFactorInv>> {
    let bad: Vec<u64> = stage
        .summaries
        .iter()
        .map(|s| {
            s.p.to_u64()
                .ok_or_else(|| PipelineError::Input(format!("bad prime {} exceeds 64 bits", s.p)))
        })
        .collect::<Result<_>>()?;
    let mut factors = match &stage.model {
        Model::Hyperelliptic(c) => good_local_factors(c, cutoff, &bad)?,
        Model::Superelliptic(s) => s.good_local_factors(cutoff)?,
    };
    for r in &stage.reports {
        let lf = r.local_factor_for_cutoff(cutoff)?;
        factors.insert(r.p.to_u64().expect("checked"), lf);
    }
    for lf in &stage.overrides {
        factors.insert(lf.p.to_u64().expect("checked"), lf.clone());
    }
    Ok(factors)
}

/// The L-series at `cutoff`, assembled from scratch.
pub fn lseries(stage: &BadPrimeStage, cutoff: u64) -> Result<(LSeriesData, f64, f64)> {
    let t = Instant::now();
    let factors = local_factors(stage, cutoff)?;
    let counting = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let data = LSeriesData::assemble(stage.model.genus(), stage.conductor.clone(), cutoff, &factors, &[])?;
    Ok((data, counting, t.elapsed().as_secs_f64()))
}

fn cached(path: &PathBuf, key: &str) -> Option<LSeriesData> {
    if !path.exists() {
        return None;
    }
    match io::load_cache(path) {
        Ok(c) if c.key == key => Some(c.lseries),
        Ok(_) => None,
        Err(e) => {
            eprintln!("warning: ignoring cache: {e}");
            None
        }
    }
}

/// Runs every stage and returns the report; a functional equation that
/// fails to verify is reported, not raised.
pub fn run(input: &CurveInput, options: &RunOptions) -> Result<RunReport> {
    let start = Instant::now();
    let mut timings = Timings::default();

    let stage = bad_prime_stage(input)?;
    timings.analysis = start.elapsed().as_secs_f64();
    let genus = stage.model.genus();

    let (cutoff, cutoff_source) = match (options.cutoff, input.cutoff) {
        (Some(m), _) => (m, CutoffSource::Option),
        (None, Some(m)) => (m, CutoffSource::Input),
        (None, None) => (choose_m(&stage.conductor, genus, DEFAULT_DIGITS), CutoffSource::Heuristic),
    };
    if cutoff == 0 {
        return Err(PipelineError::Input("M must be positive".into()));
    }

    let key = input.series_key(cutoff);
    let reuse = options
        .cache
        .as_ref()
        .and_then(|p| cached(p, &key))
        .filter(|d| d.conductor == stage.conductor && d.genus == genus && d.cutoff == cutoff);
    let from_cache = reuse.is_some();
    let data = match reuse {
        Some(d) => d,
        None => {
            let (data, counting, coefficients) = lseries(&stage, cutoff)?;
            timings.counting = counting;
            timings.coefficients = coefficients;
            if let Some(path) = &options.cache {
                io::save_cache(
                    path,
                    &CacheFile {
                        version: SCHEMA_VERSION,
                        key,
                        lseries: data.clone(),
                    },
                )?;
            }
            data
        }
    };

    let t = Instant::now();
    let precision = options
        .precision_bits
        .or(input.precision_bits)
        .unwrap_or(DEFAULT_PRECISION);
    let tolerance = options.tolerance.or(input.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    let points = options
        .test_points
        .clone()
        .unwrap_or_else(|| DEFAULT_TEST_POINTS.to_vec());
    let fe = verify_fe(&data, &points, tolerance, precision)?;
    timings.functional_equation = t.elapsed().as_secs_f64();
    timings.total = start.elapsed().as_secs_f64();

    Ok(RunReport {
        version: SCHEMA_VERSION,
        curve: input.clone(),
        genus,
        bad_primes: stage.summaries,
        conductor: stage.conductor,
        cutoff,
        cutoff_source,
        coefficient_checksum: io::coefficient_checksum(&data),
        from_cache,
        fe,
        timings,
    })
}

/// `p1^e1 * p2^e2 * ...` for a conductor built from bad-prime summaries.
pub fn factored(summaries: &[BadPrimeSummary]) -> String {
    let parts: Vec<String> = summaries
        .iter()
        .filter(|s| s.f_p > 0)
        .map(|s| match s.f_p {
            1 => s.p.to_string(),
            e => format!("{}^{e}", s.p),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}
