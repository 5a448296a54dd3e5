//! JSON artifacts: curve inputs, L-series caches and run reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hecl_core::lseries::LSeriesData;
use hecl_core::serde_str;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{PipelineError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Local data supplied by hand for a prime the tool cannot handle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    #[serde(with = "serde_str::int_vec")]
    pub factor_inv: Vec<BigInt>,
    pub f_p: usize,
}

/// `y^m = F(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperellipticInput {
    pub m: u32,
    #[serde(with = "serde_str::int_vec")]
    pub f: Vec<BigInt>,
}

mod opt_int_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => serde_str::int_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<BigInt>>, D::Error> {
        serde_str::int_vec::deserialize(d).map(Some)
    }
}

/// A curve file. Either `g` and `h` (for `y^2 + h y = g`) or
/// `superelliptic` must be present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    pub version: u32,
    #[serde(default, with = "opt_int_vec", skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<BigInt>>,
    #[serde(default, with = "opt_int_vec", skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superelliptic: Option<SuperellipticInput>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<u64, Override>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl CurveInput {
    pub fn hyperelliptic(g: &[i64], h: &[i64]) -> Self {
        let big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect();
        Self {
            version: SCHEMA_VERSION,
            g: Some(big(g)),
            h: Some(big(h)),
            superelliptic: None,
            overrides: BTreeMap::new(),
            cutoff: None,
            precision_bits: None,
            tolerance: None,
        }
    }

    /// Fingerprint of everything that determines the L-series data.
    pub fn series_key(&self, cutoff: u64) -> String {
        let mut h = Sha256::new();
        let strings = |v: &Option<Vec<BigInt>>| {
            v.as_ref()
                .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
        };
        let text = serde_json::to_string(&(
            strings(&self.g),
            strings(&self.h),
            &self.superelliptic,
            &self.overrides,
            cutoff,
        ));
        h.update(text.expect("serializable"));
        hex(&h.finalize())
    }
}

/// On-disk L-series cache, keyed by [`CurveInput::series_key`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub version: u32,
    pub key: String,
    pub lseries: LSeriesData,
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the decimal coefficients `a_1..a_M`, one per line.
pub fn coefficient_checksum(data: &LSeriesData) -> String {
    let mut h = Sha256::new();
    for a in &data.coeffs {
        h.update(a.to_string());
        h.update(b"\n");
    }
    hex(&h.finalize())
}

/// Byte offset of a 1-based (line, column) position in `text`.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Parses `text`, reporting the failing field path and byte offset.
pub fn parse<T: DeserializeOwned>(text: &str, file: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.inner();
        // serde_json points at the last byte read; at EOF that is one short
        let offset = if inner.is_eof() {
            text.len()
        } else {
            byte_offset(text, inner.line(), inner.column())
        };
        PipelineError::Parse {
            file: file.to_string(),
            message: format!(
                "at {path}, byte {offset} (line {}, column {}): {inner}",
                inner.line(),
                inner.column()
            ),
        }
    })?;
    de.end().map_err(|e| PipelineError::Parse {
        file: file.to_string(),
        message: format!(
            "byte {} (line {}, column {}): {e}",
            byte_offset(text, e.line(), e.column()),
            e.line(),
            e.column()
        ),
    })?;
    Ok(value)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_curve(text: &str, file: &str) -> Result<CurveInput> {
    let curve: CurveInput = parse(text, file)?;
    if curve.version != SCHEMA_VERSION {
        return Err(PipelineError::Parse {
            file: file.to_string(),
            message: format!(
                "at version: unsupported schema version {} (expected {SCHEMA_VERSION})",
                curve.version
            ),
        });
    }
    Ok(curve)
}

pub fn load_curve(path: &Path) -> Result<CurveInput> {
    parse_curve(&read(path)?, &path.display().to_string())
}

pub fn save_curve(path: &Path, curve: &CurveInput) -> Result<()> {
    write(path, &to_json(curve))
}

pub fn load_cache(path: &Path) -> Result<CacheFile> {
    let cache: CacheFile = parse(&read(path)?, &path.display().to_string())?;
    if cache.version != SCHEMA_VERSION {
        return Err(PipelineError::Input(format!(
            "{}: unsupported cache version {}",
            path.display(),
            cache.version
        )));
    }
    Ok(cache)
}

pub fn save_cache(path: &Path, cache: &CacheFile) -> Result<()> {
    write(path, &serde_json::to_string(cache).expect("serializable"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_count_bytes() {
        let text = "ab\ncdé\nf";
        assert_eq!(byte_offset(text, 1, 1), 0);
        assert_eq!(byte_offset(text, 2, 3), 5);
        assert_eq!(byte_offset(text, 3, 1), 8);
    }

    #[test]
    fn unknown_field_named_with_path() {
        let text = r#"{"version": 1, "g": ["1"], "h": ["1"], "overrides": {"5": {"factor_inv": ["1"], "f_p": 1, "x": 2}}}"#;
        let err = parse_curve(text, "c.json").unwrap_err().to_string();
        assert!(err.contains("overrides.5"), "{err}");
        assert!(err.contains("unknown field `x`"), "{err}");
    }

    #[test]
    fn non_integer_coefficient_rejected() {
        let text = r#"{"version": 1, "g": ["1", "2.5"], "h": ["1"]}"#;
        let err = parse_curve(text, "c.json").unwrap_err().to_string();
        assert!(err.contains("at g"), "{err}");
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"version": 2, "g": ["1"], "h": ["1"]}"#;
        assert!(parse_curve(text, "c.json").is_err());
    }

    #[test]
    fn series_key_depends_on_cutoff_and_overrides() {
        let mut c = CurveInput::hyperelliptic(&[1, 0, 0, 0, 0, 1], &[1]);
        let k = c.series_key(100);
        assert_ne!(k, c.series_key(101));
        c.overrides.insert(
            2,
            Override {
                factor_inv: vec![BigInt::from(1)],
                f_p: 1,
            },
        );
        assert_ne!(k, c.series_key(100));
    }
}
