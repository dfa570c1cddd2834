//! The JSON report emitted by every command. All reals are written with 17
//! significant digits so reports round-trip losslessly at binary64
//! resolution; same seed and flags give byte-identical output apart from the
//! `timings` object.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+report.v1");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub inputs: serde_json::Value,
    pub gap_report: Option<GapReportJson>,
    pub rotation: Option<RotationJson>,
    pub bounds: Vec<BoundEntry>,
    pub corrected: Option<CorrectedJson>,
    pub sintheta: Option<SinThetaJson>,
    pub verify: Option<VerifyJson>,
    /// Per-phase milliseconds; excluded from the determinism contract.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReportJson {
    pub delta: f64,
    pub delta_under: f64,
    pub epsilon: f64,
    pub g_norm: f64,
    /// Null when delta_under <= 0 (the quotient is not finite).
    pub kappa2: Option<f64>,
    pub c: f64,
    pub separation: String,
    pub pairing: String,
    pub condition_met: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationJson {
    pub gamma_norm_fro: f64,
    pub omega_norm_fro: f64,
    pub pair_norm: f64,
    pub iterations: usize,
    pub final_step_norm: f64,
    pub residual_1: f64,
    pub residual_2: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundEntry {
    pub id: String,
    pub condition_met: bool,
    pub bound_value: Option<f64>,
    pub measured_value: Option<f64>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectedJson {
    pub offdiag_residual: f64,
    pub sigma_min_g1: f64,
    pub sigma_max_g2: f64,
    pub sigma_min_g1_lower: Option<f64>,
    pub sigma_min_g1_upper: Option<f64>,
    pub sigma_max_g2_upper: Option<f64>,
    pub u1_dist: f64,
    pub v1_dist: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SinThetaJson {
    pub norm: String,
    pub delta: f64,
    pub c: f64,
    pub measured: f64,
    pub bound_value: f64,
    pub satisfied: bool,
    pub angles_u: Vec<f64>,
    pub angles_v: Vec<f64>,
    pub sines_u: Vec<f64>,
    pub sines_v: Vec<f64>,
    pub residual_r_fro: f64,
    pub residual_s_fro: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyJson {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub properties: Vec<PropertyResult>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    /// Smallest (allowance - measured) margin observed; negative means a
    /// violation.
    pub worst_slack: f64,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Report {
            tool_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            gap_report: None,
            rotation: None,
            bounds: Vec::new(),
            corrected: None,
            sintheta: None,
            verify: None,
            timings: BTreeMap::new(),
        }
    }
}

/// Compact JSON formatter that writes every f64 with 17 significant digits.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json(report: &Report) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    report.serialize(&mut ser).expect("report serialization cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Drops NaN and infinities to null-able form for JSON.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// FNV-1a digest of file contents, for the `inputs` block.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_digits_and_roundtrip() {
        let mut r = Report::new("test", serde_json::json!({}));
        r.timings.insert("phase".into(), std::f64::consts::PI);
        let text = to_json(&r);
        assert!(text.contains("3.1415926535897931e0"), "{text}");
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back.timings["phase"], std::f64::consts::PI);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(fnv1a_hex(b""), "cbf29ce484222325");
        assert_eq!(fnv1a_hex(b"a"), fnv1a_hex(b"a"));
        assert_ne!(fnv1a_hex(b"a"), fnv1a_hex(b"b"));
    }
}
