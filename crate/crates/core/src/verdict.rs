//! Flatness verdicts shared by every decision method.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CharacterSum,
    DenseOracle,
    SchemeClass,
    ClosedForm,
    Mullin,
    Symbolic,
}

/// Floating verdicts are flat when the deviation is at most this.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Floating deviations in this band are flagged for exact re-checking.
pub const SUSPECT_BAND: (f64, f64) = (1e-12, 1e-6);

/// Whether `U(t)` (or the examined part) is flat.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingVerdict {
    pub flat: bool,
    /// `max | n|U_uv|^2 - 1 |` over examined entries.
    pub max_deviation: f64,
    pub method: Method,
    /// Floating deviation in the band where rounding and structure are hard to tell apart.
    pub suspect: bool,
}

impl MixingVerdict {
    pub fn exact(flat: bool, max_deviation: f64, method: Method) -> Self {
        MixingVerdict { flat, max_deviation: if flat { 0.0 } else { max_deviation }, method, suspect: false }
    }

    pub fn from_deviation(max_deviation: f64, method: Method) -> Self {
        MixingVerdict {
            flat: max_deviation <= FLOAT_TOLERANCE,
            max_deviation,
            method,
            suspect: (SUSPECT_BAND.0..=SUSPECT_BAND.1).contains(&max_deviation),
        }
    }

    pub fn from_entries(entries: impl Iterator<Item = Complex64>, n: usize, method: Method) -> Self {
        let dev = entries.map(|z| (z.norm_sqr() * n as f64 - 1.0).abs()).fold(0.0, f64::max);
        Self::from_deviation(dev, method)
    }
}
