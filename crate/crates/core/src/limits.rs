//! Size limits shared by the enumeration and dense routines.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default number of group elements any single enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// Largest matrix order handled by the dense spectral oracle.
pub const DENSE_CAP: usize = 1024;

/// The enumeration cap, overridable through the `QMIX_CAP` environment variable.
pub fn enumeration_cap() -> u128 {
    static CAP: OnceLock<u128> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("QMIX_CAP")
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_ENUMERATION_CAP)
    })
}

/// `q^e` as a u128, saturating.
pub fn pow_saturating(q: u32, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

pub(crate) fn check_cap(requested: u128) -> Result<()> {
    let cap = enumeration_cap();
    if requested > cap {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(())
    }
}
