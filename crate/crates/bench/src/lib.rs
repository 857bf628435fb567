//! Shared parameter sets for the benchmarks.

use hulthen_core::{PotentialParams, Result};

/// Real Hulthén well with two bound levels.
pub fn real_well() -> Result<PotentialParams> {
    PotentialParams::real(1.0, 0.25, 0.25, 1.0)
}

pub fn pt_well() -> Result<PotentialParams> {
    PotentialParams::pt(1.0, 1.0, 0.32, 0.8)
}

pub fn pseudo_well() -> Result<PotentialParams> {
    PotentialParams::pseudo(1.0, 1.0, 0.32, 0.8)
}

pub fn exponential() -> Result<PotentialParams> {
    PotentialParams::exponential(1.0, 1.0, 1.0)
}

/// Evenly spaced points on `[lo, hi]`.
pub fn sweep(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count.max(2) - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}
