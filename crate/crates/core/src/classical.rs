//! Semiclassical Rabi excitation of a two-level atom in a classical standing
//! wave: P_e(x, t) = ½{1 − cos[Ω₀ t cos(kx)]}, the zero-fluctuation baseline.
//!
//! Positions are measured in wavelengths, so the physical wavenumber is
//! k = 2π per wavelength; all results depend only on the pulse area Ω₀t and
//! on kx.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::math::cos_wave;
use crate::pattern::ExcitationPattern;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalDrive {
    omega0: f64,
    k: f64,
}

impl ClassicalDrive {
    pub fn new(omega0: f64, k: f64) -> Result<Self> {
        if !omega0.is_finite() || omega0 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be finite and >= 0, got {omega0}"
            )));
        }
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::InvalidParameter(format!("k must be finite and > 0, got {k}")));
        }
        Ok(Self { omega0, k })
    }

    /// Drive in the standing wave E₀cos(kx) with k = 2π per wavelength.
    pub fn standing_wave(omega0: f64) -> Result<Self> {
        Self::new(omega0, TAU)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Excited-state probability at position `x` (wavelengths) and time `t`.
///
/// Evaluated as sin²(Ω₀t cos(kx)/2), which is exact at nodes and free of
/// cancellation at small pulse areas.
pub fn classical_pe(d: &ClassicalDrive, x: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let half = 0.5 * d.omega0 * t * cos_wave(d.k, x);
    let s = half.sin();
    s * s
}

/// Sample the classical pattern over a strictly increasing position grid.
pub fn classical_pattern(d: &ClassicalDrive, t: f64, grid: &[f64]) -> ExcitationPattern {
    let pe = grid.iter().map(|&x| classical_pe(d, x, t)).collect();
    let area = d.omega0 * t;
    ExcitationPattern::new(
        grid.to_vec(),
        pe,
        area,
        format!("classical(pulse_area={area})"),
    )
}
