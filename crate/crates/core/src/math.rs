//! Shared numeric primitives: exact-node trigonometry, log-factorials, and
//! compensated summation.

use std::f64::consts::PI;

/// cos(π t), with exact zeros at half-integer `t` and exact ±1 at integers.
///
/// The argument is reduced to a residual in [-1/4, 1/4] before calling libm,
/// so standing-wave nodes evaluate to exactly 0 no matter how large `t` is.
pub fn cos_pi(t: f64) -> f64 {
    if !t.is_finite() {
        return f64::NAN;
    }
    let u = t.abs() % 2.0;
    let q = (2.0 * u).round();
    let f = u - 0.5 * q;
    match (q as i64) & 3 {
        0 => (PI * f).cos(),
        1 => -(PI * f).sin(),
        2 => -(PI * f).cos(),
        _ => (PI * f).sin(),
    }
}

/// cos(k·x) for positions measured in wavelengths (k in rad per wavelength,
/// 2π for the physical standing wave).
pub fn cos_wave(k: f64, x: f64) -> f64 {
    cos_pi(k * x / PI)
}

/// ln(n!) for n = 0..=n_max, by compensated cumulative summation of ln k.
pub fn ln_factorial_table(n_max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max + 1);
    let mut acc = NeumaierSum::new();
    table.push(0.0);
    for n in 1..=n_max {
        acc.add((n as f64).ln());
        table.push(acc.total());
    }
    table
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive (`steps >= 2`).
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    debug_assert!(steps >= 2);
    let step = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| if i == steps - 1 { hi } else { lo + i as f64 * step })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_pi_special_points() {
        assert_eq!(cos_pi(0.0), 1.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(1.0), -1.0);
        assert_eq!(cos_pi(1.5), 0.0);
        assert_eq!(cos_pi(2.0), 1.0);
        assert_eq!(cos_pi(-0.5), 0.0);
        assert_eq!(cos_pi(1234567.5), 0.0);
    }

    #[test]
    fn cos_pi_matches_naive_cos() {
        for i in 0..1000 {
            let t = -3.0 + 6.0 * i as f64 / 999.0;
            let a = cos_pi(t);
            let b = (PI * t).cos();
            assert!((a - b).abs() < 1e-14, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn ln_factorial_small_values() {
        let t = ln_factorial_table(10);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[1], 0.0);
        assert!((t[5] - 120f64.ln()).abs() < 1e-13);
        assert!((t[10] - 3628800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn neumaier_handles_cancellation() {
        let mut s = NeumaierSum::new();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.total(), 10.0);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, 2.0, 5);
        assert_eq!(v, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }
}
