//! Truncated Fock-basis field states: coherent and squeezed coherent
//! construction, photon statistics, and Husimi Q densities.
//!
//! Coherent amplitudes are evaluated in log-magnitude form so that means up
//! to ~10^4 photons stay inside f64 range. Squeezed coherent amplitudes come
//! from the three-term recurrence
//!
//! ```text
//! c_{n+1} = [ (β/cosh r) c_n  -  e^{iθ} tanh r √n c_{n-1} ] / √(n+1)
//! ```
//!
//! seeded with c_0 = exp(-½(|β|² - e^{-iθ}β² tanh r)) / √cosh r, which follows
//! from S(ξ) a S†(ξ) = a cosh r + a† e^{iθ} sinh r applied to S(ξ)D(β)|0⟩.
//! The closed Hermite-polynomial form overflows f64 well below the photon
//! numbers needed here; it is kept as an independent low-n route and every
//! construction cross-checks the two (see [`squeezed_coefficients_direct`]).

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{ln_factorial_table, NeumaierSum};

/// Largest probability allowed outside the kept Fock basis, and the allowed
/// deviation of Σ|c_n|² from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Highest photon number covered by the construction-time dual-route check.
const DUAL_CHECK_N: usize = 30;
/// Allowed relative disagreement between the recurrence and the direct
/// Hermite form on the validated range.
const DUAL_CHECK_TOL: f64 = 1e-8;
/// Hard cap for the adaptive truncation search.
const N_MAX_CAP: usize = 1 << 20;

const RESCALE_LIMIT: f64 = 1.3407807929942597e154; // 2^512
const RESCALE_FACTOR: f64 = 7.458340731200207e-155; // 2^-512
const RESCALE_LN: f64 = 512.0 * std::f64::consts::LN_2;

/// Displacement and squeezing parameters (|β|, φ, r, θ) of S(ξ)D(β)|0⟩ with
/// ξ = r e^{iθ} and β = |β| e^{iφ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    beta_mag: f64,
    phi: f64,
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    /// Phases are reduced to [0, 2π); `beta_mag` and `r` must be finite and
    /// nonnegative.
    pub fn new(beta_mag: f64, phi: f64, r: f64, theta: f64) -> Result<Self> {
        if !beta_mag.is_finite() || beta_mag < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta_mag must be finite and >= 0, got {beta_mag}"
            )));
        }
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "squeezing degree r must be finite and >= 0, got {r}"
            )));
        }
        if !phi.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "phases must be finite, got phi={phi}, theta={theta}"
            )));
        }
        Ok(Self {
            beta_mag,
            phi: phi.rem_euclid(TAU),
            r,
            theta: theta.rem_euclid(TAU),
        })
    }

    pub fn beta_mag(&self) -> f64 {
        self.beta_mag
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// β as a complex amplitude.
    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar(self.beta_mag, self.phi)
    }

    /// The phase combination 2φ − θ that controls the number variance.
    pub fn phase_difference(&self) -> f64 {
        2.0 * self.phi - self.theta
    }
}

/// Mean photon number and photon-number variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStats {
    pub mean: f64,
    pub variance: f64,
}

impl PhotonStats {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// What a [`FieldState`] was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Coherent { alpha_mag: f64, phi: f64 },
    SqueezedCoherent(SqueezeParams),
    Custom { label: String },
}

impl StateKind {
    pub fn describe(&self) -> String {
        match self {
            StateKind::Coherent { alpha_mag, phi } => {
                if *phi == 0.0 {
                    format!("coherent(alpha={alpha_mag})")
                } else {
                    format!("coherent(alpha={alpha_mag}, phi={phi})")
                }
            }
            StateKind::SqueezedCoherent(p) => format!(
                "squeezed(beta={}, phi={}, r={}, theta={})",
                p.beta_mag, p.phi, p.r, p.theta
            ),
            StateKind::Custom { label } => format!("custom({label})"),
        }
    }
}

/// Truncation policy for state construction.
///
/// `Auto` seeds the cutoff at n̄ + 12σ + 20 and, for squeezed states (whose
/// far tails decay only geometrically, like tanh r per photon), grows it
/// until the truncation loss is within [`NORMALIZATION_TOLERANCE`]. `Fixed`
/// uses exactly the given cutoff and fails if the loss is too large.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NMaxPolicy {
    #[default]
    Auto,
    Fixed(usize),
}

/// A normalized field state on the truncated Fock basis n = 0..=n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    coeffs: Vec<Complex64>,
    kind: StateKind,
    truncation_loss: f64,
}

impl FieldState {
    /// Amplitudes c_0..=c_{n_max}.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    /// Probability 1 − Σ|c_n|² measured at construction, before the final
    /// renormalization.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    /// |c_n|² for every kept n.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn describe(&self) -> String {
        self.kind.describe()
    }
}

fn norm_sqr_sum(coeffs: &[Complex64]) -> f64 {
    let mut s = NeumaierSum::new();
    for c in coeffs {
        s.add(c.norm_sqr());
    }
    s.total()
}

fn validate_and_finish(
    mut coeffs: Vec<Complex64>,
    kind: StateKind,
    renormalize: bool,
) -> Result<FieldState> {
    let sum = norm_sqr_sum(&coeffs);
    let loss = 1.0 - sum;
    if !(-1e-9..=NORMALIZATION_TOLERANCE).contains(&loss) {
        return Err(Error::TruncationInsufficient {
            n_max: coeffs.len() - 1,
            loss,
            allowed: NORMALIZATION_TOLERANCE,
        });
    }
    if renormalize {
        let scale = 1.0 / sum.sqrt();
        for c in coeffs.iter_mut() {
            *c *= scale;
        }
    }
    Ok(FieldState {
        coeffs,
        kind,
        truncation_loss: loss.max(0.0),
    })
}

fn coherent_auto_n_max(alpha_mag: f64) -> usize {
    (alpha_mag * alpha_mag + 12.0 * alpha_mag + 20.0).ceil() as usize
}

/// Coherent state |α⟩, α = alpha_mag·e^{iφ}, with Poissonian |c_n|².
pub fn make_coherent(alpha_mag: f64, phi: f64, policy: NMaxPolicy) -> Result<FieldState> {
    if !alpha_mag.is_finite() || alpha_mag < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha_mag must be finite and >= 0, got {alpha_mag}"
        )));
    }
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("phi must be finite, got {phi}")));
    }
    let n_max = match policy {
        NMaxPolicy::Auto => coherent_auto_n_max(alpha_mag),
        NMaxPolicy::Fixed(n) => n,
    };
    let kind = StateKind::Coherent { alpha_mag, phi };
    if alpha_mag == 0.0 {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
        coeffs[0] = Complex64::new(1.0, 0.0);
        return validate_and_finish(coeffs, kind, false);
    }
    let ln_alpha = alpha_mag.ln();
    let lnfact = ln_factorial_table(n_max);
    let half_a2 = 0.5 * alpha_mag * alpha_mag;
    let coeffs: Vec<Complex64> = (0..=n_max)
        .map(|n| {
            let ln_mag = -half_a2 + n as f64 * ln_alpha - 0.5 * lnfact[n];
            Complex64::from_polar(ln_mag.exp(), n as f64 * phi)
        })
        .collect();
    validate_and_finish(coeffs, kind, false)
}

/// A state from explicitly supplied amplitudes (must already be normalized to
/// within [`NORMALIZATION_TOLERANCE`]).
pub fn make_custom(coeffs: Vec<Complex64>, label: impl Into<String>) -> Result<FieldState> {
    if coeffs.is_empty() {
        return Err(Error::InvalidParameter("custom state needs at least c_0".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidParameter("custom coefficients must be finite".into()));
    }
    validate_and_finish(coeffs, StateKind::Custom { label: label.into() }, false)
}

/// Unscaled recurrence ratios u_n = c_n/c_0 together with a log-scale ledger:
/// the true ratio is u_n · exp(ledger_n). Rescaling by exact powers of two
/// keeps the march inside f64 range for arbitrarily large |β|.
fn squeezed_ratios(p: &SqueezeParams, n_max: usize) -> (Vec<Complex64>, Vec<f64>) {
    let b = p.beta();
    let tanh_phase = Complex64::from_polar(p.r.tanh(), p.theta);
    let b_over_cosh = b / p.r.cosh();

    let mut vals = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut ledger = vec![0.0f64; n_max + 1];
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = b_over_cosh;
    let mut scale = 0.0f64;
    vals[0] = prev;
    if n_max >= 1 {
        vals[1] = cur;
    }
    for n in 1..n_max {
        let next = (b_over_cosh * cur - tanh_phase * (n as f64).sqrt() * prev)
            / ((n + 1) as f64).sqrt();
        prev = cur;
        cur = next;
        if cur.norm_sqr() > RESCALE_LIMIT * RESCALE_LIMIT {
            prev *= RESCALE_FACTOR;
            cur *= RESCALE_FACTOR;
            scale += RESCALE_LN;
        }
        vals[n + 1] = cur;
        ledger[n + 1] = scale;
    }
    (vals, ledger)
}

/// Real part of ln c_0 and the phase of c_0.
fn squeezed_c0_log(p: &SqueezeParams) -> (f64, f64) {
    let b = p.beta();
    // exponent of c_0: -½(|β|² - e^{-iθ} β² tanh r), then a 1/√cosh r factor
    let w = Complex64::from_polar(1.0, -p.theta) * b * b * p.r.tanh();
    let ln_mag = -0.5 * (p.beta_mag * p.beta_mag - w.re) - 0.5 * p.r.cosh().ln();
    (ln_mag, 0.5 * w.im)
}

/// Coefficients of S(ξ)D(β)|0⟩ straight from the Hermite closed form.
///
/// This is the independent validation route: it is exact in f64 only while
/// every intermediate stays in range (fine for |β| ≲ 20 and small n), and it
/// is singular at r = 0. Production construction uses the recurrence.
pub fn squeezed_coefficients_direct(p: &SqueezeParams, n_max: usize) -> Vec<Complex64> {
    let (ln_c0, c0_phase) = squeezed_c0_log(p);
    let c0 = Complex64::from_polar(ln_c0.exp(), c0_phase);
    squeezed_ratios_direct(p, n_max)
        .into_iter()
        .map(|u| u * c0)
        .collect()
}

/// Hermite-route ratios c_n/c_0 with consistently paired half-angle branches
/// (e^{iθ/2} in t^{n/2} and e^{-iθ/2} inside the Hermite argument).
fn squeezed_ratios_direct(p: &SqueezeParams, n_max: usize) -> Vec<Complex64> {
    let tanh_r = p.r.tanh();
    let half_theta = Complex64::from_polar(1.0, 0.5 * p.theta);
    let zeta = Complex64::from_polar(p.beta_mag, p.phi) / half_theta
        / (2.0 * p.r.sinh() * p.r.cosh()).sqrt();
    // Hermite values by upward recurrence
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(Complex64::new(1.0, 0.0));
    if n_max >= 1 {
        h.push(2.0 * zeta);
    }
    for n in 1..n_max {
        let next = 2.0 * (zeta * h[n] - n as f64 * h[n - 1]);
        h.push(next);
    }
    // prefactor q_n = t^{n/2} / (2^{n/2} √(n!)), built multiplicatively
    let t_half = half_theta * tanh_r.sqrt();
    let mut q = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(n_max + 1);
    for (n, hn) in h.iter().enumerate() {
        if n > 0 {
            q *= t_half / (2.0 * n as f64).sqrt();
        }
        out.push(q * hn);
    }
    out
}

/// Squeezed coherent state S(ξ)D(β)|0⟩.
///
/// The recurrence route is cross-checked against the Hermite closed form for
/// n ≤ 30 at every construction; disagreement is reported as
/// [`Error::NumericalInstability`].
pub fn make_squeezed_coherent(p: &SqueezeParams, policy: NMaxPolicy) -> Result<FieldState> {
    if p.r == 0.0 {
        // S(0) is the identity; fall back to the coherent constructor
        let coherent = make_coherent(p.beta_mag, p.phi, policy)?;
        return Ok(FieldState {
            kind: StateKind::SqueezedCoherent(*p),
            ..coherent
        });
    }
    let stats = photon_stats(p);
    let seed = (stats.mean + 12.0 * (stats.variance + 1.0).sqrt() + 20.0).ceil() as usize;
    let (mut n_max, adaptive) = match policy {
        NMaxPolicy::Auto => (seed, true),
        NMaxPolicy::Fixed(n) => (n, false),
    };

    loop {
        let (ratios, ledger) = squeezed_ratios(p, n_max);
        dual_route_check(p, &ratios, &ledger)?;
        let (ln_c0, c0_phase) = squeezed_c0_log(p);
        let coeffs: Vec<Complex64> = ratios
            .iter()
            .zip(&ledger)
            .map(|(u, s)| {
                let m = u.norm();
                if m == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::from_polar((ln_c0 + s + m.ln()).exp(), c0_phase + u.arg())
                }
            })
            .collect();
        let loss = 1.0 - norm_sqr_sum(&coeffs);
        if adaptive && loss > NORMALIZATION_TOLERANCE && n_max < N_MAX_CAP {
            n_max = (n_max + n_max / 2 + 32).min(N_MAX_CAP);
            continue;
        }
        return validate_and_finish(coeffs, StateKind::SqueezedCoherent(*p), true);
    }
}

/// Compare recurrence ratios against the Hermite-route ratios on the low-n
/// validated range. Scale-free, so it works at any |β|.
fn dual_route_check(p: &SqueezeParams, ratios: &[Complex64], ledger: &[f64]) -> Result<()> {
    let top = DUAL_CHECK_N.min(ratios.len() - 1);
    if ledger[top] != 0.0 {
        return Ok(()); // rescaled inside the window: |β| is astronomically large
    }
    let direct = squeezed_ratios_direct(p, top);
    for n in 1..=top {
        // local scale guards the comparison near zeros of the Hermite factor
        let scale = direct[n]
            .norm()
            .max(direct[n - 1].norm())
            .max(direct.get(n + 1).map_or(0.0, |d| d.norm()))
            .max(ratios[n].norm());
        if scale == 0.0 {
            continue;
        }
        let diff = (ratios[n] - direct[n]).norm();
        if diff > DUAL_CHECK_TOL * scale {
            return Err(Error::NumericalInstability {
                n,
                max_rel: diff / scale,
            });
        }
    }
    Ok(())
}

/// Closed-form mean and variance of the squeezed coherent state:
/// n̄ = |β|²(cosh²r + sinh²r − 2cos(2φ−θ) sinh r cosh r) + sinh²r and
/// (Δn)² = |β|²[cosh 4r − cos(2φ−θ) sinh 4r] + 2 sinh²r cosh²r.
pub fn photon_stats(p: &SqueezeParams) -> PhotonStats {
    let (sh, ch) = (p.r.sinh(), p.r.cosh());
    let cp = p.phase_difference().cos();
    let b2 = p.beta_mag * p.beta_mag;
    let mean = b2 * (ch * ch + sh * sh - 2.0 * cp * sh * ch) + sh * sh;
    let variance = b2 * ((4.0 * p.r).cosh() - cp * (4.0 * p.r).sinh()) + 2.0 * sh * sh * ch * ch;
    PhotonStats { mean, variance }
}

/// Moments summed over |c_n|², shifted by the mean for a cancellation-free
/// variance.
pub fn photon_stats_numeric(s: &FieldState) -> PhotonStats {
    let mut m = NeumaierSum::new();
    for (n, c) in s.coeffs.iter().enumerate() {
        m.add(n as f64 * c.norm_sqr());
    }
    let mean = m.total();
    let mut v = NeumaierSum::new();
    for (n, c) in s.coeffs.iter().enumerate() {
        let d = n as f64 - mean;
        v.add(d * d * c.norm_sqr());
    }
    PhotonStats {
        mean,
        variance: v.total(),
    }
}

/// Q density of a coherent state with amplitude alpha_mag·e^{iΦ} at the
/// phase-space point X + iY:
/// Q = (1/π) exp[−(X² + Y² + |α|²) + 2|α|(X cos Φ + Y sin Φ)].
pub fn q_function_coherent(alpha_mag: f64, big_phi: f64, x: f64, y: f64) -> f64 {
    let expo = -(x * x + y * y + alpha_mag * alpha_mag)
        + 2.0 * alpha_mag * (x * big_phi.cos() + y * big_phi.sin());
    expo.exp() / std::f64::consts::PI
}

/// Q density of the squeezed coherent state at X + iY:
/// Q = (sech r/π) exp{−(|α|²+|β|²) + (α*β + β*α) sech r
///      − ½[e^{iθ}(α*² − β*²) + e^{−iθ}(α² − β²)] tanh r}.
pub fn q_function_squeezed(p: &SqueezeParams, x: f64, y: f64) -> f64 {
    let al = Complex64::new(x, y);
    let b = p.beta();
    let sech = 1.0 / p.r.cosh();
    let cross = 2.0 * (al.conj() * b).re;
    let quad = (Complex64::from_polar(1.0, -p.theta) * (al * al - b * b)).re;
    let expo = -(al.norm_sqr() + p.beta_mag * p.beta_mag) + cross * sech - quad * p.r.tanh();
    sech / std::f64::consts::PI * expo.exp()
}
