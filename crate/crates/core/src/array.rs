//! Uniform linear array, known source signals and steering vectors.
//!
//! Sensor `ℓ ∈ [0, L−1]` sees the far-field source through
//! `a(ω1)_ℓ = exp(iω1ℓ)` and the near-field source through
//! `b(ω2, φ)_ℓ = exp(i(ω2ℓ + φℓ²))`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ArlError, Result, C64};

/// Propagation speed used to turn a carrier frequency into a wavelength (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Geometry of a uniform linear array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    num_sensors: usize,
    spacing: f64,
    wavelength: f64,
}

impl ArrayGeometry {
    /// `L ≥ 3` sensors spaced `spacing` meters apart, at the given wavelength.
    pub fn new(num_sensors: usize, spacing: f64, wavelength: f64) -> Result<Self> {
        if num_sensors < 3 {
            return Err(ArlError::InvalidGeometry(format!(
                "need at least 3 sensors to identify (omega1, omega2, phi), got {num_sensors}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(ArlError::InvalidGeometry(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(ArlError::InvalidGeometry(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        Ok(Self {
            num_sensors,
            spacing,
            wavelength,
        })
    }

    /// Wavelength derived as `c / f0`.
    pub fn from_carrier(num_sensors: usize, spacing: f64, carrier_hz: f64) -> Result<Self> {
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(ArlError::InvalidGeometry(format!(
                "carrier frequency must be positive, got {carrier_hz}"
            )));
        }
        Self::new(num_sensors, spacing, SPEED_OF_LIGHT / carrier_hz)
    }

    pub fn num_sensors(&self) -> usize {
        self.num_sensors
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Aperture `D = d(L − 1)`.
    pub fn aperture(&self) -> f64 {
        self.spacing * (self.num_sensors - 1) as f64
    }
}

/// Electrical parameters of the source pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricalParams {
    /// Far-field electrical angle (rad per sensor index).
    pub omega1: f64,
    /// Separation `ω2 − ω1`; never zero.
    pub delta: f64,
    /// Near-field curvature (rad per squared sensor index).
    pub phi: f64,
}

impl ElectricalParams {
    pub fn new(omega1: f64, delta: f64, phi: f64) -> Result<Self> {
        if !(omega1.is_finite() && delta.is_finite() && phi.is_finite()) {
            return Err(ArlError::InvalidParameter(
                "electrical parameters must be finite".into(),
            ));
        }
        if delta == 0.0 {
            return Err(ArlError::InvalidParameter(
                "separation delta = omega2 - omega1 must be non-zero".into(),
            ));
        }
        Ok(Self { omega1, delta, phi })
    }

    pub fn omega2(&self) -> f64 {
        self.omega1 + self.delta
    }
}

/// Physical parameters: directions of arrival (rad) and near-field range (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub theta_ff: f64,
    pub theta_nf: f64,
    pub range: f64,
}

/// Known deterministic waveforms of both sources over `T` snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSignals {
    s1: Vec<C64>,
    s2: Vec<C64>,
}

impl SourceSignals {
    pub fn new(s1: Vec<C64>, s2: Vec<C64>) -> Result<Self> {
        if s1.is_empty() || s1.len() != s2.len() {
            return Err(ArlError::InvalidParameter(format!(
                "signals need equal non-zero length, got {} and {}",
                s1.len(),
                s2.len()
            )));
        }
        let signals = Self { s1, s2 };
        if !(signals.energy1() > 0.0 && signals.energy2() > 0.0) {
            return Err(ArlError::InvalidParameter(
                "both source signals need non-zero energy".into(),
            ));
        }
        Ok(signals)
    }

    /// Unit-modulus sequences with uniform random phases; `s2` is scaled so
    /// its modulus is `amp_ratio` times that of `s1`. `s1` is drawn first.
    pub fn random_phase(snapshots: usize, amp_ratio: f64, seed: u64) -> Result<Self> {
        if !(amp_ratio.is_finite() && amp_ratio > 0.0) {
            return Err(ArlError::InvalidParameter(format!(
                "amplitude ratio must be positive, got {amp_ratio}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |scale: f64| -> Vec<C64> {
            (0..snapshots)
                .map(|_| C64::from_polar(scale, rng.random::<f64>() * TAU))
                .collect()
        };
        let s1 = draw(1.0);
        let s2 = draw(amp_ratio);
        Self::new(s1, s2)
    }

    /// Skips validation; lets tests build degenerate (e.g. silent) sources.
    #[cfg(test)]
    pub(crate) fn unchecked(s1: Vec<C64>, s2: Vec<C64>) -> Self {
        Self { s1, s2 }
    }

    pub fn s1(&self) -> &[C64] {
        &self.s1
    }

    pub fn s2(&self) -> &[C64] {
        &self.s2
    }

    pub fn snapshots(&self) -> usize {
        self.s1.len()
    }

    /// `||s1||²`
    pub fn energy1(&self) -> f64 {
        self.s1.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `||s2||²`
    pub fn energy2(&self) -> f64 {
        self.s2.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `h = s1ᴴ s2`.
    pub fn cross(&self) -> C64 {
        self.s1
            .iter()
            .zip(&self.s2)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies both sequences by `factor`.
    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            s1: self.s1.iter().map(|z| z * factor).collect(),
            s2: self.s2.iter().map(|z| z * factor).collect(),
        }
    }
}

/// One evaluable problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub geometry: ArrayGeometry,
    pub electrical: ElectricalParams,
    pub signals: SourceSignals,
    sigma2: f64,
}

impl Scenario {
    pub fn new(
        geometry: ArrayGeometry,
        electrical: ElectricalParams,
        signals: SourceSignals,
        sigma2: f64,
    ) -> Result<Self> {
        check_sigma2(sigma2)?;
        Ok(Self {
            geometry,
            electrical,
            signals,
            sigma2,
        })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn num_sensors(&self) -> usize {
        self.geometry.num_sensors()
    }

    pub fn with_sigma2(&self, sigma2: f64) -> Result<Self> {
        check_sigma2(sigma2)?;
        Ok(Self {
            sigma2,
            ..self.clone()
        })
    }

    /// Same scenario with the near-field source moved to separation `delta`.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        let e = self.electrical;
        Ok(Self {
            electrical: ElectricalParams::new(e.omega1, delta, e.phi)?,
            ..self.clone()
        })
    }
}

fn check_sigma2(sigma2: f64) -> Result<()> {
    if sigma2.is_finite() && sigma2 > 0.0 {
        Ok(())
    } else {
        Err(ArlError::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )))
    }
}

/// `[a(ω1)]_ℓ = exp(iω1ℓ)`, `ℓ = 0..L−1`.
pub fn steering_ff(omega1: f64, num_sensors: usize) -> Vec<C64> {
    (0..num_sensors)
        .map(|l| C64::cis(omega1 * l as f64))
        .collect()
}

/// `[b(ω2, φ)]_ℓ = exp(i(ω2ℓ + φℓ²))`.
pub fn steering_nf(omega2: f64, phi: f64, num_sensors: usize) -> Vec<C64> {
    (0..num_sensors)
        .map(|l| {
            let l = l as f64;
            C64::cis(omega2 * l + phi * l * l)
        })
        .collect()
}

/// Analytic first derivatives of the steering vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringDerivatives {
    /// `∂a/∂ω1`
    pub d_omega1: Vec<C64>,
    /// `∂b/∂ω2`
    pub d_omega2: Vec<C64>,
    /// `∂b/∂φ`
    pub d_phi: Vec<C64>,
}

pub fn steering_derivatives(
    omega1: f64,
    omega2: f64,
    phi: f64,
    num_sensors: usize,
) -> SteeringDerivatives {
    let a = steering_ff(omega1, num_sensors);
    let b = steering_nf(omega2, phi, num_sensors);
    let d_omega1 = a
        .iter()
        .enumerate()
        .map(|(l, z)| C64::new(0.0, l as f64) * z)
        .collect();
    let d_omega2 = b
        .iter()
        .enumerate()
        .map(|(l, z)| C64::new(0.0, l as f64) * z)
        .collect();
    let d_phi = b
        .iter()
        .enumerate()
        .map(|(l, z)| C64::new(0.0, (l * l) as f64) * z)
        .collect();
    SteeringDerivatives {
        d_omega1,
        d_omega2,
        d_phi,
    }
}

/// `ω = −2πd/λ·sin θ`, `φ = πd²/(λr)·cos²θ_nf`.
pub fn physical_to_electrical(
    phys: &PhysicalParams,
    geom: &ArrayGeometry,
) -> Result<ElectricalParams> {
    if !(phys.range.is_finite() && phys.range > 0.0) {
        return Err(ArlError::InvalidParameter(format!(
            "range must be positive, got {}",
            phys.range
        )));
    }
    for (name, theta) in [("theta_ff", phys.theta_ff), ("theta_nf", phys.theta_nf)] {
        if !(theta.abs() < FRAC_PI_2) {
            return Err(ArlError::InvalidParameter(format!(
                "{name} must lie in (-pi/2, pi/2), got {theta}"
            )));
        }
    }
    let (d, lambda) = (geom.spacing(), geom.wavelength());
    let k = -2.0 * PI * d / lambda;
    let omega1 = k * phys.theta_ff.sin();
    let omega2 = k * phys.theta_nf.sin();
    let phi = PI * d * d / (lambda * phys.range) * phys.theta_nf.cos().powi(2);
    ElectricalParams::new(omega1, omega2 - omega1, phi)
}

/// Fresnel region `[0.62·sqrt(D³/λ), 2D²/λ]` for aperture `D`.
pub fn fresnel_interval(geom: &ArrayGeometry) -> Result<(f64, f64)> {
    let (r_min, r_max) = fresnel_bounds(geom);
    if r_min >= r_max {
        return Err(ArlError::EmptyFresnelRegion { r_min, r_max });
    }
    Ok((r_min, r_max))
}

/// The two Fresnel bounds without the ordering check.
pub fn fresnel_bounds(geom: &ArrayGeometry) -> (f64, f64) {
    let aperture = geom.aperture();
    let lambda = geom.wavelength();
    (
        0.62 * (aperture.powi(3) / lambda).sqrt(),
        2.0 * aperture * aperture / lambda,
    )
}

/// Stacked noise-free snapshots `[A s(1); …; A s(T)]`, length `T·L`.
pub fn noise_free_observation(scenario: &Scenario) -> Vec<C64> {
    let n = scenario.num_sensors();
    let e = scenario.electrical;
    let a = steering_ff(e.omega1, n);
    let b = steering_nf(e.omega2(), e.phi, n);
    let sig = &scenario.signals;
    sig.s1()
        .iter()
        .zip(sig.s2())
        .flat_map(|(x1, x2)| {
            a.iter()
                .zip(&b)
                .map(move |(al, bl)| al * x1 + bl * x2)
                .collect::<Vec<_>>()
        })
        .collect()
}
