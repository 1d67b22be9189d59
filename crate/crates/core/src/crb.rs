//! Closed-form Cramér-Rao bounds on the two electrical angles.
//!
//! Writing the FIM as `(2/σ²)·M` with
//!
//! ```text
//!     | E1·L2   ζ(δ)    η(δ)  |
//! M = | ζ(δ)    E2·L2   E2·L3 |
//!     | η(δ)    E2·L3   E2·L4 |
//! ```
//!
//! and eliminating `φ` through the Schur complement gives
//!
//! ```text
//! CRB(ω1)     =  (σ²/2)·β / 𝒬
//! CRB(ω2)     =  (σ²/2)·(L2·E1 − η²/(L4·E2)) / 𝒬
//! CRB(ω1, ω2) = −(σ²/2)·(ζ − η·L3/L4) / 𝒬
//! β = E2·(L2 − L3²/L4),  𝒬 = β·(L2·E1 − η²/(L4·E2)) − (ζ − η·L3/L4)²
//! ```
//!
//! where `ζ(δ) = Re{h Σℓ² e^{i(δℓ+φℓ²)}}`, `η(δ) = Re{h Σℓ³ e^{i(δℓ+φℓ²)}}`
//! and `h = s1ᴴs2`.

use crate::{ArlError, Result, Scenario, C64};

/// `Σ_{ℓ=0}^{L−1} ℓ^r`.
pub fn moment_sum(num_sensors: usize, power: u32) -> f64 {
    (0..num_sensors)
        .map(|l| (l as f64).powi(power as i32))
        .sum()
}

/// `[L0, L1, L2, L3, L4]`.
pub(crate) fn moments(num_sensors: usize) -> [f64; 5] {
    std::array::from_fn(|r| moment_sum(num_sensors, r as u32))
}

/// Moment sums and separation-dependent correlations of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSums {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
    pub zeta: f64,
    pub eta: f64,
    pub h: C64,
}

pub fn spectral_sums(scenario: &Scenario) -> SpectralSums {
    let model = CrbModel::new(scenario);
    let (zeta, eta) = model.zeta_eta(scenario.electrical.delta);
    let [_, l1, l2, l3, l4] = model.moments;
    SpectralSums {
        l1,
        l2,
        l3,
        l4,
        zeta,
        eta,
        h: model.cross,
    }
}

/// The three closed-form CRB entries plus `CRB(δ) = CRB(ω1) + CRB(ω2) − 2·CRB(ω1, ω2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrbSet {
    pub crb_omega1: f64,
    pub crb_omega2: f64,
    pub crb_cross: f64,
    pub crb_delta: f64,
}

/// Everything `CRB(δ)` depends on, with the separation left free.
///
/// Only `δ` enters through `ζ` and `η`, so a single model serves a whole
/// scan over candidate separations.
#[derive(Debug, Clone, PartialEq)]
pub struct CrbModel {
    num_sensors: usize,
    moments: [f64; 5],
    energy1: f64,
    energy2: f64,
    cross: C64,
    phi: f64,
    sigma2: f64,
}

impl CrbModel {
    pub fn new(scenario: &Scenario) -> Self {
        let n = scenario.num_sensors();
        Self {
            num_sensors: n,
            moments: moments(n),
            energy1: scenario.signals.energy1(),
            energy2: scenario.signals.energy2(),
            cross: scenario.signals.cross(),
            phi: scenario.electrical.phi,
            sigma2: scenario.sigma2(),
        }
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn with_sigma2(&self, sigma2: f64) -> Self {
        Self {
            sigma2,
            ..self.clone()
        }
    }

    /// `β = E2·(L2 − L3²/L4)`.
    pub fn beta(&self) -> f64 {
        let [_, _, l2, l3, l4] = self.moments;
        self.energy2 * (l2 - l3 * l3 / l4)
    }

    /// `(ζ(δ), η(δ))`.
    pub fn zeta_eta(&self, delta: f64) -> (f64, f64) {
        let mut s2 = C64::new(0.0, 0.0);
        let mut s3 = C64::new(0.0, 0.0);
        for l in 0..self.num_sensors {
            let l = l as f64;
            let w = C64::cis(delta * l + self.phi * l * l);
            s2 += w * (l * l);
            s3 += w * (l * l * l);
        }
        ((self.cross * s2).re, (self.cross * s3).re)
    }

    pub fn crb_at(&self, delta: f64) -> Result<CrbSet> {
        let [_, _, l2, l3, l4] = self.moments;
        let (zeta, eta) = self.zeta_eta(delta);
        let beta = self.beta();
        let omega2_term = l2 * self.energy1 - eta * eta / (l4 * self.energy2);
        let coupling = zeta - eta * l3 / l4;
        let q = beta * omega2_term - coupling * coupling;
        let scale = beta * l2 * self.energy1;
        if !(q > 1e-300 * scale) {
            return Err(ArlError::DegenerateQ { value: q });
        }
        let half = 0.5 * self.sigma2;
        let crb_omega1 = half * beta / q;
        let crb_omega2 = half * omega2_term / q;
        let crb_cross = -half * coupling / q;
        // same combination without the subtraction of nearly equal terms
        let crb_delta = half * (beta + omega2_term + 2.0 * coupling) / q;
        Ok(CrbSet {
            crb_omega1,
            crb_omega2,
            crb_cross,
            crb_delta,
        })
    }

    pub fn crb_delta_at(&self, delta: f64) -> Result<f64> {
        self.crb_at(delta).map(|c| c.crb_delta)
    }
}

pub fn crb_closed_form(scenario: &Scenario) -> Result<CrbSet> {
    CrbModel::new(scenario).crb_at(scenario.electrical.delta)
}

pub fn crb_delta(scenario: &Scenario) -> Result<f64> {
    crb_closed_form(scenario).map(|c| c.crb_delta)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::{ArrayGeometry, ElectricalParams, SourceSignals};
    use approx::assert_relative_eq;

    fn scenario_with(h_signals: SourceSignals, n: usize, delta: f64, phi: f64) -> Scenario {
        Scenario::new(
            ArrayGeometry::new(n, 0.5, 1.0).unwrap(),
            ElectricalParams::new(0.2, delta, phi).unwrap(),
            h_signals,
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn faulhaber_sums() {
        assert_eq!(moments(10), [10.0, 45.0, 285.0, 2025.0, 15333.0]);
        for n in 1..40usize {
            let m = (n - 1) as f64;
            assert_eq!(moment_sum(n, 1), m * (m + 1.0) / 2.0);
            assert_eq!(moment_sum(n, 2), m * (m + 1.0) * (2.0 * m + 1.0) / 6.0);
            assert_eq!(moment_sum(n, 3), (m * (m + 1.0) / 2.0).powi(2));
            assert_eq!(
                moment_sum(n, 4),
                m * (m + 1.0) * (2.0 * m + 1.0) * (3.0 * m * m + 3.0 * m - 1.0) / 30.0
            );
        }
    }

    #[test]
    fn zero_phase_collapse() {
        // h = 1 with both signals equal to one sample of 1
        let one = vec![C64::new(1.0, 0.0)];
        let sig = SourceSignals::new(one.clone(), one).unwrap();
        let model = CrbModel::new(&scenario_with(sig, 10, 0.1, 0.0));
        assert_eq!(model.zeta_eta(0.0), (285.0, 2025.0));
    }

    #[test]
    fn spectral_sums_match_high_precision_reference() {
        // h = 1.2 − 0.7i via s1 = 1, s2 = 1.2 − 0.7i
        let sig = SourceSignals::new(vec![C64::new(1.0, 0.0)], vec![C64::new(1.2, -0.7)]).unwrap();
        let s = spectral_sums(&scenario_with(sig, 10, 0.3, 0.01));
        // 40-digit summation
        let zeta = -173.2047938817636549054611384925900103761;
        let eta = -1652.607104615144535949160973459755681629;
        assert_relative_eq!(s.zeta, zeta, max_relative = 1e-12);
        assert_relative_eq!(s.eta, eta, max_relative = 1e-12);
        assert_eq!((s.l1, s.l2, s.l3, s.l4), (45.0, 285.0, 2025.0, 15333.0));
    }

    #[test]
    fn orthogonal_signals_decouple() {
        let s1 = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        let s2 = vec![C64::new(2.0, 0.0), C64::new(-2.0, 0.0)];
        let sig = SourceSignals::new(s1, s2).unwrap();
        let sc = scenario_with(sig, 8, 0.05, 0.01).with_sigma2(0.3).unwrap();
        let crb = crb_closed_form(&sc).unwrap();
        let l2 = moment_sum(8, 2);
        assert_relative_eq!(crb.crb_omega1, 0.15 / (l2 * 2.0), max_relative = 1e-14);
        assert_eq!(crb.crb_cross, 0.0);
        assert_relative_eq!(
            crb.crb_delta,
            crb.crb_omega1 + crb.crb_omega2,
            max_relative = 1e-14
        );
    }

    #[test]
    fn crb_delta_is_linear_in_sigma2() {
        let sig = SourceSignals::random_phase(20, 3.0, 5).unwrap();
        let sc = scenario_with(sig, 9, 0.07, 0.02).with_sigma2(0.25).unwrap();
        let base = crb_delta(&sc).unwrap();
        let doubled = crb_delta(&sc.with_sigma2(0.5).unwrap()).unwrap();
        assert_eq!(doubled, 2.0 * base);
    }

    #[test]
    fn crb_delta_even_for_real_h_and_planar_wavefront() {
        let s = vec![C64::new(1.0, 0.0), C64::new(0.5, 0.0)];
        let sig = SourceSignals::new(s.clone(), s.iter().map(|z| z * 3.0).collect()).unwrap();
        let sc = scenario_with(sig, 10, 0.08, 0.0);
        let plus = crb_delta(&sc).unwrap();
        let minus = crb_delta(&sc.with_delta(-0.08).unwrap()).unwrap();
        assert!((plus - minus).abs() < 1e-12 * plus);
    }

    #[test]
    fn crb_delta_not_even_in_general() {
        // complex h with curvature breaks the δ → −δ symmetry
        let sig = SourceSignals::random_phase(50, 10.0, 1).unwrap();
        let sc = scenario_with(sig, 10, 1e-3, 0.002);
        let plus = crb_delta(&sc).unwrap();
        let minus = crb_delta(&sc.with_delta(-1e-3).unwrap()).unwrap();
        let asym = (plus - minus).abs() / plus;
        assert!(asym > 1e-12 && asym < 1e-2, "asymmetry {asym:e}");
    }

    #[test]
    fn beta_positive() {
        let sig = SourceSignals::random_phase(3, 1.0, 0).unwrap();
        for n in 3..60 {
            let model = CrbModel::new(&scenario_with(sig.clone(), n, 0.1, 0.0));
            assert!(model.beta() > 0.0);
        }
    }
}
