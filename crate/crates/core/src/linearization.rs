//! Small-separation linearization of the Smith equation.
//!
//! To first order in `δ`,
//! `ζ(δ) ≈ Re{h(u + iδv)} = P′ + δQ′` and `η(δ) ≈ Re{h(v + iδr)} = P + δQ`
//! with `P = Re{hv}`, `Q = −Im{hr}`, `P′ = Re{hu}`, `Q′ = −Im{hv}` and the
//! curvature-only sums `u, v, r = Σ ℓ^{2,3,4} e^{iφℓ²}`.
//!
//! The Schur complement then has polynomial entries
//! `P2(δ) = a2δ² + a1δ + a0` and `P1(δ) = α1δ + α0`, its determinant is the
//! quadratic `Q(δ) = βP2 − P1²`, and `CRB(δ) ≈ Q′(δ)/Q(δ)` with
//! `Q′(δ) = (σ²/2)(β + P2 + 2P1) = c2δ² + c1δ + c0`. Clearing denominators in
//! `δ² = Q′/Q` gives the monic quartic
//! `R(x) = x⁴ + g3x³ + g2x² + g1x + g0`.

use crate::crb::moments;
use crate::{ArlError, CrbSet, Result, Scenario, C64};

/// `u(φ) = Σℓ²e^{iφℓ²}`, `v(φ) = Σℓ³e^{iφℓ²}`, `r(φ) = Σℓ⁴e^{iφℓ²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSums {
    pub u: C64,
    pub v: C64,
    pub r: C64,
}

pub fn phi_sums(phi: f64, num_sensors: usize) -> PhiSums {
    let zero = C64::new(0.0, 0.0);
    let (u, v, r) = (0..num_sensors).fold((zero, zero, zero), |(u, v, r), l| {
        let l = l as f64;
        let l2 = l * l;
        let w = C64::cis(phi * l2);
        (u + w * l2, v + w * (l2 * l), r + w * (l2 * l2))
    });
    PhiSums { u, v, r }
}

/// All linearization constants of one scenario at one noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoeffs {
    pub p: f64,
    pub q: f64,
    pub p_prime: f64,
    pub q_prime: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub beta: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub sigma2: f64,
}

pub fn linear_coeffs(scenario: &Scenario) -> Result<LinearCoeffs> {
    let n = scenario.num_sensors();
    let [_, _, l2, l3, l4] = moments(n);
    let sig = &scenario.signals;
    let (e1, e2, h) = (sig.energy1(), sig.energy2(), sig.cross());
    let PhiSums { u, v, r } = phi_sums(scenario.electrical.phi, n);

    let p = (h * v).re;
    let q = -(h * r).im;
    let p_prime = (h * u).re;
    let q_prime = -(h * v).im;

    let scale = l4 * e2;
    let mut coeffs = LinearCoeffs {
        p,
        q,
        p_prime,
        q_prime,
        a0: l2 * e1 - p * p / scale,
        a1: -2.0 * p * q / scale,
        a2: -q * q / scale,
        alpha0: p_prime - l3 / l4 * p,
        alpha1: q_prime - l3 / l4 * q,
        beta: e2 * (l2 - l3 * l3 / l4),
        c0: 0.0,
        c1: 0.0,
        c2: 0.0,
        g0: 0.0,
        g1: 0.0,
        g2: 0.0,
        g3: 0.0,
        sigma2: 0.0,
    };
    let lead = coeffs.quartic_lead();
    let tol = 1e-14
        * (coeffs.beta * coeffs.a2)
            .abs()
            .max(coeffs.alpha1 * coeffs.alpha1)
            .max(1.0);
    if !(lead.abs() >= tol) {
        return Err(ArlError::DegenerateQuartic { value: lead });
    }
    coeffs.set_sigma2(scenario.sigma2());
    Ok(coeffs)
}

impl LinearCoeffs {
    /// Same geometry and signals at another noise level; only `c` and `g` change.
    ///
    /// Accepts `σ² = 0`, the noiseless limit.
    pub fn with_sigma2(&self, sigma2: f64) -> Self {
        let mut out = *self;
        out.set_sigma2(sigma2);
        out
    }

    fn set_sigma2(&mut self, sigma2: f64) {
        let half = 0.5 * sigma2;
        self.sigma2 = sigma2;
        self.c2 = half * self.a2;
        self.c1 = half * (self.a1 + 2.0 * self.alpha1);
        self.c0 = half * (self.beta + self.a0 + 2.0 * self.alpha0);
        let lead = self.quartic_lead();
        self.g0 = -self.c0 / lead;
        self.g1 = -self.c1 / lead;
        self.g2 = self.reduced_linear() / lead;
        self.g3 = (self.beta * self.a1 - 2.0 * self.alpha0 * self.alpha1) / lead;
    }

    /// `βa2 − α1²`, the `δ²` coefficient of `Q(δ)`.
    pub fn quartic_lead(&self) -> f64 {
        self.beta * self.a2 - self.alpha1 * self.alpha1
    }

    /// `βa0 − α0²`, the constant term of `Q(δ)`.
    pub fn q_constant(&self) -> f64 {
        self.beta * self.a0 - self.alpha0 * self.alpha0
    }

    /// `βa0 − α0² − c2`, the middle coefficient of the reduced biquadratic.
    pub fn reduced_linear(&self) -> f64 {
        self.q_constant() - self.c2
    }

    /// `[g0, g1, g2, g3]`.
    pub fn g(&self) -> [f64; 4] {
        [self.g0, self.g1, self.g2, self.g3]
    }

    pub fn p1(&self, delta: f64) -> f64 {
        self.alpha1 * delta + self.alpha0
    }

    pub fn p2(&self, delta: f64) -> f64 {
        (self.a2 * delta + self.a1) * delta + self.a0
    }

    /// `Q(δ) = (βa2 − α1²)δ² + (βa1 − 2α0α1)δ + βa0 − α0²`.
    pub fn q_poly(&self, delta: f64) -> f64 {
        let b = self.beta * self.a1 - 2.0 * self.alpha0 * self.alpha1;
        (self.quartic_lead() * delta + b) * delta + self.q_constant()
    }

    /// `Q′(δ) = c2δ² + c1δ + c0`.
    pub fn q_prime_poly(&self, delta: f64) -> f64 {
        (self.c2 * delta + self.c1) * delta + self.c0
    }

    /// `R(x) = x⁴ + g3x³ + g2x² + g1x + g0`.
    pub fn r_poly(&self, x: f64) -> f64 {
        (((x + self.g3) * x + self.g2) * x + self.g1) * x + self.g0
    }

    /// CRBs with `ζ`, `η` replaced by their first-order expansions.
    pub fn linearized_crb(&self, delta: f64) -> CrbSet {
        let q = self.q_poly(delta);
        let half = 0.5 * self.sigma2;
        CrbSet {
            crb_omega1: half * self.beta / q,
            crb_omega2: half * self.p2(delta) / q,
            crb_cross: -half * self.p1(delta) / q,
            crb_delta: self.q_prime_poly(delta) / q,
        }
    }
}
