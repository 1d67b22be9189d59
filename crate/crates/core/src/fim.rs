//! Exact Fisher information for `(ω1, ω2, φ)` and its numeric inverse.
//!
//! [`fim_slepian_bangs`] evaluates the snapshot sum
//! `J_ij = (2/σ²) Σ_t Re{ s(t)ᴴ (∂A/∂θ_i)ᴴ (∂A/∂θ_j) s(t) }` directly from the
//! steering derivatives. [`fim_gram`] uses the equivalent moment/Gram
//! identities and is the fast path; the two are cross-checked in tests.

use nalgebra::{Matrix3, Vector3};

use crate::array::steering_derivatives;
use crate::crb::{moments, CrbModel};
use crate::{ArlError, Result, Scenario, C64};

/// Reciprocal condition number below which the FIM is treated as singular.
pub const SINGULAR_RCOND: f64 = 1e-12;

/// FIM ordered `(ω1, ω2, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherMatrix {
    pub entries: Matrix3<f64>,
    pub sigma2: f64,
}

/// Entries of `J⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrbNumeric {
    pub crb_omega1: f64,
    pub crb_omega2: f64,
    pub crb_phi: f64,
    pub crb_cross_12: f64,
    pub inverse: Matrix3<f64>,
    pub rcond: f64,
}

impl CrbNumeric {
    /// `eᵀ J⁻¹ e` with `e = (−1, 1, 0)`, the bound on `δ = ω2 − ω1`.
    pub fn crb_delta(&self) -> f64 {
        let e = Vector3::new(-1.0, 1.0, 0.0);
        (e.transpose() * self.inverse * e)[(0, 0)]
    }
}

fn re_inner(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a.conj() * b).re).sum()
}

pub fn fim_slepian_bangs(scenario: &Scenario) -> FisherMatrix {
    let n = scenario.num_sensors();
    let e = scenario.electrical;
    let d = steering_derivatives(e.omega1, e.omega2(), e.phi, n);
    let sig = &scenario.signals;
    let mut j = Matrix3::<f64>::zeros();
    let mut cols: [Vec<C64>; 3] = std::array::from_fn(|_| vec![C64::new(0.0, 0.0); n]);
    for (x1, x2) in sig.s1().iter().zip(sig.s2()) {
        // ∂(A s(t))/∂θ_i for θ = (ω1, ω2, φ)
        for (src, (dst, x)) in [&d.d_omega1, &d.d_omega2, &d.d_phi]
            .into_iter()
            .zip(cols.iter_mut().zip([x1, x2, x2]))
        {
            for (c, v) in dst.iter_mut().zip(src) {
                *c = v * x;
            }
        }
        for i in 0..3 {
            for k in 0..3 {
                j[(i, k)] += re_inner(&cols[i], &cols[k]);
            }
        }
    }
    FisherMatrix {
        entries: j * (2.0 / scenario.sigma2()),
        sigma2: scenario.sigma2(),
    }
}

pub fn fim_gram(scenario: &Scenario) -> FisherMatrix {
    let [_, _, l2, l3, l4] = moments(scenario.num_sensors());
    let e1 = scenario.signals.energy1();
    let e2 = scenario.signals.energy2();
    let (zeta, eta) = CrbModel::new(scenario).zeta_eta(scenario.electrical.delta);
    let m = Matrix3::new(
        e1 * l2,
        zeta,
        eta,
        zeta,
        e2 * l2,
        e2 * l3,
        eta,
        e2 * l3,
        e2 * l4,
    );
    FisherMatrix {
        entries: m * (2.0 / scenario.sigma2()),
        sigma2: scenario.sigma2(),
    }
}

fn norm1(m: &Matrix3<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn crb_numeric(fim: &FisherMatrix) -> Result<CrbNumeric> {
    let j = &fim.entries;
    let inverse = j
        .try_inverse()
        .ok_or(ArlError::SingularFim { rcond: 0.0 })?;
    let rcond = 1.0 / (norm1(j) * norm1(&inverse));
    if !(rcond >= SINGULAR_RCOND) {
        return Err(ArlError::SingularFim { rcond });
    }
    Ok(CrbNumeric {
        crb_omega1: inverse[(0, 0)],
        crb_omega2: inverse[(1, 1)],
        crb_phi: inverse[(2, 2)],
        crb_cross_12: inverse[(0, 1)],
        inverse,
        rcond,
    })
}
