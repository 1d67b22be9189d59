//! Three routes to the resolution limit.
//!
//! 1. The monic quartic `R(x)` from [`LinearCoeffs`], solved through its
//!    companion matrix ([`solve_quartic`]), with the noise-dependent positive
//!    root picked by [`select_arl_root`].
//! 2. The reduced biquadratic `R′(z) = (βa2 − α1²)z² + (βa0 − α0² − c2)z − c0`
//!    in `z = δ²` ([`solve_biquadratic`], [`arl_closed_form`]) and its
//!    low-noise expansion ([`arl_low_noise`]).
//! 3. Bracketing plus bisection on the exact `CRB(δ) − δ²` ([`smith_numeric`]),
//!    independent of any Taylor step.

use std::cmp::Ordering;
use std::f64::consts::PI;

use nalgebra::Matrix4;

use crate::crb::CrbModel;
use crate::{linear_coeffs, ArlError, LinearCoeffs, Result, Scenario, C64};

/// Relative imaginary part below which a polished root counts as real.
const REAL_TOL: f64 = 1e-8;

/// Roots of `x⁴ + g3x³ + g2x² + g1x + g0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRoots {
    /// Sorted by real part, then imaginary part.
    pub roots: [C64; 4],
    /// Real roots `> 0`, ascending.
    pub positive_real_roots: Vec<f64>,
    pub g: [f64; 4],
}

impl QuarticRoots {
    pub fn eval(&self, x: C64) -> C64 {
        eval_monic(&self.g, x)
    }
}

fn eval_monic(g: &[f64; 4], x: C64) -> C64 {
    (((x + g[3]) * x + g[2]) * x + g[1]) * x + g[0]
}

fn eval_monic_derivative(g: &[f64; 4], x: C64) -> C64 {
    ((x * 4.0 + 3.0 * g[3]) * x + 2.0 * g[2]) * x + g[1]
}

fn newton_polish(g: &[f64; 4], mut x: C64) -> C64 {
    let mut fx = eval_monic(g, x);
    for _ in 0..4 {
        let d = eval_monic_derivative(g, x);
        if d.norm() == 0.0 || fx.norm() == 0.0 {
            break;
        }
        let next = x - fx / d;
        let fnext = eval_monic(g, next);
        if fnext.norm() < fx.norm() {
            x = next;
            fx = fnext;
        } else {
            break;
        }
    }
    x
}

/// Recomputes the two smallest eigenvalues from the quadratic cofactor of the
/// two largest ones.
///
/// Companion eigenvalues carry an absolute error of order `ε·max|root|`, which
/// destroys roots many decades below the largest. The cofactor
/// `x² + bx + c = p(x) / (x² + sx + t)` keeps them to relative accuracy.
fn deflate_small_pair(g: &[f64; 4], eig: [C64; 4]) -> [C64; 4] {
    let mut z = eig;
    z.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let (r1, r2) = (z[0], z[1]);
    let closed = if r1.im == 0.0 && r2.im == 0.0 {
        true
    } else {
        (r1 - r2.conj()).norm() <= 1e-12 * r1.norm()
    };
    if !closed {
        return eig;
    }
    let s = -(r1 + r2).re;
    let t = (r1 * r2).re;
    if t == 0.0 || !t.is_finite() {
        return eig;
    }
    let c = g[0] / t;
    let b = (g[1] - c * s) / t;
    let disc = b * b - 4.0 * c;
    let (z3, z4) = if disc >= 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        } else {
            (C64::new(q, 0.0), C64::new(c / q, 0.0))
        }
    } else {
        let im = 0.5 * (-disc).sqrt();
        (C64::new(-0.5 * b, im), C64::new(-0.5 * b, -im))
    };
    [r1, r2, z3, z4]
}

pub fn solve_quartic(g0: f64, g1: f64, g2: f64, g3: f64) -> QuarticRoots {
    let g = [g0, g1, g2, g3];
    #[rustfmt::skip]
    let companion = Matrix4::new(
        -g3, -g2, -g1, -g0,
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
    );
    let eig = deflate_small_pair(&g, companion.complex_eigenvalues().into());
    let mut roots: [C64; 4] = std::array::from_fn(|i| {
        let z = newton_polish(&g, eig[i]);
        if z.im.abs() <= REAL_TOL * z.norm() {
            // snap to the real axis and polish there
            newton_polish(&g, C64::new(z.re, 0.0))
        } else {
            z
        }
    });
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
    let mut positive_real_roots: Vec<f64> = roots
        .iter()
        .filter(|z| z.im == 0.0 && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    positive_real_roots.sort_by(f64::total_cmp);
    QuarticRoots {
        roots,
        positive_real_roots,
        g,
    }
}

pub fn quartic_of(coeffs: &LinearCoeffs) -> QuarticRoots {
    solve_quartic(coeffs.g0, coeffs.g1, coeffs.g2, coeffs.g3)
}

/// Roots of the reduced biquadratic in `z = δ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquadratic {
    pub discriminant: f64,
    /// `(−(βa0 − α0² − c2) + √Δ) / (2(βa2 − α1²))`
    pub z_plus: f64,
    /// `(−(βa0 − α0² − c2) − √Δ) / (2(βa2 − α1²))`
    pub z_minus: f64,
}

impl Biquadratic {
    /// Positive roots of `R′(x)` in `x`, i.e. `√z` for every `z > 0`, ascending.
    pub fn positive_x_roots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = [self.z_plus, self.z_minus]
            .into_iter()
            .filter(|z| *z > 0.0)
            .map(f64::sqrt)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

/// `Δ = (βa0 − α0² − c2)² + 4(βa2 − α1²)c0`.
pub fn biquadratic_discriminant(coeffs: &LinearCoeffs) -> f64 {
    let b = coeffs.reduced_linear();
    b * b + 4.0 * coeffs.quartic_lead() * coeffs.c0
}

pub fn solve_biquadratic(coeffs: &LinearCoeffs) -> Result<Biquadratic> {
    let a = coeffs.quartic_lead();
    let b = coeffs.reduced_linear();
    let c = -coeffs.c0;
    let discriminant = biquadratic_discriminant(coeffs);
    if discriminant < 0.0 {
        return Err(ArlError::NegativeDiscriminant { discriminant });
    }
    if a == 0.0 {
        return Err(ArlError::DegenerateQuartic { value: a });
    }
    let sq = discriminant.sqrt();
    // pick the sign that avoids cancellation, recover the other root from z+·z− = c/a
    let (z_plus, z_minus) = if b >= 0.0 {
        let t = -0.5 * (b + sq);
        let z_minus = t / a;
        let z_plus = if t != 0.0 { c / t } else { 0.0 };
        (z_plus, z_minus)
    } else {
        let t = 0.5 * (sq - b);
        (t / a, c / t)
    };
    Ok(Biquadratic {
        discriminant,
        z_plus,
        z_minus,
    })
}

/// Positive-sign branch of the biquadratic, the one that vanishes with `σ²`.
pub fn arl_closed_form(coeffs: &LinearCoeffs) -> Result<f64> {
    let z = solve_biquadratic(coeffs)?.z_plus;
    if z < 0.0 {
        return Err(ArlError::NegativeRadicand { value: z });
    }
    Ok(z.sqrt())
}

/// `√(c0 / (βa0 − α0² − c2))`, first order in the `√(1 + x)` expansion of `√Δ`.
pub fn arl_low_noise(coeffs: &LinearCoeffs) -> Result<f64> {
    let denom = coeffs.reduced_linear();
    let value = coeffs.c0 / denom;
    if !(denom > 0.0 && coeffs.c0 >= 0.0) {
        return Err(ArlError::InvalidLowNoiseRegime { value });
    }
    Ok(value.sqrt())
}

/// `4|βa2 − α1²|c0 / (βa0 − α0² − c2)²`, the expansion variable of [`arl_low_noise`].
pub fn low_noise_ratio(coeffs: &LinearCoeffs) -> f64 {
    let b = coeffs.reduced_linear();
    4.0 * coeffs.quartic_lead().abs() * coeffs.c0 / (b * b)
}

/// Picks the positive quartic root that shrinks with the noise.
///
/// The quartic is re-solved at `1.01·σ²`; positive roots that move by less
/// than `1e-9` relatively are the noise-independent pair and are dropped. Of
/// the remaining roots that grow with `σ²`, the smallest is returned.
pub fn select_arl_root(quartic: &QuarticRoots, coeffs: &LinearCoeffs) -> Result<f64> {
    let perturbed = solve_quartic_at(quartic, coeffs, 1.01);
    quartic
        .positive_real_roots
        .iter()
        .filter_map(|&x| {
            let y = perturbed
                .positive_real_roots
                .iter()
                .copied()
                .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))?;
            let moved = (y - x).abs() / x;
            (moved >= 1e-9 && y > x).then_some(x)
        })
        .min_by(f64::total_cmp)
        .ok_or(ArlError::NoAdmissibleRoot)
}

fn solve_quartic_at(quartic: &QuarticRoots, coeffs: &LinearCoeffs, factor: f64) -> QuarticRoots {
    let scaled = coeffs.with_sigma2(coeffs.sigma2 * factor);
    // carry any deliberate offset of the given quartic over to the re-solve
    let g: [f64; 4] = std::array::from_fn(|i| quartic.g[i] - coeffs.g()[i] + scaled.g()[i]);
    solve_quartic(g[0], g[1], g[2], g[3])
}

/// Settings of the exact-equation solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmithOptions {
    /// Upper end of the scan; `None` means `π/(L − 1)`.
    pub delta_max: Option<f64>,
    /// Relative bracket width at which bisection stops.
    pub tol: f64,
    /// Lower end of the log-spaced scan.
    pub scan_floor: f64,
    pub scan_points: usize,
}

impl Default for SmithOptions {
    fn default() -> Self {
        Self {
            delta_max: None,
            tol: 1e-12,
            scan_floor: 1e-12,
            scan_points: 2048,
        }
    }
}

impl SmithOptions {
    pub fn delta_max_for(&self, num_sensors: usize) -> f64 {
        self.delta_max
            .unwrap_or(PI / (num_sensors.saturating_sub(1).max(1)) as f64)
    }
}

/// Smallest positive root of `CRB(δ) − δ²` using the exact closed-form CRB.
pub fn smith_numeric(scenario: &Scenario, opts: &SmithOptions) -> Result<f64> {
    let model = CrbModel::new(scenario);
    let delta_max = opts.delta_max_for(scenario.num_sensors());
    if !(opts.scan_floor > 0.0 && delta_max > opts.scan_floor && opts.scan_points >= 2) {
        return Err(ArlError::InvalidParameter(format!(
            "scan range ({:e}, {delta_max:e}] with {} points",
            opts.scan_floor, opts.scan_points
        )));
    }
    let f = |x: f64| model.crb_delta_at(x).map(|c| c - x * x);

    let ratio = (delta_max / opts.scan_floor).ln();
    let last = (opts.scan_points - 1) as f64;
    let grid = |i: usize| {
        if i + 1 == opts.scan_points {
            delta_max
        } else {
            opts.scan_floor * (ratio * i as f64 / last).exp()
        }
    };

    let mut lo = opts.scan_floor;
    let mut f_lo = f(lo)?;
    if f_lo <= 0.0 {
        return Err(ArlError::RootBelowScanFloor {
            floor: opts.scan_floor,
        });
    }
    let mut bracket = None;
    for i in 1..opts.scan_points {
        let x = grid(i);
        let fx = f(x)?;
        if fx <= 0.0 {
            bracket = Some((x, fx));
            break;
        }
        lo = x;
        f_lo = fx;
    }
    let (mut hi, mut f_hi) = bracket.ok_or(ArlError::NoSignChange { delta_max })?;

    for _ in 0..200 {
        if hi - lo <= 0.1 * opts.tol * lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm > 0.0 {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Which sign of `±√Δ` produced the closed-form value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// All ARL estimates of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArlResult {
    pub arl_closed: f64,
    pub arl_low_noise: f64,
    pub arl_numeric: f64,
    /// Noise-dependent positive root of the full quartic.
    pub selected_root: f64,
    pub discriminant: f64,
    pub selected_branch: Branch,
}

pub fn solve_arl(scenario: &Scenario, opts: &SmithOptions) -> Result<ArlResult> {
    let coeffs = linear_coeffs(scenario)?;
    let biquad = solve_biquadratic(&coeffs)?;
    let quartic = quartic_of(&coeffs);
    Ok(ArlResult {
        arl_closed: arl_closed_form(&coeffs)?,
        arl_low_noise: arl_low_noise(&coeffs)?,
        arl_numeric: smith_numeric(scenario, opts)?,
        selected_root: select_arl_root(&quartic, &coeffs)?,
        discriminant: biquad.discriminant,
        selected_branch: Branch::Plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ArrayGeometry, ElectricalParams, SourceSignals};
    use approx::assert_relative_eq;

    fn contains_root(q: &QuarticRoots, want: C64, tol: f64) -> bool {
        q.roots.iter().any(|z| (z - want).norm() < tol)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let q = solve_quartic(-1.0, 0.0, 0.0, 0.0);
        for want in [
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
        ] {
            assert!(contains_root(&q, want, 1e-12), "{want}");
        }
        assert_eq!(q.positive_real_roots.len(), 1);
        assert_relative_eq!(q.positive_real_roots[0], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn factorable_biquadratic() {
        let q = solve_quartic(4.0, 0.0, -5.0, 0.0);
        let re: Vec<f64> = q.roots.iter().map(|z| z.re).collect();
        for (got, want) in re.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert_relative_eq!(*got, want, max_relative = 1e-13);
        }
        assert_eq!(q.positive_real_roots.len(), 2);
    }

    /// Expands `Π (x − r_i)` into monic coefficients `[g0, g1, g2, g3]`.
    fn from_roots(r: [C64; 4]) -> [f64; 4] {
        let mut c = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        // c[k] multiplies x^(4-k)
        for (deg, root) in r.iter().enumerate() {
            for k in (1..=deg + 1).rev() {
                let prev = c[k - 1];
                c[k] -= root * prev;
            }
        }
        [c[4].re, c[3].re, c[2].re, c[1].re]
    }

    #[test]
    fn known_root_quartics() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let mut roots = [C64::new(0.0, 0.0); 4];
            if rng.random::<bool>() {
                for r in roots.iter_mut() {
                    *r = C64::new(rng.random_range(-5.0..5.0), 0.0);
                }
            } else {
                let z = C64::new(rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
                roots[0] = z;
                roots[1] = z.conj();
                roots[2] = C64::new(rng.random_range(-5.0..5.0), 0.0);
                roots[3] = C64::new(rng.random_range(-5.0..5.0), 0.0);
            }
            // keep roots apart so each is well conditioned
            let min_gap = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| (roots[i] - roots[j]).norm())
                .fold(f64::INFINITY, f64::min);
            if min_gap < 0.05 {
                continue;
            }
            let g = from_roots(roots);
            let q = solve_quartic(g[0], g[1], g[2], g[3]);
            for r in roots {
                assert!(contains_root(&q, r, 1e-9), "missing {r} in {:?}", q.roots);
            }
            let sum: C64 = q.roots.iter().sum();
            assert!((sum.re + g[3]).abs() < 1e-9 * g[3].abs().max(1.0));
            let prod: C64 = q.roots.iter().product();
            assert!((prod.re - g[0]).abs() < 1e-9 * g[0].abs().max(1.0));
        }
    }

    fn default_like(sigma2: f64) -> (Scenario, LinearCoeffs) {
        let sc = Scenario::new(
            ArrayGeometry::from_carrier(10, 0.0125, 1e7).unwrap(),
            ElectricalParams::new(-2.2688e-3, 4.5535e-5, 1.79e-3).unwrap(),
            SourceSignals::random_phase(100, 10.0, 0).unwrap(),
            sigma2,
        )
        .unwrap();
        let c = linear_coeffs(&sc).unwrap();
        (sc, c)
    }

    #[test]
    fn noiseless_biquadratic() {
        let (_, c) = default_like(1e-6);
        let c = c.with_sigma2(0.0);
        let b = solve_biquadratic(&c).unwrap();
        assert_relative_eq!(b.discriminant, c.q_constant().powi(2), max_relative = 1e-15);
        assert_eq!(b.z_plus, 0.0);
        assert_relative_eq!(
            b.z_minus,
            -c.q_constant() / c.quartic_lead(),
            max_relative = 1e-14
        );
        assert_eq!(arl_closed_form(&c).unwrap(), 0.0);
        assert_eq!(arl_low_noise(&c).unwrap(), 0.0);
    }

    #[test]
    fn biquadratic_root_contract() {
        for sigma2 in [1e-12, 1e-6, 1e-2, 1.0] {
            let (_, c) = default_like(sigma2);
            let b = solve_biquadratic(&c).unwrap();
            let (a, bb, cc) = (c.quartic_lead(), c.reduced_linear(), -c.c0);
            for z in [b.z_plus, b.z_minus] {
                let terms = [a * z * z, bb * z, cc];
                let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
                let resid: f64 = terms.iter().sum();
                assert!(resid.abs() < 1e-10 * scale, "sigma2 {sigma2}: {resid:e}");
            }
            assert_eq!(arl_closed_form(&c).unwrap(), b.z_plus.sqrt());
        }
    }

    #[test]
    fn negative_discriminant_is_reported() {
        let (_, c) = default_like(1.0);
        // far beyond the linearized model the discriminant turns negative in a window of σ²
        let c = (0..=16)
            .map(|k| c.with_sigma2(10f64.powi(k)))
            .find(|c| biquadratic_discriminant(c) < 0.0)
            .expect("some noise level with a negative discriminant");
        assert!(matches!(
            solve_biquadratic(&c),
            Err(ArlError::NegativeDiscriminant { .. })
        ));
        assert!(matches!(
            arl_closed_form(&c),
            Err(ArlError::NegativeDiscriminant { .. })
        ));
    }

    #[test]
    fn z_plus_matches_squared_quartic_root_at_low_noise() {
        let (_, c) = default_like(1e-12);
        let q = quartic_of(&c);
        let b = solve_biquadratic(&c).unwrap();
        let root = select_arl_root(&q, &c).unwrap();
        assert_relative_eq!(root * root, b.z_plus, max_relative = 1e-8);
    }

    #[test]
    fn arl_scales_with_sigma() {
        let (_, c) = default_like(1e-10);
        let base = arl_closed_form(&c).unwrap();
        let quad = arl_closed_form(&c.with_sigma2(4e-10)).unwrap();
        assert_relative_eq!(quad / base, 2.0, max_relative = 1e-6);
        let lo = arl_low_noise(&c).unwrap();
        let lo4 = arl_low_noise(&c.with_sigma2(4e-10)).unwrap();
        assert_relative_eq!(lo4 / lo, 2.0, max_relative = 1e-3);
    }

    #[test]
    fn low_noise_tracks_closed_form() {
        let (_, c) = default_like(1.0);
        let mut sigma2 = 1e6;
        let mut checked = 0;
        while sigma2 > 1e-6 {
            let ci = c.with_sigma2(sigma2);
            if low_noise_ratio(&ci) < 0.01 {
                let a = arl_closed_form(&ci).unwrap();
                let b = arl_low_noise(&ci).unwrap();
                assert!((b / a - 1.0).abs() < 0.01);
                checked += 1;
            }
            sigma2 /= 3.0;
        }
        assert!(checked > 10);
    }

    #[test]
    fn low_noise_rejects_bad_regime() {
        let (_, c) = default_like(1.0);
        let mut bad = c;
        bad.c0 = -1.0;
        assert!(matches!(
            arl_low_noise(&bad),
            Err(ArlError::InvalidLowNoiseRegime { .. })
        ));
    }

    #[test]
    fn smith_root_contract_and_monotonicity() {
        let opts = SmithOptions::default();
        let (sc, _) = default_like(1e-6);
        let model = CrbModel::new(&sc);
        let d = smith_numeric(&sc, &opts).unwrap();
        let resid = (model.crb_delta_at(d).unwrap() - d * d).abs();
        assert!(resid < 1e-12 * d * d, "resid {:e}", resid / (d * d));
        let d2 = smith_numeric(&sc.with_sigma2(2e-6).unwrap(), &opts).unwrap();
        assert!(d2 > d);
    }

    #[test]
    fn smith_agrees_with_closed_form() {
        let opts = SmithOptions::default();
        for sigma2 in [1e-8, 1e-4, 1e-2] {
            let (sc, c) = default_like(sigma2);
            let exact = smith_numeric(&sc, &opts).unwrap();
            let closed = arl_closed_form(&c).unwrap();
            assert!(closed * 9.0 < 0.1);
            assert_relative_eq!(exact, closed, max_relative = 0.05);
        }
    }

    #[test]
    fn smith_errors() {
        let (sc, _) = default_like(1e-6);
        let tight = SmithOptions {
            delta_max: Some(1e-6),
            ..SmithOptions::default()
        };
        assert!(matches!(
            smith_numeric(&sc, &tight),
            Err(ArlError::NoSignChange { .. })
        ));
        let high_floor = SmithOptions {
            scan_floor: 1e-2,
            ..SmithOptions::default()
        };
        assert!(matches!(
            smith_numeric(&sc, &high_floor),
            Err(ArlError::RootBelowScanFloor { .. })
        ));
    }

    #[test]
    fn selection_drops_noise_invariant_root() {
        let (_, c) = default_like(1e-11);
        let q = quartic_of(&c);
        assert_eq!(q.positive_real_roots.len(), 2);
        let chosen = select_arl_root(&q, &c).unwrap();
        let spurious = q
            .positive_real_roots
            .iter()
            .copied()
            .find(|r| *r != chosen)
            .unwrap();
        let c_low = c.with_sigma2(1e-13);
        let q_low = quartic_of(&c_low);
        let chosen_low = select_arl_root(&q_low, &c_low).unwrap();
        assert!(chosen_low < chosen * 0.2);
        let spurious_low = q_low
            .positive_real_roots
            .iter()
            .copied()
            .find(|r| *r != chosen_low)
            .unwrap();
        assert_relative_eq!(spurious, spurious_low, max_relative = 1e-9);
        assert_relative_eq!(chosen, arl_closed_form(&c).unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn selection_fails_without_noise_dependent_root() {
        // x⁴ − 5x² + 4 with a fake coefficient set whose σ² has no effect
        let (_, c) = default_like(1e-9);
        let q = solve_quartic(4.0, 0.0, -5.0, 0.0);
        let frozen = c.with_sigma2(0.0);
        assert!(matches!(
            select_arl_root(&q, &frozen),
            Err(ArlError::NoAdmissibleRoot)
        ));
    }
}
