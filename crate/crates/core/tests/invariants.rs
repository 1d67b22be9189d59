use arl_core::solver::quartic_of;
use arl_core::{
    crb_closed_form, crb_numeric, fim_slepian_bangs, linear_coeffs, ArrayGeometry,
    ElectricalParams, Scenario, SourceSignals,
};
use proptest::prelude::*;

fn build(
    n: usize,
    omega1: f64,
    delta: f64,
    phi: f64,
    amp: f64,
    seed: u64,
    sigma2: f64,
) -> Scenario {
    Scenario::new(
        ArrayGeometry::new(n, 0.5, 1.0).unwrap(),
        ElectricalParams::new(omega1, delta, phi).unwrap(),
        SourceSignals::random_phase(40, amp, seed).unwrap(),
        sigma2,
    )
    .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_equals_inverse_fim(
        n in 4usize..=16,
        omega1 in -2.5f64..2.5,
        delta in prop_oneof![0.01f64..0.5, -0.5f64..-0.01],
        phi in -0.1f64..0.1,
        amp in 0.2f64..5.0,
        seed in any::<u64>(),
        log_s2 in -3.0f64..3.0,
    ) {
        let sc = build(n, omega1, delta, phi, amp, seed, 10f64.powf(log_s2));
        let closed = crb_closed_form(&sc).unwrap();
        let numeric = crb_numeric(&fim_slepian_bangs(&sc)).unwrap();
        prop_assert!(rel(closed.crb_omega1, numeric.crb_omega1) < 1e-8);
        prop_assert!(rel(closed.crb_omega2, numeric.crb_omega2) < 1e-8);
        prop_assert!(rel(closed.crb_delta, numeric.crb_delta()) < 1e-8);
        prop_assert!(closed.crb_omega1 > 0.0 && closed.crb_omega2 > 0.0 && closed.crb_delta > 0.0);
        // Cauchy-Schwarz on the 2x2 block of the inverse
        prop_assert!(closed.crb_cross.powi(2) < closed.crb_omega1 * closed.crb_omega2);
    }

    #[test]
    fn crbs_scale_linearly_with_noise(
        n in 4usize..=12,
        delta in 0.02f64..0.4,
        seed in any::<u64>(),
        k in 0.01f64..100.0,
    ) {
        let sc = build(n, 0.4, delta, 0.02, 1.5, seed, 1.0);
        let a = crb_closed_form(&sc).unwrap();
        let b = crb_closed_form(&sc.with_sigma2(k).unwrap()).unwrap();
        prop_assert!(rel(b.crb_delta, k * a.crb_delta) < 1e-12);
        prop_assert!(rel(b.crb_omega1, k * a.crb_omega1) < 1e-12);
    }

    #[test]
    fn quartic_roots_satisfy_polynomial(
        n in 4usize..=16,
        delta in 0.001f64..0.05,
        phi in 0.001f64..0.05,
        seed in any::<u64>(),
        log_s2 in -8.0f64..-2.0,
    ) {
        let sc = build(n, 0.3, delta, phi, 3.0, seed, 10f64.powf(log_s2));
        let c = linear_coeffs(&sc).unwrap();
        let q = quartic_of(&c);
        for z in q.roots {
            let r = z.norm();
            let scale = r.powi(4) + (c.g3 * r.powi(3)).abs() + (c.g2 * r * r).abs()
                + (c.g1 * r).abs() + c.g0.abs();
            prop_assert!(q.eval(z).norm() < 1e-12 * scale, "{z}: {:e}", q.eval(z).norm());
        }
        for x in &q.positive_real_roots {
            prop_assert!(*x > 0.0);
        }
    }
}
