//! Cross-module invariants: dilation covariance, regulator
//! independence, the damped trace-formula integral, and randomized
//! property checks.

use casimir_core::model::{force_to_si, BoundaryCondition, PistonConfig, SeriesControl};
use casimir_core::numerics::richardson_even;
use casimir_core::oracle::{oracle_piston_energy, OracleControl, Regulator};
use casimir_core::{
    density_updown_hemisphere, energy_halfcylinder, piston_force, polygon_orbit_length,
    subtracted_energy,
};
use proptest::prelude::*;
use std::f64::consts::PI;

/// ½ ∫ E ρ̃(E) e^{-εE} dE for the primitive hemisphere up-down orbit,
/// by composite Simpson quadrature up to the damping cutoff.
fn damped_orbit_integral(eps: f64) -> f64 {
    let e_max = 40.0 / eps;
    let n = ((e_max / 0.005).ceil() as usize) | 1; // odd panel count
    let h = e_max / n as f64;
    let f = |e: f64| {
        if e <= 0.0 {
            return 0.0;
        }
        0.5 * e * density_updown_hemisphere(e, 1, 1.0).unwrap() * (-eps * e).exp()
    };
    let mut sum = f(0.0) + f(e_max);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(h * i as f64);
    }
    sum * h / 3.0
}

#[test]
fn damped_trace_formula_integral_recovers_updown_term() {
    // the k = 1 term of the up-down energy series is 1/(16 pi); the
    // oscillatory integral must reproduce it after the eps -> 0 limit
    let ladder: Vec<(f64, f64)> = [0.4, 0.2, 0.1, 0.05]
        .iter()
        .map(|&eps| (eps, damped_orbit_integral(eps)))
        .collect();
    let (value, _) = richardson_even(&ladder);
    let expect = 1.0 / (16.0 * PI);
    assert!(
        (value / expect - 1.0).abs() < 0.01,
        "extrapolated {value} vs {expect}"
    );
}

#[test]
fn oracle_regulator_independence() {
    // Gaussian damping must agree with Abel within twice the error bar
    let abel = OracleControl::default();
    let gauss = OracleControl {
        lambda0_factor: 0.4,
        regulator: Regulator::Gauss,
        ..OracleControl::default()
    };
    let a = oracle_piston_energy(0.3, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &abel).unwrap();
    let g = oracle_piston_energy(0.3, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &gauss).unwrap();
    let budget = 2.0 * (a.error_bar + g.error_bar);
    assert!(
        (a.value - g.value).abs() <= budget,
        "abel {} vs gauss {} budget {budget}",
        a.value,
        g.value
    );
}

#[test]
fn oracle_matches_orbit_sum_for_thin_chamber() {
    // d/l3 = 0.05: the Gaussian regulator needs far fewer modes at the
    // small damping this chamber requires
    let ctl = SeriesControl::default();
    let octl = OracleControl {
        lambda0_factor: 0.4,
        regulator: Regulator::Gauss,
        ..OracleControl::default()
    };
    let cfg = PistonConfig::BoxFlatHead {
        d: 0.05,
        h: 1.0,
        l2: 1.0,
        l3: 1.0,
    };
    let orbit = subtracted_energy(&cfg, BoundaryCondition::Dirichlet, &ctl).unwrap();
    let est =
        oracle_piston_energy(0.05, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &octl).unwrap();
    assert!(
        (est.value / orbit.energy.coefficient - 1.0).abs() < 1e-4,
        "oracle {} vs orbit {}",
        est.value,
        orbit.energy.coefficient
    );
}

#[test]
fn oracle_matches_orbit_sum_for_cube_chamber() {
    let ctl = SeriesControl::default();
    let octl = OracleControl::default();
    // near chamber is the unit cube: (d, l2, l3, H) = (1, 1, 1, 3)
    let cfg = PistonConfig::BoxFlatHead {
        d: 1.0,
        h: 3.0,
        l2: 1.0,
        l3: 1.0,
    };
    let orbit = subtracted_energy(&cfg, BoundaryCondition::Dirichlet, &ctl).unwrap();
    let est =
        oracle_piston_energy(1.0, 3.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &octl).unwrap();
    assert!(
        (est.value / orbit.energy.coefficient - 1.0).abs() < 1e-4,
        "oracle {} vs orbit {}",
        est.value,
        orbit.energy.coefficient
    );
}

#[test]
fn oracle_error_bar_covers_orbit_sum() {
    let ctl = SeriesControl::default();
    let octl = OracleControl::default();
    for d in [0.25, 0.4] {
        let cfg = PistonConfig::BoxFlatHead {
            d,
            h: 1.0,
            l2: 1.0,
            l3: 1.0,
        };
        let orbit = subtracted_energy(&cfg, BoundaryCondition::Neumann, &ctl).unwrap();
        let est =
            oracle_piston_energy(d, 1.0, 1.0, 1.0, BoundaryCondition::Neumann, &octl).unwrap();
        assert!(
            (est.value - orbit.energy.coefficient).abs()
                <= est.error_bar + 1e-4 * orbit.energy.coefficient.abs(),
            "d = {d}"
        );
    }
}

#[cfg(feature = "parallel")]
#[test]
fn reductions_bit_identical_across_pools() {
    let ctl = SeriesControl::default();
    let compute = || {
        let e = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl).unwrap();
        let f = piston_force(
            &PistonConfig::BoxFlatHead {
                d: 0.3,
                h: 1.0,
                l2: 1.0,
                l3: 1.0,
            },
            BoundaryCondition::Em,
            &ctl,
        )
        .unwrap();
        (e.coefficient.to_bits(), f.coefficient.to_bits())
    };
    let seq = compute();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        assert_eq!(pool.install(compute), seq, "{threads} threads");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn si_force_linear_and_inverse_square(
        coeff in -1.0f64..1.0,
        r in 0.1f64..100.0,
        a in 0.1f64..10.0,
    ) {
        let base = force_to_si(coeff, r).unwrap();
        let scaled = force_to_si(a * coeff, r).unwrap();
        prop_assert!((scaled - a * base).abs() <= 1e-12 * base.abs().max(1e-30) * a.max(1.0));
        let shrunk = force_to_si(coeff, a * r).unwrap();
        prop_assert!((shrunk * a * a - base).abs() <= 1e-10 * base.abs().max(1e-30));
    }

    #[test]
    fn polygon_length_degree_one_in_radius(
        n in 2u32..200,
        frac in 0.0f64..1.0,
        r in 0.01f64..100.0,
        alpha in 0.01f64..100.0,
    ) {
        let m = (1.0 + frac * f64::from(n / 2 - u32::from(n >= 2))).floor() as u32;
        let m = m.clamp(1, n / 2);
        let a = polygon_orbit_length(n, m, r).unwrap();
        let b = polygon_orbit_length(n, m, alpha * r).unwrap();
        prop_assert!((b - alpha * a).abs() <= 1e-12 * b.abs());
    }

    #[test]
    fn halfcyl_antisymmetry_any_cutoffs(k_max in 64u32..4000, m_max in 16u32..512) {
        let ctl = SeriesControl { k_max, m_max, tol: 1e-10 };
        let d = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl).unwrap();
        let n = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Neumann, &ctl).unwrap();
        prop_assert_eq!(d.coefficient, -n.coefficient);
        let em = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Em, &ctl).unwrap();
        prop_assert_eq!(em.coefficient, 0.0);
    }

    #[test]
    fn box_energy_dilation_covariance(
        d in 0.1f64..0.9,
        alpha in 0.2f64..5.0,
    ) {
        let ctl = SeriesControl::default();
        let cfg = PistonConfig::BoxFlatHead { d, h: 1.0, l2: 1.0, l3: 1.0 };
        let a = subtracted_energy(&cfg, BoundaryCondition::Dirichlet, &ctl).unwrap();
        let b = subtracted_energy(&cfg.dilated(alpha), BoundaryCondition::Dirichlet, &ctl).unwrap();
        // raw energies scale as 1/alpha under dilation
        prop_assert!(
            (b.energy.coefficient * alpha - a.energy.coefficient).abs()
                <= 1e-10 * a.energy.coefficient.abs().max(1e-12)
        );
    }

    #[test]
    fn piston_config_json_round_trip(
        d in 0.1f64..0.9,
        l2 in 0.1f64..10.0,
        l3 in 0.1f64..10.0,
        open in proptest::bool::ANY,
    ) {
        let cfg = PistonConfig::BoxFlatHead { d, h: 1.0, l2, l3 };
        let back: PistonConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(cfg, back);

        let cfg = PistonConfig::HemisphereHead { d: 1.0 + d, h: open.then_some(4.0), r: 1.0 };
        let back: PistonConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(cfg, back);
    }
}
