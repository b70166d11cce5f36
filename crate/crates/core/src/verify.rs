//! The acceptance-criteria suite: every quantitative claim the library
//! is required to reproduce, with its tolerance pinned in code. Used by
//! both the `verify` CLI subcommand and the acceptance integration test.

use crate::model::{BoundaryCondition, PistonConfig, SeriesControl};
use crate::oracle::{oracle_piston_energy, OracleControl, Regulator};
use crate::orbits::{conjugate_point_count, cos_half_pi, maslov_updown, HalfCavity};
use crate::piston::{
    hemisphere_force_estimate, piston_force, subtracted_energy, Direction, ForceMethod,
};
use crate::semiclassical::{
    energy_cylinder, energy_halfcylinder, energy_hemisphere, energy_sphere, energy_updown_halfcyl,
    energy_updown_hemisphere, updown_hemisphere_series,
};
use std::f64::consts::PI;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Constants,
    Zeros,
    Decomposition,
    Plates,
    Oracle,
    Signs,
    Properties,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::Constants,
        Group::Zeros,
        Group::Decomposition,
        Group::Plates,
        Group::Oracle,
        Group::Signs,
        Group::Properties,
    ];

    pub fn parse(s: &str) -> Option<Group> {
        match s.to_ascii_lowercase().as_str() {
            "constants" => Some(Group::Constants),
            "zeros" => Some(Group::Zeros),
            "decomposition" => Some(Group::Decomposition),
            "plates" => Some(Group::Plates),
            "oracle" => Some(Group::Oracle),
            "signs" => Some(Group::Signs),
            "properties" => Some(Group::Properties),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Group::Constants => "constants",
            Group::Zeros => "zeros",
            Group::Decomposition => "decomposition",
            Group::Plates => "plates",
            Group::Oracle => "oracle",
            Group::Signs => "signs",
            Group::Properties => "properties",
        }
    }
}

/// One acceptance check: pass iff |measured − target| ≤ tolerance.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub group: &'static str,
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
}

fn check(
    out: &mut Vec<CheckResult>,
    group: Group,
    id: &'static str,
    measured: f64,
    target: f64,
    tolerance: f64,
    t0: Instant,
) {
    out.push(CheckResult {
        id,
        group: group.name(),
        measured,
        target,
        tolerance,
        passed: (measured - target).abs() <= tolerance && measured.is_finite(),
        seconds: t0.elapsed().as_secs_f64(),
    });
}

/// Run the selected groups (all when `only` is `None`).
pub fn run(only: Option<Group>) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for g in Group::ALL {
        if only.is_none() || only == Some(g) {
            match g {
                Group::Constants => constants(&mut out),
                Group::Zeros => zeros(&mut out),
                Group::Decomposition => decomposition(&mut out),
                Group::Plates => plates(&mut out),
                Group::Oracle => oracle(&mut out),
                Group::Signs => signs(&mut out),
                Group::Properties => properties(&mut out),
            }
        }
    }
    out
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

/// Golden constants printed to four digits: half-cylinder, up-down
/// hemisphere (closed form and series), hemisphere totals.
fn constants(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let d = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    check(
        out,
        Group::Constants,
        "1 half-cylinder Dirichlet -1.209e-4",
        d.coefficient,
        -1.209e-4,
        0.005 * 1.209e-4,
        t0,
    );
    let t = Instant::now();
    check(
        out,
        Group::Constants,
        "1 half-cylinder runtime < 1 s",
        t0.elapsed().as_secs_f64(),
        0.0,
        1.0,
        t,
    );

    let t0 = Instant::now();
    let ud = energy_updown_hemisphere(1.0, BoundaryCondition::Dirichlet).unwrap();
    check(
        out,
        Group::Constants,
        "2 up-down hemisphere closed form pi/128",
        ud.coefficient,
        PI / 128.0,
        0.0,
        t0,
    );
    let t0 = Instant::now();
    let series = updown_hemisphere_series(10_000);
    check(
        out,
        Group::Constants,
        "2 up-down series 1e4 terms vs pi/128",
        series / (PI / 128.0) - 1.0,
        0.0,
        1e-6,
        t0,
    );

    let t0 = Instant::now();
    let h = energy_hemisphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    check(
        out,
        Group::Constants,
        "3 hemisphere Dirichlet 0.03621",
        h.coefficient,
        0.03621,
        0.005 * 0.03621,
        t0,
    );
    let t0 = Instant::now();
    let em = energy_hemisphere(1.0, BoundaryCondition::Em, &ctl()).unwrap();
    check(
        out,
        Group::Constants,
        "3 hemisphere EM 0.07242",
        em.coefficient,
        0.07242,
        0.005 * 0.07242,
        t0,
    );
}

/// Exact zeros: odd-Maslov up-down energies and the EM cylinder family.
fn zeros(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for k in 1..=10_000 {
        let cosine = cos_half_pi(maslov_updown(k, HalfCavity::HalfDisc).unwrap());
        worst = worst.max(cosine.abs());
    }
    let e = energy_updown_halfcyl(1.0, 1.0, BoundaryCondition::Dirichlet).unwrap();
    worst = worst.max(e.coefficient.abs());
    let e = energy_updown_halfcyl(1.0, 1.0, BoundaryCondition::Neumann).unwrap();
    worst = worst.max(e.coefficient.abs());
    check(
        out,
        Group::Zeros,
        "4 up-down half-cylinder zero for k <= 1e4",
        worst,
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let c = energy_cylinder(1.0, 1.0, BoundaryCondition::Em, &ctl()).unwrap();
    check(
        out,
        Group::Zeros,
        "4 EM cylinder energy",
        c.coefficient,
        0.0,
        1e-12,
        t0,
    );
    let t0 = Instant::now();
    let hc = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Em, &ctl()).unwrap();
    check(
        out,
        Group::Zeros,
        "4 EM half-cylinder energy",
        hc.coefficient,
        0.0,
        1e-12,
        t0,
    );
}

/// Half-sphere = ½ sphere + up-down, and the implied sphere anchor.
fn decomposition(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let s = energy_sphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let h = energy_hemisphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let lhs = h.coefficient;
    let rhs = 0.5 * s.coefficient + PI / 128.0;
    let budget = h.truncation_error + 0.5 * s.truncation_error + 1e-15;
    check(
        out,
        Group::Decomposition,
        "5 hemisphere = sphere/2 + pi/128",
        lhs - rhs,
        0.0,
        budget,
        t0,
    );
    let t0 = Instant::now();
    check(
        out,
        Group::Decomposition,
        "5 sphere scalar anchor 0.02334",
        s.coefficient,
        0.02334,
        0.005 * 0.02334,
        t0,
    );
}

/// Parallel-plate limit of the box piston force.
fn plates(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let d = 0.01;
    let cfg = PistonConfig::BoxFlatHead {
        d,
        h: 1.0,
        l2: 1.0,
        l3: 1.0,
    };
    let f = piston_force(&cfg, BoundaryCondition::Em, &ctl()).unwrap();
    let plate = -PI * PI / (240.0 * d * d * d * d);
    check(
        out,
        Group::Plates,
        "6 EM force at d/l = 1e-2 vs plate law",
        f.coefficient / plate - 1.0,
        0.0,
        0.01,
        t0,
    );
    let t = Instant::now();
    check(
        out,
        Group::Plates,
        "6 plate-limit runtime < 10 s",
        t0.elapsed().as_secs_f64(),
        0.0,
        10.0,
        t,
    );
}

/// Mode-sum oracle equivalence on the unit box plus cutoff independence.
fn oracle(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let octl = OracleControl::default();
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let d = 0.2 + 0.025 * i as f64;
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Em] {
            let cfg = PistonConfig::BoxFlatHead {
                d,
                h: 1.0,
                l2: 1.0,
                l3: 1.0,
            };
            let orbit = subtracted_energy(&cfg, bc, &ctl()).unwrap();
            let est = oracle_piston_energy(d, 1.0, 1.0, 1.0, bc, &octl).unwrap();
            worst = worst.max((est.value / orbit.energy.coefficient - 1.0).abs());
        }
    }
    check(
        out,
        Group::Oracle,
        "7 oracle vs orbit sum, 10-point grid",
        worst,
        0.0,
        1e-4,
        t0,
    );

    // cutoff independence: lambda0 varied 4x around the default
    let t1 = Instant::now();
    let lo = OracleControl {
        lambda0_factor: 0.4,
        ..octl
    };
    let hi = OracleControl {
        lambda0_factor: 1.6,
        ..octl
    };
    let a = oracle_piston_energy(0.3, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &lo).unwrap();
    let b = oracle_piston_energy(0.3, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &hi).unwrap();
    check(
        out,
        Group::Oracle,
        "7 cutoff independence (lambda0 x4)",
        a.value - b.value,
        0.0,
        a.error_bar + b.error_bar,
        t1,
    );

    let t = Instant::now();
    check(
        out,
        Group::Oracle,
        "7 oracle runtime < 2 min",
        t0.elapsed().as_secs_f64(),
        0.0,
        120.0,
        t,
    );
}

/// Sign claims: box attraction, Neumann half-cylinder anchor, repulsive
/// hemisphere contact force with its SI magnitude.
fn signs(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    // wide-slab box, l2 = 50 l3, H = 20 l3: force attractive throughout
    let mut most_positive = f64::NEG_INFINITY;
    for d in [0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 9.5] {
        let cfg = PistonConfig::BoxFlatHead {
            d,
            h: 20.0,
            l2: 50.0,
            l3: 1.0,
        };
        let f = piston_force(&cfg, BoundaryCondition::Em, &ctl()).unwrap();
        most_positive = most_positive.max(f.coefficient);
    }
    let attractive = if most_positive < 0.0 { 0.0 } else { 1.0 };
    check(
        out,
        Group::Signs,
        "8 box force attractive for l2 = 50 l3",
        attractive,
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let cfg = PistonConfig::HalfCylinderHead {
        d: 1.0,
        h: None,
        r: 1.0,
        l: 1.0,
    };
    let anchor = subtracted_energy(&cfg, BoundaryCondition::Neumann, &ctl()).unwrap();
    let positive = if anchor.energy.coefficient > 0.0 {
        0.0
    } else {
        1.0
    };
    check(
        out,
        Group::Signs,
        "8 Neumann half-cylinder anchor E(R) > 0",
        positive,
        0.0,
        0.0,
        t0,
    );
    let t0 = Instant::now();
    check(
        out,
        Group::Signs,
        "8 Neumann anchor value 1.209e-4",
        anchor.energy.coefficient,
        1.209e-4,
        0.005 * 1.209e-4,
        t0,
    );

    let t0 = Instant::now();
    let f = hemisphere_force_estimate(1.0).unwrap();
    let repulsive =
        matches!(f.direction, Direction::Repulsive) && f.method == ForceMethod::ScalingModel;
    check(
        out,
        Group::Signs,
        "8 hemisphere contact force 0.07 +- 0.01",
        f.coefficient,
        0.07,
        0.01,
        t0,
    );
    let t0 = Instant::now();
    check(
        out,
        Group::Signs,
        "8 hemisphere contact repulsive",
        if repulsive { 0.0 } else { 1.0 },
        0.0,
        0.0,
        t0,
    );
    let t0 = Instant::now();
    let si = crate::model::force_to_si(f.coefficient, 1.0).unwrap();
    // one significant figure: 2e3 pN
    check(
        out,
        Group::Signs,
        "8 contact force in SI ~ 2e3 pN at R = 1 nm",
        si,
        2.0e3,
        0.5e3,
        t0,
    );
}

/// Structural properties: dilation covariance, D/N symmetry relations,
/// Maslov reconstruction, midpoint antisymmetry, thread determinism.
fn properties(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    // dilation invariance of tagged coefficients
    let a = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let b = energy_halfcylinder(3.0, 7.5, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let mut worst = (a.coefficient - b.coefficient).abs();
    let c = energy_hemisphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let e = energy_hemisphere(2.5, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    worst = worst.max((c.coefficient - e.coefficient).abs());
    check(
        out,
        Group::Properties,
        "9 dilation invariance of coefficients",
        worst,
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let cfg = PistonConfig::BoxFlatHead {
        d: 0.25,
        h: 1.0,
        l2: 1.5,
        l3: 0.8,
    };
    let f1 = piston_force(&cfg, BoundaryCondition::Em, &ctl()).unwrap();
    let alpha = 2.3;
    let f2 = piston_force(&cfg.dilated(alpha), BoundaryCondition::Em, &ctl()).unwrap();
    check(
        out,
        Group::Properties,
        "9 force scales as 1/length^2 under dilation",
        f2.coefficient * alpha * alpha / f1.coefficient - 1.0,
        0.0,
        1e-9,
        t0,
    );

    let t0 = Instant::now();
    let d = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let n = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Neumann, &ctl()).unwrap();
    check(
        out,
        Group::Properties,
        "9 cylinder family D/N antisymmetry",
        d.coefficient + n.coefficient,
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let sd = energy_sphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let sn = energy_sphere(1.0, BoundaryCondition::Neumann, &ctl()).unwrap();
    let hd = energy_hemisphere(1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
    let hn = energy_hemisphere(1.0, BoundaryCondition::Neumann, &ctl()).unwrap();
    let worst = (sd.coefficient - sn.coefficient)
        .abs()
        .max((hd.coefficient - hn.coefficient).abs());
    check(
        out,
        Group::Properties,
        "9 sphere family D/N equality",
        worst,
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let mut mismatches = 0u32;
    for k in 1..=100 {
        let mu = conjugate_point_count(k).unwrap();
        if u32::from(maslov_updown(k, HalfCavity::HalfDisc).unwrap()) != (mu + 1) % 4 {
            mismatches += 1;
        }
        if u32::from(maslov_updown(k, HalfCavity::Hemisphere).unwrap()) != (2 * mu + 2) % 4 {
            mismatches += 1;
        }
    }
    check(
        out,
        Group::Properties,
        "9 Maslov index = (nu + mu) mod 4, k <= 100",
        f64::from(mismatches),
        0.0,
        0.0,
        t0,
    );

    let t0 = Instant::now();
    let h = 1.0;
    let da = 0.3;
    let ea = subtracted_energy(
        &PistonConfig::BoxFlatHead {
            d: da,
            h,
            l2: 1.0,
            l3: 1.0,
        },
        BoundaryCondition::Dirichlet,
        &ctl(),
    )
    .unwrap();
    let eb = subtracted_energy(
        &PistonConfig::BoxFlatHead {
            d: h - da,
            h,
            l2: 1.0,
            l3: 1.0,
        },
        BoundaryCondition::Dirichlet,
        &ctl(),
    )
    .unwrap();
    let fa = piston_force(
        &PistonConfig::BoxFlatHead {
            d: da,
            h,
            l2: 1.0,
            l3: 1.0,
        },
        BoundaryCondition::Dirichlet,
        &ctl(),
    )
    .unwrap();
    let fb = piston_force(
        &PistonConfig::BoxFlatHead {
            d: h - da,
            h,
            l2: 1.0,
            l3: 1.0,
        },
        BoundaryCondition::Dirichlet,
        &ctl(),
    )
    .unwrap();
    let worst = ((ea.energy.coefficient - eb.energy.coefficient) / ea.energy.coefficient)
        .abs()
        .max(((fa.coefficient + fb.coefficient) / fa.coefficient).abs());
    check(
        out,
        Group::Properties,
        "9 midpoint antisymmetry of the box piston",
        worst,
        0.0,
        1e-10,
        t0,
    );

    thread_determinism(out);
}

#[cfg(feature = "parallel")]
fn thread_determinism(out: &mut Vec<CheckResult>) {
    let t0 = Instant::now();
    let run = || {
        let e = energy_halfcylinder(1.0, 1.0, BoundaryCondition::Dirichlet, &ctl()).unwrap();
        let m = crate::oracle::regularized_energy(
            &[0.4, 1.0, 1.0],
            BoundaryCondition::Dirichlet,
            Regulator::Abel,
            0.05,
        )
        .unwrap();
        let f = piston_force(
            &PistonConfig::BoxFlatHead {
                d: 0.3,
                h: 1.0,
                l2: 1.0,
                l3: 1.0,
            },
            BoundaryCondition::Em,
            &ctl(),
        )
        .unwrap();
        (
            e.coefficient.to_bits(),
            m.to_bits(),
            f.coefficient.to_bits(),
        )
    };
    let mut distinct = 0u32;
    let baseline = run();
    for threads in [1usize, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        if pool.install(run) != baseline {
            distinct += 1;
        }
    }
    check(
        out,
        Group::Properties,
        "9 bit-identical reductions on 1/2/8 threads",
        f64::from(distinct),
        0.0,
        0.0,
        t0,
    );
}

#[cfg(not(feature = "parallel"))]
fn thread_determinism(out: &mut Vec<CheckResult>) {
    // sequential build: a single code path by construction
    let t0 = Instant::now();
    check(
        out,
        Group::Properties,
        "9 bit-identical reductions on 1/2/8 threads",
        0.0,
        0.0,
        0.0,
        t0,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_groups_pass() {
        for g in [
            Group::Constants,
            Group::Zeros,
            Group::Decomposition,
            Group::Signs,
        ] {
            for c in run(Some(g)) {
                assert!(
                    c.passed,
                    "{} failed: measured {} target {} tol {}",
                    c.id, c.measured, c.target, c.tolerance
                );
            }
        }
    }

    #[test]
    fn group_parsing() {
        assert_eq!(Group::parse("oracle"), Some(Group::Oracle));
        assert_eq!(Group::parse("Constants"), Some(Group::Constants));
        assert_eq!(Group::parse("nope"), None);
    }
}
