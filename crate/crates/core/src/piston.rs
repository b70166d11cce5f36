//! Piston energetics: the subtracted two-chamber energy, forces by
//! differentiation, parallel-plate and far-chamber limits, and the
//! contact-force estimates for the curved heads.
//!
//! Sign convention: positive force pushes the piston away from the head
//! (toward larger d); `Attractive` means pulled toward the nearer end.

use crate::lattice;
use crate::model::{
    BoundaryCondition, EnergyResult, EnergyScale, Error, PistonConfig, Provenance, Result,
    SeriesControl,
};
use crate::semiclassical::{energy_halfcylinder, energy_hemisphere};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Attractive,
    Repulsive,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForceMethod {
    Analytic,
    CentralDifference,
    ScalingModel,
}

/// Force on the piston in ħc/length² with the caller's length unit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ForceResult {
    pub coefficient: f64,
    /// Numerical error estimate; `direction` is `Zero` when the
    /// coefficient does not resolve against it.
    pub error: f64,
    pub direction: Direction,
    pub method: ForceMethod,
}

impl ForceResult {
    fn classify(coefficient: f64, error: f64, method: ForceMethod) -> Self {
        let direction = if coefficient.abs() <= error {
            Direction::Zero
        } else if coefficient > 0.0 {
            Direction::Repulsive
        } else {
            Direction::Attractive
        };
        Self {
            coefficient,
            error,
            direction,
            method,
        }
    }
}

/// A subtracted piston energy together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PistonEnergy {
    pub energy: EnergyResult,
    pub provenance: Provenance,
}

/// One point of an energy profile over the piston height.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ProfilePoint {
    pub d: f64,
    pub energy: EnergyResult,
    pub provenance: Provenance,
}

/// Periodic-orbit (image-lattice) vacuum energy of an l₁×l₂×l₃ box.
///
/// The closed-ray lattice over nonzero integer vectors with lengths
/// l = 2√(Σ nᵢ²lᵢ²) carries the bulk 1/l⁴ families plus the wall and
/// edge tiers; together they reproduce the regularized mode sum exactly
/// and reduce to the parallel-plate law for l₁ ≪ l₂, l₃.
pub fn box_energy_periodic_orbits(
    l1: f64,
    l2: f64,
    l3: f64,
    bc: BoundaryCondition,
    _ctl: &SeriesControl,
) -> Result<EnergyResult> {
    for (v, name) in [(l1, "l1"), (l2, "l2"), (l3, "l3")] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    let (value, err) = match bc {
        BoundaryCondition::Em => {
            let d = lattice::box_energy([l1, l2, l3], BoundaryCondition::Dirichlet);
            let n = lattice::box_energy([l1, l2, l3], BoundaryCondition::Neumann);
            (d.value + n.value, d.err + n.err)
        }
        scalar => {
            let e = lattice::box_energy([l1, l2, l3], scalar);
            (e.value, e.err)
        }
    };
    Ok(EnergyResult {
        coefficient: value,
        scale: EnergyScale::PerUnitLength,
        truncation_error: err,
    })
}

/// Box chamber energy and slope for the force path. EM is the D+N sum.
fn box_value_slope(l: [f64; 3], bc: BoundaryCondition) -> (f64, f64, f64) {
    match bc {
        BoundaryCondition::Em => {
            let d = lattice::box_energy(l, BoundaryCondition::Dirichlet);
            let n = lattice::box_energy(l, BoundaryCondition::Neumann);
            (d.value + n.value, d.dl1 + n.dl1, d.err + n.err)
        }
        scalar => {
            let e = lattice::box_energy(l, scalar);
            (e.value, e.dl1, e.err)
        }
    }
}

/// Scaling-envelope coefficient for a curved head at contact:
/// the exact series value at d = R that anchors the d > R model.
fn curved_anchor(
    cfg: &PistonConfig,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<EnergyResult> {
    match *cfg {
        PistonConfig::HalfCylinderHead { r, l, .. } => energy_halfcylinder(r, l, bc, ctl),
        PistonConfig::HemisphereHead { r, .. } => energy_hemisphere(r, bc, ctl),
        PistonConfig::BoxFlatHead { .. } => unreachable!("no curved anchor for the flat head"),
    }
}

/// Suitably subtracted piston energy Ẽ(d) = ℰ(d) + ℰ(H−d) − 2ℰ(H/2).
///
/// Box: exact image sums, finite H required. Curved heads: the paper's
/// content exists at H = ∞ only; the near chamber is exact at contact
/// (d = R) and a clearly labeled scaling model beyond, with the far
/// chamber dropped (its d-dependence dies off as LR/H³).
pub fn subtracted_energy(
    cfg: &PistonConfig,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<PistonEnergy> {
    cfg.validate()?;
    ctl.validate()?;
    match *cfg {
        PistonConfig::BoxFlatHead { d, h, l2, l3 } => {
            let near = box_energy_periodic_orbits(d, l2, l3, bc, ctl)?;
            let far = box_energy_periodic_orbits(h - d, l2, l3, bc, ctl)?;
            let hhalf = box_energy_periodic_orbits(h / 2.0, l2, l3, bc, ctl)?;
            let value = near.coefficient + far.coefficient - 2.0 * hhalf.coefficient;
            let err = near.truncation_error + far.truncation_error + 2.0 * hhalf.truncation_error;
            Ok(PistonEnergy {
                energy: EnergyResult {
                    coefficient: value,
                    scale: EnergyScale::PerUnitLength,
                    truncation_error: err,
                },
                provenance: Provenance::SeriesTruncated,
            })
        }
        PistonConfig::HalfCylinderHead { d, h, r, .. } => {
            require_open_casing(h)?;
            let anchor = curved_anchor(cfg, bc, ctl)?;
            // ħc L R / d³ envelope pinned to the d = R series value
            let ratio = (r / d).powi(3);
            Ok(PistonEnergy {
                energy: EnergyResult {
                    coefficient: anchor.coefficient * ratio,
                    scale: anchor.scale,
                    truncation_error: anchor.truncation_error * ratio,
                },
                provenance: if d == r {
                    Provenance::SeriesTruncated
                } else {
                    Provenance::ScalingModel
                },
            })
        }
        PistonConfig::HemisphereHead { d, h, r } => {
            require_open_casing(h)?;
            let anchor = curved_anchor(cfg, bc, ctl)?;
            // shortest primitive orbit 2d: energy falls off as R/d
            let ratio = r / d;
            Ok(PistonEnergy {
                energy: EnergyResult {
                    coefficient: anchor.coefficient * ratio,
                    scale: anchor.scale,
                    truncation_error: anchor.truncation_error * ratio,
                },
                provenance: if d == r {
                    Provenance::SeriesTruncated
                } else {
                    Provenance::ScalingModel
                },
            })
        }
    }
}

fn require_open_casing(h: Option<f64>) -> Result<()> {
    match h {
        None => Ok(()),
        Some(_) => Err(Error::Domain(
            "curved heads support an infinite casing only (h = none): no finite-H result exists"
                .into(),
        )),
    }
}

/// Force on the piston, F = −∂Ẽ/∂d.
///
/// Box: exact term-by-term derivative of the image sums. Curved heads:
/// analytic derivative of the labeled scaling envelope.
pub fn piston_force(
    cfg: &PistonConfig,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<ForceResult> {
    cfg.validate()?;
    ctl.validate()?;
    match *cfg {
        PistonConfig::BoxFlatHead { d, h, l2, l3 } => {
            let (_, slope_near, err_n) = box_value_slope([d, l2, l3], bc);
            let (_, slope_far, err_f) = box_value_slope([h - d, l2, l3], bc);
            // dẼ/dd = E'(d) − E'(H−d); the reference term is d-independent
            let force = -(slope_near - slope_far);
            let err = 10.0 * (err_n + err_f) / d + 1e-13 * force.abs();
            if !force.is_finite() {
                return Err(Error::Numerical(format!("non-finite force at d = {d}")));
            }
            Ok(ForceResult::classify(force, err, ForceMethod::Analytic))
        }
        PistonConfig::HalfCylinderHead { d, r, l, .. } => {
            let sub = subtracted_energy(cfg, bc, ctl)?;
            // Ẽ = c (R/d)³ L/R² in raw units: c L R / d³, so F = 3 c L R / d⁴
            let anchor_raw = sub.energy.coefficient * l / (r * r); // value at this d, raw
            let force = 3.0 * anchor_raw / d;
            let err = 3.0 * sub.energy.truncation_error * l / (r * r) / d + 1e-15;
            Ok(ForceResult::classify(force, err, ForceMethod::ScalingModel))
        }
        PistonConfig::HemisphereHead { d, r, .. } => {
            let sub = subtracted_energy(cfg, bc, ctl)?;
            // Ẽ = c (R/d) / R in raw units: c/d, so F = c/d²
            let raw = sub.energy.coefficient / r; // value at this d, raw
            let force = raw / d;
            let err = sub.energy.truncation_error / (r * d) + 1e-15;
            Ok(ForceResult::classify(force, err, ForceMethod::ScalingModel))
        }
    }
}

/// Central-difference force with one Richardson level; the numerical
/// cross-check of the analytic box derivative.
pub fn box_force_central_difference(
    cfg: &PistonConfig,
    bc: BoundaryCondition,
) -> Result<ForceResult> {
    let &PistonConfig::BoxFlatHead { d, h, l2, l3 } = cfg else {
        return Err(Error::Domain(
            "central-difference force applies to the box geometry".into(),
        ));
    };
    cfg.validate()?;
    let energy = |x: f64| {
        let (near, _, _) = box_value_slope([x, l2, l3], bc);
        let (far, _, _) = box_value_slope([h - x, l2, l3], bc);
        near + far
    };
    let step = 1e-4 * d;
    let slope = crate::numerics::central_derivative(energy, d, step);
    let force = -slope;
    if !force.is_finite() {
        return Err(Error::Numerical(format!(
            "central difference failed at d = {d}, h = {step}"
        )));
    }
    let err = (step * step * step * step) * force.abs().max(1.0) + 1e-10 * force.abs();
    Ok(ForceResult::classify(
        force,
        err,
        ForceMethod::CentralDifference,
    ))
}

/// Order-of-magnitude repulsive contact force for the hemispherical
/// head: the EM energy at contact scaled by the shortest-orbit model,
/// F(d = R) = ℰ_EM(R)/R ≈ 0.07 ħc/R².
pub fn hemisphere_force_estimate(radius: f64) -> Result<ForceResult> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let ctl = SeriesControl::default();
    let em = energy_hemisphere(radius, BoundaryCondition::Em, &ctl)?;
    let coefficient = em.coefficient / (radius * radius);
    let err = em.truncation_error / (radius * radius);
    Ok(ForceResult {
        coefficient,
        error: err,
        direction: Direction::Repulsive,
        method: ForceMethod::ScalingModel,
    })
}

/// Energy anchors over a d-grid for the half-cylinder head: the exact
/// series value at contact, the scaling envelope c₃·LR/d³ beyond with c₃
/// pinned to the contact anchor, and 0 in the d → ∞ limit.
pub fn halfcyl_force_profile(
    cfg: &PistonConfig,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
    heights: &[f64],
) -> Result<Vec<ProfilePoint>> {
    let PistonConfig::HalfCylinderHead { r, l, .. } = *cfg else {
        return Err(Error::Domain(
            "profile requires the half-cylinder head geometry".into(),
        ));
    };
    cfg.validate()?;
    let mut points = Vec::with_capacity(heights.len());
    for &d in heights {
        if d < r {
            return Err(Error::Domain(format!(
                "grid point d = {d} below the head radius {r}"
            )));
        }
        let at = PistonConfig::HalfCylinderHead { d, h: None, r, l };
        let sub = subtracted_energy(&at, bc, ctl)?;
        points.push(ProfilePoint {
            d,
            energy: sub.energy,
            provenance: sub.provenance,
        });
    }
    Ok(points)
}
