//! Shared domain types and unit conventions.
//!
//! The library works in natural units ħ = c = 1. Every public energy is a
//! dimensionless coefficient plus a symbolic scale tag; forces carry
//! ħc/length² with the caller's length unit. SI conversion happens only
//! in [`force_to_si`].

use serde::{Deserialize, Serialize};
use std::fmt;

/// ħc in joule·meters (from ħc = 197.3269804 MeV·fm).
pub const HBAR_C_JOULE_METER: f64 = 3.161526e-26;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scale mismatch: cannot combine {0} with {1}")]
    ScaleMismatch(EnergyScale, EnergyScale),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Boundary condition on all cavity walls.
///
/// Perfect-conductor results are always assembled as the sum of the
/// Dirichlet and Neumann scalar results, never computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    Em,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dirichlet => write!(f, "dirichlet"),
            Self::Neumann => write!(f, "neumann"),
            Self::Em => write!(f, "em"),
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "d" => Ok(Self::Dirichlet),
            "neumann" | "n" => Ok(Self::Neumann),
            "em" | "metallic" | "conductor" => Ok(Self::Em),
            other => Err(Error::Domain(format!(
                "unknown boundary condition `{other}`"
            ))),
        }
    }
}

/// Symbolic unit of an energy coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyScale {
    /// ħc / R — sphere-family energies.
    #[serde(rename = "hbar*c/R")]
    PerRadius,
    /// ħc·L / R² — cylinder-family energies (per transverse length L).
    #[serde(rename = "hbar*c*L/R^2")]
    LengthPerRadiusSq,
    /// ħc / ℓ with ℓ the caller's length unit — box energies, where the
    /// coefficient is the plain numeric value in ħ = c = 1 units.
    #[serde(rename = "hbar*c/length")]
    PerUnitLength,
}

impl fmt::Display for EnergyScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PerRadius => write!(f, "hbar*c/R"),
            Self::LengthPerRadiusSq => write!(f, "hbar*c*L/R^2"),
            Self::PerUnitLength => write!(f, "hbar*c/length"),
        }
    }
}

/// A dimensionless coefficient with its scale tag and a bound on the
/// absolute truncation tail of the evaluated series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub coefficient: f64,
    pub scale: EnergyScale,
    pub truncation_error: f64,
}

impl EnergyResult {
    pub fn exact(coefficient: f64, scale: EnergyScale) -> Self {
        Self {
            coefficient,
            scale,
            truncation_error: 0.0,
        }
    }
}

/// How a reported number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Closed form or a cancellation that holds term by term.
    Exact,
    /// Convergent series cut off under a [`SeriesControl`].
    SeriesTruncated,
    /// Dimensional-scaling estimate anchored at an exact point; never an
    /// exact result.
    ScalingModel,
    /// Cutoff-extrapolated eigenmode sum.
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => write!(f, "exact"),
            Self::SeriesTruncated => write!(f, "series-truncated"),
            Self::ScalingModel => write!(f, "scaling-model"),
            Self::Oracle => write!(f, "oracle"),
        }
    }
}

/// Truncation bounds and target relative accuracy for all infinite sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// Outer index cutoff.
    pub k_max: u32,
    /// Inner index cutoff.
    pub m_max: u32,
    /// Target relative accuracy; evaluation stops early once the
    /// estimated tail drops below `tol × |partial sum|`, otherwise the
    /// tail bound is reported in `truncation_error`.
    pub tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            k_max: 20_000,
            m_max: 2_000,
            tol: 1e-8,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 || self.m_max == 0 {
            return Err(Error::Domain("series cutoffs must be positive".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Domain("series tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Piston geometry and dimensions. The casing length `h` measures the
/// full cavity along the piston axis; `None` means the far chamber is
/// infinitely long and is dropped from the subtraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "geometry", rename_all = "kebab-case")]
pub enum PistonConfig {
    /// Rectangular parallelepiped with a flat head; piston at height `d`,
    /// cross-section `l2 × l3`, casing length `h`.
    BoxFlatHead { d: f64, h: f64, l2: f64, l3: f64 },
    /// Parallelepiped of cross-section 2R × L capped by a half-cylinder
    /// of radius `r`; piston at height `d ≥ r` above the pipe axis.
    HalfCylinderHead {
        d: f64,
        h: Option<f64>,
        r: f64,
        l: f64,
    },
    /// Circular cylinder of radius `r` capped by a hemisphere; piston at
    /// height `d ≥ r`.
    HemisphereHead { d: f64, h: Option<f64>, r: f64 },
}

impl PistonConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64, name: &str| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        match *self {
            Self::BoxFlatHead { d, h, l2, l3 } => {
                pos(d, "d")?;
                pos(h, "h")?;
                pos(l2, "l2")?;
                pos(l3, "l3")?;
                if d >= h {
                    return Err(Error::Domain(format!(
                        "piston height d = {d} must lie strictly inside the casing h = {h}"
                    )));
                }
                Ok(())
            }
            Self::HalfCylinderHead { d, h, r, l } => {
                pos(d, "d")?;
                pos(r, "r")?;
                pos(l, "l")?;
                if let Some(h) = h {
                    pos(h, "h")?;
                    if d >= h {
                        return Err(Error::Domain("d must be smaller than the casing h".into()));
                    }
                }
                if d < r {
                    return Err(Error::Domain(format!(
                        "piston cannot intersect the curved head: d = {d} < r = {r}"
                    )));
                }
                Ok(())
            }
            Self::HemisphereHead { d, h, r } => {
                pos(d, "d")?;
                pos(r, "r")?;
                if let Some(h) = h {
                    pos(h, "h")?;
                    if d >= h {
                        return Err(Error::Domain("d must be smaller than the casing h".into()));
                    }
                }
                if d < r {
                    return Err(Error::Domain(format!(
                        "piston cannot intersect the curved head: d = {d} < r = {r}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Uniformly dilate every length by `alpha` (used by scaling tests).
    pub fn dilated(&self, alpha: f64) -> Self {
        match *self {
            Self::BoxFlatHead { d, h, l2, l3 } => Self::BoxFlatHead {
                d: alpha * d,
                h: alpha * h,
                l2: alpha * l2,
                l3: alpha * l3,
            },
            Self::HalfCylinderHead { d, h, r, l } => Self::HalfCylinderHead {
                d: alpha * d,
                h: h.map(|v| alpha * v),
                r: alpha * r,
                l: alpha * l,
            },
            Self::HemisphereHead { d, h, r } => Self::HemisphereHead {
                d: alpha * d,
                h: h.map(|v| alpha * v),
                r: alpha * r,
            },
        }
    }
}

/// Convert a force coefficient in ħc/R² units to piconewtons for a
/// piston radius given in nanometers.
pub fn force_to_si(coefficient: f64, radius_nm: f64) -> Result<f64> {
    if radius_nm.is_nan() || radius_nm <= 0.0 {
        return Err(Error::Domain(format!(
            "radius must be positive, got {radius_nm} nm"
        )));
    }
    // F = coefficient · ħc / R²; with R in nm and F in pN:
    // (J·m / m²) · 1e12 pN/N, R² = (radius_nm · 1e-9 m)²
    let newton = coefficient * HBAR_C_JOULE_METER / (radius_nm * 1e-9).powi(2);
    Ok(newton * 1e12)
}
