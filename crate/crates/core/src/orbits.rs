//! Classical periodic orbits of the disc/half-disc cross-section and the
//! sphere/half-sphere: lengths, Maslov indices and stability data.
//!
//! Orbit families of a disc of radius R are labeled (n, m): n chords, m
//! turns around the center, 2 ≤ 2m ≤ n, with length 2nR sin(mπ/n). The
//! half-cavities additionally contain isolated up-down orbits bouncing
//! along the symmetry axis, labeled (2k−1, k−½); an even number of
//! repetitions of the primitive up-down orbit falls back into the
//! degenerate (2m, m) family of the full cavity. Orbits that touch a
//! half-cavity corner are limiting members of their enclosing family
//! and carry no class of their own.

use crate::model::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which half-cavity an isolated up-down orbit lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfCavity {
    /// Half-disc cross-section of the half-cylinder.
    HalfDisc,
    /// Half-sphere head of the circular cylinder.
    Hemisphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    /// Member of a continuous family related by the cavity symmetry.
    DegenerateFamily,
    /// Isolated bouncing orbit on the symmetry axis.
    IsolatedUpDown,
}

/// One periodic-orbit class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    /// Reflections off the curved wall.
    pub reflections: u32,
    /// Winding number; half-integer exactly for isolated up-down orbits.
    pub winding: f64,
    pub kind: OrbitKind,
    /// Geometric length, same unit as the radius argument.
    pub length: f64,
    /// Generalized Maslov index σ mod 4.
    pub maslov: u8,
    /// |det(M − 1)|^{1/2} for isolated orbits; families carry none.
    pub stability_amp: Option<f64>,
    /// Primitive period in units R/c; isolated orbits only.
    pub primitive_period_factor: Option<f64>,
}

/// cos(σπ/2) for an integer Maslov index, exact by construction.
#[inline]
pub fn cos_half_pi(sigma: u8) -> f64 {
    match sigma % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    }
}

/// Perimeter of the (n, m) star polygon inscribed in a circle of radius
/// `radius`: 2nR sin(mπ/n).
pub fn polygon_orbit_length(n: u32, m: u32, radius: f64) -> Result<f64> {
    check_family_indices(n, m)?;
    check_radius(radius)?;
    let (nf, mf) = (f64::from(n), f64::from(m));
    Ok(2.0 * nf * radius * (mf * std::f64::consts::PI / nf).sin())
}

/// Degenerate (n, m) family of the disc or half-disc. Both cavities carry
/// the identically labeled family with the same length; the half-cavity
/// family covers the full-cavity one exactly twice.
pub fn family_orbit(n: u32, m: u32, radius: f64) -> Result<OrbitClass> {
    let length = polygon_orbit_length(n, m, radius)?;
    Ok(OrbitClass {
        reflections: n,
        winding: f64::from(m),
        kind: OrbitKind::DegenerateFamily,
        length,
        // bulk families: no caustics, even reflection count
        maslov: 0,
        stability_amp: None,
        primitive_period_factor: None,
    })
}

/// k-th repetition of the isolated up-down orbit, the (2k−1, k−½) class
/// with length 2(2k−1)R and primitive period 2R/c.
pub fn updown_orbit(k: u32, radius: f64, cavity: HalfCavity) -> Result<OrbitClass> {
    check_repetition(k)?;
    check_radius(radius)?;
    let n = 2 * k - 1;
    let amp = match cavity {
        // two eigenvalues of the reduced stability matrix equal -1
        HalfCavity::HalfDisc => 2.0,
        // all four eigenvalues equal -1
        HalfCavity::Hemisphere => 4.0,
    };
    Ok(OrbitClass {
        reflections: n,
        winding: f64::from(k) - 0.5,
        kind: OrbitKind::IsolatedUpDown,
        length: 2.0 * f64::from(n) * radius,
        maslov: maslov_updown(k, cavity)?,
        stability_amp: Some(amp),
        primitive_period_factor: Some(2.0),
    })
}

/// Generalized Maslov index of the (2k−1, k−½) up-down orbit, mod 4.
///
/// Half-disc: one unstable direction and 2k−2 first-order conjugate
/// points give σ = 2k−1 mod 4 (always odd). Hemisphere: two unstable
/// directions and second-order conjugate points give σ = 2 mod 4.
pub fn maslov_updown(k: u32, cavity: HalfCavity) -> Result<u8> {
    check_repetition(k)?;
    Ok(match cavity {
        HalfCavity::HalfDisc => ((2 * k - 1) % 4) as u8,
        HalfCavity::Hemisphere => 2,
    })
}

/// Number of conjugate points on the k-th up-down repetition: 2k − 2.
pub fn conjugate_point_count(k: u32) -> Result<u32> {
    check_repetition(k)?;
    Ok(2 * k - 2)
}

fn check_repetition(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("repetition index k must be >= 1".into()));
    }
    Ok(())
}

fn check_radius(radius: f64) -> Result<()> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    Ok(())
}

fn check_family_indices(n: u32, m: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2 reflections, got {n}")));
    }
    if m == 0 || 2 * m > n {
        return Err(Error::Domain(format!(
            "winding must satisfy 2 <= 2m <= n, got (n, m) = ({n}, {m})"
        )));
    }
    Ok(())
}
