//! Trace-formula spectral densities of the isolated up-down orbits and
//! the closed-form periodic-orbit Casimir energy series for the
//! cylinder, half-cylinder, sphere and half-sphere cavities.
//!
//! The half-cavity spectral density splits into half the full-cavity
//! density plus the isolated up-down corrections. Term-by-term
//! amplitudes of the degenerate families are not reconstructed here, so
//! that split is exercised at the energy level only (half-sphere =
//! ½ sphere + up-down; the half-cylinder up-down part vanishes).
//!
//! All series are evaluated as block sums with a deterministic pairwise
//! reduction; alternating sums pair consecutive outer indices so the
//! tail is bounded by a monotone 1/k² envelope.

use crate::exec::sum_blocks;
use crate::model::{BoundaryCondition, EnergyResult, EnergyScale, Error, Result, SeriesControl};
use crate::numerics::{power_tail_bound, NeumaierSum};
use crate::orbits::{cos_half_pi, maslov_updown, updown_orbit, HalfCavity};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

/// ζ(4) = π⁴/90, the (2m, m) diameter-family sum of the sphere series.
const ZETA_4: f64 = PI * PI * PI * PI / 90.0;

/// Field-theoretic EM self-energy of a metallic cylinder, in ħc·L/R².
/// Reference value only: the periodic-orbit contribution vanishes and
/// this number is never reproduced here.
pub const CYLINDER_EM_FIELD_THEORY: f64 = -0.1356;

/// Boyer's field-theoretic EM self-energy of a conducting spherical
/// shell, in ħc/R. The periodic-orbit sphere value covers about 99% of
/// it. Reference constant only.
pub const SPHERE_EM_FIELD_THEORY: f64 = 0.04618;

/// Oscillatory spectral density of the k-th up-down orbit of the
/// half-cylinder (symmetry-reduced trace formula, ħ = c = 1):
/// (L R / (π l)) √(E l / 2π) cos(E l − σπ/2 − π/4), l = 2(2k−1)R.
pub fn density_updown_halfcyl(energy: f64, k: u32, radius: f64, length: f64) -> Result<f64> {
    check_positive(energy, "energy")?;
    let orbit = updown_orbit(k, radius, HalfCavity::HalfDisc)?;
    let l = orbit.length;
    let phase = energy * l - f64::from(orbit.maslov) * FRAC_PI_2 - FRAC_PI_4;
    Ok(length * radius / (PI * l) * (energy * l / (2.0 * PI)).sqrt() * phase.cos())
}

/// Oscillatory spectral density of the k-th up-down orbit of the
/// half-sphere (Gutzwiller trace formula, ħ = c = 1):
/// (1/π) T cos(E l − σπ/2) / |det(M−1)|^{1/2} with T = 2R and the
/// amplitude denominator 4.
pub fn density_updown_hemisphere(energy: f64, k: u32, radius: f64) -> Result<f64> {
    check_positive(energy, "energy")?;
    let orbit = updown_orbit(k, radius, HalfCavity::Hemisphere)?;
    let period = orbit.primitive_period_factor.unwrap_or(2.0) * radius;
    let amp = orbit.stability_amp.unwrap_or(4.0);
    let phase = energy * orbit.length - f64::from(orbit.maslov) * FRAC_PI_2;
    Ok(period / PI * phase.cos() / amp)
}

/// Dimensionless contribution of the k-th up-down orbit to the
/// half-cylinder energy coefficient (units ħc·L/R²), with the Maslov
/// index supplied explicitly so tests can probe the prefactor wiring.
fn updown_halfcyl_term(k: u32, sigma: u8) -> f64 {
    let n = f64::from(2 * k - 1);
    3.0 * (-cos_half_pi(sigma)) / (64.0 * SQRT_2 * PI * n * n * n)
}

/// Up-down orbit energy of the half-cylinder. Every (2k−1, k−½) orbit
/// has odd Maslov index, so cos(σπ/2) vanishes term by term and the sum
/// is exactly zero for Dirichlet and Neumann alike.
pub fn energy_updown_halfcyl(
    radius: f64,
    length: f64,
    bc: BoundaryCondition,
) -> Result<EnergyResult> {
    check_positive(radius, "radius")?;
    check_positive(length, "length")?;
    if bc == BoundaryCondition::Em {
        let d = energy_updown_halfcyl(radius, length, BoundaryCondition::Dirichlet)?;
        let n = energy_updown_halfcyl(radius, length, BoundaryCondition::Neumann)?;
        return em_energy(d, n);
    }
    // every summand carries cos(σπ/2) with odd σ, hence equals 0.0
    let mut acc = NeumaierSum::new();
    for k in 1..=64 {
        acc.add(updown_halfcyl_term(
            k,
            maslov_updown(k, HalfCavity::HalfDisc)?,
        ));
    }
    Ok(EnergyResult::exact(
        acc.total(),
        EnergyScale::LengthPerRadiusSq,
    ))
}

/// Up-down orbit energy of the half-sphere: (1/16πR) Σ (2k−1)⁻², which
/// sums to π/128 per scalar field for Dirichlet and Neumann alike. The
/// EM value is the sum of the two scalars.
pub fn energy_updown_hemisphere(radius: f64, bc: BoundaryCondition) -> Result<EnergyResult> {
    check_positive(radius, "radius")?;
    if bc == BoundaryCondition::Em {
        let d = energy_updown_hemisphere(radius, BoundaryCondition::Dirichlet)?;
        let n = energy_updown_hemisphere(radius, BoundaryCondition::Neumann)?;
        return em_energy(d, n);
    }
    Ok(EnergyResult::exact(PI / 128.0, EnergyScale::PerRadius))
}

/// Truncated series form of the up-down half-sphere coefficient:
/// (1/16π) [Σ_{k≤terms} (2k−1)⁻² + ψ′ tail of the remainder]. Retained
/// as the independent check of the π/128 closed form.
pub fn updown_hemisphere_series(terms: u32) -> f64 {
    let mut acc = NeumaierSum::new();
    for k in 1..=u64::from(terms) {
        let n = (2 * k - 1) as f64;
        acc.add(1.0 / (n * n));
    }
    // sum_{k>K} (2k-1)^-2 = psi'(K + 1/2) / 4
    let x = f64::from(terms) + 0.5;
    let tail = 0.25 * (1.0 / x + 0.5 / (x * x) + 1.0 / (6.0 * x * x * x));
    (acc.total() + tail) / (16.0 * PI)
}

/// Periodic-orbit Casimir energy of the half-cylinder, coefficient of
/// ħc·L/R²:
/// ±(1/32π) Σ_{m≥1} Σ_{k≥m} (−1)^k / ((2k+1)⁴ sin²(mπ/(2k+1))),
/// upper sign Dirichlet, lower sign Neumann; the EM energy is the sum of
/// the two and vanishes identically.
pub fn energy_halfcylinder(
    radius: f64,
    length: f64,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<EnergyResult> {
    check_positive(radius, "radius")?;
    check_positive(length, "length")?;
    ctl.validate()?;
    match bc {
        BoundaryCondition::Em => {
            let d = energy_halfcylinder(radius, length, BoundaryCondition::Dirichlet, ctl)?;
            let n = energy_halfcylinder(radius, length, BoundaryCondition::Neumann, ctl)?;
            em_energy(d, n)
        }
        scalar => {
            let (sum, bound) = halfcyl_double_sum(ctl);
            let sign = if scalar == BoundaryCondition::Dirichlet {
                1.0
            } else {
                -1.0
            };
            Ok(EnergyResult {
                coefficient: sign * sum / (32.0 * PI),
                scale: EnergyScale::LengthPerRadiusSq,
                truncation_error: bound / (32.0 * PI),
            })
        }
    }
}

/// Periodic-orbit Casimir energy of the full cylinder: twice the
/// half-cylinder value for the scalar fields; the EM coefficient
/// vanishes exactly.
pub fn energy_cylinder(
    radius: f64,
    length: f64,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<EnergyResult> {
    let half = energy_halfcylinder(radius, length, bc, ctl)?;
    Ok(EnergyResult {
        coefficient: 2.0 * half.coefficient,
        scale: half.scale,
        truncation_error: 2.0 * half.truncation_error,
    })
}

/// Periodic-orbit Casimir energy of the spherical cavity, coefficient of
/// ħc/R per scalar field:
/// (1/32π) [ζ(4) + Σ_{k≥2} (15π√2/16k⁴) Σ_{m<k} cos(mπ/2k)/sin²(mπ/2k)].
/// Identical for Dirichlet and Neumann; EM doubles it.
pub fn energy_sphere(
    radius: f64,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<EnergyResult> {
    check_positive(radius, "radius")?;
    ctl.validate()?;
    if bc == BoundaryCondition::Em {
        let d = energy_sphere(radius, BoundaryCondition::Dirichlet, ctl)?;
        let n = energy_sphere(radius, BoundaryCondition::Neumann, ctl)?;
        return em_energy(d, n);
    }
    let (ksum, bound) = sphere_inner_series(ctl);
    let pref = 15.0 * PI * SQRT_2 / 16.0;
    Ok(EnergyResult {
        coefficient: (ZETA_4 + pref * ksum) / (32.0 * PI),
        scale: EnergyScale::PerRadius,
        truncation_error: pref * bound / (32.0 * PI),
    })
}

/// Periodic-orbit Casimir energy of the half-sphere, coefficient of
/// ħc/R per scalar field:
/// (π/128) [1 + π²/45 + Σ_{k≥2} (15√2/8πk⁴) Σ_{m<k} cos(mπ/2k)/sin²(mπ/2k)].
/// Equals ½·sphere + π/128; EM doubles it.
pub fn energy_hemisphere(
    radius: f64,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
) -> Result<EnergyResult> {
    check_positive(radius, "radius")?;
    ctl.validate()?;
    if bc == BoundaryCondition::Em {
        let d = energy_hemisphere(radius, BoundaryCondition::Dirichlet, ctl)?;
        let n = energy_hemisphere(radius, BoundaryCondition::Neumann, ctl)?;
        return em_energy(d, n);
    }
    let (ksum, bound) = sphere_inner_series(ctl);
    let pref = 15.0 * SQRT_2 / (8.0 * PI);
    Ok(EnergyResult {
        coefficient: PI / 128.0 * (1.0 + PI * PI / 45.0 + pref * ksum),
        scale: EnergyScale::PerRadius,
        truncation_error: PI / 128.0 * pref * bound,
    })
}

/// Perfect-conductor energy as the sum of the Dirichlet and Neumann
/// scalar results. The only route to an EM number in this crate.
pub fn em_energy(dirichlet: EnergyResult, neumann: EnergyResult) -> Result<EnergyResult> {
    if dirichlet.scale != neumann.scale {
        return Err(Error::ScaleMismatch(dirichlet.scale, neumann.scale));
    }
    Ok(EnergyResult {
        coefficient: dirichlet.coefficient + neumann.coefficient,
        scale: dirichlet.scale,
        truncation_error: dirichlet.truncation_error + neumann.truncation_error,
    })
}

fn check_positive(v: f64, name: &str) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

/// Inverse sin² guard: below 1e-8 the quadratic Taylor value avoids the
/// cancellation in sin at tiny arguments.
#[inline]
fn inv_sin_sq(x: f64, sin_x: f64) -> f64 {
    if x < 1e-8 {
        1.0 / (x * x)
    } else {
        1.0 / (sin_x * sin_x)
    }
}

/// Inner sum Σ_{m=1}^{min(k, m_max)} 1/sin²(mπ/(2k+1)) via a rotation
/// recurrence (no per-term sin calls).
fn halfcyl_inner(k: u32, m_max: u32) -> f64 {
    let theta = PI / f64::from(2 * k + 1);
    let (st, ct) = theta.sin_cos();
    let (mut s, mut c) = (st, ct);
    let mut x = theta;
    let mut acc = NeumaierSum::new();
    let top = k.min(m_max);
    for _ in 0..top {
        acc.add(inv_sin_sq(x, s));
        let s_next = s * ct + c * st;
        c = c * ct - s * st;
        s = s_next;
        x += theta;
    }
    acc.total()
}

/// Outer term of the half-cylinder double sum at index k.
fn halfcyl_outer_term(k: u32, m_max: u32) -> f64 {
    let n = f64::from(2 * k + 1);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * halfcyl_inner(k, m_max) / (n * n * n * n)
}

/// Double sum of the half-cylinder series with consecutive-k pairing.
/// Returns (sum, tail bound). The bound combines the last retained pair
/// scaled by the analytic 1/k² tail integral with the m-cutoff residue.
fn halfcyl_double_sum(ctl: &SeriesControl) -> (f64, f64) {
    let k_max = ctl.k_max;
    let m_max = ctl.m_max;
    let pair = |j: u32| -> f64 {
        let k1 = 2 * j + 1;
        let k2 = k1 + 1;
        let mut v = halfcyl_outer_term(k1, m_max);
        if k2 <= k_max {
            v += halfcyl_outer_term(k2, m_max);
        }
        v
    };
    let total_pairs = k_max.div_ceil(2);

    // sequential prefix with the tol-based early halt
    const PREFIX: u32 = 256;
    let mut acc = NeumaierSum::new();
    let mut stopped_at = None;
    let mut j = 0;
    while j < total_pairs.min(PREFIX) {
        let v = pair(j);
        acc.add(v);
        let k_last = u64::from(2 * j + 2).min(u64::from(k_max));
        if j >= 16 && power_tail_bound(v.abs(), k_last, 2.0) < ctl.tol * acc.total().abs() {
            stopped_at = Some(j);
            break;
        }
        j += 1;
    }
    let (sum, last_pair_k) = match stopped_at {
        Some(j) => (acc.total(), 2 * j + 2),
        None if total_pairs <= PREFIX => (acc.total(), k_max),
        None => {
            let rest = sum_blocks((total_pairs - PREFIX) as usize, |b| pair(PREFIX + b as u32));
            (acc.total() + rest, k_max)
        }
    };

    let last_mag = pair(last_pair_k.div_ceil(2).saturating_sub(1)).abs();
    let mut bound = 1.5 * power_tail_bound(last_mag, u64::from(last_pair_k), 2.0);
    if last_pair_k > m_max {
        // inner cutoff residue: sum_{k>m_max} (2k+1)^-2 / (4 m_max)
        bound += 1.0 / (16.0 * f64::from(m_max) * f64::from(m_max));
    }
    (sum, bound)
}

/// Shared core of the sphere-family series:
/// Σ_{k≥2} k⁻⁴ Σ_{m=1}^{min(k−1, m_max)} cos(mπ/2k)/sin²(mπ/2k),
/// with (value, tail bound).
fn sphere_inner_series(ctl: &SeriesControl) -> (f64, f64) {
    let m_max = ctl.m_max;
    let term = |k: u32| -> f64 {
        let phi = FRAC_PI_2 / f64::from(k);
        let (sp, cp) = phi.sin_cos();
        let (mut s, mut c) = (sp, cp);
        let mut x = phi;
        let mut acc = NeumaierSum::new();
        let top = (k - 1).min(m_max);
        for _ in 0..top {
            acc.add(c * inv_sin_sq(x, s));
            let s_next = s * cp + c * sp;
            c = c * cp - s * sp;
            s = s_next;
            x += phi;
        }
        let kf = f64::from(k);
        acc.total() / (kf * kf * kf * kf)
    };

    const PREFIX: u32 = 128;
    if ctl.k_max < 2 {
        // the family series starts at k = 2; nothing retained
        return (0.0, 1.0);
    }
    let k_max = ctl.k_max;
    let mut acc = NeumaierSum::new();
    let mut stopped_at = None;
    let mut k = 2;
    while k <= k_max.min(PREFIX) {
        let v = term(k);
        acc.add(v);
        if k >= 32 && power_tail_bound(v, u64::from(k), 2.0) < ctl.tol * acc.total() {
            stopped_at = Some(k);
            break;
        }
        k += 1;
    }
    let (sum, k_last) = match stopped_at {
        Some(k) => (acc.total(), k),
        None if k_max <= PREFIX => (acc.total(), k_max),
        None => {
            let rest = sum_blocks((k_max - PREFIX) as usize, |b| term(PREFIX + 1 + b as u32));
            (acc.total() + rest, k_max)
        }
    };

    let mut bound = 1.5 * power_tail_bound(term(k_last), u64::from(k_last), 2.0);
    if k_last > m_max {
        // inner cutoff residue: 4/(pi^2 m_max^2)
        bound += 4.0 / (PI * PI * f64::from(m_max) * f64::from(m_max));
    }
    (sum, bound)
}
