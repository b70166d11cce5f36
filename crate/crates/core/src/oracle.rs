//! Brute-force ground truth: cutoff-damped eigenmode sums for the
//! interval, rectangle and box, extrapolated to zero cutoff inside
//! subtracted (finite) combinations.
//!
//! The raw damped sum ½ Σ ω g(λω) diverges as λ → 0; its divergent part
//! is the smooth Weyl background (volume, surface, edge), which cancels
//! identically in the piston subtraction. Each chamber sum is evaluated
//! minus that analytic background so the subtraction never forms
//! differences of ~λ⁻⁴ magnitudes, then the ladder of λ values is
//! Neville-extrapolated in λ².

use crate::exec::sum_blocks;
use crate::model::{BoundaryCondition, Error, Result};
use crate::numerics::{richardson_even, NeumaierSum};
use std::f64::consts::PI;

/// Damping regulator g(λω).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regulator {
    /// g = e^{-λω}, the primary regulator.
    Abel,
    /// g = e^{-(λω)²}, the independence check.
    Gauss,
}

impl Regulator {
    #[inline]
    fn damp(self, x: f64) -> f64 {
        match self {
            Self::Abel => (-x).exp(),
            Self::Gauss => (-(x * x)).exp(),
        }
    }

    /// λω beyond which modes are summed analytically via the smooth
    /// background (the oscillatory remainder is below ~1e-16 there).
    fn cutoff(self) -> f64 {
        match self {
            Self::Abel => 38.0,
            Self::Gauss => 6.8,
        }
    }
}

/// Ladder of damping scales for the λ → 0 extrapolation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OracleControl {
    /// λ₀ = factor × min(d, H−d, l₂, l₃).
    pub lambda0_factor: f64,
    /// Ladder length; λ_j = λ₀ / ratio^j.
    pub levels: u32,
    pub ratio: f64,
    pub regulator: Regulator,
}

impl Default for OracleControl {
    fn default() -> Self {
        Self {
            lambda0_factor: 0.8,
            levels: 4,
            ratio: 2.0,
            regulator: Regulator::Abel,
        }
    }
}

impl OracleControl {
    pub fn validate(&self) -> Result<()> {
        let bad = |v: f64| !v.is_finite();
        if bad(self.lambda0_factor)
            || self.lambda0_factor <= 0.0
            || bad(self.ratio)
            || self.ratio <= 1.0
            || self.levels < 2
        {
            return Err(Error::Domain(
                "oracle ladder needs factor > 0, ratio > 1 and at least two levels".into(),
            ));
        }
        Ok(())
    }
}

/// Extrapolated piston energy with the error bar from the last two
/// extrapolants.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PistonEstimate {
    pub value: f64,
    pub error_bar: f64,
}

/// Eigenfrequency lattice ω(n) = π √(Σ (nᵢ/lᵢ)²) of a 1–3 dimensional
/// box: nᵢ ≥ 1 for Dirichlet, nᵢ ≥ 0 without the all-zero index for
/// Neumann.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    lengths: Vec<f64>,
    bc: BoundaryCondition,
}

impl ModeSpectrum {
    pub fn new(lengths: &[f64], bc: BoundaryCondition) -> Result<Self> {
        if lengths.is_empty() || lengths.len() > 3 {
            return Err(Error::Domain(format!(
                "spectrum supports 1 to 3 lengths, got {}",
                lengths.len()
            )));
        }
        if lengths.iter().any(|&l| !l.is_finite() || l <= 0.0) {
            return Err(Error::Domain(
                "all lengths must be positive and finite".into(),
            ));
        }
        if bc == BoundaryCondition::Em {
            return Err(Error::Domain(
                "the EM spectrum is never enumerated; combine Dirichlet and Neumann".into(),
            ));
        }
        Ok(Self {
            lengths: lengths.to_vec(),
            bc,
        })
    }

    /// ½ Σ ω g(λω) over the whole lattice: enumerated modes below the
    /// damping cutoff plus the analytic smooth remainder.
    pub fn damped_energy(&self, regulator: Regulator, lambda: f64) -> Result<f64> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain(format!(
                "damping must be positive, got {lambda}"
            )));
        }
        let omega_max = regulator.cutoff() / lambda;
        let enumerated = match self.lengths.len() {
            1 => self.sum_1d(regulator, lambda, omega_max),
            2 => self.sum_2d(regulator, lambda, omega_max),
            _ => self.sum_3d(regulator, lambda, omega_max),
        };
        Ok(0.5 * enumerated
            + smooth_background_integral(&self.lengths, self.bc, regulator, lambda, omega_max))
    }

    fn lo(&self) -> i64 {
        if self.bc == BoundaryCondition::Dirichlet {
            1
        } else {
            0
        }
    }

    fn sum_1d(&self, reg: Regulator, lambda: f64, omega_max: f64) -> f64 {
        let l = self.lengths[0];
        let top = (l * omega_max / PI).floor() as i64;
        let mut acc = NeumaierSum::new();
        for n in self.lo().max(1)..=top {
            let w = PI * n as f64 / l;
            acc.add(w * reg.damp(lambda * w));
        }
        acc.total()
    }

    fn sum_2d(&self, reg: Regulator, lambda: f64, omega_max: f64) -> f64 {
        let (l1, l2) = (self.lengths[0], self.lengths[1]);
        let lo = self.lo();
        let qmax = (omega_max / PI) * (omega_max / PI);
        let n1_top = (l1 * omega_max / PI).floor() as i64;
        sum_blocks((n1_top - lo + 1) as usize, |b| {
            let n1 = lo + b as i64;
            let q1 = sq(n1 as f64 / l1);
            if q1 > qmax {
                return 0.0;
            }
            let n2_top = (l2 * (qmax - q1).sqrt()).floor() as i64;
            let start = if n1 == 0 { 1 } else { lo };
            let mut acc = NeumaierSum::new();
            for n2 in start..=n2_top {
                let w = PI * (q1 + sq(n2 as f64 / l2)).sqrt();
                acc.add(w * reg.damp(lambda * w));
            }
            acc.total()
        })
    }

    fn sum_3d(&self, reg: Regulator, lambda: f64, omega_max: f64) -> f64 {
        let (l1, l2, l3) = (self.lengths[0], self.lengths[1], self.lengths[2]);
        let lo = self.lo();
        let qmax = (omega_max / PI) * (omega_max / PI);
        let n1_top = (l1 * omega_max / PI).floor() as i64;
        sum_blocks((n1_top - lo + 1) as usize, |b| {
            let n1 = lo + b as i64;
            let q1 = sq(n1 as f64 / l1);
            if q1 > qmax {
                return 0.0;
            }
            let n2_top = (l2 * (qmax - q1).sqrt()).floor() as i64;
            let mut acc = NeumaierSum::new();
            for n2 in lo..=n2_top {
                let q12 = q1 + sq(n2 as f64 / l2);
                let rem = qmax - q12;
                if rem < 0.0 {
                    continue;
                }
                let n3_top = (l3 * rem.sqrt()).floor() as i64;
                let start = if n1 == 0 && n2 == 0 { 1 } else { lo };
                let inv3 = 1.0 / l3;
                for n3 in start..=n3_top {
                    let w = PI * (q12 + sq(n3 as f64 * inv3)).sqrt();
                    acc.add(w * reg.damp(lambda * w));
                }
            }
            acc.total()
        })
    }
}

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

/// Raw damped zero-point sum ½ Σ ω g(λω); divergent as λ → 0 and
/// meaningful only inside differences.
pub fn regularized_energy(
    lengths: &[f64],
    bc: BoundaryCondition,
    regulator: Regulator,
    lambda: f64,
) -> Result<f64> {
    ModeSpectrum::new(lengths, bc)?.damped_energy(regulator, lambda)
}

/// Smooth (Weyl) part of the damped sum, ½ ∫ ω ρ̄(ω) g(λω) dω, with
/// ρ̄ the volume + surface + edge background of the box:
///   3D: ρ̄ = Vω²/2π² − σ S_tot ω/8π + L_tot/16π
///   2D: ρ̄ = A ω/2π − σ P/4π           1D: ρ̄ = l/π
/// (σ = +1 Dirichlet, −1 Neumann). This is exactly the part that
/// diverges as λ → 0 and cancels in the piston subtraction.
pub fn weyl_counterterm(
    lengths: &[f64],
    bc: BoundaryCondition,
    regulator: Regulator,
    lambda: f64,
) -> Result<f64> {
    if bc == BoundaryCondition::Em {
        return Err(Error::Domain(
            "no EM background; combine Dirichlet and Neumann".into(),
        ));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "damping must be positive, got {lambda}"
        )));
    }
    if lengths.is_empty() || lengths.len() > 3 {
        return Err(Error::Domain("background supports 1 to 3 lengths".into()));
    }
    let dim = lengths.len();
    let c = background_density(lengths, bc);
    let mut total = 0.0;
    for (j, cj) in c.iter().enumerate().take(dim) {
        // c[j] multiplies ω^{dim-1-j} in ρ̄, hence the ω^{dim-j} moment
        total += cj * moment(regulator, lambda, (dim - j) as u32);
    }
    Ok(0.5 * total)
}

/// Background density coefficients of ω^{dim-1}, ω^{dim-2}, ω^{dim-3}.
fn background_density(lengths: &[f64], bc: BoundaryCondition) -> [f64; 3] {
    let sigma = if bc == BoundaryCondition::Dirichlet {
        1.0
    } else {
        -1.0
    };
    match lengths {
        [l] => [l / PI, 0.0, 0.0],
        [a, b] => [a * b / (2.0 * PI), -sigma * (a + b) / (2.0 * PI), 0.0],
        [a, b, c] => {
            let volume = a * b * c;
            let surface = 2.0 * (a * b + a * c + b * c);
            let edges = 4.0 * (a + b + c);
            [
                volume / (2.0 * PI * PI),
                -sigma * surface / (8.0 * PI),
                edges / (16.0 * PI),
            ]
        }
        _ => unreachable!("lengths validated to 1..=3"),
    }
}

/// ∫₀^∞ ωⁿ g(λω) dω for n = 1, 2, 3.
fn moment(reg: Regulator, lambda: f64, n: u32) -> f64 {
    match (reg, n) {
        (Regulator::Abel, 1) => 1.0 / (lambda * lambda),
        (Regulator::Abel, 2) => 2.0 / lambda.powi(3),
        (Regulator::Abel, 3) => 6.0 / lambda.powi(4),
        (Regulator::Gauss, 1) => 0.5 / (lambda * lambda),
        (Regulator::Gauss, 2) => 0.25 * PI.sqrt() / lambda.powi(3),
        (Regulator::Gauss, 3) => 0.5 / lambda.powi(4),
        _ => unreachable!("moments used for n = 1..=3"),
    }
}

/// ∫_Ω^∞ ωⁿ g(λω) dω for n = 1, 2, 3.
fn moment_tail(reg: Regulator, lambda: f64, n: u32, omega_max: f64) -> f64 {
    let x = lambda * omega_max;
    match (reg, n) {
        (Regulator::Abel, 1) => (-x).exp() * (1.0 + x) / (lambda * lambda),
        (Regulator::Abel, 2) => 2.0 * (-x).exp() * (1.0 + x + 0.5 * x * x) / lambda.powi(3),
        (Regulator::Abel, 3) => {
            6.0 * (-x).exp() * (1.0 + x + 0.5 * x * x + x * x * x / 6.0) / lambda.powi(4)
        }
        (Regulator::Gauss, 1) => 0.5 * (-(x * x)).exp() / (lambda * lambda),
        (Regulator::Gauss, 2) => {
            (0.25 * PI.sqrt() * libm::erfc(x) + 0.5 * x * (-(x * x)).exp()) / lambda.powi(3)
        }
        (Regulator::Gauss, 3) => 0.5 * (-(x * x)).exp() * (x * x + 1.0) / lambda.powi(4),
        _ => unreachable!("moments used for n = 1..=3"),
    }
}

/// ½ ∫_Ω^∞ ω ρ̄ g dω — the analytic completion of the truncated mode
/// enumeration.
fn smooth_background_integral(
    lengths: &[f64],
    bc: BoundaryCondition,
    reg: Regulator,
    lambda: f64,
    omega_max: f64,
) -> f64 {
    let dim = lengths.len();
    let c = background_density(lengths, bc);
    let mut total = 0.0;
    for (j, cj) in c.iter().enumerate().take(dim) {
        total += cj * moment_tail(reg, lambda, (dim - j) as u32, omega_max);
    }
    0.5 * total
}

/// Subtracted piston energy Ẽ = E(d) + E(H−d) − 2E(H/2) from damped
/// eigenmode sums, Richardson-extrapolated to λ = 0.
pub fn oracle_piston_energy(
    d: f64,
    h: f64,
    l2: f64,
    l3: f64,
    bc: BoundaryCondition,
    ctl: &OracleControl,
) -> Result<PistonEstimate> {
    ctl.validate()?;
    if d.is_nan() || d <= 0.0 || !h.is_finite() || d >= h {
        return Err(Error::Domain(format!(
            "need 0 < d < H, got d = {d}, H = {h}"
        )));
    }
    if bc == BoundaryCondition::Em {
        let dres = oracle_piston_energy(d, h, l2, l3, BoundaryCondition::Dirichlet, ctl)?;
        let nres = oracle_piston_energy(d, h, l2, l3, BoundaryCondition::Neumann, ctl)?;
        return Ok(PistonEstimate {
            value: dres.value + nres.value,
            error_bar: dres.error_bar + nres.error_bar,
        });
    }

    let chamber = |l1: f64, lambda: f64| -> Result<f64> {
        let lens = [l1, l2, l3];
        let raw = regularized_energy(&lens, bc, ctl.regulator, lambda)?;
        Ok(raw - weyl_counterterm(&lens, bc, ctl.regulator, lambda)?)
    };

    let lambda0 = ctl.lambda0_factor * d.min(h - d).min(l2).min(l3);
    let mut points = Vec::with_capacity(ctl.levels as usize);
    for j in 0..ctl.levels {
        let lam = lambda0 / ctl.ratio.powi(j as i32);
        let value = chamber(d, lam)? + chamber(h - d, lam)? - 2.0 * chamber(h / 2.0, lam)?;
        points.push((lam, value));
    }

    let (value, err) = richardson_even(&points);
    if points.len() >= 3 {
        let (_, err_prev) = richardson_even(&points[..points.len() - 1]);
        let floor = 1e-10 * value.abs().max(1e-10);
        if err > 4.0 * err_prev.max(floor) && err > floor {
            return Err(Error::Numerical(format!(
                "extrapolation diverging: corrections {err_prev:.3e} -> {err:.3e}"
            )));
        }
    }
    let noise = 1e-12 * points.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    Ok(PistonEstimate {
        value,
        error_bar: err.max(noise),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_damped_sum_matches_closed_form() {
        // Dirichlet interval: sum n pi/l e^{-lam n pi/l} has a closed form
        let l = 0.7;
        let lam = 0.05;
        let s = lam * PI / l;
        let closed = 0.5 * (PI / l) * (-s).exp() / (1.0 - (-s).exp()).powi(2);
        let e =
            regularized_energy(&[l], BoundaryCondition::Dirichlet, Regulator::Abel, lam).unwrap();
        assert!((e / closed - 1.0).abs() < 1e-12, "{e} vs {closed}");
    }

    #[test]
    fn interval_weyl_leaves_the_casimir_constant() {
        // E(lam) - weyl -> -pi/(24 l) as lam -> 0
        let l = 1.0;
        for lam in [0.2, 0.1, 0.05] {
            let e = regularized_energy(&[l], BoundaryCondition::Dirichlet, Regulator::Abel, lam)
                .unwrap();
            let w =
                weyl_counterterm(&[l], BoundaryCondition::Dirichlet, Regulator::Abel, lam).unwrap();
            let resid = e - w - (-PI / 24.0 / l);
            assert!(resid.abs() < lam * lam, "lam={lam}: {resid}");
        }
    }

    #[test]
    fn one_dimensional_piston_reproduces_zeta_regularized_result() {
        let (d, h) = (0.3, 1.0);
        let ctl = OracleControl {
            lambda0_factor: 0.3,
            ..OracleControl::default()
        };
        // 1D variant: run the ladder by hand on interval spectra
        let lambda0 = ctl.lambda0_factor * d;
        let mut pts = Vec::new();
        for j in 0..4 {
            let lam = lambda0 / 2f64.powi(j);
            let f = |l1: f64| {
                regularized_energy(&[l1], BoundaryCondition::Dirichlet, Regulator::Abel, lam)
                    .unwrap()
                    - weyl_counterterm(&[l1], BoundaryCondition::Dirichlet, Regulator::Abel, lam)
                        .unwrap()
            };
            pts.push((lam, f(d) + f(h - d) - 2.0 * f(h / 2.0)));
        }
        let (v, _) = richardson_even(&pts);
        let exact = -(PI / 24.0) * (1.0 / d + 1.0 / (h - d) - 4.0 / h);
        assert!((v / exact - 1.0).abs() < 1e-7, "{v} vs {exact}");
    }

    #[test]
    fn rectangle_piston_matches_two_dimensional_image_sum() {
        // independent target: the 2D box finite part is
        //   E = -(l1 l2 / 32 pi) Z2(3/2; l1, l2) +- (pi/48)(1/l1 + 1/l2)
        // (+ Dirichlet, - Neumann)
        let image = |l1: f64, l2: f64, bc: BoundaryCondition| {
            let sgn = if bc == BoundaryCondition::Dirichlet { 1.0 } else { -1.0 };
            let z2 = crate::lattice::epstein2_value([l1, l2]);
            -(l1 * l2) / (32.0 * PI) * z2 + sgn * PI / 48.0 * (1.0 / l1 + 1.0 / l2)
        };
        let (d, h, l2) = (0.4, 1.0, 1.0);
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let mut pts = Vec::new();
            for j in 0..4 {
                let lam = 0.3 * d / 2f64.powi(j);
                let f = |l1: f64| {
                    regularized_energy(&[l1, l2], bc, Regulator::Abel, lam).unwrap()
                        - weyl_counterterm(&[l1, l2], bc, Regulator::Abel, lam).unwrap()
                };
                pts.push((lam, f(d) + f(h - d) - 2.0 * f(h / 2.0)));
            }
            let (v, _) = richardson_even(&pts);
            let target = image(d, l2, bc) + image(h - d, l2, bc) - 2.0 * image(h / 2.0, l2, bc);
            assert!((v / target - 1.0).abs() < 1e-5, "{bc:?}: {v} vs {target}");
        }
    }

    #[test]
    fn damped_sums_positive_and_monotone_in_damping() {
        let lens = [1.0, 1.0, 0.5];
        let e1 =
            regularized_energy(&lens, BoundaryCondition::Dirichlet, Regulator::Abel, 0.4).unwrap();
        let e2 =
            regularized_energy(&lens, BoundaryCondition::Dirichlet, Regulator::Abel, 0.2).unwrap();
        assert!(e1 > 0.0);
        assert!(e2 > e1);
    }

    #[test]
    fn damped_sum_symmetric_under_length_permutation() {
        let a = regularized_energy(
            &[0.4, 1.0, 1.7],
            BoundaryCondition::Neumann,
            Regulator::Abel,
            0.3,
        )
        .unwrap();
        let b = regularized_energy(
            &[1.7, 0.4, 1.0],
            BoundaryCondition::Neumann,
            Regulator::Abel,
            0.3,
        )
        .unwrap();
        assert!((a / b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn damped_sum_scaling_with_lengths() {
        // doubling all lengths at fixed lambda/length halves the energy
        let a = regularized_energy(
            &[0.5, 1.0],
            BoundaryCondition::Dirichlet,
            Regulator::Abel,
            0.2,
        )
        .unwrap();
        let b = regularized_energy(
            &[1.0, 2.0],
            BoundaryCondition::Dirichlet,
            Regulator::Abel,
            0.4,
        )
        .unwrap();
        assert!((a / (2.0 * b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn midpoint_subtraction_cancels_exactly() {
        let ctl = OracleControl::default();
        let e =
            oracle_piston_energy(0.5, 1.0, 1.0, 1.0, BoundaryCondition::Dirichlet, &ctl).unwrap();
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn spectrum_constructor_validation() {
        assert!(ModeSpectrum::new(&[], BoundaryCondition::Dirichlet).is_err());
        assert!(ModeSpectrum::new(&[1.0, 1.0, 1.0, 1.0], BoundaryCondition::Dirichlet).is_err());
        assert!(ModeSpectrum::new(&[1.0, -1.0], BoundaryCondition::Dirichlet).is_err());
        assert!(ModeSpectrum::new(&[1.0], BoundaryCondition::Em).is_err());
        assert!(
            regularized_energy(&[1.0], BoundaryCondition::Dirichlet, Regulator::Abel, 0.0).is_err()
        );
    }
}
