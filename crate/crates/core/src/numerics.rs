//! Summation and extrapolation primitives shared by the series,
//! lattice and mode-sum evaluators.

/// Kahan–Neumaier compensated accumulator.
///
/// Keeps the running error of a long f64 sum near one ulp of the result
/// instead of growing with the term count.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Pairwise (cascade) sum over a slice, Neumaier at the leaves.
///
/// The reduction tree depends only on the slice length, so the result is
/// bit-identical no matter how the values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        let mut acc = NeumaierSum::new();
        for &v in values {
            acc.add(v);
        }
        return acc.total();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Tail bound for a series whose terms decay at least as fast as k^-p
/// (p > 1) past the last retained index: |t_K| * K^p * ∫_K dx x^-p.
pub fn power_tail_bound(last_term_mag: f64, k_last: u64, p: f64) -> f64 {
    debug_assert!(p > 1.0);
    last_term_mag * k_last as f64 / (p - 1.0)
}

/// Neville extrapolation of f(λ) = f0 + c1 λ² + c2 λ⁴ + … to λ = 0.
///
/// `points` holds (λ, f(λ)) pairs. Returns the extrapolant together with
/// the magnitude of the last correction, which serves as the error bar.
pub fn richardson_even(points: &[(f64, f64)]) -> (f64, f64) {
    assert!(points.len() >= 2, "need at least two damping values");
    let x: Vec<f64> = points.iter().map(|&(l, _)| l * l).collect();
    let mut prev: Vec<f64> = points.iter().map(|&(_, v)| v).collect();
    let mut last_head = prev[0];
    let mut head = prev[0];
    for j in 1..points.len() {
        let mut row = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            row.push((x[i] * prev[i + 1] - x[i + j] * prev[i]) / (x[i] - x[i + j]));
        }
        last_head = head;
        head = row[0];
        prev = row;
    }
    (head, (head - last_head).abs())
}

/// Five-point central difference with one Richardson level,
/// f'(x) ≈ (4 D_{h/2} - D_h) / 3 where D_h = (f(x+h) - f(x-h)) / 2h.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    let d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    (4.0 * d2 - d1) / 3.0
}

/// Round to `digits` significant decimal digits (used for stable output).
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits - 1 - mag);
    (x * scale).round() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut s = NeumaierSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn pairwise_matches_exact_for_small_ints() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 500_500.0);
    }

    #[test]
    fn tail_bound_covers_inverse_square_tail() {
        // sum_{k>K} 1/k^2 = psi'(K+1) < bound built from the last term
        let k = 50u64;
        let last = 1.0 / (k as f64 * k as f64);
        let true_tail: f64 = (k + 1..100_000).map(|j| 1.0 / (j as f64 * j as f64)).sum();
        assert!(power_tail_bound(last, k, 2.0) > true_tail);
    }

    #[test]
    fn richardson_kills_even_powers() {
        let f = |l: f64| 3.5 + 2.0 * l * l - 0.7 * l.powi(4);
        let pts: Vec<(f64, f64)> = (0..4)
            .map(|j| {
                let l = 0.4 / 2f64.powi(j);
                (l, f(l))
            })
            .collect();
        let (v, err) = richardson_even(&pts);
        assert!((v - 3.5).abs() < 1e-12, "got {v}");
        assert!(err < 1e-6);
    }

    #[test]
    fn central_derivative_fifth_order() {
        let d = central_derivative(|x: f64| x.sin(), 1.0, 1e-3);
        assert!((d - 1f64.cos()).abs() < 1e-11);
    }

    #[test]
    fn round_sig_examples() {
        assert_eq!(round_sig(123.456789, 4), 123.5);
        assert_eq!(round_sig(-1.23456789e-7, 3), -1.23e-7);
        assert_eq!(round_sig(0.0, 5), 0.0);
    }
}
