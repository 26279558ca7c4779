//! Lorenz–Mie efficiencies for a homogeneous sphere.
//!
//! Riccati–Bessel recurrences after Bohren & Huffman: the logarithmic
//! derivative `D_n(m x)` and `psi_n(x)` are built by downward recurrence
//! (stable for large and absorbing arguments and for orders above `x`),
//! `chi_n(x)` by upward recurrence.

use num_complex::Complex64;

use super::Efficiencies;
use crate::error::{domain, Error, Result};

/// Default cap on the number of series terms.
pub const DEFAULT_MAX_TERMS: usize = 20_000;

/// Wiscombe's truncation order `ceil(x + 4 x^(1/3) + 2)`.
pub fn truncation_order(alpha: f64) -> usize {
    (alpha + 4.0 * alpha.cbrt() + 2.0).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MieSolver {
    pub max_terms: usize,
}

impl Default for MieSolver {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl MieSolver {
    /// Efficiencies with the standard truncation order.
    pub fn efficiencies(&self, alpha: f64, m: Complex64) -> Result<Efficiencies> {
        check_inputs(alpha, m)?;
        let n_max = truncation_order(alpha);
        if n_max > self.max_terms {
            return Err(Error::Resource(format!(
                "size parameter {alpha:.1} needs {n_max} Mie terms, cap is {}",
                self.max_terms
            )));
        }
        Ok(series(alpha, m, n_max))
    }

    /// Efficiencies summed to an explicit number of terms.
    pub fn efficiencies_with_terms(
        &self,
        alpha: f64,
        m: Complex64,
        n_terms: usize,
    ) -> Result<Efficiencies> {
        check_inputs(alpha, m)?;
        if n_terms == 0 || n_terms > self.max_terms {
            return Err(Error::Resource(format!(
                "{n_terms} Mie terms requested, cap is {}",
                self.max_terms
            )));
        }
        Ok(series(alpha, m, n_terms))
    }
}

/// Mie efficiencies for size parameter `alpha` and relative index `m`.
pub fn mie_efficiencies(alpha: f64, m: Complex64) -> Result<Efficiencies> {
    MieSolver::default().efficiencies(alpha, m)
}

fn check_inputs(alpha: f64, m: Complex64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(domain(format!("size parameter must be > 0, got {alpha}")));
    }
    if !(m.re.is_finite() && m.im.is_finite()) || m.im < 0.0 || m.norm() == 0.0 {
        return Err(domain(format!(
            "refractive index must be finite, non-zero, with Im(m) >= 0, got {m}"
        )));
    }
    Ok(())
}

fn series(x: f64, m: Complex64, n_terms: usize) -> Efficiencies {
    let y = m * x;
    // Start well past max(n, |mx|) so the recurrence has forgotten its seed.
    let n_down = (n_terms as f64).max(y.norm()).ceil() as usize + 16 + 4 * y.norm().cbrt().ceil() as usize;
    let mut d = vec![Complex64::new(0.0, 0.0); n_down + 1];
    for n in (1..=n_down).rev() {
        let nf = n as f64;
        d[n - 1] = nf / y - 1.0 / (d[n] + nf / y);
    }

    let psi = riccati_psi(x, n_terms);
    let mut chi0 = -x.sin();
    let mut chi1 = x.cos();
    let mut xi1 = Complex64::new(psi[0], -chi1);

    let mut q_ext = 0.0;
    let mut q_sca = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        let chi = (2.0 * nf - 1.0) * chi1 / x - chi0;
        let xi = Complex64::new(psi[n], -chi);

        let da = d[n] / m + nf / x;
        let db = d[n] * m + nf / x;
        let an = (da * psi[n] - psi[n - 1]) / (da * xi - xi1);
        let bn = (db * psi[n] - psi[n - 1]) / (db * xi - xi1);

        let w = 2.0 * nf + 1.0;
        q_ext += w * (an.re + bn.re);
        q_sca += w * (an.norm_sqr() + bn.norm_sqr());

        chi0 = chi1;
        chi1 = chi;
        xi1 = xi;
    }
    let scale = 2.0 / (x * x);
    Efficiencies::from_ext_sca(scale * q_ext, scale * q_sca)
}

/// `psi_n(x) = x j_n(x)` for `n = 0..=n_max` by Miller's downward
/// recurrence, normalized against `sin x` or `sin x / x - cos x`.
fn riccati_psi(x: f64, n_max: usize) -> Vec<f64> {
    let start = n_max + 16 + x.sqrt().ceil() as usize * 2;
    let mut psi = vec![0.0; start + 2];
    psi[start] = 1e-280;
    for n in (1..=start).rev() {
        psi[n - 1] = (2 * n + 1) as f64 / x * psi[n] - psi[n + 1];
        if psi[n - 1].abs() > 1e250 {
            for v in &mut psi[n - 1..] {
                *v *= 1e-250;
            }
        }
    }
    let exact0 = x.sin();
    let exact1 = x.sin() / x - x.cos();
    let norm = if exact0.abs() >= exact1.abs() {
        exact0 / psi[0]
    } else {
        exact1 / psi[1]
    };
    psi.truncate(n_max + 1);
    for v in &mut psi {
        *v *= norm;
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values: the same series evaluated with 40-digit arithmetic
    // (mpmath, Bessel functions evaluated directly rather than by recurrence).
    #[test]
    fn matches_high_precision_reference() {
        let cases = [
            (1.0, Complex64::new(1.5, 0.0), 0.215_097_596_042_885_3, 0.215_097_596_042_885_3),
            (5.0, Complex64::new(1.5, 0.0), 3.927_826_731_583_356_7, 3.927_826_731_583_356_7),
            (10.0, Complex64::new(1.33, 0.01), 2.249_240_908_063_458_8, 1.872_112_060_542_717_5),
            (0.05, Complex64::new(2.5, 1.3), 0.045_973_848_944_994_42, 1.075_542_387_807_171e-5),
            (0.005, Complex64::new(1.33, 0.0), 6.936_788_344_879_347e-11, 6.936_788_344_879_347e-11),
            (12.566_370_614_359_172, Complex64::new(2.47, 0.92), 2.358_128_323_219_206_7, 1.380_407_378_246_782_3),
            (81.1, Complex64::new(1.315, 1e-4), 2.033_369_079_657_839, 1.999_791_886_475_144_9),
            (100.0, Complex64::new(1.5, 0.1), 2.089_821_843_141_121_3, 1.132_133_971_124_748_7),
            (200.0, Complex64::new(1.33, 0.01), 2.057_894_581_419_250_7, 1.094_308_985_629_987_8),
            (400.0, Complex64::new(1.33, 0.0), 2.030_845_902_163_281_8, 2.030_845_902_163_281_8),
        ];
        for (x, m, qe, qs) in cases {
            let r = mie_efficiencies(x, m).unwrap();
            assert!((r.q_ext - qe).abs() / qe < 1e-9, "x={x} q_ext={} want {qe}", r.q_ext);
            assert!((r.q_sca - qs).abs() / qs < 1e-9, "x={x} q_sca={} want {qs}", r.q_sca);
        }
    }

    #[test]
    fn lossless_sphere_absorbs_nothing() {
        for x in [0.3, 2.0, 12.57, 81.1, 400.0] {
            let r = mie_efficiencies(x, Complex64::new(1.33, 0.0)).unwrap();
            assert!(r.q_abs.abs() <= 1e-9 * r.q_ext.max(1.0), "x={x}: {}", r.q_abs);
        }
    }

    #[test]
    fn truncation_cap_is_enforced() {
        let solver = MieSolver { max_terms: 100 };
        assert!(matches!(
            solver.efficiencies(500.0, Complex64::new(1.33, 0.0)),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            mie_efficiencies(30_000.0, Complex64::new(1.33, 0.0)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(mie_efficiencies(0.0, Complex64::new(1.33, 0.0)).is_err());
        assert!(mie_efficiencies(1.0, Complex64::new(1.33, -0.1)).is_err());
        assert!(mie_efficiencies(f64::NAN, Complex64::new(1.33, 0.0)).is_err());
    }

    #[test]
    fn extra_terms_do_not_change_result() {
        let solver = MieSolver::default();
        for x in [0.5, 12.57, 150.0] {
            let m = Complex64::new(2.47, 0.92);
            let std = solver.efficiencies(x, m).unwrap();
            let more = solver
                .efficiencies_with_terms(x, m, truncation_order(x) + 60)
                .unwrap();
            assert!((std.q_ext - more.q_ext).abs() / more.q_ext < 1e-9);
        }
    }
}
