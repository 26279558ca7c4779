//! Numerical integration used by the path and size-distribution integrals.

/// Adaptive Simpson integration of `f` over `[a, b]`.
///
/// Recursion stops when the Richardson error estimate of a panel drops below
/// its share of `rel_tol` times the magnitude of the whole-interval estimate,
/// or at `max_depth`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    // Seed with a coarse composite rule so narrow features are not missed.
    const SEED_PANELS: usize = 16;
    let h = (b - a) / SEED_PANELS as f64;
    let mut panels = Vec::with_capacity(SEED_PANELS);
    let mut whole = 0.0;
    for i in 0..SEED_PANELS {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == SEED_PANELS { b } else { lo + h };
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        whole += s;
        panels.push((lo, hi, flo, fmid, fhi, s));
    }
    let abs_tol = (rel_tol * whole.abs()).max(f64::MIN_POSITIVE);
    let per_panel = abs_tol / SEED_PANELS as f64;
    panels
        .into_iter()
        .map(|(lo, hi, flo, fmid, fhi, s)| refine(&f, lo, hi, flo, fmid, fhi, s, per_panel, max_depth))
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

const GL_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

/// Four-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS.iter())
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Altitude-cell integration grid: fine cells in the lower atmosphere and
/// coarse cells above `fine_top_km`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltitudeGrid {
    pub fine_step_km: f64,
    pub fine_top_km: f64,
    pub coarse_step_km: f64,
}

impl Default for AltitudeGrid {
    fn default() -> Self {
        Self {
            fine_step_km: 0.1,
            fine_top_km: 30.0,
            coarse_step_km: 1.0,
        }
    }
}

impl AltitudeGrid {
    /// Integrates `f(h)` from `h0` to `h1` (km) cell by cell.
    ///
    /// Cells are anchored at altitude 0, so the integral over `[h0, h1]`
    /// equals the sum over any split `[h0, s] + [s, h1]` up to the
    /// Gauss–Legendre error of the one cell containing `s`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, h0: f64, h1: f64) -> f64 {
        if h1 <= h0 {
            return 0.0;
        }
        let mut total = 0.0;
        let mut lo = h0;
        while lo < h1 {
            let hi = self.next_node(lo).min(h1);
            total += gauss_legendre(&f, lo, hi);
            lo = hi;
        }
        total
    }

    fn next_node(&self, h: f64) -> f64 {
        let (step, base) = if h < self.fine_top_km {
            (self.fine_step_km, 0.0)
        } else {
            (self.coarse_step_km, self.fine_top_km)
        };
        let k = ((h - base) / step).floor();
        let mut node = base + (k + 1.0) * step;
        // Guard against h sitting a hair below a node due to rounding.
        if node - h < 1e-9 * step {
            node += step;
        }
        if h < self.fine_top_km {
            node.min(self.fine_top_km)
        } else {
            node
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial_is_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-10, 20);
        assert!((v - 0.0).abs() < 1e-12);
        let v = adaptive_simpson(|x| x * x, 0.0, 3.0, 1e-10, 20);
        assert!((v - 9.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_exponential() {
        let v = adaptive_simpson(|x: f64| (-x).exp(), 0.0, 10.0, 1e-9, 30);
        assert!((v - (1.0 - (-10.0f64).exp())).abs() < 1e-8);
    }

    #[test]
    fn grid_integrates_exponential_across_both_regions() {
        let g = AltitudeGrid::default();
        let v = g.integrate(|h| (-h / 2.1).exp(), 0.0, 100.0);
        let exact = 2.1 * (1.0 - (-100.0f64 / 2.1).exp());
        assert!((v - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn grid_is_additive_at_arbitrary_split() {
        let g = AltitudeGrid::default();
        let f = |h: f64| (-h / 1.7).exp() * (1.0 + 0.1 * h);
        let whole = g.integrate(f, 0.3, 57.0);
        for split in [0.333_3, 9.87, 30.0, 30.05, 44.444] {
            let parts = g.integrate(f, 0.3, split) + g.integrate(f, split, 57.0);
            assert!((whole - parts).abs() / whole < 1e-12, "split {split}");
        }
    }

    #[test]
    fn empty_interval() {
        let g = AltitudeGrid::default();
        assert_eq!(g.integrate(|_| 1.0, 5.0, 5.0), 0.0);
        assert_eq!(adaptive_simpson(|_| 1.0, 1.0, 1.0, 1e-6, 10), 0.0);
    }
}
