//! Unitary DFTs (`1/sqrt(N)` on both directions) backed by rustfft, with
//! plans cached per thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type Plans = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

thread_local! {
    static PLANNER: RefCell<(FftPlanner<f64>, Plans)> = RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|cell| {
        let (planner, plans) = &mut *cell.borrow_mut();
        plans
            .entry((n, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(n)
                } else {
                    planner.plan_fft_forward(n)
                }
            })
            .clone()
    })
}

fn run(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    if n == 0 {
        return;
    }
    plan(n, inverse).process(buf);
    let scale = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= scale);
}

/// `X[k] = N^-1/2 sum_n x[n] exp(-j 2 pi k n / N)`, in place.
pub fn forward(buf: &mut [Complex64]) {
    run(buf, false);
}

/// Inverse of [`forward`], in place.
pub fn inverse(buf: &mut [Complex64]) {
    run(buf, true);
}
