//! Shared FFT plumbing: per-thread plan cache and frequency layout.

use rustfft::{num_complex::Complex64, Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>> =
        RefCell::new(HashMap::new());
}

/// In-place complex FFT. The inverse direction is normalized by `1/n`.
pub(crate) fn fft_in_place(buf: &mut [Complex64], forward: bool) {
    let n = buf.len();
    let plan = PLANS.with(|p| {
        p.borrow_mut()
            .entry((n, forward))
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                if forward {
                    planner.plan_fft_forward(n)
                } else {
                    planner.plan_fft_inverse(n)
                }
            })
            .clone()
    });
    plan.process(buf);
    if !forward {
        let scale = 1.0 / n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

/// Angular frequency of DFT bin `k` for `n` samples with spacing `h`.
#[inline]
pub(crate) fn angular_freq(k: usize, n: usize, h: f64) -> f64 {
    let signed = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
    2.0 * std::f64::consts::PI * signed / (n as f64 * h)
}

/// Padded transform length for spectral work on `n` samples.
#[inline]
pub(crate) fn padded_len(n: usize, pad_factor: usize) -> usize {
    (n * pad_factor.max(1)).next_power_of_two()
}

/// In-place 2-D FFT of a row-major `nx x ny` array (index `y * nx + x`).
pub(crate) fn fft2d(buf: &mut [Complex64], nx: usize, ny: usize, forward: bool) {
    assert_eq!(buf.len(), nx * ny);
    for row in buf.chunks_mut(nx) {
        fft_in_place(row, forward);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); ny];
    for x in 0..nx {
        for y in 0..ny {
            col[y] = buf[y * nx + x];
        }
        fft_in_place(&mut col, forward);
        for y in 0..ny {
            buf[y * nx + x] = col[y];
        }
    }
}
