//! Quadrature and summation utilities shared across the crate.
//!
//! Every reduction over grid data goes through [`pairwise_sum`] so that
//! serial and parallel callers obtain bitwise-identical results.

/// Pairwise (cascade) summation in a fixed order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n if n <= 8 => {
            let mut acc = values[0];
            for v in &values[1..] {
                acc += v;
            }
            acc
        }
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Pairwise sum of `f(i)` over `0..n` without materializing the slice.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        let n = hi - lo;
        if n <= 8 {
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            acc
        } else {
            let mid = lo + n / 2;
            go(lo, mid, f) + go(mid, hi, f)
        }
    }
    if n == 0 {
        0.0
    } else {
        go(0, n, f)
    }
}

/// Trapezoidal weights for `n` uniformly spaced samples with spacing `h`.
pub fn trapezoid_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 2);
    let mut w = vec![h; n];
    w[0] = 0.5 * h;
    w[n - 1] = 0.5 * h;
    w
}

/// Composite Simpson weights for `n` uniformly spaced samples with spacing
/// `h`. Falls back to a 3/8 rule on the last three panels when the panel
/// count is odd; for `n < 4` degrades to the trapezoidal rule.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    if n < 4 {
        return trapezoid_weights(n.max(2), h);
    }
    let mut w = vec![0.0; n];
    let panels = n - 1;
    let simpson_end = if panels % 2 == 0 { n - 1 } else { n - 4 };
    let mut i = 0;
    while i + 2 <= simpson_end {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
        i += 2;
    }
    if panels % 2 != 0 {
        let j = n - 4;
        w[j] += 3.0 * h / 8.0;
        w[j + 1] += 9.0 * h / 8.0;
        w[j + 2] += 9.0 * h / 8.0;
        w[j + 3] += 3.0 * h / 8.0;
    }
    w
}

/// ∫ over one cell [0,h] of e^{-k u} against the two linear hat functions.
///
/// Returns `(a, b)` with ∫ e^{-k u}(1-u/h) du = a and ∫ e^{-k u}(u/h) du = b,
/// stable for all k*h >= 0 (series branch near zero).
pub fn exp_cell_weights(k: f64, h: f64) -> (f64, f64) {
    debug_assert!(k >= 0.0 && h > 0.0);
    let x = k * h;
    if x < 1e-4 {
        // a = h(1/2 - x/6 + x^2/24 - x^3/120), b = h(1/2 - x/3 + x^2/8 - x^3/30)
        let a = h * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0);
        let b = h * (0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0);
        (a, b)
    } else {
        let e = (-x).exp();
        let a = (1.0 - (1.0 - e) / x) / k;
        let b = ((1.0 - e) / x - e) / k;
        (a, b)
    }
}

/// Filon coefficients (alpha, beta, gamma) for oscillation parameter theta = r*h.
fn filon_coeffs(theta: f64) -> (f64, f64, f64) {
    let th = theta.abs();
    if th < 0.25 {
        let t2 = th * th;
        let alpha = th * t2 * (2.0 / 45.0 - t2 * (2.0 / 315.0 - t2 * (2.0 / 4725.0)));
        let beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * (4.0 / 105.0 - t2 * (2.0 / 567.0)));
        let gamma = 4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 * (1.0 / 210.0 - t2 * (1.0 / 11340.0)));
        (alpha.copysign(theta), beta, gamma)
    } else {
        let (s, c) = theta.sin_cos();
        let t3 = theta * theta * theta;
        let alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
        let beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
        let gamma = 4.0 * (s - theta * c) / t3;
        (alpha, beta, gamma)
    }
}

/// Filon quadrature of ∫_0^{2n·h} f(x) cos(r x) dx for samples `f` at
/// x_i = i*h (len must be odd, i.e. an even panel count).
pub fn filon_cos(f: &[f64], h: f64, r: f64) -> f64 {
    let n = f.len();
    assert!(n >= 3 && n % 2 == 1, "filon needs an odd sample count");
    let (alpha, beta, gamma) = filon_coeffs(r * h);
    let even = pairwise_sum_by(n / 2 + 1, &|i| {
        let j = 2 * i;
        f[j] * (r * (j as f64) * h).cos()
    }) - 0.5 * (f[0] + f[n - 1] * (r * ((n - 1) as f64) * h).cos());
    let odd = pairwise_sum_by(n / 2, &|i| {
        let j = 2 * i + 1;
        f[j] * (r * (j as f64) * h).cos()
    });
    let endpoint = f[n - 1] * (r * ((n - 1) as f64) * h).sin() - f[0] * 0.0;
    h * (alpha * endpoint + beta * even + gamma * odd)
}

/// Filon quadrature of ∫_0^{2n·h} f(x) sin(r x) dx (same layout as [`filon_cos`]).
pub fn filon_sin(f: &[f64], h: f64, r: f64) -> f64 {
    let n = f.len();
    assert!(n >= 3 && n % 2 == 1, "filon needs an odd sample count");
    let (alpha, beta, gamma) = filon_coeffs(r * h);
    let even = pairwise_sum_by(n / 2 + 1, &|i| {
        let j = 2 * i;
        f[j] * (r * (j as f64) * h).sin()
    }) - 0.5 * (f[n - 1] * (r * ((n - 1) as f64) * h).sin() + f[0] * 0.0);
    let odd = pairwise_sum_by(n / 2, &|i| {
        let j = 2 * i + 1;
        f[j] * (r * (j as f64) * h).sin()
    });
    let endpoint = f[0] - f[n - 1] * (r * ((n - 1) as f64) * h).cos();
    h * (alpha * endpoint + beta * even + gamma * odd)
}
