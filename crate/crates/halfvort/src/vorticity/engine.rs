//! Spectral strip engine: applies the correction-kernel family to gridded
//! densities in `O(n log n)` per row instead of an `O(N^2)` kernel sum.
//!
//! Per row transform `g-hat(xi, y2)`, the engine forms exponential suffix
//! integrals along `y2` with product-integration weights (exact for
//! piecewise-linear data at every decay rate `|xi|`), couples them to the
//! target height through the image Gaussian `Gamma_0(x2 + z2, t)` as a
//! Hankel-type correlation evaluated by FFT, and applies the remaining
//! Fourier multiplier before the inverse row transforms.

use crate::fftutil::{angular_freq, fft_in_place, padded_len};
use crate::grid::{HalfPlaneGrid, ScalarField};
use crate::kernels::gauss1d_unchecked;
use crate::quad::{exp_cell_weights, simpson_weights};
use crate::vorticity::KernelConfig;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;

pub(crate) struct StripEngine {
    grid: HalfPlaneGrid,
    t: f64,
    m: usize,
}

impl StripEngine {
    pub fn new(grid: HalfPlaneGrid, t: f64, cfg: &KernelConfig) -> Self {
        // the profile kernels carry 1/r^2 tails, so the engine needs more
        // padding than the line operators to keep periodization below the
        // kernel-agreement tolerances
        Self { grid, t, m: padded_len(grid.n1, cfg.pad_factor.max(8)) }
    }

    #[inline]
    fn xi(&self, k: usize) -> f64 {
        angular_freq(k, self.m, self.grid.h1)
    }

    /// Forward transforms of all rows, row-major `[j * m + k]`.
    fn rows_fft(&self, values: &[f64]) -> Vec<Complex64> {
        let (n1, n2, m) = (self.grid.n1, self.grid.n2, self.m);
        let mut out = vec![Complex64::new(0.0, 0.0); n2 * m];
        out.par_chunks_mut(m).enumerate().for_each(|(j, row)| {
            for i in 0..n1 {
                row[i] = Complex64::new(values[j * n1 + i], 0.0);
            }
            fft_in_place(row, true);
        });
        out
    }

    /// In-place suffix integrals
    /// `S(xi, z_j) = INT_{z_j}^{top} e^{-(y - z_j) |xi|} g-hat(xi, y) dy`.
    fn suffix(&self, rows: &mut [Complex64]) {
        let (n2, m) = (self.grid.n2, self.m);
        let h2 = self.grid.h2;
        let half = m / 2;
        let cols: Vec<Vec<Complex64>> = (0..=half)
            .into_par_iter()
            .map(|k| {
                let kappa = self.xi(k).abs();
                let decay = (-kappa * h2).exp();
                let (a, b) = exp_cell_weights(kappa, h2);
                let mut col = vec![Complex64::new(0.0, 0.0); n2];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in (0..n2 - 1).rev() {
                    acc = acc * decay + rows[j * m + k] * a + rows[(j + 1) * m + k] * b;
                    col[j] = acc;
                }
                col
            })
            .collect();
        for k in 0..=half {
            for j in 0..n2 {
                rows[j * m + k] = cols[k][j];
            }
        }
        // Hermitian mirror for real data
        for k in half + 1..m {
            for j in 0..n2 {
                rows[j * m + k] = rows[j * m + (m - k)].conj();
            }
        }
    }

    /// Vertical coupling `out(xi, x2_i) = sum_j w_j V(x2_i + z_j) S(xi, z_j)`
    /// with `V = Gamma_0(., t)` or its derivative, as an FFT correlation.
    fn vertical(&self, suffix: &[Complex64], prime: bool) -> Vec<Complex64> {
        let (n2, m) = (self.grid.n2, self.m);
        let h2 = self.grid.h2;
        let t = self.t;
        let l = (3 * n2).next_power_of_two();
        let mut vhat = vec![Complex64::new(0.0, 0.0); l];
        for v in 0..(2 * n2 - 1) {
            let rho = v as f64 * h2;
            let g = gauss1d_unchecked(rho, t);
            let val = if prime { -rho / (2.0 * t) * g } else { g };
            vhat[v] = Complex64::new(val, 0.0);
        }
        fft_in_place(&mut vhat, true);
        let wj = simpson_weights(n2, h2);
        let half = m / 2;
        let cols: Vec<Vec<Complex64>> = (0..=half)
            .into_par_iter()
            .map(|k| {
                let mut buf = vec![Complex64::new(0.0, 0.0); l];
                for j in 0..n2 {
                    // reversed placement turns the correlation into a convolution
                    buf[n2 - 1 - j] = suffix[j * m + k] * wj[j];
                }
                fft_in_place(&mut buf, true);
                for (bv, vv) in buf.iter_mut().zip(&vhat) {
                    *bv *= vv;
                }
                fft_in_place(&mut buf, false);
                (0..n2).map(|i| buf[i + n2 - 1]).collect()
            })
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n2 * m];
        for k in 0..=half {
            for i in 0..n2 {
                out[i * m + k] = cols[k][i];
            }
        }
        for k in half + 1..m {
            for i in 0..n2 {
                out[i * m + k] = out[i * m + (m - k)].conj();
            }
        }
        out
    }

    fn inverse_rows(&self, mut rows: Vec<Complex64>) -> ScalarField {
        let (n1, m) = (self.grid.n1, self.m);
        let mut out = ScalarField::zeros(self.grid);
        let chunks: Vec<Vec<f64>> = rows
            .par_chunks_mut(m)
            .map(|row| {
                fft_in_place(row, false);
                row[..n1].iter().map(|c| c.re).collect()
            })
            .collect();
        for (j, chunk) in chunks.into_iter().enumerate() {
            out.values[j * n1..(j + 1) * n1].copy_from_slice(&chunk);
        }
        out
    }

    /// `INT Wt(x, y, t) rho(y) dy` for a gridded density.
    pub fn wtilde_density(&self, rho: &ScalarField) -> ScalarField {
        assert_eq!(rho.grid, self.grid);
        let mut rows = self.rows_fft(&rho.values);
        self.suffix(&mut rows);
        let mut vert = self.vertical(&rows, false);
        let (n2, m, t) = (self.grid.n2, self.m, self.t);
        for k in 0..m {
            let xi = self.xi(k);
            let mul = 2.0 * (-xi.abs()) * (-t * xi * xi).exp();
            for j in 0..n2 {
                vert[j * m + k] *= mul;
            }
        }
        self.inverse_rows(vert)
    }

    /// The correction-kernel part of `INT grad_y W(x, y, t) . g(y) dy`:
    /// everything except the two plain heat terms.
    #[allow(clippy::needless_range_loop)]
    pub fn grad_w_pairing(&self, g1: &ScalarField, g2: &ScalarField) -> ScalarField {
        assert_eq!(g1.grid, self.grid);
        let (n2, m, t) = (self.grid.n2, self.m, self.t);
        let mut rows1 = self.rows_fft(&g1.values);
        self.suffix(&mut rows1);
        let s1_base: Vec<Complex64> = (0..m).map(|k| rows1[k]).collect();
        let vert1 = self.vertical(&rows1, false);
        let mut rows2 = self.rows_fft(&g2.values);
        self.suffix(&mut rows2);
        let vert2 = self.vertical(&rows2, true);
        let mut out = vec![Complex64::new(0.0, 0.0); n2 * m];
        for j in 0..n2 {
            let g0 = gauss1d_unchecked(self.grid.x2(j), t);
            for k in 0..m {
                let xi = self.xi(k);
                let e = (-t * xi * xi).exp();
                let i_xi = Complex64::new(0.0, xi);
                out[j * m + k] = (vert1[j * m + k] * xi.abs() + s1_base[k] * g0) * i_xi * 2.0 * e
                    - vert2[j * m + k] * 2.0 * xi.abs() * e;
            }
        }
        self.inverse_rows(out)
    }
}
