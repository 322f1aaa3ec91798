//! Half-plane heat semigroups and inverse Laplacians by image kernels.
//!
//! Gridded densities evolve spectrally through even/odd extension to the
//! full plane followed by the whole-plane Gaussian multiplier; measure
//! components (atoms, sheets) evolve by direct kernel summation, which is
//! exact for atoms. Inverse Laplacians convolve the logarithmic potential
//! with the image-extended density by FFT; the singular self cell uses the
//! exact cell average of `E`.

use crate::fftutil::{angular_freq, fft_in_place};
use crate::grid::{HalfPlaneGrid, LineSamples, ScalarField};
use crate::kernels::{gauss1d_unchecked, log_potential, Point2};
use crate::line_ops::line_heat;
use crate::measure::VorticityMeasure;
use crate::quad::pairwise_sum;
use crate::{Error, Result};
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, PartialEq)]
enum Parity {
    Even,
    Odd,
}

/// Gaussian filter along one axis of a rectangular array, zero-padded far
/// enough that periodization is negligible for diffusion time `t`.
fn gauss_filter_lines(
    data: &mut [f64],
    count: usize,
    len: usize,
    stride_item: usize,
    stride_in: usize,
    h: f64,
    t: f64,
) {
    let needed = len + ((30.0 * t.sqrt() / h).ceil() as usize).max(len);
    let m = needed.next_power_of_two();
    let mut bufs: Vec<Vec<Complex64>> = (0..count)
        .map(|c| {
            let mut buf = vec![Complex64::new(0.0, 0.0); m];
            for k in 0..len {
                buf[k] = Complex64::new(data[c * stride_item + k * stride_in], 0.0);
            }
            buf
        })
        .collect();
    bufs.par_iter_mut().for_each(|buf| {
        fft_in_place(buf, true);
        for (k, v) in buf.iter_mut().enumerate() {
            let xi = angular_freq(k, m, h);
            *v *= (-t * xi * xi).exp();
        }
        fft_in_place(buf, false);
    });
    for (c, buf) in bufs.iter().enumerate() {
        for k in 0..len {
            data[c * stride_item + k * stride_in] = buf[k].re;
        }
    }
}

fn heat_field(f: &ScalarField, t: f64, parity: Parity) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let g = f.grid;
    let (n1, n2) = (g.n1, g.n2);
    // x1 pass on the original rows
    let mut rows = f.values.clone();
    gauss_filter_lines(&mut rows, n2, n1, n1, 1, g.h1, t);
    // x2 pass on mirror-extended columns
    let ny = 2 * n2 - 1;
    let mut cols = vec![0.0; n1 * ny];
    for jj in 0..ny {
        let js = jj as isize - (n2 as isize - 1);
        let j = js.unsigned_abs();
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => {
                if js < 0 {
                    -1.0
                } else if js == 0 {
                    0.0
                } else {
                    1.0
                }
            }
        };
        for i in 0..n1 {
            cols[i * ny + jj] = sign * rows[j * n1 + i];
        }
    }
    gauss_filter_lines(&mut cols, n1, ny, ny, 1, g.h2, t);
    let mut out = ScalarField::zeros(g);
    for j in 0..n2 {
        for i in 0..n1 {
            out.values[g.idx(i, j)] = cols[i * ny + (n2 - 1 + j)];
        }
    }
    if parity == Parity::Odd {
        for i in 0..n1 {
            out.values[g.idx(i, 0)] = 0.0;
        }
    }
    Ok(out)
}

/// Neumann heat semigroup applied to a gridded density.
pub fn heat_neumann_field(f: &ScalarField, t: f64) -> Result<ScalarField> {
    heat_field(f, t, Parity::Even)
}

/// Dirichlet heat semigroup applied to a gridded density.
pub fn heat_dirichlet_field(f: &ScalarField, t: f64) -> Result<ScalarField> {
    heat_field(f, t, Parity::Odd)
}

fn point_sources(mu: &VorticityMeasure) -> Vec<(Point2, f64)> {
    mu.atoms
        .iter()
        .map(|a| (a.pos, a.kappa))
        .chain(mu.sheet.iter().map(|s| (s.pos, s.weight)))
        .collect()
}

fn heat_kernel_sum(out: &mut ScalarField, sources: &[(Point2, f64)], t: f64, odd: bool) {
    if sources.is_empty() {
        return;
    }
    let g = out.grid;
    let sign = if odd { -1.0 } else { 1.0 };
    let c = 1.0 / (4.0 * PI * t);
    out.values
        .par_chunks_mut(g.n1)
        .enumerate()
        .for_each(|(j, row)| {
            let x2 = g.x2(j);
            for (i, v) in row.iter_mut().enumerate() {
                let x1 = g.x1(i);
                let vals: Vec<f64> = sources
                    .iter()
                    .map(|&(y, w)| {
                        let d1 = x1 - y.x1;
                        let dm = x2 - y.x2;
                        let dp = x2 + y.x2;
                        w * c
                            * ((-(d1 * d1 + dm * dm) / (4.0 * t)).exp()
                                + sign * (-(d1 * d1 + dp * dp) / (4.0 * t)).exp())
                    })
                    .collect();
                *v += pairwise_sum(&vals);
            }
        });
}

fn density_on_grid(d: &ScalarField, grid: HalfPlaneGrid) -> ScalarField {
    if d.grid == grid {
        d.clone()
    } else {
        ScalarField::from_fn(grid, |x1, x2| {
            if d.grid.contains(x1, x2) {
                d.interp(x1, x2).unwrap_or(0.0)
            } else {
                0.0
            }
        })
    }
}

fn boundary_sheet_on_grid(b: &LineSamples, grid: HalfPlaneGrid) -> LineSamples {
    LineSamples::from_fn(grid.x1_min, grid.x1_max, grid.n1, |x| b.interp(x))
}

/// `e^{t Delta_N} mu` on the grid: image sum `Gamma(x-y,t) + Gamma(x-y*,t)`.
pub fn heat_neumann(mu: &VorticityMeasure, grid: HalfPlaneGrid, t: f64) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let mut out = ScalarField::zeros(grid);
    heat_kernel_sum(&mut out, &point_sources(mu), t, false);
    if let Some(d) = &mu.density {
        out.axpy(1.0, &heat_field(&density_on_grid(d, grid), t, Parity::Even)?);
    }
    if let Some(b) = &mu.boundary_sheet {
        // boundary layer evolves into 2 Gamma_0(x2,t) e^{t d1^2} b
        let line = line_heat(&boundary_sheet_on_grid(b, grid), t)?;
        for j in 0..grid.n2 {
            let col = 2.0 * gauss1d_unchecked(grid.x2(j), t);
            for i in 0..grid.n1 {
                out.values[grid.idx(i, j)] += col * line.values[i];
            }
        }
    }
    Ok(out)
}

/// `e^{t Delta_D} mu` on the grid: image sum `Gamma(x-y,t) - Gamma(x-y*,t)`.
/// The odd kernel annihilates the boundary sheet.
pub fn heat_dirichlet(mu: &VorticityMeasure, grid: HalfPlaneGrid, t: f64) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let mut out = ScalarField::zeros(grid);
    heat_kernel_sum(&mut out, &point_sources(mu), t, true);
    if let Some(d) = &mu.density {
        out.axpy(1.0, &heat_field(&density_on_grid(d, grid), t, Parity::Odd)?);
    }
    Ok(out)
}

/// ∫_0^x ∫_0^y ln(u^2 + v^2) du dv, extended oddly to all quadrants.
fn log_sq_primitive(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    let (a, b) = (x.abs(), y.abs());
    let f = a * b * (a * a + b * b).ln() - 3.0 * a * b
        + a * a * (b / a).atan()
        + b * b * (a / b).atan();
    f * x.signum() * y.signum()
}

/// Exact average of `E` over the `h1 x h2` cell centered at displacement
/// `(dx, dy)` from the singularity.
pub(crate) fn cell_avg_e(dx: f64, dy: f64, h1: f64, h2: f64) -> f64 {
    let (a, b) = (0.5 * h1, 0.5 * h2);
    let int_ln = log_sq_primitive(dx + a, dy + b) - log_sq_primitive(dx - a, dy + b)
        - log_sq_primitive(dx + a, dy - b)
        + log_sq_primitive(dx - a, dy - b);
    -int_ln / (4.0 * PI * h1 * h2)
}

/// E(x - y), switching to the exact cell average when the displacement
/// falls inside the hosting cell.
fn e_with_selfcell(dx: f64, dy: f64, h1: f64, h2: f64) -> f64 {
    if dx.abs() <= 0.5 * h1 && dy.abs() <= 0.5 * h2 {
        cell_avg_e(dx, dy, h1, h2)
    } else {
        log_potential(Point2::new(dx, dy)).unwrap()
    }
}

/// Potential of a gridded density against `E` with mirror image of the given
/// parity, by zero-padded FFT convolution. Displacements within two cells of
/// the singularity use exact cell averages of `E`.
fn potential_from_density(d: &ScalarField, odd: bool) -> ScalarField {
    let g = d.grid;
    let (n1, n2) = (g.n1, g.n2);
    let ny = 2 * n2 - 1;
    let px = (2 * n1).next_power_of_two();
    let py = (2 * ny).next_power_of_two();
    let mut src = vec![Complex64::new(0.0, 0.0); px * py];
    for jj in 0..ny {
        let js = jj as isize - (n2 as isize - 1);
        let j = js.unsigned_abs();
        let sign = if odd {
            if js < 0 {
                -1.0
            } else if js == 0 {
                0.0
            } else {
                1.0
            }
        } else {
            1.0
        };
        if sign == 0.0 {
            continue;
        }
        let w2 = if jj == 0 || jj == ny - 1 { 0.5 } else { 1.0 };
        for i in 0..n1 {
            let w1 = if i == 0 || i == n1 - 1 { 0.5 } else { 1.0 };
            src[jj * px + i] = Complex64::new(
                sign * w1 * w2 * g.h1 * g.h2 * d.values[g.idx(i, j)],
                0.0,
            );
        }
    }
    let mut ker = vec![Complex64::new(0.0, 0.0); px * py];
    for dj in -(ny as isize - 1)..=(ny as isize - 1) {
        let wj = dj.rem_euclid(py as isize) as usize;
        for di in -(n1 as isize - 1)..=(n1 as isize - 1) {
            let wi = di.rem_euclid(px as isize) as usize;
            let (dx, dy) = (di as f64 * g.h1, dj as f64 * g.h2);
            let v = if di.abs() <= 2 && dj.abs() <= 2 {
                cell_avg_e(dx, dy, g.h1, g.h2)
            } else {
                log_potential(Point2::new(dx, dy)).unwrap()
            };
            ker[wj * px + wi] = Complex64::new(v, 0.0);
        }
    }
    crate::fftutil::fft2d(&mut src, px, py, true);
    crate::fftutil::fft2d(&mut ker, px, py, true);
    for (s, k) in src.iter_mut().zip(&ker) {
        *s *= k;
    }
    crate::fftutil::fft2d(&mut src, px, py, false);
    let mut out = ScalarField::zeros(g);
    for j in 0..n2 {
        let jj = n2 - 1 + j;
        for i in 0..n1 {
            out.values[g.idx(i, j)] = src[jj * px + i].re;
        }
    }
    out
}

fn laplace_inverse(mu: &VorticityMeasure, grid: HalfPlaneGrid, odd: bool) -> Result<ScalarField> {
    let mut out = ScalarField::zeros(grid);
    let sources = point_sources(mu);
    let sign = if odd { -1.0 } else { 1.0 };
    if !sources.is_empty() {
        out.values
            .par_chunks_mut(grid.n1)
            .enumerate()
            .for_each(|(j, row)| {
                let x2 = grid.x2(j);
                for (i, v) in row.iter_mut().enumerate() {
                    let x1 = grid.x1(i);
                    let vals: Vec<f64> = sources
                        .iter()
                        .map(|&(y, w)| {
                            let direct = e_with_selfcell(x1 - y.x1, x2 - y.x2, grid.h1, grid.h2);
                            let image = log_potential(Point2::new(x1 - y.x1, x2 + y.x2))
                                .unwrap_or_else(|_| cell_avg_e(x1 - y.x1, x2 + y.x2, grid.h1, grid.h2));
                            w * (direct + sign * image)
                        })
                        .collect();
                    *v += pairwise_sum(&vals);
                }
            });
    }
    if let Some(d) = &mu.density {
        out.axpy(1.0, &potential_from_density(&density_on_grid(d, grid), odd));
    }
    if let Some(b) = &mu.boundary_sheet {
        if !odd {
            // Neumann kernel sees the boundary layer as 2 E(x - (y1, 0))
            let line = boundary_sheet_on_grid(b, grid);
            let h = line.h();
            out.values
                .par_chunks_mut(grid.n1)
                .enumerate()
                .for_each(|(j, row)| {
                    let x2 = grid.x2(j);
                    for (i, v) in row.iter_mut().enumerate() {
                        let x1 = grid.x1(i);
                        let vals: Vec<f64> = (0..line.n())
                            .map(|k| {
                                let w = if k == 0 || k == line.n() - 1 { 0.5 } else { 1.0 };
                                let du = x1 - line.x(k);
                                let e = if x2 == 0.0 && du.abs() < 0.5 * h {
                                    // 1-D cell average of E along the line
                                    -((0.5 * h).ln() - 1.0) / (2.0 * PI)
                                } else {
                                    -0.5 * (du * du + x2 * x2).ln() / (2.0 * PI)
                                };
                                2.0 * w * h * line.values[k] * e
                            })
                            .collect();
                        *v += pairwise_sum(&vals);
                    }
                });
        }
    }
    if odd {
        for i in 0..grid.n1 {
            out.values[grid.idx(i, 0)] = 0.0;
        }
    }
    Ok(out)
}

/// Stream function `(-Delta_D)^{-1} mu`: Green-function potential with
/// vanishing boundary trace.
pub fn inv_laplace_dirichlet(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<ScalarField> {
    laplace_inverse(mu, grid, true)
}

/// Neumann potential `(-Delta_N)^{-1} mu` (plus-image kernel).
pub fn inv_laplace_neumann(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<ScalarField> {
    laplace_inverse(mu, grid, false)
}

/// Closed-form half-plane heat evolution of an interior Gaussian blob,
/// used as an independent oracle for the spectral path.
pub mod exact {
    use crate::kernels::gauss1d_unchecked;
    use crate::special::erfc;

    /// One-dimensional half-line heat integral
    /// ∫_0^∞ Gamma_0(p - y, t) Gamma_0(y - q, a) dy.
    fn half_line(p: f64, q: f64, t: f64, a: f64) -> f64 {
        let s = a + t;
        let mu = (a * p + t * q) / s;
        let tau = a * t / s;
        gauss1d_unchecked(p - q, s) * 0.5 * erfc(-mu / (2.0 * tau.sqrt()))
    }

    /// `e^{t Delta_D}` applied to the unit Gaussian `Gamma(. - c, a)`.
    pub fn heat_dirichlet_gaussian(x1: f64, x2: f64, c1: f64, c2: f64, a: f64, t: f64) -> f64 {
        gauss1d_unchecked(x1 - c1, a + t) * (half_line(x2, c2, t, a) - half_line(-x2, c2, t, a))
    }

    /// `e^{t Delta_N}` applied to the unit Gaussian `Gamma(. - c, a)`.
    pub fn heat_neumann_gaussian(x1: f64, x2: f64, c1: f64, c2: f64, a: f64, t: f64) -> f64 {
        gauss1d_unchecked(x1 - c1, a + t) * (half_line(x2, c2, t, a) + half_line(-x2, c2, t, a))
    }
}
