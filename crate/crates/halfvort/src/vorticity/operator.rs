//! Assembly of the vorticity solution operators `T(t)` and `T_0(t)`.

use crate::biot_savart::boundary_trace;
use crate::grid::{HalfPlaneGrid, LineSamples, ScalarField};
use crate::kernels::{gauss1d_unchecked, gauss2d, Point2};
use crate::line_ops::{hilbert, line_heat};
use crate::measure::VorticityMeasure;
use crate::quad::{filon_cos, pairwise_sum};
use crate::semigroups::{
    heat_dirichlet, heat_neumann, inv_laplace_dirichlet, inv_laplace_neumann,
};
use crate::vorticity::{KernelConfig, StripEngine, WFieldEvaluator};
use crate::{Error, Result};
use rayon::prelude::*;

fn interior_sources(mu: &VorticityMeasure) -> Vec<(Point2, f64)> {
    mu.atoms
        .iter()
        .map(|a| (a.pos, a.kappa))
        .chain(mu.sheet.iter().map(|s| (s.pos, s.weight)))
        .filter(|(p, _)| p.x2 > 0.0)
        .collect()
}

fn add_w_tilde_sources(
    out: &mut ScalarField,
    sources: &[(Point2, f64)],
    t: f64,
    cfg: &KernelConfig,
) -> Result<()> {
    let grid = out.grid;
    for &(y, w) in sources {
        let ev = WFieldEvaluator::new(y, t, cfg)?;
        let rows: Vec<Vec<f64>> = (0..grid.n2)
            .into_par_iter()
            .map(|j| {
                let x2 = grid.x2(j);
                (0..grid.n1)
                    .map(|i| w * ev.w_tilde(Point2::new(grid.x1(i), x2)))
                    .collect()
            })
            .collect();
        for (j, row) in rows.into_iter().enumerate() {
            for i in 0..grid.n1 {
                out.values[grid.idx(i, j)] += row[i];
            }
        }
    }
    Ok(())
}

/// `T(t) mu` through the composite semigroup formula: Neumann heat of the
/// measure, plus the correction kernel, minus the boundary-trace term.
pub fn apply_t_composite(
    mu: &VorticityMeasure,
    t: f64,
    grid: HalfPlaneGrid,
    cfg: &KernelConfig,
) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    cfg.validate()?;
    let mut out = heat_neumann(mu, grid, t)?;
    add_w_tilde_sources(&mut out, &interior_sources(mu), t, cfg)?;
    if let Some(d) = &mu.density {
        let on_grid = if d.grid == grid {
            d.clone()
        } else {
            ScalarField::from_fn(grid, |x1, x2| {
                if d.grid.contains(x1, x2) {
                    d.interp(x1, x2).unwrap_or(0.0)
                } else {
                    0.0
                }
            })
        };
        out.axpy(1.0, &StripEngine::new(grid, t, cfg).wtilde_density(&on_grid));
    }
    subtract_trace_term(&mut out, mu, t, cfg)?;
    Ok(out)
}

fn subtract_trace_term(
    out: &mut ScalarField,
    mu: &VorticityMeasure,
    t: f64,
    cfg: &KernelConfig,
) -> Result<()> {
    // the trace has 1/x^2 tails; evaluate it on a window extended past the
    // grid so that the evolved term is accurate up to the grid edges
    let grid = out.grid;
    let ext = (cfg.tail_extent / grid.h1).ceil() as usize;
    let lo = grid.x1_min - ext as f64 * grid.h1;
    let hi = grid.x1_max + ext as f64 * grid.h1;
    let trace = crate::biot_savart::boundary_trace_window(mu, lo, hi, grid.n1 + 2 * ext)?;
    let evolved = line_heat(&trace, t)?;
    for j in 0..grid.n2 {
        let col = 2.0 * gauss1d_unchecked(grid.x2(j), t);
        for i in 0..grid.n1 {
            out.values[grid.idx(i, j)] -= col * evolved.values[ext + i];
        }
    }
    Ok(())
}

/// `T(t) mu` by direct kernel summation: `sum W(x, y, t) d mu(y)`.
///
/// Atoms and sheet samples use one row-cached evaluator each; a gridded
/// density is summed cell by cell against per-row evaluators, which is the
/// plain quadrature oracle (quadratic in the node count - intended for
/// modest grids, the composite route is the workhorse).
pub fn apply_t_kernel(
    mu: &VorticityMeasure,
    t: f64,
    grid: HalfPlaneGrid,
    cfg: &KernelConfig,
) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    cfg.validate()?;
    mu.validate()?;
    let mut out = ScalarField::zeros(grid);
    // boundary sources (atoms, sheet samples, and the whole boundary sheet)
    // drop out: W(x, y, t) vanishes identically at y2 = 0
    for &(y, w) in &interior_sources(mu) {
        let ev = WFieldEvaluator::new(y, t, cfg)?;
        let rows: Vec<Vec<f64>> = (0..grid.n2)
            .into_par_iter()
            .map(|j| {
                let x2 = grid.x2(j);
                (0..grid.n1)
                    .map(|i| w * ev.w(Point2::new(grid.x1(i), x2)))
                    .collect()
            })
            .collect();
        for (j, row) in rows.into_iter().enumerate() {
            for i in 0..grid.n1 {
                out.values[grid.idx(i, j)] += row[i];
            }
        }
    }
    if let Some(d) = &mu.density {
        let g = d.grid;
        // one evaluator per source row; the x1 offset enters only through
        // the oscillation argument
        let mut evs = Vec::with_capacity(g.n2);
        for jy in 1..g.n2 {
            evs.push(WFieldEvaluator::new(Point2::new(0.0, g.x2(jy)), t, cfg)?);
        }
        let rows: Vec<Vec<f64>> = (0..grid.n2)
            .into_par_iter()
            .map(|j| {
                let x2 = grid.x2(j);
                let mut row = vec![0.0; grid.n1];
                for (jy, ev) in evs.iter().enumerate() {
                    let jy = jy + 1;
                    let y2 = g.x2(jy);
                    let prof = ev.row_profile_gamma0_m1(x2);
                    for i in 0..grid.n1 {
                        let x = Point2::new(grid.x1(i), x2);
                        let vals: Vec<f64> = (0..g.n1)
                            .map(|iy| {
                                let wq = g.node_weight(iy, jy) * d.values[g.idx(iy, jy)];
                                if wq == 0.0 {
                                    return 0.0;
                                }
                                let y = Point2::new(g.x1(iy), y2);
                                let r = x.x1 - y.x1;
                                let gd = gauss2d(x.sub(y), t).unwrap();
                                let gi = gauss2d(x.sub(y.reflect()), t).unwrap();
                                let wt = -(2.0 / std::f64::consts::PI)
                                    * filon_cos(&prof, ev.rule_h(), r);
                                let wtr = ev.w_tr(x_shift(x, y.x1));
                                wq * (gd + gi + wt + wtr)
                            })
                            .collect();
                        row[i] += pairwise_sum(&vals);
                    }
                }
                row
            })
            .collect();
        for (j, row) in rows.into_iter().enumerate() {
            for i in 0..grid.n1 {
                out.values[grid.idx(i, j)] += row[i];
            }
        }
    }
    Ok(out)
}

#[inline]
fn x_shift(x: Point2, y1: f64) -> Point2 {
    Point2::new(x.x1 - y1, x.x2)
}

/// Trace-zero solution operator `T_0(t)` through the Neumann/Dirichlet
/// potential route:
/// `T_0 = e^{t D_D} mu + (H d1 - d2) d2 [ (-D_N)^{-1}(e^{t D_N} - I)
///  - (-D_D)^{-1}(e^{t D_D} - I) ] mu`.
pub fn apply_t0(
    mu: &VorticityMeasure,
    t: f64,
    grid: HalfPlaneGrid,
    cfg: &KernelConfig,
) -> Result<ScalarField> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    cfg.validate()?;
    let heat_n = heat_neumann(mu, grid, t)?;
    let heat_d = heat_dirichlet(mu, grid, t)?;
    let pot_n = {
        let mut p = inv_laplace_neumann(&VorticityMeasure::from_density(heat_n), grid)?;
        p.axpy(-1.0, &inv_laplace_neumann(mu, grid)?);
        p
    };
    let pot_d = {
        let mut p = inv_laplace_dirichlet(&VorticityMeasure::from_density(heat_d.clone()), grid)?;
        p.axpy(-1.0, &inv_laplace_dirichlet(mu, grid)?);
        p
    };
    let mut phi = pot_n;
    phi.axpy(-1.0, &pot_d);
    let g = d2_centered(&phi);
    let mut out = heat_d;
    let d1g = d1_centered(&g);
    let hd1g = hilbert_rows(&d1g)?;
    out.axpy(1.0, &hd1g);
    out.axpy(-1.0, &d2_centered(&g));
    Ok(out)
}

fn d1_centered(f: &ScalarField) -> ScalarField {
    let g = f.grid;
    let mut out = ScalarField::zeros(g);
    for j in 0..g.n2 {
        for i in 0..g.n1 {
            out.values[g.idx(i, j)] = if i == 0 {
                (-3.0 * f.at(0, j) + 4.0 * f.at(1, j) - f.at(2, j)) / (2.0 * g.h1)
            } else if i == g.n1 - 1 {
                (3.0 * f.at(i, j) - 4.0 * f.at(i - 1, j) + f.at(i - 2, j)) / (2.0 * g.h1)
            } else {
                (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.h1)
            };
        }
    }
    out
}

fn d2_centered(f: &ScalarField) -> ScalarField {
    let g = f.grid;
    let mut out = ScalarField::zeros(g);
    for j in 0..g.n2 {
        for i in 0..g.n1 {
            out.values[g.idx(i, j)] = if j == 0 {
                (-3.0 * f.at(i, 0) + 4.0 * f.at(i, 1) - f.at(i, 2)) / (2.0 * g.h2)
            } else if j == g.n2 - 1 {
                (3.0 * f.at(i, j) - 4.0 * f.at(i, j - 1) + f.at(i, j - 2)) / (2.0 * g.h2)
            } else {
                (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * g.h2)
            };
        }
    }
    out
}

fn hilbert_rows(f: &ScalarField) -> Result<ScalarField> {
    let g = f.grid;
    let mut out = ScalarField::zeros(g);
    for j in 0..g.n2 {
        let row = LineSamples {
            x1_min: g.x1_min,
            x1_max: g.x1_max,
            values: f.values[j * g.n1..(j + 1) * g.n1].to_vec(),
        };
        let h = hilbert(&row)?;
        out.values[j * g.n1..(j + 1) * g.n1].copy_from_slice(&h.values);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{integrate_field, lq_norm};
    use crate::initial::{point_vortex, smooth_blob, trace_zero_dipole};
    use crate::line_ops::apply_a;
    use crate::measure::measure_pairing;
    use crate::vorticity::kernel_w;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    #[test]
    fn kernel_path_reproduces_pointwise_kernel_for_atom() {
        let grid = HalfPlaneGrid::symmetric(4.0, 4.0, 49, 33).unwrap();
        let kappa = 0.8;
        let y = Point2::new(0.3, 1.0);
        let mu = point_vortex(kappa, y).unwrap();
        let t = 0.5;
        let field = apply_t_kernel(&mu, t, grid, &cfg()).unwrap();
        for &(i, j) in &[(10usize, 5usize), (24, 16), (40, 30), (24, 0)] {
            let x = Point2::new(grid.x1(i), grid.x2(j));
            let want = kappa * kernel_w(x, y, t, &cfg()).unwrap();
            assert!((field.at(i, j) - want).abs() <= 1e-12 * want.abs().max(1e-12));
        }
        assert!(apply_t_kernel(&mu, 0.0, grid, &cfg()).is_err());
    }

    #[test]
    fn kernel_path_linear_and_scaling() {
        let grid = HalfPlaneGrid::symmetric(4.0, 4.0, 49, 33).unwrap();
        let mu1 = point_vortex(0.5, Point2::new(0.3, 1.0)).unwrap();
        let mu2 = point_vortex(-0.25, Point2::new(-0.7, 0.6)).unwrap();
        let mut both = mu1.clone();
        both.atoms.extend(mu2.atoms.iter().copied());
        let t = 0.4;
        let fa = apply_t_kernel(&mu1, t, grid, &cfg()).unwrap();
        let fb = apply_t_kernel(&mu2, t, grid, &cfg()).unwrap();
        let fboth = apply_t_kernel(&both, t, grid, &cfg()).unwrap();
        for k in 0..grid.len() {
            assert!((fboth.values[k] - fa.values[k] - fb.values[k]).abs() <= 1e-13);
        }

        // the output field inherits the kernel scaling law
        let lam = 2.0;
        let grid_s = HalfPlaneGrid::symmetric(8.0, 8.0, 49, 33).unwrap();
        let mu_s = point_vortex(0.5, Point2::new(lam * 0.3, lam * 1.0)).unwrap();
        let fs = apply_t_kernel(&mu_s, lam * lam * t, grid_s, &cfg()).unwrap();
        for &(i, j) in &[(10usize, 5usize), (30, 20)] {
            // grid_s nodes sit at lam * (grid nodes)
            let want = fa.at(i, j) / (lam * lam);
            assert!((fs.at(i, j) - want).abs() <= 1e-6 * want.abs().max(1e-9));
        }
    }

    #[test]
    fn kernel_and_composite_agree_for_atom() {
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 129, 65).unwrap();
        let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
        let t = 0.25;
        let a = apply_t_kernel(&mu, t, grid, &cfg()).unwrap();
        let b = apply_t_composite(&mu, t, grid, &cfg()).unwrap();
        let sup = lq_norm(&a, f64::INFINITY).unwrap();
        let mut worst = 0.0_f64;
        for k in 0..grid.len() {
            worst = worst.max((a.values[k] - b.values[k]).abs());
        }
        assert!(worst <= 1e-3 * sup, "{} vs sup {}", worst, sup);
    }

    #[test]
    fn kernel_and_composite_agree_for_density() {
        let grid = HalfPlaneGrid::symmetric(5.0, 5.0, 49, 33).unwrap();
        let mu = smooth_blob(1.0, Point2::new(0.2, 1.5), 0.16, grid).unwrap();
        let t = 0.3;
        let a = apply_t_kernel(&mu, t, grid, &cfg()).unwrap();
        let b = apply_t_composite(&mu, t, grid, &cfg()).unwrap();
        let sup = lq_norm(&a, f64::INFINITY).unwrap();
        let mut worst = 0.0_f64;
        for k in 0..grid.len() {
            worst = worst.max((a.values[k] - b.values[k]).abs());
        }
        assert!(worst <= 1e-3 * sup, "{} vs sup {}", worst, sup);
    }

    #[test]
    fn boundary_condition_of_composite() {
        // (d2 - A) T(t) omega_0 -> 0 at the boundary
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 257, 129).unwrap();
        let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
        let t = 0.25;
        let field = apply_t_composite(&mu, t, grid, &cfg()).unwrap();
        let scale = lq_norm(&field, f64::INFINITY).unwrap() / t.sqrt();
        let d2 = d2_centered(&field).boundary_row();
        let a_row = apply_a(&field.boundary_row()).unwrap();
        let mut worst = 0.0_f64;
        for i in 0..grid.n1 {
            if grid.x1(i).abs() <= 4.0 {
                worst = worst.max((d2.values[i] - a_row.values[i]).abs());
            }
        }
        assert!(worst <= 1e-3 * scale, "{worst} vs scale {scale}");
    }

    #[test]
    fn semigroup_law_through_density_embedding() {
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 257, 129).unwrap();
        let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
        let half = apply_t_composite(&mu, 0.25, grid, &cfg()).unwrap();
        let two_step =
            apply_t_composite(&VorticityMeasure::from_density(half), 0.25, grid, &cfg()).unwrap();
        let one_step = apply_t_composite(&mu, 0.5, grid, &cfg()).unwrap();
        let mut diff = two_step.clone();
        diff.axpy(-1.0, &one_step);
        let err = lq_norm(&diff.map(f64::abs), 1.0).unwrap();
        assert!(err <= 1e-3, "{err}");
    }

    #[test]
    fn vague_convergence_to_normalized_measure() {
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 257, 129).unwrap();
        let mu = point_vortex(1.0, Point2::new(0.0, 1.0)).unwrap();
        let phi = ScalarField::from_fn(grid, |x1, x2| {
            (-(x1 * x1 + (x2 - 1.0) * (x2 - 1.0)) / 8.0).exp()
        });
        // limit pairing: <mu, phi> - INT u1(., 0) phi(., 0)
        let trace = boundary_trace(&mu, grid).unwrap();
        let trace_phi = LineSamples {
            x1_min: trace.x1_min,
            x1_max: trace.x1_max,
            values: (0..trace.n())
                .map(|i| trace.values[i] * phi.at(i, 0))
                .collect(),
        };
        let limit = measure_pairing(&mu, &phi).unwrap() - trace_phi.integrate();
        let err_at = |t: f64| {
            let field = apply_t_composite(&mu, t, grid, &cfg()).unwrap();
            let mut prod = field.clone();
            for (v, p) in prod.values.iter_mut().zip(&phi.values) {
                *v *= p;
            }
            (integrate_field(&prod).unwrap() - limit).abs()
        };
        let (e4, e1) = (err_at(0.04), err_at(0.01));
        assert!(e1 < e4, "pairing error not decreasing: {e4} then {e1}");
    }

    #[test]
    fn t0_agrees_with_t_on_trace_zero_data() {
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 257, 129).unwrap();
        let mu = trace_zero_dipole(1.0, Point2::new(0.0, 3.0), 2.0, grid).unwrap();
        let t = 0.25;
        let t0 = apply_t0(&mu, t, grid, &cfg()).unwrap();
        let tc = apply_t_composite(&mu, t, grid, &cfg()).unwrap();
        let norm = lq_norm(mu.density.as_ref().unwrap(), 1.0).unwrap();
        let mut diff = t0.clone();
        diff.axpy(-1.0, &tc);
        let err = lq_norm(&diff, 1.0).unwrap();
        assert!(err <= 1e-3 * norm, "{err} vs {norm}");
    }

    #[test]
    fn t0_converges_to_initial_data_in_l1() {
        let grid = HalfPlaneGrid::symmetric(8.0, 8.0, 193, 97).unwrap();
        let mu = trace_zero_dipole(1.0, Point2::new(0.0, 3.0), 2.0, grid).unwrap();
        let omega0 = mu.density.as_ref().unwrap();
        let err_at = |t: f64| {
            let mut diff = apply_t0(&mu, t, grid, &cfg()).unwrap();
            diff.axpy(-1.0, omega0);
            lq_norm(&diff, 1.0).unwrap()
        };
        let (e4, e1) = (err_at(0.04), err_at(0.01));
        assert!(e1 < e4, "{e4} then {e1}");
    }

    #[test]
    fn zero_measure_maps_to_zero() {
        let grid = HalfPlaneGrid::symmetric(4.0, 4.0, 49, 33).unwrap();
        let out = apply_t0(&VorticityMeasure::empty(), 0.5, grid, &cfg()).unwrap();
        assert!(out.values.iter().all(|&v| v.abs() < 1e-14));
        let out = apply_t_composite(&VorticityMeasure::empty(), 0.5, grid, &cfg()).unwrap();
        assert!(out.values.iter().all(|&v| v.abs() < 1e-14));
    }
}
