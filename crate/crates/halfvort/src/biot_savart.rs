//! The velocity-from-vorticity operator `K`, the tangential boundary trace
//! `T_1`, and the measure normalization that subtracts the boundary layer.
//!
//! Atoms and sheet samples contribute through the exact kernel
//! `grad-perp D`; gridded densities go through the stream function
//! `psi = (-Delta_D)^{-1} rho` followed by a centered-difference curl, which
//! makes the interior divergence of the output vanish identically. Sources
//! on the boundary line itself induce no velocity.

use crate::grid::{HalfPlaneGrid, LineSamples, ScalarField, VectorField};
use crate::kernels::{biot_savart_kernel, poisson_p, Point2, EPS_SINGULAR};
use crate::measure::VorticityMeasure;
use crate::quad::pairwise_sum;
use crate::semigroups::inv_laplace_dirichlet;
use crate::Result;
use rayon::prelude::*;

/// Velocity field together with the nodes where a singular self
/// contribution had to be excluded.
#[derive(Debug, Clone)]
pub struct Velocity {
    pub field: VectorField,
    pub singular_nodes: Vec<usize>,
}

/// Centered-difference perpendicular gradient of a stream function
/// (second-order one-sided stencils on the edges).
pub(crate) fn curl_from_stream(psi: &ScalarField) -> VectorField {
    let g = psi.grid;
    let mut u = VectorField::zeros(g);
    for j in 0..g.n2 {
        for i in 0..g.n1 {
            let k = g.idx(i, j);
            // u1 = d psi / d x2
            u.u1[k] = if j == 0 {
                (-3.0 * psi.at(i, 0) + 4.0 * psi.at(i, 1) - psi.at(i, 2)) / (2.0 * g.h2)
            } else if j == g.n2 - 1 {
                (3.0 * psi.at(i, j) - 4.0 * psi.at(i, j - 1) + psi.at(i, j - 2)) / (2.0 * g.h2)
            } else {
                (psi.at(i, j + 1) - psi.at(i, j - 1)) / (2.0 * g.h2)
            };
            // u2 = -d psi / d x1
            u.u2[k] = if i == 0 {
                -(-3.0 * psi.at(0, j) + 4.0 * psi.at(1, j) - psi.at(2, j)) / (2.0 * g.h1)
            } else if i == g.n1 - 1 {
                -(3.0 * psi.at(i, j) - 4.0 * psi.at(i - 1, j) + psi.at(i - 2, j)) / (2.0 * g.h1)
            } else {
                -(psi.at(i + 1, j) - psi.at(i - 1, j)) / (2.0 * g.h1)
            };
        }
    }
    u
}

/// The Biot-Savart operator `K mu` sampled on the grid.
pub fn velocity_from_measure(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<Velocity> {
    mu.validate()?;
    let mut field = VectorField::zeros(grid);
    let mut singular_nodes = Vec::new();

    // density part through the stream function; interior divergence is then
    // identically zero because the mixed centered differences commute
    if let Some(d) = &mu.density {
        let density_only = VorticityMeasure { density: Some(d.clone()), ..Default::default() };
        let psi = inv_laplace_dirichlet(&density_only, grid)?;
        let ud = curl_from_stream(&psi);
        for k in 0..grid.len() {
            field.u1[k] += ud.u1[k];
            field.u2[k] += ud.u2[k];
        }
    }

    let sources: Vec<(Point2, f64)> = mu
        .atoms
        .iter()
        .map(|a| (a.pos, a.kappa))
        .chain(mu.sheet.iter().map(|s| (s.pos, s.weight)))
        .collect();
    if !sources.is_empty() {
        let near = 0.5 * grid.h1.min(grid.h2);
        let rows: Vec<(Vec<f64>, Vec<f64>, Vec<usize>)> = (0..grid.n2)
            .into_par_iter()
            .map(|j| {
                let x2 = grid.x2(j);
                let mut r1 = vec![0.0; grid.n1];
                let mut r2 = vec![0.0; grid.n1];
                let mut flags = Vec::new();
                for i in 0..grid.n1 {
                    let x = Point2::new(grid.x1(i), x2);
                    let mut v1 = Vec::with_capacity(sources.len());
                    let mut v2 = Vec::with_capacity(sources.len());
                    for &(y, w) in &sources {
                        if y.x2 == 0.0 {
                            continue; // kernel vanishes for boundary sources
                        }
                        let dist = x.sub(y).norm_sq().sqrt();
                        if dist < EPS_SINGULAR.max(1e-12) {
                            // exclude the singular self term, keep the image
                            let ds = x.sub(y.reflect());
                            let rs2 = ds.norm_sq();
                            let c = 1.0 / (2.0 * std::f64::consts::PI);
                            v1.push(w * c * (ds.x2 / rs2));
                            v2.push(w * c * (-ds.x1 / rs2));
                            flags.push(grid.idx(i, j));
                        } else if dist < near {
                            // near a sheet sample the odd direct part
                            // averages to zero over the hosting cell
                            let ds = x.sub(y.reflect());
                            let rs2 = ds.norm_sq();
                            let c = 1.0 / (2.0 * std::f64::consts::PI);
                            v1.push(w * c * (ds.x2 / rs2));
                            v2.push(w * c * (-ds.x1 / rs2));
                        } else {
                            let (k1, k2) = biot_savart_kernel(x, y).expect("checked distance");
                            v1.push(w * k1);
                            v2.push(w * k2);
                        }
                    }
                    r1[i] = pairwise_sum(&v1);
                    r2[i] = pairwise_sum(&v2);
                }
                (r1, r2, flags)
            })
            .collect();
        for (j, (r1, r2, flags)) in rows.into_iter().enumerate() {
            for i in 0..grid.n1 {
                let k = grid.idx(i, j);
                field.u1[k] += r1[i];
                field.u2[k] += r2[i];
            }
            singular_nodes.extend(flags);
        }
    }
    Ok(Velocity { field, singular_nodes })
}

/// Convenience wrapper returning just the field.
pub fn velocity_field(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<VectorField> {
    velocity_from_measure(mu, grid).map(|v| v.field)
}

/// Tangential boundary trace `T_1 mu (x1) = u^1(x1, 0)` on a line window.
///
/// Interior components average against the Poisson kernel `P_{y2}`; the
/// boundary sheet enters through the `y2 -> 0` limit of that average, i.e.
/// as its own density. With that convention the trace of a normalized
/// measure vanishes.
pub fn boundary_trace_window(
    mu: &VorticityMeasure,
    x1_min: f64,
    x1_max: f64,
    n: usize,
) -> Result<LineSamples> {
    mu.validate()?;
    let mut out = LineSamples::from_fn(x1_min, x1_max, n, |_| 0.0);
    let sources: Vec<(Point2, f64)> = mu
        .atoms
        .iter()
        .map(|a| (a.pos, a.kappa))
        .chain(mu.sheet.iter().map(|s| (s.pos, s.weight)))
        .collect();
    for i in 0..n {
        let x1 = out.x(i);
        let vals: Vec<f64> = sources
            .iter()
            .filter(|(y, _)| y.x2 > 0.0)
            .map(|&(y, w)| w * poisson_p(x1 - y.x1, y.x2).unwrap())
            .collect();
        out.values[i] = pairwise_sum(&vals);
    }
    if let Some(d) = &mu.density {
        // evaluate each row's Poisson average spectrally: the kernel width
        // is the row height, which the grid cannot resolve for the lowest
        // rows, while the multiplier e^{-y2 |xi|} is exact on the
        // interpolant at every height
        let g = d.grid;
        let rows: Vec<LineSamples> = (1..g.n2)
            .into_par_iter()
            .map(|j| {
                let w2 = if j == g.n2 - 1 { 0.5 } else { 1.0 } * g.h2;
                let row = LineSamples::from_fn(x1_min, x1_max, n, |x| {
                    if g.contains(x, 0.0) {
                        d.interp(x, g.x2(j)).unwrap_or(0.0) * w2
                    } else {
                        0.0
                    }
                });
                crate::line_ops::poisson_semigroup(&row, g.x2(j)).expect("resolution checked")
            })
            .collect();
        for i in 0..n {
            out.values[i] += pairwise_sum(&rows.iter().map(|r| r.values[i]).collect::<Vec<_>>());
        }
    }
    if let Some(b) = &mu.boundary_sheet {
        for i in 0..n {
            out.values[i] += b.interp(out.x(i));
        }
    }
    Ok(out)
}

/// Boundary trace on the grid's own boundary row.
pub fn boundary_trace(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<LineSamples> {
    boundary_trace_window(mu, grid.x1_min, grid.x1_max, grid.n1)
}

/// Normalization `mu - delta_{x2=0} T_1 mu`: subtracts the full boundary
/// trace from the boundary sheet, after which the trace vanishes and the
/// induced velocity is unchanged.
pub fn normalize_measure(mu: &VorticityMeasure, grid: HalfPlaneGrid) -> Result<VorticityMeasure> {
    let trace = boundary_trace(mu, grid)?;
    let mut out = mu.clone();
    let mut sheet = match &mu.boundary_sheet {
        Some(b) => boundary_sheet_resampled(b, &trace),
        None => LineSamples::zeros_like(&trace),
    };
    for i in 0..sheet.values.len() {
        sheet.values[i] -= trace.values[i];
    }
    out.boundary_sheet = Some(sheet);
    Ok(out)
}

fn boundary_sheet_resampled(b: &LineSamples, like: &LineSamples) -> LineSamples {
    LineSamples::from_fn(like.x1_min, like.x1_max, like.values.len(), |x| b.interp(x))
}
