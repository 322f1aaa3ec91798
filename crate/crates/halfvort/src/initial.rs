//! Named initial vorticity configurations used by the scenario runner and
//! the verification suites.

use crate::grid::{HalfPlaneGrid, ScalarField};
use crate::kernels::{gauss2d, Point2};
use crate::measure::{Atom, SheetSample, VorticityMeasure};
use crate::Result;

/// Single point vortex `kappa * delta_{x0}`.
pub fn point_vortex(kappa: f64, x0: Point2) -> Result<VorticityMeasure> {
    VorticityMeasure::from_atoms(vec![Atom { pos: x0, kappa }])
}

/// Mirror-antisymmetric pair `kappa (delta_{(d, h)} - delta_{(-d, h)})`.
pub fn vortex_pair(kappa: f64, d: f64, height: f64) -> Result<VorticityMeasure> {
    VorticityMeasure::from_atoms(vec![
        Atom { pos: Point2::new(d, height), kappa },
        Atom { pos: Point2::new(-d, height), kappa: -kappa },
    ])
}

/// Vortex sheet on the horizontal segment `x1 in [x1_a, x1_b]` at height
/// `y2`, with constant linear density `gamma`, discretized by arclength-
/// weighted midpoint samples.
pub fn vortex_sheet(
    gamma: f64,
    y2: f64,
    x1_a: f64,
    x1_b: f64,
    samples: usize,
) -> Result<VorticityMeasure> {
    let n = samples.max(2);
    let len = x1_b - x1_a;
    let dw = gamma * len / n as f64;
    let sheet = (0..n)
        .map(|k| SheetSample {
            pos: Point2::new(x1_a + (k as f64 + 0.5) * len / n as f64, y2),
            weight: dw,
        })
        .collect();
    let mu = VorticityMeasure { sheet, ..VorticityMeasure::default() };
    mu.validate()?;
    Ok(mu)
}

/// Gaussian density blob of mass `kappa`, center `c`, variance parameter `a`.
pub fn smooth_blob(kappa: f64, c: Point2, a: f64, grid: HalfPlaneGrid) -> Result<VorticityMeasure> {
    let field = ScalarField::from_fn(grid, |x1, x2| {
        kappa * gauss2d(Point2::new(x1 - c.x1, x2 - c.x2), a).unwrap()
    });
    Ok(VorticityMeasure::from_density(field))
}

/// Compactly supported polynomial bump stream function
/// `psi = A (1 - |x-c|^2/R^2)^10` inside the disc, evaluated pointwise.
/// The polynomial profile keeps cell quadrature of its Laplacian accurate
/// at desk-scale resolutions, unlike the classical exponential bump whose
/// derivative growth near the support edge dominates the trapezoid error.
pub fn dipole_stream(amplitude: f64, c: Point2, radius: f64, x1: f64, x2: f64) -> f64 {
    let s = ((x1 - c.x1).powi(2) + (x2 - c.x2).powi(2)) / (radius * radius);
    if s >= 1.0 {
        0.0
    } else {
        amplitude * (1.0 - s).powi(10)
    }
}

/// Trace-zero initial vorticity `omega_0 = -Delta psi` for the compact bump
/// stream function `psi`. The induced velocity `grad-perp psi` is compactly
/// supported, so the tangential boundary trace vanishes and so does the
/// total mass.
pub fn trace_zero_dipole(
    amplitude: f64,
    c: Point2,
    radius: f64,
    grid: HalfPlaneGrid,
) -> Result<VorticityMeasure> {
    let field = ScalarField::from_fn(grid, |x1, x2| {
        let s = ((x1 - c.x1).powi(2) + (x2 - c.x2).powi(2)) / (radius * radius);
        if s >= 1.0 {
            0.0
        } else {
            40.0 * amplitude / (radius * radius) * (1.0 - s).powi(8) * (1.0 - 10.0 * s)
        }
    });
    Ok(VorticityMeasure::from_density(field))
}
