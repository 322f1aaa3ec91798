//! Grids, sampled fields, boundary-line samples and time meshes.

use crate::quad::{pairwise_sum, pairwise_sum_by};
use crate::{Error, Result};

/// Uniform truncation of the closed half plane to
/// `[x1_min, x1_max] x [0, x2_max]`. The boundary row `x2 = 0` is part of
/// the node set. Nodes are indexed row-major with `x1` fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneGrid {
    pub x1_min: f64,
    pub x1_max: f64,
    pub x2_max: f64,
    pub n1: usize,
    pub n2: usize,
    pub h1: f64,
    pub h2: f64,
}

impl HalfPlaneGrid {
    pub fn new(x1_min: f64, x1_max: f64, x2_max: f64, n1: usize, n2: usize) -> Result<Self> {
        if !(x1_min < x1_max) || !(x2_max > 0.0) {
            return Err(Error::Config(format!(
                "degenerate extent [{x1_min}, {x1_max}] x [0, {x2_max}]"
            )));
        }
        if n1 < 4 || n2 < 4 {
            return Err(Error::Config(format!("node counts too small: {n1} x {n2}")));
        }
        Ok(Self {
            x1_min,
            x1_max,
            x2_max,
            n1,
            n2,
            h1: (x1_max - x1_min) / (n1 - 1) as f64,
            h2: x2_max / (n2 - 1) as f64,
        })
    }

    /// Symmetric grid `[-l1, l1] x [0, l2]`.
    pub fn symmetric(l1: f64, l2: f64, n1: usize, n2: usize) -> Result<Self> {
        Self::new(-l1, l1, l2, n1, n2)
    }

    #[inline]
    pub fn x1(&self, i: usize) -> f64 {
        self.x1_min + i as f64 * self.h1
    }

    #[inline]
    pub fn x2(&self, j: usize) -> f64 {
        j as f64 * self.h2
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n1 + i
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x1: f64, x2: f64) -> bool {
        x1 >= self.x1_min - 1e-12 && x1 <= self.x1_max + 1e-12 && x2 >= -1e-12 && x2 <= self.x2_max + 1e-12
    }

    /// Trapezoidal cell weight of node `(i, j)` (area measure).
    #[inline]
    pub fn node_weight(&self, i: usize, j: usize) -> f64 {
        let w1 = if i == 0 || i == self.n1 - 1 { 0.5 } else { 1.0 };
        let w2 = if j == 0 || j == self.n2 - 1 { 0.5 } else { 1.0 };
        w1 * w2 * self.h1 * self.h2
    }
}

/// Scalar samples on a [`HalfPlaneGrid`].
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: HalfPlaneGrid,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: HalfPlaneGrid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    pub fn from_fn(grid: HalfPlaneGrid, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = vec![0.0; grid.len()];
        for j in 0..grid.n2 {
            let x2 = grid.x2(j);
            for i in 0..grid.n1 {
                values[grid.idx(i, j)] = f(grid.x1(i), x2);
            }
        }
        Self { grid, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    /// Bilinear interpolation at an interior point.
    pub fn interp(&self, x1: f64, x2: f64) -> Result<f64> {
        let g = &self.grid;
        if !g.contains(x1, x2) {
            return Err(Error::OutOfDomain(x1, x2));
        }
        let s = ((x1 - g.x1_min) / g.h1).clamp(0.0, (g.n1 - 1) as f64);
        let t = (x2 / g.h2).clamp(0.0, (g.n2 - 1) as f64);
        let i = (s as usize).min(g.n1 - 2);
        let j = (t as usize).min(g.n2 - 2);
        let a = s - i as f64;
        let b = t - j as f64;
        Ok((1.0 - a) * (1.0 - b) * self.at(i, j)
            + a * (1.0 - b) * self.at(i + 1, j)
            + (1.0 - a) * b * self.at(i, j + 1)
            + a * b * self.at(i + 1, j + 1))
    }

    /// Samples on the boundary row `x2 = 0` as line data.
    pub fn boundary_row(&self) -> LineSamples {
        LineSamples {
            x1_min: self.grid.x1_min,
            x1_max: self.grid.x1_max,
            values: self.values[..self.grid.n1].to_vec(),
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn axpy(&mut self, a: f64, other: &ScalarField) {
        assert_eq!(self.grid, other.grid);
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            *v += a * w;
        }
    }
}

/// Trapezoidal integral of a field over the truncated half plane.
pub fn integrate_field(f: &ScalarField) -> Result<f64> {
    if f.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("integrate_field"));
    }
    let g = &f.grid;
    Ok(pairwise_sum_by(g.n2, &|j| {
        let w2 = if j == 0 || j == g.n2 - 1 { 0.5 } else { 1.0 };
        let row = pairwise_sum_by(g.n1, &|i| {
            let w1 = if i == 0 || i == g.n1 - 1 { 0.5 } else { 1.0 };
            w1 * f.values[g.idx(i, j)]
        });
        w2 * row
    }) * g.h1 * g.h2)
}

/// `L^q` norm by cell quadrature, `q` in `[1, inf]`.
pub fn lq_norm(f: &ScalarField, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::InvalidExponent(q));
    }
    if f.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("lq_norm"));
    }
    if q.is_infinite() {
        return Ok(f.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
    }
    let g = &f.grid;
    let total = pairwise_sum_by(g.n2, &|j| {
        let w2 = if j == 0 || j == g.n2 - 1 { 0.5 } else { 1.0 };
        let row = pairwise_sum_by(g.n1, &|i| {
            let w1 = if i == 0 || i == g.n1 - 1 { 0.5 } else { 1.0 };
            w1 * f.values[g.idx(i, j)].abs().powf(q)
        });
        w2 * row
    }) * g.h1 * g.h2;
    Ok(total.powf(1.0 / q))
}

/// Weak `L^p` quasinorm `sup_t t^{1/p} f*(t)` through the discrete
/// decreasing rearrangement of cell values weighted by cell area.
pub fn weak_lp_quasinorm(f: &ScalarField, p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    if f.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("weak_lp_quasinorm"));
    }
    let g = &f.grid;
    let mut cells: Vec<(f64, f64)> = Vec::with_capacity(g.len());
    for j in 0..g.n2 {
        for i in 0..g.n1 {
            cells.push((f.values[g.idx(i, j)].abs(), g.node_weight(i, j)));
        }
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut area = 0.0;
    let mut best = 0.0_f64;
    for (v, a) in cells {
        if v == 0.0 {
            break;
        }
        area += a;
        best = best.max(area.powf(1.0 / p) * v);
    }
    Ok(best)
}

/// Velocity samples on a [`HalfPlaneGrid`].
#[derive(Debug, Clone)]
pub struct VectorField {
    pub grid: HalfPlaneGrid,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
}

impl VectorField {
    pub fn zeros(grid: HalfPlaneGrid) -> Self {
        Self { grid, u1: vec![0.0; grid.len()], u2: vec![0.0; grid.len()] }
    }

    pub fn component(&self, c: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: if c == 0 { self.u1.clone() } else { self.u2.clone() },
        }
    }

    /// Centered-difference divergence at an interior node.
    pub fn divergence_at(&self, i: usize, j: usize) -> f64 {
        let g = &self.grid;
        debug_assert!(i > 0 && i + 1 < g.n1 && j > 0 && j + 1 < g.n2);
        (self.u1[g.idx(i + 1, j)] - self.u1[g.idx(i - 1, j)]) / (2.0 * g.h1)
            + (self.u2[g.idx(i, j + 1)] - self.u2[g.idx(i, j - 1)]) / (2.0 * g.h2)
    }
}

/// Uniform samples of a function on a boundary-line window.
#[derive(Debug, Clone)]
pub struct LineSamples {
    pub x1_min: f64,
    pub x1_max: f64,
    pub values: Vec<f64>,
}

impl LineSamples {
    pub fn from_fn(x1_min: f64, x1_max: f64, n: usize, mut f: impl FnMut(f64) -> f64) -> Self {
        let h = (x1_max - x1_min) / (n - 1) as f64;
        Self {
            x1_min,
            x1_max,
            values: (0..n).map(|i| f(x1_min + i as f64 * h)).collect(),
        }
    }

    pub fn zeros_like(other: &LineSamples) -> Self {
        Self { x1_min: other.x1_min, x1_max: other.x1_max, values: vec![0.0; other.values.len()] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn h(&self) -> f64 {
        (self.x1_max - self.x1_min) / (self.n() - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x1_min + i as f64 * self.h()
    }

    /// Trapezoidal integral over the window.
    pub fn integrate(&self) -> f64 {
        let n = self.n();
        let h = self.h();
        h * (pairwise_sum(&self.values) - 0.5 * (self.values[0] + self.values[n - 1]))
    }

    /// Linear interpolation; zero outside the window.
    pub fn interp(&self, x: f64) -> f64 {
        if x < self.x1_min || x > self.x1_max {
            return 0.0;
        }
        let s = (x - self.x1_min) / self.h();
        let i = (s as usize).min(self.n() - 2);
        let a = s - i as f64;
        (1.0 - a) * self.values[i] + a * self.values[i + 1]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// Graded quadrature nodes for the singular Duhamel integral on `(0, t_end)`.
///
/// Nodes are images of uniform midpoints under `s = t_end sin^2(pi θ / 2)`,
/// which clusters them at both endpoints; weights are the exact cell images,
/// so they sum to `t_end` by telescoping.
#[derive(Debug, Clone)]
pub struct TimeMesh {
    pub t_end: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl TimeMesh {
    pub fn graded(t_end: f64, n: usize) -> Result<Self> {
        if !(t_end > 0.0) {
            return Err(Error::InvalidTime(t_end));
        }
        if n < 2 {
            return Err(Error::Config(format!("time mesh needs at least 2 nodes, got {n}")));
        }
        let map = |theta: f64| {
            let s = (std::f64::consts::FRAC_PI_2 * theta).sin();
            t_end * s * s
        };
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            let lo = map(k as f64 / n as f64);
            let hi = map((k + 1) as f64 / n as f64);
            nodes.push(map((k as f64 + 0.5) / n as f64));
            weights.push(hi - lo);
        }
        Ok(Self { t_end, nodes, weights })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }
}
