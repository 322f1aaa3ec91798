//! Pointwise evaluation of the vorticity kernel `W(x, y, t)` and the Stokes
//! Green matrix.
//!
//! The singular double integral in the correction kernel is reduced to a
//! single `z2` quadrature of Poisson-semigroup profiles,
//!
//! ```text
//! Wt(x, y, t) = 2 INT_0^{y2} Gamma_0(x2 + z2, t) (e^{(y2-z2)A} A Gamma_0(., t))(x1 - y1) dz2,
//! ```
//!
//! and every profile is a half-line Fourier integral
//! `(1/pi) INT_0^inf xi^m trig(xi r) e^{-s xi - t xi^2} d xi`
//! evaluated by Filon quadrature, which keeps the cost independent of the
//! oscillation rate. The full kernel assembles as
//! `W = Gamma(x-y,t) + Gamma(x-y*,t) + Wt + Wtr` with the boundary-trace
//! part `Wtr = -2 Gamma_0(x2,t) (e^{t d1^2} P_{y2}(. - y1))(x1)`.

use crate::kernels::{gauss1d_unchecked, gauss2d, Point2};
use crate::quad::{filon_cos, filon_sin, simpson_weights};
use crate::vorticity::KernelConfig;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Gaussian support cut: `exp(-CUT)` is treated as zero.
const GAUSS_CUT: f64 = 42.0;

/// Uniform Filon rule on `[0, xi_max]` shared by all profile integrals of
/// one evaluator.
#[derive(Debug, Clone)]
pub(crate) struct XiRule {
    pub h: f64,
    pub n: usize, // odd sample count
}

impl XiRule {
    pub fn build(t: f64, s_max: f64) -> Self {
        let xi_max = (GAUSS_CUT / t).sqrt();
        let feature = s_max + t.sqrt();
        let panels = ((3.0 * xi_max * feature).ceil() as usize).clamp(256, 3072);
        let panels = panels + panels % 2;
        Self { h: xi_max / panels as f64, n: panels + 1 }
    }

    #[inline]
    pub fn xi(&self, k: usize) -> f64 {
        k as f64 * self.h
    }
}

/// Samples of `xi^m e^{-s xi - t xi^2}` on the rule, built by a stable
/// downward recurrence in `s`.
fn profile_samples(rule: &XiRule, t: f64, s: f64, moment: u32) -> Vec<f64> {
    (0..rule.n)
        .map(|k| {
            let xi = rule.xi(k);
            xi.powi(moment as i32) * (-s * xi - t * xi * xi).exp()
        })
        .collect()
}

enum Vertical {
    Gamma0,
    Gamma0Prime,
}

/// Kernel evaluator for a fixed source point `y` and time `t`, with
/// per-row caching of the `z2`-integrated profile vectors so that grid
/// sweeps cost one Filon sum per node.
pub struct WFieldEvaluator {
    pub y: Point2,
    pub t: f64,
    rule: XiRule,
    /// e^{-y2 xi - t xi^2} and xi e^{-y2 xi - t xi^2} (trace-part profiles)
    tr0: Vec<f64>,
    tr1: Vec<f64>,
    /// z2 quadrature nodes/weights on [0, min(y2, cut)]
    z2: Vec<(f64, f64)>,
}

impl WFieldEvaluator {
    pub fn new(y: Point2, t: f64, cfg: &KernelConfig) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidTime(t));
        }
        if y.x2 < 0.0 {
            return Err(Error::OutOfDomain(y.x1, y.x2));
        }
        let rule = XiRule::build(t, y.x2);
        let tr0 = profile_samples(&rule, t, y.x2, 0);
        let tr1 = profile_samples(&rule, t, y.x2, 1);
        // the Gamma_0(x2 + z2, t) factor kills everything past the cut
        let z_hi = y.x2.min(2.0 * (GAUSS_CUT * t).sqrt());
        let z2 = if z_hi <= 0.0 {
            Vec::new()
        } else {
            let n = cfg
                .z2_nodes
                .max((8.0 * z_hi / t.sqrt()).ceil() as usize)
                .min(2048);
            let n = n + n % 2 + 1; // odd sample count for Simpson
            let h = z_hi / (n - 1) as f64;
            let w = simpson_weights(n, h);
            (0..n).map(|k| (k as f64 * h, w[k])).collect()
        };
        Ok(Self { y, t, rule, tr0, tr1, z2 })
    }

    /// `sum_z wz V(x2 + z2) xi^m e^{-(y2 - z2) xi - t xi^2}` for every xi.
    fn row_profile(&self, x2: f64, moment: u32, vertical: Vertical) -> Vec<f64> {
        let mut out = vec![0.0; self.rule.n];
        if self.z2.is_empty() {
            return out;
        }
        let t = self.t;
        let y2 = self.y.x2;
        let dz = self.z2[1].0 - self.z2[0].0;
        for k in 0..self.rule.n {
            let xi = self.rule.xi(k);
            let xim = xi.powi(moment as i32);
            // iterate z2 from the top (smallest s = y2 - z2) downward,
            // multiplying by e^{-dz xi} so every factor stays <= 1
            let mut e = (-(y2 - self.z2.last().unwrap().0) * xi - t * xi * xi).exp();
            let decay = (-dz * xi).exp();
            let mut acc = 0.0;
            for idx in (0..self.z2.len()).rev() {
                let (z2, w) = self.z2[idx];
                let v = match vertical {
                    Vertical::Gamma0 => gauss1d_unchecked(x2 + z2, t),
                    Vertical::Gamma0Prime => {
                        -(x2 + z2) / (2.0 * t) * gauss1d_unchecked(x2 + z2, t)
                    }
                };
                acc += w * v * e;
                e *= decay;
            }
            out[k] = xim * acc;
        }
        out
    }

    /// Filon panel width of the shared rule.
    pub(crate) fn rule_h(&self) -> f64 {
        self.rule.h
    }

    /// Row profile for the plain `Wt` term, exposed for batched sweeps
    /// where many source columns share one source height.
    pub(crate) fn row_profile_gamma0_m1(&self, x2: f64) -> Vec<f64> {
        self.row_profile(x2, 1, Vertical::Gamma0)
    }

    /// Reduced-form `Wt(x, y, t)`.
    pub fn w_tilde(&self, x: Point2) -> f64 {
        if self.z2.is_empty() {
            return 0.0;
        }
        let f = self.row_profile(x.x2, 1, Vertical::Gamma0);
        -(2.0 / PI) * filon_cos(&f, self.rule.h, x.x1 - self.y.x1)
    }

    /// Boundary-trace part `Wtr(x, y, t)`.
    pub fn w_tr(&self, x: Point2) -> f64 {
        let v = filon_cos(&self.tr0, self.rule.h, x.x1 - self.y.x1) / PI;
        -2.0 * gauss1d_unchecked(x.x2, self.t) * v
    }

    /// `W*(x, y, t) = Gamma(x - y*, t) + Wt(x, y, t)`.
    pub fn w_star(&self, x: Point2) -> f64 {
        gauss2d(x.sub(self.y.reflect()), self.t).unwrap() + self.w_tilde(x)
    }

    /// Full kernel `W(x, y, t)`.
    pub fn w(&self, x: Point2) -> f64 {
        gauss2d(x.sub(self.y), self.t).unwrap() + self.w_star(x) + self.w_tr(x)
    }

    /// Gradient of `W` in the source variable, for the Duhamel integrand.
    pub fn grad_y_w(&self, x: Point2) -> (f64, f64) {
        let t = self.t;
        let r = x.x1 - self.y.x1;
        let gd = gauss2d(x.sub(self.y), t).unwrap();
        let gi = gauss2d(x.sub(self.y.reflect()), t).unwrap();
        let mut dy1 = r / (2.0 * t) * (gd + gi);
        let mut dy2 = (x.x2 - self.y.x2) / (2.0 * t) * gd - (x.x2 + self.y.x2) / (2.0 * t) * gi;
        if !self.z2.is_empty() {
            let f2 = self.row_profile(x.x2, 2, Vertical::Gamma0);
            dy1 += -(2.0 / PI) * filon_sin(&f2, self.rule.h, r);
            let fp = self.row_profile(x.x2, 1, Vertical::Gamma0Prime);
            dy2 += -(2.0 / PI) * filon_cos(&fp, self.rule.h, r);
        }
        // trace part d/dy1; its d/dy2 cancels against the Wt boundary term
        dy1 += -(2.0 / PI) * gauss1d_unchecked(x.x2, t) * filon_sin(&self.tr1, self.rule.h, r);
        (dy1, dy2)
    }
}

/// One-shot evaluation of the reduced-form correction kernel.
pub fn kernel_w_tilde(x: Point2, y: Point2, t: f64, cfg: &KernelConfig) -> Result<f64> {
    Ok(WFieldEvaluator::new(y, t, cfg)?.w_tilde(x))
}

/// Kernel components `(W, W*, Wt, Wtr)` at one point.
pub fn kernel_w_parts(x: Point2, y: Point2, t: f64, cfg: &KernelConfig) -> Result<[f64; 4]> {
    let ev = WFieldEvaluator::new(y, t, cfg)?;
    let wt = ev.w_tilde(x);
    let wtr = ev.w_tr(x);
    let gd = gauss2d(x.sub(y), t)?;
    let gi = gauss2d(x.sub(y.reflect()), t)?;
    Ok([gd + gi + wt + wtr, gi + wt, wt, wtr])
}

/// Full kernel `W(x, y, t)` at one point.
pub fn kernel_w(x: Point2, y: Point2, t: f64, cfg: &KernelConfig) -> Result<f64> {
    kernel_w_parts(x, y, t, cfg).map(|p| p[0])
}

/// Stokes Green matrix `G_ij(x, z, t)` (rows `i`, columns `j`).
///
/// `G12 = 0` and `G22 = Gamma(x-z,t) - Gamma(x-z*,t)` exactly; `G11` and
/// `G21` go through the same reduced one-dimensional quadrature as `Wt`,
/// with the roles of source and target exchanged.
pub fn green_matrix(x: Point2, z: Point2, t: f64, cfg: &KernelConfig) -> Result<[[f64; 2]; 2]> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let gd = gauss2d(x.sub(z), t)?;
    let gi = gauss2d(x.sub(z.reflect()), t)?;
    // the w2 integral over (0, x2) matches the Wt structure with the
    // evaluator anchored at the target height
    let ev = WFieldEvaluator::new(Point2::new(0.0, x.x2), t, cfg)?;
    let r = x.x1 - z.x1;
    let (g11_corr, g21) = if ev.z2.is_empty() {
        (0.0, 0.0)
    } else {
        let f1 = ev.row_profile(z.x2, 1, Vertical::Gamma0);
        let c = -2.0 * (-filon_cos(&f1, ev.rule.h, r) / PI);
        let g21 = 2.0 * (-filon_sin(&f1, ev.rule.h, r) / PI);
        (c, g21)
    };
    Ok([[gd - gi + g11_corr, 0.0], [g21, gd - gi]])
}

/// `G*_11(x, z, t)`: the non-heat part of `G11`.
pub fn green_star_11(x: Point2, z: Point2, t: f64, cfg: &KernelConfig) -> Result<f64> {
    let g = green_matrix(x, z, t, cfg)?;
    Ok(g[0][0] - gauss2d(x.sub(z), t)?)
}

/// Decay profile `eta(y2)` controlling the x-integral of `|Wt(., y, 1)|`.
pub fn eta_bound(y2: f64) -> Result<f64> {
    if y2 < 0.0 {
        return Err(Error::NegativeParameter(y2));
    }
    if y2 == 0.0 {
        return Ok(0.0);
    }
    // INT_0^{y2} rho Gamma_0(rho, 1) drho
    let n = 4001;
    let h = y2 / (n - 1) as f64;
    let w = simpson_weights(n, h);
    let mut first = 0.0;
    for k in 0..n {
        let rho = k as f64 * h;
        first += w[k] * rho * gauss1d_unchecked(rho, 1.0);
    }
    // y2 INT_{y2}^inf Gamma_0(rho, 1) drho
    let hi = y2 + 2.0 * GAUSS_CUT.sqrt();
    let h = (hi - y2) / (n - 1) as f64;
    let w = simpson_weights(n, h);
    let mut second = 0.0;
    for k in 0..n {
        let rho = y2 + k as f64 * h;
        second += w[k] * gauss1d_unchecked(rho, 1.0);
    }
    Ok(first + y2 * second)
}
