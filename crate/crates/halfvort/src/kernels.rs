//! Closed-form pointwise kernels: heat kernels, the logarithmic potential
//! and its derivatives, Poisson kernels, and the Dirichlet Green function
//! of the half plane with its perpendicular gradient (the Biot-Savart
//! kernel).

use crate::{Error, Result};
use std::f64::consts::PI;

/// Distance below which kernel evaluations are treated as singular.
pub const EPS_SINGULAR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    /// Mirror image across the boundary line.
    pub fn reflect(self) -> Self {
        Self { x1: self.x1, x2: -self.x2 }
    }

    pub fn sub(self, o: Point2) -> Self {
        Self { x1: self.x1 - o.x1, x2: self.x2 - o.x2 }
    }

    pub fn norm_sq(self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2
    }
}

/// Two-dimensional heat kernel `(4 pi t)^{-1} exp(-|x|^2 / 4t)`.
pub fn gauss2d(x: Point2, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    Ok((-x.norm_sq() / (4.0 * t)).exp() / (4.0 * PI * t))
}

/// One-dimensional heat kernel `(4 pi t)^{-1/2} exp(-r^2 / 4t)`.
pub fn gauss1d(r: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    Ok((-r * r / (4.0 * t)).exp() / (4.0 * PI * t).sqrt())
}

#[inline]
pub(crate) fn gauss1d_unchecked(r: f64, t: f64) -> f64 {
    (-r * r / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

/// Logarithmic potential `E(x) = -(1/2 pi) log |x|`.
pub fn log_potential(x: Point2) -> Result<f64> {
    let r2 = x.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.sqrt()));
    }
    Ok(-r2.ln() / (4.0 * PI))
}

/// Gradient of the logarithmic potential, `grad E = -x / (2 pi |x|^2)`.
pub fn grad_e(x: Point2) -> Result<(f64, f64)> {
    let r2 = x.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.sqrt()));
    }
    let c = -1.0 / (2.0 * PI * r2);
    Ok((c * x.x1, c * x.x2))
}

/// `d^2 E / d x1^2 = -(x2^2 - x1^2) / (2 pi |x|^4)`.
pub fn d11_e(x: Point2) -> Result<f64> {
    let r2 = x.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.sqrt()));
    }
    Ok(-(x.x2 * x.x2 - x.x1 * x.x1) / (2.0 * PI * r2 * r2))
}

/// `d^2 E / d x2^2` (the negative of [`d11_e`] away from the origin).
pub fn d22_e(x: Point2) -> Result<f64> {
    d11_e(x).map(|v| -v)
}

/// `d^2 E / d x1 d x2 = x1 x2 / (pi |x|^4)`.
pub fn d12_e(x: Point2) -> Result<f64> {
    let r2 = x.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.sqrt()));
    }
    Ok(x.x1 * x.x2 / (PI * r2 * r2))
}

/// Poisson kernel `P_s(x1) = s / (pi (x1^2 + s^2))`.
pub fn poisson_p(x1: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::NegativeParameter(s));
    }
    Ok(s / (PI * (x1 * x1 + s * s)))
}

/// Conjugate Poisson kernel `Q_s(x1) = x1 / (pi (x1^2 + s^2))`.
pub fn conj_poisson_q(x1: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::NegativeParameter(s));
    }
    Ok(x1 / (PI * (x1 * x1 + s * s)))
}

/// Dirichlet Green function `D(x, y) = E(x - y) - E(x - y*)`.
pub fn dirichlet_green(x: Point2, y: Point2) -> Result<f64> {
    let d = x.sub(y);
    let ds = x.sub(y.reflect());
    let r2 = d.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.sqrt()));
    }
    // log ratio form keeps the x2 = 0 cancellation exact
    Ok((ds.norm_sq() / r2).ln() / (4.0 * PI))
}

/// Biot-Savart kernel: perpendicular gradient of the Green function,
/// `(1/2pi) [ (x-y)^perp / |x-y|^2 - (x-y*)^perp / |x-y*|^2 ]`
/// with `v^perp = (-v2, v1)`. Vanishes identically for `y2 = 0`.
pub fn biot_savart_kernel(x: Point2, y: Point2) -> Result<(f64, f64)> {
    let d = x.sub(y);
    let ds = x.sub(y.reflect());
    let r2 = d.norm_sq();
    let rs2 = ds.norm_sq();
    if r2 < EPS_SINGULAR * EPS_SINGULAR || rs2 < EPS_SINGULAR * EPS_SINGULAR {
        return Err(Error::Singular(r2.min(rs2).sqrt()));
    }
    let c = 1.0 / (2.0 * PI);
    Ok((
        c * (-d.x2 / r2 + ds.x2 / rs2),
        c * (d.x1 / r2 - ds.x1 / rs2),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_values_and_factorization() {
        assert!((gauss2d(Point2::new(0.0, 0.0), 1.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        // |x|^2 = 4t case
        let t: f64 = 0.7;
        let x4 = Point2::new((4.0 * t).sqrt(), 0.0);
        assert!(
            (gauss2d(x4, t).unwrap() - (-1.0_f64).exp() / (4.0 * PI * t)).abs() < 1e-16
        );
        assert!((gauss1d(0.0, 1.0).unwrap() - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-16);
        // 2-D kernel factorizes into 1-D kernels
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let t = rng.gen_range(0.05..4.0);
            let lhs = gauss2d(p, t).unwrap();
            let rhs = gauss1d(p.x1, t).unwrap() * gauss1d(p.x2, t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1e-300));
        }
        assert!(gauss2d(Point2::new(0.0, 0.0), 0.0).is_err());
        assert!(gauss1d(0.0, -1.0).is_err());
    }

    #[test]
    fn gauss1d_normalized() {
        let n = 20001;
        let l = 30.0;
        let h = 2.0 * l / (n - 1) as f64;
        let mut total = 0.0;
        for i in 0..n {
            let r = -l + i as f64 * h;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            total += w * h * gauss1d(r, 1.0).unwrap();
        }
        assert!((total - 1.0).abs() < 1e-8);
    }

    #[test]
    fn scaling_laws() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let p = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
            let t = rng.gen_range(0.1..2.0);
            let s = rng.gen_range(0.1..2.0);
            for lam in [0.5, 2.0, 3.0, 10.0] {
                let pl = Point2::new(lam * p.x1, lam * p.x2);
                let g = gauss2d(p, t).unwrap();
                let gl = lam * lam * gauss2d(pl, lam * lam * t).unwrap();
                assert!((g - gl).abs() <= 1e-13 * g.abs().max(1e-300));

                // compare against the kernel's magnitude scale; the value
                // itself cancels when |x1| is close to |x2|
                let d11 = d11_e(p).unwrap();
                let d11l = lam * lam * d11_e(pl).unwrap();
                let scale = 1.0 / (2.0 * std::f64::consts::PI * p.norm_sq());
                assert!((d11 - d11l).abs() <= 1e-13 * scale);

                let pp = poisson_p(p.x1, s).unwrap();
                let ppl = lam * poisson_p(lam * p.x1, lam * s).unwrap();
                assert!((pp - ppl).abs() <= 1e-13 * pp.abs());
            }
        }
    }

    #[test]
    fn log_potential_and_derivatives() {
        assert_eq!(log_potential(Point2::new(1.0, 0.0)).unwrap(), 0.0);
        assert!(log_potential(Point2::new(0.0, 0.0)).is_err());

        // dE/dx1 = -Q_{x2}(x1)/2 for x2 > 0
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.05..3.0));
            let (e1, e2) = grad_e(p).unwrap();
            assert!((e1 + 0.5 * conj_poisson_q(p.x1, p.x2).unwrap()).abs() < 1e-14);
            assert!((e2 + 0.5 * poisson_p(p.x1, p.x2).unwrap()).abs() < 1e-14);
        }

        // centered differences reproduce grad and the second derivatives
        let p = Point2::new(0.7, 1.3);
        let h = 1e-5;
        let fd1 = (log_potential(Point2::new(p.x1 + h, p.x2)).unwrap()
            - log_potential(Point2::new(p.x1 - h, p.x2)).unwrap())
            / (2.0 * h);
        assert!((fd1 - grad_e(p).unwrap().0).abs() < 1e-9);
        let fd11 = (grad_e(Point2::new(p.x1 + h, p.x2)).unwrap().0
            - grad_e(Point2::new(p.x1 - h, p.x2)).unwrap().0)
            / (2.0 * h);
        assert!((fd11 - d11_e(p).unwrap()).abs() < 1e-8);
        let fd12 = (grad_e(Point2::new(p.x1, p.x2 + h)).unwrap().0
            - grad_e(Point2::new(p.x1, p.x2 - h)).unwrap().0)
            / (2.0 * h);
        assert!((fd12 - d12_e(p).unwrap()).abs() < 1e-8);

        // harmonicity by finite differences of E itself
        let lap = {
            let e = |q: Point2| log_potential(q).unwrap();
            let h = 1e-4;
            (e(Point2::new(p.x1 + h, p.x2)) + e(Point2::new(p.x1 - h, p.x2))
                + e(Point2::new(p.x1, p.x2 + h))
                + e(Point2::new(p.x1, p.x2 - h))
                - 4.0 * e(p))
                / (h * h)
        };
        assert!(lap.abs() < 1e-6);
    }

    #[test]
    fn poisson_kernels() {
        let s = 0.8;
        assert!((poisson_p(0.0, s).unwrap() - 1.0 / (PI * s)).abs() < 1e-16);
        assert!((conj_poisson_q(1.0, 1.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert!(poisson_p(0.0, 0.0).is_err());
        assert!(conj_poisson_q(0.0, -1.0).is_err());
        // unit mass
        let n = 400001;
        let l = 4000.0;
        let h = 2.0 * l / (n - 1) as f64;
        let mut total = 0.0;
        for i in 0..n {
            let x = -l + i as f64 * h;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            total += w * h * poisson_p(x, 1.0).unwrap();
        }
        // the 1/x^2 tail past the window carries ~ 2/(pi L)
        total += 2.0 / (PI * l);
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }

    #[test]
    fn green_function_properties() {
        // kernel vanishes for sources on the boundary
        let x = Point2::new(0.3, 1.7);
        let (k1, k2) = biot_savart_kernel(x, Point2::new(-0.4, 0.0)).unwrap();
        assert_eq!(k1, 0.0);
        assert_eq!(k2, 0.0);

        // D vanishes on the boundary by image symmetry
        let d = dirichlet_green(Point2::new(0.5, 0.0), Point2::new(-0.2, 0.9)).unwrap();
        assert_eq!(d, 0.0);

        assert!(dirichlet_green(Point2::new(1.0, 1.0), Point2::new(1.0, 1.0)).is_err());

        // grad-perp of a harmonic function: both the curl and the divergence
        // of the kernel vanish away from the source
        let y = Point2::new(0.2, 1.1);
        let h = 1e-4;
        let k = |p: Point2| biot_savart_kernel(p, y).unwrap();
        let p = Point2::new(-0.8, 2.0);
        // (d/dx1 of k2) - (d/dx2 of k1) = laplacian of D = 0 away from y
        let dk2 = (k(Point2::new(p.x1 + h, p.x2)).1 - k(Point2::new(p.x1 - h, p.x2)).1) / (2.0 * h);
        let dk1 = (k(Point2::new(p.x1, p.x2 + h)).0 - k(Point2::new(p.x1, p.x2 - h)).0) / (2.0 * h);
        assert!((dk2 - dk1).abs() < 1e-6);

        // divergence-free in x
        let dv1 = (k(Point2::new(p.x1 + h, p.x2)).0 - k(Point2::new(p.x1 - h, p.x2)).0) / (2.0 * h);
        let dv2 = (k(Point2::new(p.x1, p.x2 + h)).1 - k(Point2::new(p.x1, p.x2 - h)).1) / (2.0 * h);
        assert!((dv1 + dv2).abs() < 1e-6);
    }
}
