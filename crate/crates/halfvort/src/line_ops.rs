//! Spectral operators on boundary-line data.
//!
//! All four operators are Fourier multipliers applied on a zero-padded
//! extension of the sample window. The padding (factor 4 by default)
//! suppresses periodization of slowly decaying data such as the Poisson
//! kernels, which is the dominant error source for the `H P_s = Q_s`
//! identity. The `xi = 0` mode of `H` and `A` is set to zero: constants
//! are outside the operators' domain.

use crate::fftutil::{angular_freq, fft_in_place, padded_len};
use crate::grid::LineSamples;
use crate::{Error, Result};
use rustfft::num_complex::Complex64;

pub const DEFAULT_PAD_FACTOR: usize = 4;

/// Minimum sample count for the spectral path.
pub const MIN_SAMPLES: usize = 16;

pub(crate) fn apply_multiplier(
    g: &LineSamples,
    pad_factor: usize,
    mul: impl Fn(f64) -> Complex64,
) -> Result<LineSamples> {
    let n = g.n();
    if n < MIN_SAMPLES {
        return Err(Error::Resolution(n));
    }
    let h = g.h();
    let m = padded_len(n, pad_factor);
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (i, &v) in g.values.iter().enumerate() {
        buf[i] = Complex64::new(v, 0.0);
    }
    fft_in_place(&mut buf, true);
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= mul(angular_freq(k, m, h));
    }
    // taking the real part below discards the unpaired Nyquist mode an odd
    // multiplier would otherwise leak
    fft_in_place(&mut buf, false);
    Ok(LineSamples {
        x1_min: g.x1_min,
        x1_max: g.x1_max,
        values: buf[..n].iter().map(|c| c.re).collect(),
    })
}

/// Hilbert transform: multiplier `-i sgn(xi)`, zero mode dropped.
pub fn hilbert(g: &LineSamples) -> Result<LineSamples> {
    apply_multiplier(g, DEFAULT_PAD_FACTOR, |xi| {
        Complex64::new(0.0, -xi.signum())
    })
}

/// Poisson semigroup `e^{sA}`: multiplier `e^{-s |xi|}`.
pub fn poisson_semigroup(g: &LineSamples, s: f64) -> Result<LineSamples> {
    if s < 0.0 {
        return Err(Error::NegativeParameter(s));
    }
    apply_multiplier(g, DEFAULT_PAD_FACTOR, |xi| {
        Complex64::new((-s * xi.abs()).exp(), 0.0)
    })
}

/// Line heat semigroup `e^{t d_1^2}`: multiplier `e^{-t xi^2}`.
pub fn line_heat(g: &LineSamples, t: f64) -> Result<LineSamples> {
    if t < 0.0 {
        return Err(Error::InvalidTime(t));
    }
    apply_multiplier(g, DEFAULT_PAD_FACTOR, |xi| {
        Complex64::new((-t * xi * xi).exp(), 0.0)
    })
}

/// Generator `A = -H d_1`: multiplier `-|xi|`.
pub fn apply_a(g: &LineSamples) -> Result<LineSamples> {
    apply_multiplier(g, DEFAULT_PAD_FACTOR, |xi| Complex64::new(-xi.abs(), 0.0))
}

/// Spectral derivative `d/dx1`: multiplier `i xi`.
pub(crate) fn spectral_derivative(g: &LineSamples) -> Result<LineSamples> {
    apply_multiplier(g, DEFAULT_PAD_FACTOR, |xi| Complex64::new(0.0, xi))
}
