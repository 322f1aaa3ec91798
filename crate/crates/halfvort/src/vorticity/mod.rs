//! The vorticity solution operator of the Stokes flow.
//!
//! `T(t)` maps an initial vorticity measure to the vorticity of the Stokes
//! flow at time `t`. Two independent routes are provided: direct summation
//! of the kernel `W(x, y, t)` ([`apply_t_kernel`]) and the composite
//! semigroup formula assembled from the half-plane heat semigroups, the
//! correction kernel, and the boundary-trace term ([`apply_t_composite`]).
//! The trace-zero operator `T_0(t)` ([`apply_t0`]) goes through the
//! Neumann/Dirichlet potential route and agrees with `T(t)` on trace-zero
//! data.

mod engine;
mod kernel;
mod operator;

pub use kernel::{
    eta_bound, green_matrix, green_star_11, kernel_w, kernel_w_parts, kernel_w_tilde,
    WFieldEvaluator,
};
pub use operator::{apply_t0, apply_t_composite, apply_t_kernel};

pub(crate) use engine::StripEngine;

/// Tuning knobs for kernel evaluation and the spectral engine.
#[derive(Debug, Clone, Copy)]
pub struct KernelConfig {
    /// Minimum node count for the `z2` quadrature in the reduced kernel.
    pub z2_nodes: usize,
    /// Zero-padding factor for spectral transforms.
    pub pad_factor: usize,
    /// Window half-width for auxiliary line quadratures.
    pub tail_extent: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self { z2_nodes: 32, pad_factor: 4, tail_extent: 40.0 }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.z2_nodes < 16 {
            return Err(crate::Error::Config(format!(
                "z2_nodes must be at least 16, got {}",
                self.z2_nodes
            )));
        }
        if self.pad_factor < 4 {
            return Err(crate::Error::Config(format!(
                "pad_factor must be at least 4, got {}",
                self.pad_factor
            )));
        }
        Ok(())
    }
}
