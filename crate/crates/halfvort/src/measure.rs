//! Finite vorticity measures on the closed half plane.
//!
//! A measure is represented by four components: point atoms, quadrature
//! samples of a curve-supported sheet, an optional gridded density, and an
//! optional signed boundary sheet multiplying the Dirac layer at `x2 = 0`.
//! The atoms form the pure point part; sheet, density and boundary sheet
//! form the continuous part.

use crate::grid::{integrate_field, LineSamples, ScalarField};
use crate::kernels::Point2;
use crate::quad::pairwise_sum;
use crate::{Error, Result};

/// One atom `kappa * delta_x` with `x` in the closed half plane.
#[derive(Debug, Clone, Copy)]
pub struct Atom {
    pub pos: Point2,
    pub kappa: f64,
}

/// One quadrature sample of a curve-supported measure.
#[derive(Debug, Clone, Copy)]
pub struct SheetSample {
    pub pos: Point2,
    pub weight: f64,
}

#[derive(Debug, Clone, Default)]
pub struct VorticityMeasure {
    pub atoms: Vec<Atom>,
    pub sheet: Vec<SheetSample>,
    pub density: Option<ScalarField>,
    pub boundary_sheet: Option<LineSamples>,
}

impl VorticityMeasure {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        let m = Self { atoms, ..Self::default() };
        m.validate()?;
        Ok(m)
    }

    pub fn from_density(density: ScalarField) -> Self {
        Self { density: Some(density), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.atoms {
            if a.pos.x2 < 0.0 {
                return Err(Error::OutOfDomain(a.pos.x1, a.pos.x2));
            }
            if !a.kappa.is_finite() || !a.pos.x1.is_finite() || !a.pos.x2.is_finite() {
                return Err(Error::NonFinite("atom"));
            }
        }
        for s in &self.sheet {
            if s.pos.x2 < 0.0 {
                return Err(Error::OutOfDomain(s.pos.x1, s.pos.x2));
            }
            if !s.weight.is_finite() {
                return Err(Error::NonFinite("sheet sample"));
            }
        }
        Ok(())
    }

    /// Pure point part (the atoms alone).
    pub fn pure_point(&self) -> Self {
        Self { atoms: self.atoms.clone(), ..Self::default() }
    }

    /// Continuous part (sheet + density + boundary sheet).
    pub fn continuous(&self) -> Self {
        Self {
            atoms: Vec::new(),
            sheet: self.sheet.clone(),
            density: self.density.clone(),
            boundary_sheet: self.boundary_sheet.clone(),
        }
    }

    /// Total mass (signed).
    pub fn total_mass(&self) -> f64 {
        let mut mass = pairwise_sum(&self.atoms.iter().map(|a| a.kappa).collect::<Vec<_>>());
        mass += pairwise_sum(&self.sheet.iter().map(|s| s.weight).collect::<Vec<_>>());
        if let Some(d) = &self.density {
            mass += integrate_field(d).unwrap_or(f64::NAN);
        }
        if let Some(b) = &self.boundary_sheet {
            mass += b.integrate();
        }
        mass
    }
}

/// Total variation `|mu|(closed half plane)` of the four-component measure.
pub fn total_variation(mu: &VorticityMeasure) -> f64 {
    let mut tv = pairwise_sum(&mu.atoms.iter().map(|a| a.kappa.abs()).collect::<Vec<_>>());
    tv += pairwise_sum(&mu.sheet.iter().map(|s| s.weight.abs()).collect::<Vec<_>>());
    if let Some(d) = &mu.density {
        tv += integrate_field(&d.map(f64::abs)).unwrap_or(f64::NAN);
    }
    if let Some(b) = &mu.boundary_sheet {
        tv += LineSamples {
            x1_min: b.x1_min,
            x1_max: b.x1_max,
            values: b.values.iter().map(|v| v.abs()).collect(),
        }
        .integrate();
    }
    tv
}

/// Duality pairing of a measure with a continuous test field.
///
/// Atoms and sheet samples evaluate `phi` by bilinear interpolation; the
/// density pairs by cell quadrature; the boundary sheet pairs with the
/// boundary trace `phi(., 0)`.
pub fn measure_pairing(mu: &VorticityMeasure, phi: &ScalarField) -> Result<f64> {
    let mut parts: Vec<f64> = Vec::new();
    for a in &mu.atoms {
        parts.push(a.kappa * phi.interp(a.pos.x1, a.pos.x2)?);
    }
    for s in &mu.sheet {
        parts.push(s.weight * phi.interp(s.pos.x1, s.pos.x2)?);
    }
    let mut total = pairwise_sum(&parts);
    if let Some(d) = &mu.density {
        let mut prod = d.clone();
        for (v, w) in prod.values.iter_mut().zip(&phi.values) {
            *v *= w;
        }
        total += integrate_field(&prod)?;
    }
    if let Some(b) = &mu.boundary_sheet {
        let trace = phi.boundary_row();
        let prod = LineSamples {
            x1_min: b.x1_min,
            x1_max: b.x1_max,
            values: (0..b.n()).map(|i| b.values[i] * trace.interp(b.x(i))).collect(),
        };
        total += prod.integrate();
    }
    Ok(total)
}
