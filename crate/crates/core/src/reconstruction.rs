//! Third-order WENO interface fluxes and the flux-difference right-hand side.

use crate::error::{Result, WenoError};
use crate::weights::{PreparedWeights, StencilValues, WeightScheme};

/// Ghost cells per side needed by the 3-point stencils of both split parts.
pub const N_GHOST: usize = 2;

/// Node values of one grid line, with `n_ghost` ghost cells on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct Line1D {
    pub values: Vec<f64>,
    pub n_interior: usize,
    pub n_ghost: usize,
    pub dx: f64,
}

impl Line1D {
    pub fn new(values: Vec<f64>, n_ghost: usize, dx: f64) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(WenoError::InvalidParameter(format!(
                "dx must be positive (got {dx})"
            )));
        }
        if values.len() < 2 * n_ghost + 1 {
            return Err(WenoError::LengthMismatch {
                expected: 2 * n_ghost + 1,
                actual: values.len(),
            });
        }
        let n_interior = values.len() - 2 * n_ghost;
        Ok(Self {
            values,
            n_interior,
            n_ghost,
            dx,
        })
    }

    pub fn interior(&self) -> &[f64] {
        &self.values[self.n_ghost..self.n_ghost + self.n_interior]
    }
}

/// Global Lax-Friedrichs split `f± = (f ± αu)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitFluxPair {
    pub f_plus: Vec<f64>,
    pub f_minus: Vec<f64>,
}

pub fn lax_friedrichs_split(f_values: &[f64], u_values: &[f64], alpha: f64) -> Result<SplitFluxPair> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(WenoError::InvalidParameter(format!(
            "splitting speed alpha must be positive (got {alpha})"
        )));
    }
    if f_values.len() != u_values.len() {
        return Err(WenoError::LengthMismatch {
            expected: f_values.len(),
            actual: u_values.len(),
        });
    }
    let mut f_plus = vec![0.0; f_values.len()];
    let mut f_minus = vec![0.0; f_values.len()];
    split_into(f_values, u_values, alpha, &mut f_plus, &mut f_minus);
    Ok(SplitFluxPair { f_plus, f_minus })
}

#[inline]
pub(crate) fn split_into(f: &[f64], u: &[f64], alpha: f64, f_plus: &mut [f64], f_minus: &mut [f64]) {
    for (((fp, fm), &fv), &uv) in f_plus.iter_mut().zip(f_minus.iter_mut()).zip(f).zip(u) {
        *fp = 0.5 * (fv + alpha * uv);
        *fm = 0.5 * (fv - alpha * uv);
    }
}

/// Upwind and centered linear candidates at `x_{i+1/2}`.
#[inline]
pub fn candidate_fluxes(s: &StencilValues) -> (f64, f64) {
    (1.5 * s.f0 - 0.5 * s.fm1, 0.5 * s.f0 + 0.5 * s.fp1)
}

#[inline]
pub(crate) fn weno_flux(weights: &PreparedWeights, s: &StencilValues) -> f64 {
    let w = weights.weights(s);
    let (up, cent) = candidate_fluxes(s);
    w.w0 * up + w.w1 * cent
}

/// WENO approximation of `h_{i+1/2}` from one upwind-oriented stencil.
pub fn interface_flux(s: &StencilValues, scheme: WeightScheme, dx: f64) -> Result<f64> {
    let w = crate::weights::compute_weights(scheme, s, dx)?;
    let (up, cent) = candidate_fluxes(s);
    Ok(w.w0 * up + w.w1 * cent)
}

/// Interface fluxes `f̂_{i+1/2}` for every interface bounding an interior cell.
///
/// Both slices hold node values with `n_ghost` ghost cells per side. The
/// result has `n_interior + 1` entries; entry `m` is the flux through the
/// left face of interior cell `m`.
pub fn reconstruct_interfaces(
    f_plus: &[f64],
    f_minus: &[f64],
    n_ghost: usize,
    weights: &PreparedWeights,
    out: &mut [f64],
) -> Result<()> {
    if n_ghost < N_GHOST {
        return Err(WenoError::InsufficientGhosts {
            available: n_ghost,
            required: N_GHOST,
        });
    }
    if f_plus.len() != f_minus.len() {
        return Err(WenoError::LengthMismatch {
            expected: f_plus.len(),
            actual: f_minus.len(),
        });
    }
    let n_interior = f_plus.len().checked_sub(2 * n_ghost).ok_or(WenoError::LengthMismatch {
        expected: 2 * n_ghost,
        actual: f_plus.len(),
    })?;
    if out.len() != n_interior + 1 {
        return Err(WenoError::LengthMismatch {
            expected: n_interior + 1,
            actual: out.len(),
        });
    }
    reconstruct_unchecked(f_plus, f_minus, n_ghost, weights, out);
    Ok(())
}

/// Same as [`reconstruct_interfaces`] without the shape checks.
#[inline]
pub(crate) fn reconstruct_unchecked(
    f_plus: &[f64],
    f_minus: &[f64],
    n_ghost: usize,
    weights: &PreparedWeights,
    out: &mut [f64],
) {
    for (m, slot) in out.iter_mut().enumerate() {
        // interface i+1/2 with i = n_ghost - 1 + m
        let i = n_ghost - 1 + m;
        let plus = StencilValues::new(f_plus[i - 1], f_plus[i], f_plus[i + 1]);
        // f⁻ mirrored about x_{i+1/2}
        let minus = StencilValues::new(f_minus[i + 2], f_minus[i + 1], f_minus[i]);
        *slot = weno_flux(weights, &plus) + weno_flux(weights, &minus);
    }
}

/// Interface fluxes of two aligned split lines.
pub fn reconstruct_line(line_plus: &Line1D, line_minus: &Line1D, scheme: WeightScheme) -> Result<Vec<f64>> {
    if line_plus.n_ghost != line_minus.n_ghost || line_plus.values.len() != line_minus.values.len() {
        return Err(WenoError::LengthMismatch {
            expected: line_plus.values.len(),
            actual: line_minus.values.len(),
        });
    }
    scheme.validate()?;
    let weights = PreparedWeights::new(scheme, line_plus.dx);
    let mut out = vec![0.0; line_plus.n_interior + 1];
    reconstruct_interfaces(
        &line_plus.values,
        &line_minus.values,
        line_plus.n_ghost,
        &weights,
        &mut out,
    )?;
    Ok(out)
}

/// `L(u)_i = -(f̂_{i+1/2} - f̂_{i-1/2}) / dx` from `n + 1` interface fluxes.
pub fn semidiscrete_rhs(interface_fluxes: &[f64], dx: f64) -> Vec<f64> {
    let mut out = vec![0.0; interface_fluxes.len().saturating_sub(1)];
    flux_difference_into(interface_fluxes, dx, &mut out);
    out
}

#[inline]
pub(crate) fn flux_difference_into(interface_fluxes: &[f64], dx: f64, out: &mut [f64]) {
    let inv_dx = 1.0 / dx;
    for (o, pair) in out.iter_mut().zip(interface_fluxes.windows(2)) {
        *o = -(pair[1] - pair[0]) * inv_dx;
    }
}
