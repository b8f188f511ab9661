use crate::error::{Result, WenoError};
use crate::problems::ProblemSpec;
use crate::reconstruction::{flux_difference_into, reconstruct_unchecked, split_into, N_GHOST};
use crate::weights::{PreparedWeights, WeightScheme};

use super::{fill_ghosts, Boundaries, BoundaryCondition, Outflow, SemiDiscrete, MIN_WAVE_SPEED};

/// Flux of a scalar conservation law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFlux {
    /// `f(u) = a u`
    Advection { a: f64 },
    /// `f(u) = u²/2`
    Burgers,
}

impl ScalarFlux {
    #[inline]
    pub fn flux(&self, u: f64) -> f64 {
        match *self {
            ScalarFlux::Advection { a } => a * u,
            ScalarFlux::Burgers => 0.5 * u * u,
        }
    }
}

/// `max |f'(u)|` over the field: `|a|` for advection, `max |u|` for Burgers.
pub fn max_wave_speed_scalar(u: &[f64], flux: ScalarFlux) -> f64 {
    match flux {
        ScalarFlux::Advection { a } => a.abs(),
        ScalarFlux::Burgers => u.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
    }
}

/// WENO3 semi-discretization of a 1D scalar conservation law.
#[derive(Debug, Clone)]
pub struct ScalarSystem {
    flux: ScalarFlux,
    weights: PreparedWeights,
    n: usize,
    dx: f64,
    boundaries: Boundaries,
    frozen_left: [f64; N_GHOST],
    frozen_right: [f64; N_GHOST],
}

impl ScalarSystem {
    pub fn new(problem: &ProblemSpec, flux: ScalarFlux, scheme: WeightScheme, n: usize) -> Result<Self> {
        Self::with_domain(
            flux,
            scheme,
            n,
            problem.domain.x_min,
            problem.domain.x_max,
            problem.boundaries,
            |x| problem.initial.scalar(x).unwrap_or(0.0),
        )
    }

    /// Builds a system on `[x_min, x_max]`; `frozen` supplies Dirichlet ghost values.
    pub fn with_domain(
        flux: ScalarFlux,
        scheme: WeightScheme,
        n: usize,
        x_min: f64,
        x_max: f64,
        boundaries: Boundaries,
        frozen: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        scheme.validate()?;
        boundaries.validate()?;
        if n < 1 || !(x_max > x_min) {
            return Err(WenoError::InvalidParameter("empty scalar grid".into()));
        }
        let dx = (x_max - x_min) / n as f64;
        let center = |i: isize| x_min + (i as f64 + 0.5) * dx;
        Ok(Self {
            flux,
            weights: PreparedWeights::new(scheme, dx),
            n,
            dx,
            boundaries,
            frozen_left: [frozen(center(-2)), frozen(center(-1))],
            frozen_right: [frozen(center(n as isize)), frozen(center(n as isize + 1))],
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn initial_state(&self, problem: &ProblemSpec) -> Result<Vec<f64>> {
        super::cell_centers(problem.domain.x_min, problem.domain.x_max, self.n)
            .into_iter()
            .map(|x| {
                problem.initial.scalar(x).ok_or_else(|| {
                    WenoError::InvalidParameter(format!("problem {} has no scalar data", problem.id))
                })
            })
            .collect()
    }

    /// Interface fluxes `f̂_{i+1/2}` (length `n + 1`) of the field `u`.
    pub fn interface_fluxes(&self, u: &[f64]) -> Vec<f64> {
        let g = N_GHOST;
        let mut ext = vec![0.0; self.n + 2 * g];
        ext[g..g + self.n].copy_from_slice(u);
        let frozen = (self.boundaries.left == BoundaryCondition::Dirichlet
            || self.boundaries.right == BoundaryCondition::Dirichlet)
            .then_some((&self.frozen_left[..], &self.frozen_right[..]));
        fill_ghosts(&mut ext, g, self.boundaries.left, self.boundaries.right, false, frozen);

        let alpha = max_wave_speed_scalar(u, self.flux).max(MIN_WAVE_SPEED);
        let f: Vec<f64> = ext.iter().map(|&v| self.flux.flux(v)).collect();
        let mut fp = vec![0.0; ext.len()];
        let mut fm = vec![0.0; ext.len()];
        split_into(&f, &ext, alpha, &mut fp, &mut fm);
        let mut fluxes = vec![0.0; self.n + 1];
        reconstruct_unchecked(&fp, &fm, g, &self.weights, &mut fluxes);
        fluxes
    }
}

impl SemiDiscrete for ScalarSystem {
    fn n_values(&self) -> usize {
        self.n
    }

    fn n_components(&self) -> usize {
        1
    }

    fn cell_volume(&self) -> f64 {
        self.dx
    }

    fn min_spacing(&self) -> f64 {
        self.dx
    }

    fn stable_dt(&self, u: &[f64], cfl: f64) -> Result<f64> {
        Ok(cfl * self.dx / max_wave_speed_scalar(u, self.flux).max(MIN_WAVE_SPEED))
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) -> Result<Outflow> {
        let fluxes = self.interface_fluxes(u);
        flux_difference_into(&fluxes, self.dx, out);
        Ok([fluxes[self.n] - fluxes[0], 0.0, 0.0, 0.0])
    }

    fn check_state(&self, u: &[f64]) -> Result<()> {
        match u.iter().position(|v| !v.is_finite()) {
            Some(cell) => Err(WenoError::NonFiniteState { step: 0, cell }),
            None => Ok(()),
        }
    }
}
