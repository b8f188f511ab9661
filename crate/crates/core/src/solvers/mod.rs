//! Time integration and the equation-specific semi-discretizations.

mod boundary;
mod euler1d;
mod euler2d;
mod scalar;

pub use boundary::{BoundaryCondition, Boundaries};
pub use euler1d::{max_wave_speed_euler, Euler1dSystem, EulerState1D};
pub use euler2d::{dimension_split_rhs_2d, max_wave_speed_euler_2d, Euler2dSystem, EulerState2D};
pub use scalar::{max_wave_speed_scalar, ScalarFlux, ScalarSystem};

pub(crate) use boundary::fill_ghosts;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WenoError};
use crate::problems::{Equation, ProblemSpec, StepRule};
use crate::weights::WeightScheme;

/// Floor on the splitting speed and on the wave speed used for `dt`.
pub const MIN_WAVE_SPEED: f64 = 1e-12;

/// Net rate at which each conserved component leaves through the boundary.
pub type Outflow = [f64; 4];

/// A method-of-lines semi-discretization `du/dt = L(u)` over a flat state vector.
pub trait SemiDiscrete: Sync {
    /// Length of the flat state vector.
    fn n_values(&self) -> usize;
    fn n_components(&self) -> usize;
    fn cell_volume(&self) -> f64;
    /// Smallest grid spacing, used by fixed `Δt/Δx` stepping.
    fn min_spacing(&self) -> f64;
    /// Time step for CFL number `cfl` at state `u`.
    fn stable_dt(&self, u: &[f64], cfl: f64) -> Result<f64>;
    /// Writes `L(u)` into `out` and returns the boundary outflow rates.
    fn rhs(&self, u: &[f64], out: &mut [f64]) -> Result<Outflow>;
    /// Admissibility check of an accepted state (finite values, positivity).
    fn check_state(&self, u: &[f64]) -> Result<()>;
}

/// One step of the three-stage third-order SSP Runge-Kutta scheme.
///
/// Returns the boundary outflow integrated over the step with the scheme's
/// effective stage weights `(1/6, 1/6, 2/3)`.
pub fn ssp_rk3_step<F>(u: &mut [f64], dt: f64, mut rhs: F) -> Result<Outflow>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<Outflow>,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(WenoError::InvalidParameter(format!("dt must be positive (got {dt})")));
    }
    let n = u.len();
    let mut l = vec![0.0; n];
    let mut stage = vec![0.0; n];

    let o0 = rhs(u, &mut l)?;
    for ((s, &u0), &l0) in stage.iter_mut().zip(u.iter()).zip(&l) {
        *s = u0 + dt * l0;
    }
    let o1 = rhs(&stage, &mut l)?;
    for ((s, &u0), &l1) in stage.iter_mut().zip(u.iter()).zip(&l) {
        *s = u0 + 0.25 * (*s - u0 + dt * l1);
    }
    let o2 = rhs(&stage, &mut l)?;
    for ((u0, &s), &l2) in u.iter_mut().zip(&stage).zip(&l) {
        *u0 += (2.0 / 3.0) * (s - *u0 + dt * l2);
    }

    let mut out = [0.0; 4];
    for k in 0..4 {
        out[k] = dt * (o0[k] / 6.0 + o1[k] / 6.0 + 2.0 / 3.0 * o2[k]);
    }
    Ok(out)
}

/// Time-step rule and final time of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeControls {
    pub step: StepRule,
    pub t_final: f64,
}

impl TimeControls {
    pub fn validate(&self) -> Result<()> {
        let ok = match self.step {
            StepRule::Cfl(c) => c > 0.0 && c <= 1.0,
            StepRule::DtOverDx(r) => r > 0.0 && r.is_finite(),
        };
        if !ok {
            return Err(WenoError::InvalidParameter(format!(
                "invalid step rule {:?}",
                self.step
            )));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(WenoError::InvalidParameter(format!(
                "t_final must be nonnegative (got {})",
                self.t_final
            )));
        }
        Ok(())
    }
}

/// Bookkeeping of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub steps: usize,
    pub t_final: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Conserved totals (sum of cell values times cell volume) per component.
    pub totals_initial: Vec<f64>,
    pub totals_final: Vec<f64>,
    /// Time-integrated boundary outflow per component.
    pub boundary_outflow: Vec<f64>,
    /// `|total_final - total_initial + outflow|` relative to the largest of the
    /// initial and final integrals of `|u|` and the outflow magnitude.
    pub conservation_drift: Vec<f64>,
    pub component_min: Vec<f64>,
    pub component_max: Vec<f64>,
    pub wall_seconds: f64,
}

fn component_stats(nc: usize, vol: f64, u: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let len = u.len() / nc;
    let mut totals = Vec::with_capacity(nc);
    let mut abs_totals = Vec::with_capacity(nc);
    let mut mins = Vec::with_capacity(nc);
    for k in 0..nc {
        let plane = &u[k * len..(k + 1) * len];
        totals.push(plane.iter().sum::<f64>() * vol);
        abs_totals.push(plane.iter().map(|v| v.abs()).sum::<f64>() * vol);
        mins.push(plane.iter().cloned().fold(f64::INFINITY, f64::min));
    }
    (totals, abs_totals, mins)
}

fn component_max(nc: usize, u: &[f64]) -> Vec<f64> {
    let len = u.len() / nc;
    (0..nc)
        .map(|k| u[k * len..(k + 1) * len].iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .collect()
}

/// Advances `u` to `controls.t_final`, clipping the last step to land on it.
pub fn integrate<S: SemiDiscrete>(system: &S, u: &mut [f64], controls: &TimeControls) -> Result<Diagnostics> {
    controls.validate()?;
    if u.len() != system.n_values() {
        return Err(WenoError::LengthMismatch {
            expected: system.n_values(),
            actual: u.len(),
        });
    }
    let start = Instant::now();
    system.check_state(u).map_err(|e| e.at_step(0))?;
    let nc = system.n_components();
    let vol = system.cell_volume();
    let (totals_initial, abs_initial, _) = component_stats(nc, vol, u);
    let mut outflow = vec![0.0; nc];

    let mut t = 0.0;
    let mut steps = 0usize;
    let mut dt_min = f64::INFINITY;
    let mut dt_max: f64 = 0.0;
    while t < controls.t_final {
        let mut dt = match controls.step {
            StepRule::Cfl(cfl) => system.stable_dt(u, cfl).map_err(|e| e.at_step(steps + 1))?,
            StepRule::DtOverDx(r) => r * system.min_spacing(),
        };
        let remaining = controls.t_final - t;
        let last = remaining <= dt * (1.0 + 1e-9);
        if last {
            dt = remaining;
        }
        steps += 1;
        let o = ssp_rk3_step(u, dt, |v, out| system.rhs(v, out)).map_err(|e| e.at_step(steps))?;
        system.check_state(u).map_err(|e| e.at_step(steps))?;
        for k in 0..nc {
            outflow[k] += o[k];
        }
        dt_min = dt_min.min(dt);
        dt_max = dt_max.max(dt);
        t = if last { controls.t_final } else { t + dt };
    }

    let (totals_final, abs_final, component_min) = component_stats(nc, vol, u);
    let conservation_drift = (0..nc)
        .map(|k| {
            let scale = abs_initial[k].max(abs_final[k]).max(outflow[k].abs());
            if scale == 0.0 {
                return 0.0;
            }
            (totals_final[k] - totals_initial[k] + outflow[k]).abs() / scale
        })
        .collect();
    Ok(Diagnostics {
        steps,
        t_final: t,
        dt_min: if steps == 0 { 0.0 } else { dt_min },
        dt_max,
        totals_initial,
        totals_final,
        boundary_outflow: outflow,
        conservation_drift,
        component_min,
        component_max: component_max(nc, u),
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

impl WenoError {
    /// Stamps the step index on state failures raised inside a step.
    pub(crate) fn at_step(self, step: usize) -> WenoError {
        match self {
            WenoError::NonFiniteState { cell, .. } => WenoError::NonFiniteState { step, cell },
            WenoError::Positivity {
                cell, rho, pressure, ..
            } => WenoError::Positivity {
                step,
                cell,
                rho,
                pressure,
            },
            other => other,
        }
    }
}

/// Uniform grid size; `ny` is 1 for 1D problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSize {
    pub nx: usize,
    pub ny: usize,
}

/// Cell centers `x_min + (i + 1/2) dx`.
pub fn cell_centers(min: f64, max: f64, n: usize) -> Vec<f64> {
    let dx = (max - min) / n as f64;
    (0..n).map(|i| min + (i as f64 + 0.5) * dx).collect()
}

/// Final solution of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Scalar(Vec<f64>),
    Euler1d(EulerState1D),
    Euler2d(EulerState2D),
}

/// Result of [`advance`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub x: Vec<f64>,
    /// Empty for 1D problems.
    pub y: Vec<f64>,
    pub initial: Solution,
    pub solution: Solution,
    pub diagnostics: Diagnostics,
}

/// Builds the discretization of `problem` and integrates it to `controls.t_final`.
pub fn advance(
    problem: &ProblemSpec,
    scheme: WeightScheme,
    grid: GridSize,
    controls: &TimeControls,
) -> Result<RunOutput> {
    scheme.validate()?;
    problem.boundaries.validate()?;
    if grid.nx < 1 || (problem.is_2d() && grid.ny < 1) {
        return Err(WenoError::InvalidParameter("grid must have at least one cell".into()));
    }
    let x = cell_centers(problem.domain.x_min, problem.domain.x_max, grid.nx);
    match problem.equation {
        Equation::Advection { .. } | Equation::Burgers => {
            let flux = match problem.equation {
                Equation::Advection { a } => ScalarFlux::Advection { a },
                _ => ScalarFlux::Burgers,
            };
            let system = ScalarSystem::new(problem, flux, scheme, grid.nx)?;
            let initial = system.initial_state(problem)?;
            let mut u = initial.clone();
            let diagnostics = integrate(&system, &mut u, controls)?;
            Ok(RunOutput {
                x,
                y: Vec::new(),
                initial: Solution::Scalar(initial),
                solution: Solution::Scalar(u),
                diagnostics,
            })
        }
        Equation::Euler1d => {
            let gamma = problem.gamma.unwrap_or(crate::problems::DEFAULT_GAMMA);
            let system = Euler1dSystem::new(problem, scheme, grid.nx, gamma)?;
            let initial = system.initial_state(problem)?;
            let mut u = initial.pack();
            let diagnostics = integrate(&system, &mut u, controls)?;
            Ok(RunOutput {
                x,
                y: Vec::new(),
                initial: Solution::Euler1d(initial),
                solution: Solution::Euler1d(EulerState1D::unpack(&u, gamma)),
                diagnostics,
            })
        }
        Equation::Euler2d => {
            let gamma = problem.gamma.unwrap_or(crate::problems::DEFAULT_GAMMA);
            let system = Euler2dSystem::new(problem, scheme, grid.nx, grid.ny, gamma)?;
            let initial = system.initial_state(problem)?;
            let mut u = initial.pack();
            let diagnostics = integrate(&system, &mut u, controls)?;
            Ok(RunOutput {
                x,
                y: cell_centers(problem.domain.y_min, problem.domain.y_max, grid.ny),
                initial: Solution::Euler2d(initial),
                solution: Solution::Euler2d(EulerState2D::unpack(&u, grid.nx, grid.ny, gamma)),
                diagnostics,
            })
        }
    }
}
