use crate::error::{Result, WenoError};
use crate::problems::{Primitive, ProblemSpec};
use crate::reconstruction::{flux_difference_into, reconstruct_unchecked, split_into, N_GHOST};
use crate::weights::{PreparedWeights, WeightScheme};

use super::{fill_ghosts, Boundaries, BoundaryCondition, Outflow, SemiDiscrete, MIN_WAVE_SPEED};

/// Pressure and directional flux of one gas state.
///
/// `mn` is the momentum normal to the face, `mt` the tangential one. The flux
/// is ordered `(mass, normal momentum, tangential momentum, energy)`.
#[inline]
pub(crate) fn euler_flux(rho: f64, mn: f64, mt: f64, e: f64, gamma: f64) -> (f64, [f64; 4]) {
    let un = mn / rho;
    let p = (gamma - 1.0) * (e - 0.5 * (mn * mn + mt * mt) / rho);
    (p, [mn, mn * un + p, mt * un, un * (e + p)])
}

#[inline]
pub(crate) fn pressure(rho: f64, mx: f64, my: f64, e: f64, gamma: f64) -> f64 {
    (gamma - 1.0) * (e - 0.5 * (mx * mx + my * my) / rho)
}

/// Conservative variables of the 1D Euler equations.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerState1D {
    pub rho: Vec<f64>,
    pub mom: Vec<f64>,
    pub energy: Vec<f64>,
    pub gamma: f64,
}

impl EulerState1D {
    pub fn from_primitives(states: &[Primitive], gamma: f64) -> Self {
        let rho = states.iter().map(|s| s.rho).collect();
        let mom = states.iter().map(|s| s.rho * s.u).collect();
        let energy = states
            .iter()
            .map(|s| s.p / (gamma - 1.0) + 0.5 * s.rho * s.u * s.u)
            .collect();
        Self {
            rho,
            mom,
            energy,
            gamma,
        }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn pressure(&self, i: usize) -> f64 {
        pressure(self.rho[i], self.mom[i], 0.0, self.energy[i], self.gamma)
    }

    pub fn velocity(&self, i: usize) -> f64 {
        self.mom[i] / self.rho[i]
    }

    pub fn primitives(&self) -> Vec<Primitive> {
        (0..self.len())
            .map(|i| Primitive::new_1d(self.rho[i], self.velocity(i), self.pressure(i)))
            .collect()
    }

    /// Flat `[ρ | ρu | E]` layout used by the integrator.
    pub fn pack(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(3 * self.len());
        v.extend_from_slice(&self.rho);
        v.extend_from_slice(&self.mom);
        v.extend_from_slice(&self.energy);
        v
    }

    pub fn unpack(flat: &[f64], gamma: f64) -> Self {
        let n = flat.len() / 3;
        Self {
            rho: flat[..n].to_vec(),
            mom: flat[n..2 * n].to_vec(),
            energy: flat[2 * n..].to_vec(),
            gamma,
        }
    }
}

/// Checks ρ > 0 and p > 0 on every cell and returns `max(|u| + c)`.
fn admissible_speed(rho: &[f64], mom: &[f64], energy: &[f64], gamma: f64) -> Result<f64> {
    let mut speed: f64 = 0.0;
    for i in 0..rho.len() {
        let p = pressure(rho[i], mom[i], 0.0, energy[i], gamma);
        if !(rho[i] > 0.0 && p > 0.0) || !mom[i].is_finite() {
            if !(rho[i].is_finite() && p.is_finite() && mom[i].is_finite()) {
                return Err(WenoError::NonFiniteState { step: 0, cell: i });
            }
            return Err(WenoError::Positivity {
                step: 0,
                cell: i,
                rho: rho[i],
                pressure: p,
            });
        }
        let c = (gamma * p / rho[i]).sqrt();
        speed = speed.max((mom[i] / rho[i]).abs() + c);
    }
    Ok(speed)
}

/// `max(|u| + c)` over the cells; fails with the offending cell if the state
/// is not admissible.
pub fn max_wave_speed_euler(state: &EulerState1D) -> Result<f64> {
    admissible_speed(&state.rho, &state.mom, &state.energy, state.gamma)
}

/// Component-wise WENO3 semi-discretization of the 1D Euler equations.
#[derive(Debug, Clone)]
pub struct Euler1dSystem {
    weights: PreparedWeights,
    n: usize,
    dx: f64,
    gamma: f64,
    x_min: f64,
    boundaries: Boundaries,
    /// Dirichlet ghosts per component: `[left0, left1, right0, right1]`.
    frozen: [[f64; 4]; 3],
}

impl Euler1dSystem {
    pub fn new(problem: &ProblemSpec, scheme: WeightScheme, n: usize, gamma: f64) -> Result<Self> {
        scheme.validate()?;
        problem.boundaries.validate()?;
        if !(gamma > 1.0) {
            return Err(WenoError::InvalidParameter(format!("gamma must exceed 1 (got {gamma})")));
        }
        if n < 1 {
            return Err(WenoError::InvalidParameter("empty grid".into()));
        }
        let dx = problem.domain.length_x() / n as f64;
        let x_min = problem.domain.x_min;
        let mut frozen = [[0.0; 4]; 3];
        for (slot, cell) in [-2isize, -1, n as isize, n as isize + 1].into_iter().enumerate() {
            let x = x_min + (cell as f64 + 0.5) * dx;
            if let Some(s) = problem.initial.primitive(x, 0.0, dx, dx) {
                let e = s.p / (gamma - 1.0) + 0.5 * s.rho * s.u * s.u;
                frozen[0][slot] = s.rho;
                frozen[1][slot] = s.rho * s.u;
                frozen[2][slot] = e;
            }
        }
        Ok(Self {
            weights: PreparedWeights::new(scheme, dx),
            n,
            dx,
            gamma,
            x_min,
            boundaries: problem.boundaries,
            frozen,
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn initial_state(&self, problem: &ProblemSpec) -> Result<EulerState1D> {
        let states: Option<Vec<Primitive>> = (0..self.n)
            .map(|i| {
                let x = self.x_min + (i as f64 + 0.5) * self.dx;
                problem.initial.primitive(x, 0.0, self.dx, self.dx)
            })
            .collect();
        let states = states.ok_or_else(|| {
            WenoError::InvalidParameter(format!("problem {} has no gas-dynamics data", problem.id))
        })?;
        Ok(EulerState1D::from_primitives(&states, self.gamma))
    }

    /// Right-hand side with a caller-supplied splitting speed.
    pub fn rhs_with_alpha(&self, u: &[f64], alpha: f64, out: &mut [f64]) -> Outflow {
        let n = self.n;
        let g = N_GHOST;
        let len = n + 2 * g;
        let mut ext = [vec![0.0; len], vec![0.0; len], vec![0.0; len]];
        let use_frozen = self.boundaries.left == BoundaryCondition::Dirichlet
            || self.boundaries.right == BoundaryCondition::Dirichlet;
        for k in 0..3 {
            ext[k][g..g + n].copy_from_slice(&u[k * n..(k + 1) * n]);
            let frozen = use_frozen.then_some((&self.frozen[k][..2], &self.frozen[k][2..]));
            fill_ghosts(&mut ext[k], g, self.boundaries.left, self.boundaries.right, k == 1, frozen);
        }
        let mut flux = [vec![0.0; len], vec![0.0; len], vec![0.0; len]];
        for i in 0..len {
            let (_, f) = euler_flux(ext[0][i], ext[1][i], 0.0, ext[2][i], self.gamma);
            flux[0][i] = f[0];
            flux[1][i] = f[1];
            flux[2][i] = f[3];
        }
        let mut fp = vec![0.0; len];
        let mut fm = vec![0.0; len];
        let mut iface = vec![0.0; n + 1];
        let mut outflow = [0.0; 4];
        for k in 0..3 {
            split_into(&flux[k], &ext[k], alpha, &mut fp, &mut fm);
            reconstruct_unchecked(&fp, &fm, g, &self.weights, &mut iface);
            flux_difference_into(&iface, self.dx, &mut out[k * n..(k + 1) * n]);
            outflow[k] = iface[n] - iface[0];
        }
        outflow
    }

    fn planes<'a>(&self, u: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
        let n = self.n;
        (&u[..n], &u[n..2 * n], &u[2 * n..3 * n])
    }
}

impl SemiDiscrete for Euler1dSystem {
    fn n_values(&self) -> usize {
        3 * self.n
    }

    fn n_components(&self) -> usize {
        3
    }

    fn cell_volume(&self) -> f64 {
        self.dx
    }

    fn min_spacing(&self) -> f64 {
        self.dx
    }

    fn stable_dt(&self, u: &[f64], cfl: f64) -> Result<f64> {
        let (rho, mom, e) = self.planes(u);
        let speed = admissible_speed(rho, mom, e, self.gamma)?;
        Ok(cfl * self.dx / speed.max(MIN_WAVE_SPEED))
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) -> Result<Outflow> {
        let (rho, mom, e) = self.planes(u);
        let alpha = admissible_speed(rho, mom, e, self.gamma)?.max(MIN_WAVE_SPEED);
        Ok(self.rhs_with_alpha(u, alpha, out))
    }

    fn check_state(&self, u: &[f64]) -> Result<()> {
        let (rho, mom, e) = self.planes(u);
        admissible_speed(rho, mom, e, self.gamma).map(|_| ())
    }
}
