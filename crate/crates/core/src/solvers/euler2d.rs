use rayon::prelude::*;

use crate::error::{Result, WenoError};
use crate::problems::{Primitive, ProblemSpec};
use crate::reconstruction::{flux_difference_into, reconstruct_unchecked, split_into, N_GHOST};
use crate::weights::{PreparedWeights, WeightScheme};

use super::euler1d::{euler_flux, pressure};
use super::{fill_ghosts, Boundaries, BoundaryCondition, Outflow, SemiDiscrete, MIN_WAVE_SPEED};

/// Conservative variables of the 2D Euler equations on an `nx × ny` grid,
/// stored row-major (`j * nx + i`).
#[derive(Debug, Clone, PartialEq)]
pub struct EulerState2D {
    pub nx: usize,
    pub ny: usize,
    pub rho: Vec<f64>,
    pub mom_x: Vec<f64>,
    pub mom_y: Vec<f64>,
    pub energy: Vec<f64>,
    pub gamma: f64,
}

impl EulerState2D {
    pub fn from_primitives(nx: usize, ny: usize, states: &[Primitive], gamma: f64) -> Result<Self> {
        if states.len() != nx * ny {
            return Err(WenoError::LengthMismatch {
                expected: nx * ny,
                actual: states.len(),
            });
        }
        Ok(Self {
            nx,
            ny,
            rho: states.iter().map(|s| s.rho).collect(),
            mom_x: states.iter().map(|s| s.rho * s.u).collect(),
            mom_y: states.iter().map(|s| s.rho * s.v).collect(),
            energy: states
                .iter()
                .map(|s| s.p / (gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v))
                .collect(),
            gamma,
        })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn pressure(&self, idx: usize) -> f64 {
        pressure(self.rho[idx], self.mom_x[idx], self.mom_y[idx], self.energy[idx], self.gamma)
    }

    pub fn primitive(&self, idx: usize) -> Primitive {
        let rho = self.rho[idx];
        Primitive {
            rho,
            u: self.mom_x[idx] / rho,
            v: self.mom_y[idx] / rho,
            p: self.pressure(idx),
        }
    }

    /// Flat `[ρ | ρu | ρv | E]` layout used by the integrator.
    pub fn pack(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(4 * self.rho.len());
        v.extend_from_slice(&self.rho);
        v.extend_from_slice(&self.mom_x);
        v.extend_from_slice(&self.mom_y);
        v.extend_from_slice(&self.energy);
        v
    }

    pub fn unpack(flat: &[f64], nx: usize, ny: usize, gamma: f64) -> Self {
        let n = nx * ny;
        Self {
            nx,
            ny,
            rho: flat[..n].to_vec(),
            mom_x: flat[n..2 * n].to_vec(),
            mom_y: flat[2 * n..3 * n].to_vec(),
            energy: flat[3 * n..4 * n].to_vec(),
            gamma,
        }
    }
}

fn admissible_speeds(planes: [&[f64]; 4], gamma: f64) -> Result<(f64, f64)> {
    let [rho, mx, my, e] = planes;
    let mut ax: f64 = 0.0;
    let mut ay: f64 = 0.0;
    for i in 0..rho.len() {
        let p = pressure(rho[i], mx[i], my[i], e[i], gamma);
        if !(rho[i] > 0.0 && p > 0.0 && mx[i].is_finite() && my[i].is_finite()) {
            if !(rho[i].is_finite() && p.is_finite() && mx[i].is_finite() && my[i].is_finite()) {
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
        ax = ax.max((mx[i] / rho[i]).abs() + c);
        ay = ay.max((my[i] / rho[i]).abs() + c);
    }
    Ok((ax, ay))
}

/// Directional maxima `(max |u| + c, max |v| + c)`.
pub fn max_wave_speed_euler_2d(state: &EulerState2D) -> Result<(f64, f64)> {
    admissible_speeds([&state.rho, &state.mom_x, &state.mom_y, &state.energy], state.gamma)
}

/// Frozen Dirichlet ghosts of one line: `[component][left0, left1, right0, right1]`.
type FrozenLine = [[f64; 4]; 4];

/// Dimension-by-dimension WENO3 semi-discretization of the 2D Euler equations.
#[derive(Debug, Clone)]
pub struct Euler2dSystem {
    wx: PreparedWeights,
    wy: PreparedWeights,
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
    x_min: f64,
    y_min: f64,
    gamma: f64,
    boundaries: Boundaries,
    /// One entry per row for the x-sweep.
    frozen_rows: Vec<FrozenLine>,
    /// One entry per column for the y-sweep.
    frozen_cols: Vec<FrozenLine>,
}

fn conserved(s: &Primitive, gamma: f64) -> [f64; 4] {
    [
        s.rho,
        s.rho * s.u,
        s.rho * s.v,
        s.p / (gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v),
    ]
}

impl Euler2dSystem {
    pub fn new(problem: &ProblemSpec, scheme: WeightScheme, nx: usize, ny: usize, gamma: f64) -> Result<Self> {
        scheme.validate()?;
        problem.boundaries.validate()?;
        if !(gamma > 1.0) {
            return Err(WenoError::InvalidParameter(format!("gamma must exceed 1 (got {gamma})")));
        }
        if nx < 1 || ny < 1 {
            return Err(WenoError::InvalidParameter("empty grid".into()));
        }
        let d = &problem.domain;
        let dx = d.length_x() / nx as f64;
        let dy = d.length_y() / ny as f64;
        let xc = |i: isize| d.x_min + (i as f64 + 0.5) * dx;
        let yc = |j: isize| d.y_min + (j as f64 + 0.5) * dy;
        let ghost_cells = |n: usize| [-2isize, -1, n as isize, n as isize + 1];
        let sample = |x: f64, y: f64| problem.initial.primitive(x, y, dx, dy).map(|s| conserved(&s, gamma));

        let mut frozen_rows = vec![[[0.0; 4]; 4]; ny];
        for (j, line) in frozen_rows.iter_mut().enumerate() {
            for (slot, i) in ghost_cells(nx).into_iter().enumerate() {
                if let Some(c) = sample(xc(i), yc(j as isize)) {
                    for k in 0..4 {
                        line[k][slot] = c[k];
                    }
                }
            }
        }
        let mut frozen_cols = vec![[[0.0; 4]; 4]; nx];
        for (i, line) in frozen_cols.iter_mut().enumerate() {
            for (slot, j) in ghost_cells(ny).into_iter().enumerate() {
                if let Some(c) = sample(xc(i as isize), yc(j)) {
                    for k in 0..4 {
                        line[k][slot] = c[k];
                    }
                }
            }
        }
        Ok(Self {
            wx: PreparedWeights::new(scheme, dx),
            wy: PreparedWeights::new(scheme, dy),
            nx,
            ny,
            dx,
            dy,
            x_min: d.x_min,
            y_min: d.y_min,
            gamma,
            boundaries: problem.boundaries,
            frozen_rows,
            frozen_cols,
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn initial_state(&self, problem: &ProblemSpec) -> Result<EulerState2D> {
        let mut states = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny {
            let y = self.y_min + (j as f64 + 0.5) * self.dy;
            for i in 0..self.nx {
                let x = self.x_min + (i as f64 + 0.5) * self.dx;
                states.push(problem.initial.primitive(x, y, self.dx, self.dy).ok_or_else(|| {
                    WenoError::InvalidParameter(format!("problem {} has no gas-dynamics data", problem.id))
                })?);
            }
        }
        EulerState2D::from_primitives(self.nx, self.ny, &states, self.gamma)
    }

    fn planes<'a>(&self, u: &'a [f64]) -> [&'a [f64]; 4] {
        let n = self.nx * self.ny;
        [&u[..n], &u[n..2 * n], &u[2 * n..3 * n], &u[3 * n..4 * n]]
    }
}

/// Scratch buffers of one directional sweep.
struct LineWork {
    ext: [Vec<f64>; 4],
    flux: [Vec<f64>; 4],
    fp: Vec<f64>,
    fm: Vec<f64>,
    iface: Vec<f64>,
}

impl LineWork {
    fn new(n: usize) -> Self {
        let len = n + 2 * N_GHOST;
        let z = || vec![0.0; len];
        Self {
            ext: [z(), z(), z(), z()],
            flux: [z(), z(), z(), z()],
            fp: z(),
            fm: z(),
            iface: vec![0.0; n + 1],
        }
    }
}

/// Parameters of one sweep direction.
struct Sweep<'a> {
    weights: &'a PreparedWeights,
    h: f64,
    alpha: f64,
    gamma: f64,
    lo: BoundaryCondition,
    hi: BoundaryCondition,
    /// Component index of the momentum normal to the sweep.
    normal: usize,
}

impl Sweep<'_> {
    /// Differentiates one line whose interior values are already in `work.ext`;
    /// writes `-(f̂_{+} - f̂_{-})/h` into `out` and returns the net outflow.
    fn run(&self, work: &mut LineWork, frozen: &FrozenLine, out: [&mut [f64]; 4]) -> [f64; 4] {
        let g = N_GHOST;
        let use_frozen = self.lo == BoundaryCondition::Dirichlet || self.hi == BoundaryCondition::Dirichlet;
        for k in 0..4 {
            let f = use_frozen.then_some((&frozen[k][..2], &frozen[k][2..]));
            fill_ghosts(&mut work.ext[k], g, self.lo, self.hi, k == self.normal, f);
        }
        let tangential = 3 - self.normal;
        for i in 0..work.ext[0].len() {
            let (_, f) = euler_flux(
                work.ext[0][i],
                work.ext[self.normal][i],
                work.ext[tangential][i],
                work.ext[3][i],
                self.gamma,
            );
            work.flux[0][i] = f[0];
            work.flux[self.normal][i] = f[1];
            work.flux[tangential][i] = f[2];
            work.flux[3][i] = f[3];
        }
        let n = work.iface.len() - 1;
        let mut outflow = [0.0; 4];
        for (k, o) in out.into_iter().enumerate() {
            split_into(&work.flux[k], &work.ext[k], self.alpha, &mut work.fp, &mut work.fm);
            reconstruct_unchecked(&work.fp, &work.fm, g, self.weights, &mut work.iface);
            flux_difference_into(&work.iface, self.h, o);
            outflow[k] = work.iface[n] - work.iface[0];
        }
        outflow
    }
}

fn split4(buf: &mut [f64], n: usize) -> [&mut [f64]; 4] {
    let (a, rest) = buf.split_at_mut(n);
    let (b, rest) = rest.split_at_mut(n);
    let (c, d) = rest.split_at_mut(n);
    [a, b, c, &mut d[..n]]
}

/// `L(u) = -∂f/∂x - ∂g/∂y`, each derivative from a 1D WENO3 sweep with
/// global Lax-Friedrichs splitting in its own direction.
///
/// `u` and `out` use the `[ρ | ρu | ρv | E]` layout. Rows (x-sweeps) and
/// columns (y-sweeps) are processed in parallel.
pub fn dimension_split_rhs_2d(system: &Euler2dSystem, u: &[f64], out: &mut [f64]) -> Result<Outflow> {
    let (nx, ny) = (system.nx, system.ny);
    let n = nx * ny;
    if u.len() != 4 * n || out.len() != 4 * n {
        return Err(WenoError::LengthMismatch {
            expected: 4 * n,
            actual: u.len().min(out.len()),
        });
    }
    let planes = system.planes(u);
    let (ax, ay) = admissible_speeds(planes, system.gamma)?;
    let b = system.boundaries;

    let sweep_x = Sweep {
        weights: &system.wx,
        h: system.dx,
        alpha: ax.max(MIN_WAVE_SPEED),
        gamma: system.gamma,
        lo: b.left,
        hi: b.right,
        normal: 1,
    };
    let [o0, o1, o2, o3] = split4(out, n);
    let row_outflow: Vec<[f64; 4]> = o0
        .par_chunks_mut(nx)
        .zip(o1.par_chunks_mut(nx))
        .zip(o2.par_chunks_mut(nx))
        .zip(o3.par_chunks_mut(nx))
        .enumerate()
        .map_init(
            || LineWork::new(nx),
            |work, (j, (((r0, r1), r2), r3))| {
                for k in 0..4 {
                    work.ext[k][N_GHOST..N_GHOST + nx].copy_from_slice(&planes[k][j * nx..(j + 1) * nx]);
                }
                sweep_x.run(work, &system.frozen_rows[j], [r0, r1, r2, r3])
            },
        )
        .collect();

    let sweep_y = Sweep {
        weights: &system.wy,
        h: system.dy,
        alpha: ay.max(MIN_WAVE_SPEED),
        gamma: system.gamma,
        lo: b.bottom,
        hi: b.top,
        normal: 2,
    };
    // column-major scratch: entry i * ny + j
    let mut cols = vec![0.0; 4 * n];
    let [c0, c1, c2, c3] = split4(&mut cols, n);
    let col_outflow: Vec<[f64; 4]> = c0
        .par_chunks_mut(ny)
        .zip(c1.par_chunks_mut(ny))
        .zip(c2.par_chunks_mut(ny))
        .zip(c3.par_chunks_mut(ny))
        .enumerate()
        .map_init(
            || LineWork::new(ny),
            |work, (i, (((r0, r1), r2), r3))| {
                for k in 0..4 {
                    for j in 0..ny {
                        work.ext[k][N_GHOST + j] = planes[k][j * nx + i];
                    }
                }
                sweep_y.run(work, &system.frozen_cols[i], [r0, r1, r2, r3])
            },
        )
        .collect();

    for k in 0..4 {
        let dst = &mut out[k * n..(k + 1) * n];
        let src = &cols[k * n..(k + 1) * n];
        dst.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
            for (i, v) in row.iter_mut().enumerate() {
                *v += src[i * ny + j];
            }
        });
    }

    let mut outflow = [0.0; 4];
    for o in &row_outflow {
        for k in 0..4 {
            outflow[k] += o[k] * system.dy;
        }
    }
    for o in &col_outflow {
        for k in 0..4 {
            outflow[k] += o[k] * system.dx;
        }
    }
    Ok(outflow)
}

impl SemiDiscrete for Euler2dSystem {
    fn n_values(&self) -> usize {
        4 * self.nx * self.ny
    }

    fn n_components(&self) -> usize {
        4
    }

    fn cell_volume(&self) -> f64 {
        self.dx * self.dy
    }

    fn min_spacing(&self) -> f64 {
        self.dx.min(self.dy)
    }

    fn stable_dt(&self, u: &[f64], cfl: f64) -> Result<f64> {
        let (ax, ay) = admissible_speeds(self.planes(u), self.gamma)?;
        let rate = (ax / self.dx + ay / self.dy).max(MIN_WAVE_SPEED / self.dx.min(self.dy));
        Ok(cfl / rate)
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) -> Result<Outflow> {
        dimension_split_rhs_2d(self, u, out)
    }

    fn check_state(&self, u: &[f64]) -> Result<()> {
        admissible_speeds(self.planes(u), self.gamma).map(|_| ())
    }
}
