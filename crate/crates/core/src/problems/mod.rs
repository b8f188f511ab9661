//! Registry of the benchmark problems and their exact/reference solutions.

mod exact;
mod riemann;

pub use exact::{exact_advection, exact_burgers_riemann_ic, BURGERS_VALIDITY_LIMIT};
pub use riemann::{exact_riemann_euler, ExactRiemann};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WenoError};
use crate::solvers::{BoundaryCondition, Boundaries};

/// Ratio of specific heats used by every gas-dynamics problem.
pub const DEFAULT_GAMMA: f64 = 1.4;

/// Subcells per direction used to area-weight cells cut by a curved interface.
pub const INTERFACE_SUBSAMPLES: usize = 16;

/// Primitive gas state; `v` is zero in 1D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Primitive {
    pub const fn new_1d(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, v: 0.0, p }
    }

    /// Builds a state from the `(p, ρ, u, v)` ordering used by the 2D Riemann tables.
    pub const fn from_pruv(p: f64, rho: f64, u: f64, v: f64) -> Self {
        Self { rho, u, v, p }
    }

    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }

    /// Area-weighted blend: `frac` of `self` and `1 - frac` of `other`.
    pub fn blend(&self, other: &Primitive, frac: f64) -> Primitive {
        let mix = |a: f64, b: f64| frac * a + (1.0 - frac) * b;
        Primitive {
            rho: mix(self.rho, other.rho),
            u: mix(self.u, other.u),
            v: mix(self.v, other.v),
            p: mix(self.p, other.p),
        }
    }
}

/// Governing equation of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    Advection { a: f64 },
    Burgers,
    Euler1d,
    Euler2d,
}

impl Equation {
    pub fn is_scalar(&self) -> bool {
        matches!(self, Equation::Advection { .. } | Equation::Burgers)
    }

    pub fn dimension(&self) -> usize {
        if matches!(self, Equation::Euler2d) {
            2
        } else {
            1
        }
    }
}

/// Time-step rule: a CFL number or a fixed `Δt/Δx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    Cfl(f64),
    DtOverDx(f64),
}

/// Axis-aligned computational domain; `y` bounds are unused in 1D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain {
    pub const fn line(x_min: f64, x_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min: 0.0,
            y_max: 0.0,
        }
    }

    pub const fn rect(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn length_x(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn length_y(&self) -> f64 {
        self.y_max - self.y_min
    }
}

/// Initial data of every registered problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// 1 for `|x| <= half_width`, else 0.
    Square { half_width: f64 },
    /// `[0.5 + 0.5 cos(ω(x - x_c))]⁴` for `|x - x_c| < σ`, else 0.
    CosineBump { center: f64, sigma: f64, omega: f64 },
    /// `sin(πx)`
    Sine,
    /// `sin⁴(πx)`
    Sine4,
    /// 1 for `|x| < 1/3`, -1 otherwise.
    BurgersRiemann,
    /// Left state for `x < x0`, right state otherwise.
    Riemann1d { x0: f64, left: Primitive, right: Primitive },
    /// Post-shock state for `x < -4`, density-perturbed rest state otherwise.
    ShuOsher,
    /// Four constant states separated by `x = x0` and `y = y0`.
    Quadrants {
        x0: f64,
        y0: f64,
        ne: Primitive,
        nw: Primitive,
        sw: Primitive,
        se: Primitive,
    },
    /// Disc of radius `radius` about the origin; cut cells are area weighted.
    Disc {
        radius: f64,
        inside: Primitive,
        outside: Primitive,
    },
    /// Diamond `|x| + |y| < half_diagonal`.
    Diamond {
        half_diagonal: f64,
        inside: Primitive,
        outside: Primitive,
    },
}

impl InitialCondition {
    /// Scalar initial value at `x`. Returns `None` for gas-dynamics data.
    pub fn scalar(&self, x: f64) -> Option<f64> {
        Some(match *self {
            InitialCondition::Square { half_width } => {
                if x.abs() <= half_width {
                    1.0
                } else {
                    0.0
                }
            }
            InitialCondition::CosineBump {
                center,
                sigma,
                omega,
            } => {
                if (x - center).abs() < sigma {
                    (0.5 + 0.5 * (omega * (x - center)).cos()).powi(4)
                } else {
                    0.0
                }
            }
            InitialCondition::Sine => (PI * x).sin(),
            InitialCondition::Sine4 => (PI * x).sin().powi(4),
            InitialCondition::BurgersRiemann => {
                if x.abs() < 1.0 / 3.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            _ => return None,
        })
    }

    /// Primitive gas state of the cell centered at `(x, y)` with widths `(dx, dy)`.
    /// Returns `None` for scalar data.
    pub fn primitive(&self, x: f64, y: f64, dx: f64, dy: f64) -> Option<Primitive> {
        Some(match *self {
            InitialCondition::Riemann1d { x0, left, right } => {
                if x < x0 {
                    left
                } else {
                    right
                }
            }
            InitialCondition::ShuOsher => {
                if x < -4.0 {
                    Primitive::new_1d(3.857143, 2.629369, 10.33333)
                } else {
                    Primitive::new_1d(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
                }
            }
            InitialCondition::Quadrants {
                x0,
                y0,
                ne,
                nw,
                sw,
                se,
            } => match (x >= x0, y >= y0) {
                (true, true) => ne,
                (false, true) => nw,
                (false, false) => sw,
                (true, false) => se,
            },
            InitialCondition::Disc {
                radius,
                inside,
                outside,
            } => {
                let frac = disc_fraction(x, y, dx, dy, radius);
                if frac == 1.0 {
                    inside
                } else if frac == 0.0 {
                    outside
                } else {
                    inside.blend(&outside, frac)
                }
            }
            InitialCondition::Diamond {
                half_diagonal,
                inside,
                outside,
            } => {
                if x.abs() + y.abs() < half_diagonal {
                    inside
                } else {
                    outside
                }
            }
            _ => return None,
        })
    }
}

/// Fraction of the cell `[x ± dx/2] × [y ± dy/2]` inside the disc of radius
/// `radius` about the origin, by midpoint sampling on a 16×16 subgrid.
fn disc_fraction(x: f64, y: f64, dx: f64, dy: f64, radius: f64) -> f64 {
    let r2 = radius * radius;
    // exact answer for cells entirely inside or outside
    let near_x = (x.abs() - 0.5 * dx).max(0.0);
    let near_y = (y.abs() - 0.5 * dy).max(0.0);
    let far_x = x.abs() + 0.5 * dx;
    let far_y = y.abs() + 0.5 * dy;
    if far_x * far_x + far_y * far_y <= r2 {
        return 1.0;
    }
    if near_x * near_x + near_y * near_y >= r2 {
        return 0.0;
    }
    let m = INTERFACE_SUBSAMPLES;
    let mut inside = 0usize;
    for a in 0..m {
        let xs = x - 0.5 * dx + (a as f64 + 0.5) * dx / m as f64;
        for b in 0..m {
            let ys = y - 0.5 * dy + (b as f64 + 0.5) * dy / m as f64;
            if xs * xs + ys * ys < r2 {
                inside += 1;
            }
        }
    }
    inside as f64 / (m * m) as f64
}

/// Full description of one benchmark problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub id: String,
    pub description: String,
    pub equation: Equation,
    pub domain: Domain,
    pub default_nx: usize,
    pub default_ny: usize,
    pub boundaries: Boundaries,
    pub t_final: f64,
    pub step: StepRule,
    pub gamma: Option<f64>,
    pub initial: InitialCondition,
}

impl ProblemSpec {
    pub fn is_2d(&self) -> bool {
        self.equation.dimension() == 2
    }

    /// Whether an exact solution exists for error measurement at `t`.
    pub fn has_exact_solution(&self, t: f64) -> bool {
        match self.initial {
            InitialCondition::Square { .. }
            | InitialCondition::CosineBump { .. }
            | InitialCondition::Sine
            | InitialCondition::Sine4 => true,
            InitialCondition::BurgersRiemann => (0.0..BURGERS_VALIDITY_LIMIT).contains(&t),
            InitialCondition::Riemann1d { .. } => true,
            _ => false,
        }
    }
}

/// Stable problem identifiers, in registry order.
pub const PROBLEM_IDS: [&str; 12] = [
    "advection_square",
    "advection_bump",
    "advection_sin",
    "advection_sin4",
    "burgers_riemann",
    "sod",
    "lax",
    "shu_osher",
    "riemann2d_a",
    "riemann2d_b",
    "explosion",
    "implosion",
];

/// Default grid of the square-wave and bump figures, which do not state one.
pub const DEFAULT_SCALAR_CELLS: usize = 200;

pub fn builtin_problems() -> Vec<ProblemSpec> {
    use BoundaryCondition::*;
    let periodic = Boundaries::uniform(Periodic);
    let open = Boundaries::uniform(ZeroGradient);
    let advection = |id: &str, description: &str, domain, t_final, step, initial| ProblemSpec {
        id: id.into(),
        description: description.into(),
        equation: Equation::Advection { a: 1.0 },
        domain,
        default_nx: DEFAULT_SCALAR_CELLS,
        default_ny: 1,
        boundaries: periodic,
        t_final,
        step,
        gamma: None,
        initial,
    };
    let euler1d = |id: &str, description: &str, nx, t_final, cfl, initial| ProblemSpec {
        id: id.into(),
        description: description.into(),
        equation: Equation::Euler1d,
        domain: Domain::line(-5.0, 5.0),
        default_nx: nx,
        default_ny: 1,
        boundaries: open,
        t_final,
        step: StepRule::Cfl(cfl),
        gamma: Some(DEFAULT_GAMMA),
        initial,
    };
    let euler2d = |id: &str, description: &str, domain, boundaries, t_final, cfl, initial| ProblemSpec {
        id: id.into(),
        description: description.into(),
        equation: Equation::Euler2d,
        domain,
        default_nx: 400,
        default_ny: 400,
        boundaries,
        t_final,
        step: StepRule::Cfl(cfl),
        gamma: Some(DEFAULT_GAMMA),
        initial,
    };

    vec![
        advection(
            "advection_square",
            "linear advection of a square wave on [-1, 1]",
            Domain::line(-1.0, 1.0),
            2.0,
            StepRule::DtOverDx(0.5),
            InitialCondition::Square { half_width: 0.3 },
        ),
        advection(
            "advection_bump",
            "linear advection of a smooth bump with sharp turns on [0, 1]",
            Domain::line(0.0, 1.0),
            10.0,
            StepRule::DtOverDx(0.5),
            InitialCondition::CosineBump {
                center: 0.5,
                sigma: 0.2,
                omega: 5.0 * PI,
            },
        ),
        advection(
            "advection_sin",
            "linear advection of sin(pi x) on [-1, 1]",
            Domain::line(-1.0, 1.0),
            0.5,
            StepRule::Cfl(0.25),
            InitialCondition::Sine,
        ),
        advection(
            "advection_sin4",
            "linear advection of sin^4(pi x) on [0, 1]",
            Domain::line(0.0, 1.0),
            0.5,
            StepRule::Cfl(0.25),
            InitialCondition::Sine4,
        ),
        ProblemSpec {
            id: "burgers_riemann".into(),
            description: "inviscid Burgers: left rarefaction and steady shock at x = 1/3".into(),
            equation: Equation::Burgers,
            domain: Domain::line(-1.0, 1.0),
            default_nx: 100,
            default_ny: 1,
            boundaries: periodic,
            t_final: 0.3,
            step: StepRule::Cfl(0.5),
            gamma: None,
            initial: InitialCondition::BurgersRiemann,
        },
        euler1d(
            "sod",
            "Sod shock tube",
            200,
            1.3,
            0.4,
            InitialCondition::Riemann1d {
                x0: 0.0,
                left: Primitive::new_1d(1.0, 0.0, 1.0),
                right: Primitive::new_1d(0.125, 0.0, 0.1),
            },
        ),
        euler1d(
            "lax",
            "Lax shock tube",
            200,
            1.3,
            0.25,
            InitialCondition::Riemann1d {
                x0: 0.0,
                left: Primitive::new_1d(0.445, 0.698, 3.528),
                right: Primitive::new_1d(0.5, 0.0, 0.571),
            },
        ),
        euler1d(
            "shu_osher",
            "Shu-Osher shock / entropy-wave interaction",
            800,
            1.8,
            0.25,
            InitialCondition::ShuOsher,
        ),
        euler2d(
            "riemann2d_a",
            "2D Riemann problem, quadrants split at x = y = 0.5",
            Domain::rect(0.0, 1.0, 0.0, 1.0),
            Boundaries::uniform(Dirichlet),
            0.25,
            0.45,
            InitialCondition::Quadrants {
                x0: 0.5,
                y0: 0.5,
                ne: Primitive::from_pruv(0.4, 0.5197, 0.1, 0.1),
                nw: Primitive::from_pruv(1.0, 1.0, -0.6259, 0.1),
                sw: Primitive::from_pruv(1.0, 0.8, 0.1, 0.1),
                se: Primitive::from_pruv(1.0, 1.0, 0.1, -0.6259),
            },
        ),
        euler2d(
            "riemann2d_b",
            "2D Riemann problem, quadrants split at x = y = 0.8",
            Domain::rect(0.0, 1.0, 0.0, 1.0),
            Boundaries::uniform(Dirichlet),
            0.8,
            0.15,
            InitialCondition::Quadrants {
                x0: 0.8,
                y0: 0.8,
                ne: Primitive::from_pruv(1.5, 1.5, 0.0, 0.0),
                nw: Primitive::from_pruv(0.3, 0.5323, 1.206, 0.0),
                sw: Primitive::from_pruv(0.029, 0.138, 1.206, 1.206),
                se: Primitive::from_pruv(0.3, 0.5323, 0.0, 1.206),
            },
        ),
        euler2d(
            "explosion",
            "circular explosion, quadrant (0, 1.5)^2 with symmetry walls",
            Domain::rect(0.0, 1.5, 0.0, 1.5),
            Boundaries {
                left: Reflecting,
                right: ZeroGradient,
                bottom: Reflecting,
                top: ZeroGradient,
            },
            3.2,
            0.15,
            InitialCondition::Disc {
                radius: 0.4,
                inside: Primitive::new_1d(1.0, 0.0, 1.0),
                outside: Primitive::new_1d(0.125, 0.0, 0.1),
            },
        ),
        euler2d(
            "implosion",
            "implosion in a box, upper-right quadrant (0, 0.3)^2",
            Domain::rect(0.0, 0.3, 0.0, 0.3),
            Boundaries::uniform(Reflecting),
            2.5,
            0.25,
            InitialCondition::Diamond {
                half_diagonal: 0.15,
                inside: Primitive::new_1d(0.125, 0.0, 0.14),
                outside: Primitive::new_1d(1.0, 0.0, 1.0),
            },
        ),
    ]
}

/// Looks up a problem by its stable id.
pub fn problem(id: &str) -> Result<ProblemSpec> {
    builtin_problems()
        .into_iter()
        .find(|p| p.id == id)
        .ok_or_else(|| WenoError::UnknownProblem(id.to_string()))
}
