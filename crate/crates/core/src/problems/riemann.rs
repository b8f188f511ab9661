//! Exact solution of the Riemann problem for the ideal-gas Euler equations,
//! by Newton iteration on the star-region pressure.

use crate::error::{Result, WenoError};

use super::Primitive;

const MAX_ITERATIONS: usize = 100;
const PRESSURE_TOL: f64 = 1e-12;

/// Solved Riemann problem; `sample` evaluates the self-similar solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRiemann {
    pub left: Primitive,
    pub right: Primitive,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
    pub iterations: usize,
}

/// Value and derivative of the pressure function of one side.
fn side_function(p: f64, state: &Primitive, gamma: f64) -> (f64, f64) {
    let c = state.sound_speed(gamma);
    if p > state.p {
        // shock
        let a = 2.0 / ((gamma + 1.0) * state.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * state.p;
        let root = (a / (p + b)).sqrt();
        let f = (p - state.p) * root;
        let df = root * (1.0 - 0.5 * (p - state.p) / (b + p));
        (f, df)
    } else {
        // rarefaction
        let ratio = p / state.p;
        let f = 2.0 * c / (gamma - 1.0) * (ratio.powf((gamma - 1.0) / (2.0 * gamma)) - 1.0);
        let df = 1.0 / (state.rho * c) * ratio.powf(-(gamma + 1.0) / (2.0 * gamma));
        (f, df)
    }
}

impl ExactRiemann {
    pub fn solve(left: Primitive, right: Primitive, gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(WenoError::InvalidParameter(format!("gamma must exceed 1 (got {gamma})")));
        }
        for s in [&left, &right] {
            if !(s.rho > 0.0 && s.p > 0.0) {
                return Err(WenoError::InvalidParameter(
                    "Riemann states need positive density and pressure".into(),
                ));
            }
        }
        let cl = left.sound_speed(gamma);
        let cr = right.sound_speed(gamma);
        let du = right.u - left.u;
        if 2.0 / (gamma - 1.0) * (cl + cr) <= du {
            return Err(WenoError::InvalidParameter(
                "initial data generate vacuum".into(),
            ));
        }

        // primitive-variable guess, kept positive
        let pv = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (cl + cr);
        let mut p = pv.max(PRESSURE_TOL);
        let mut residual = f64::INFINITY;
        for it in 1..=MAX_ITERATIONS {
            let (fl, dfl) = side_function(p, &left, gamma);
            let (fr, dfr) = side_function(p, &right, gamma);
            residual = fl + fr + du;
            let mut next = p - residual / (dfl + dfr);
            if next <= 0.0 {
                next = 0.5 * p;
            }
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < PRESSURE_TOL {
                let (fl, _) = side_function(p, &left, gamma);
                let (fr, _) = side_function(p, &right, gamma);
                return Ok(Self {
                    left,
                    right,
                    gamma,
                    p_star: p,
                    u_star: 0.5 * (left.u + right.u) + 0.5 * (fr - fl),
                    iterations: it,
                });
            }
        }
        Err(WenoError::RiemannNonConvergence {
            iterations: MAX_ITERATIONS,
            residual: residual.abs(),
        })
    }

    /// Primitive state at `ξ = x/t`.
    pub fn sample(&self, xi: f64) -> Primitive {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let gm = (g - 1.0) / (g + 1.0);
        if xi <= us {
            let s = self.left;
            let c = s.sound_speed(g);
            let with = |rho: f64, u: f64, p: f64| Primitive { rho, u, v: s.v, p };
            if ps > s.p {
                let shock = s.u - c * ((g + 1.0) / (2.0 * g) * ps / s.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi <= shock {
                    s
                } else {
                    let rho = s.rho * (ps / s.p + gm) / (gm * ps / s.p + 1.0);
                    with(rho, us, ps)
                }
            } else {
                let head = s.u - c;
                let c_star = c * (ps / s.p).powf((g - 1.0) / (2.0 * g));
                let tail = us - c_star;
                if xi <= head {
                    s
                } else if xi >= tail {
                    with(s.rho * (ps / s.p).powf(1.0 / g), us, ps)
                } else {
                    let cf = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    with(
                        s.rho * cf.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * s.u + xi),
                        s.p * cf.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        } else {
            let s = self.right;
            let c = s.sound_speed(g);
            let with = |rho: f64, u: f64, p: f64| Primitive { rho, u, v: s.v, p };
            if ps > s.p {
                let shock = s.u + c * ((g + 1.0) / (2.0 * g) * ps / s.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi >= shock {
                    s
                } else {
                    let rho = s.rho * (ps / s.p + gm) / (gm * ps / s.p + 1.0);
                    with(rho, us, ps)
                }
            } else {
                let head = s.u + c;
                let c_star = c * (ps / s.p).powf((g - 1.0) / (2.0 * g));
                let tail = us + c_star;
                if xi >= head {
                    s
                } else if xi <= tail {
                    with(s.rho * (ps / s.p).powf(1.0 / g), us, ps)
                } else {
                    let cf = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    with(
                        s.rho * cf.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (-c + (g - 1.0) / 2.0 * s.u + xi),
                        s.p * cf.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        }
    }
}

/// Self-similar solution of the Riemann problem `(left, right)` at `ξ = x/t`.
pub fn exact_riemann_euler(left: Primitive, right: Primitive, gamma: f64, x_over_t: f64) -> Result<Primitive> {
    Ok(ExactRiemann::solve(left, right, gamma)?.sample(x_over_t))
}
