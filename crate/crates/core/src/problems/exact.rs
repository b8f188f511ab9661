use crate::error::{Result, WenoError};

use super::{Domain, InitialCondition};

/// The Burgers Riemann solution is exact until the rarefaction reaches the shock at t = 2/3.
pub const BURGERS_VALIDITY_LIMIT: f64 = 2.0 / 3.0;

/// Wraps `x` into `[x_min, x_max)`.
fn wrap(x: f64, domain: &Domain) -> f64 {
    let len = domain.length_x();
    let y = (x - domain.x_min).rem_euclid(len);
    domain.x_min + y
}

/// Exact periodic transport `u(x, t) = u0(x - a t)` of a scalar initial condition.
pub fn exact_advection(ic: &InitialCondition, a: f64, t: f64, x: f64, domain: &Domain) -> Result<f64> {
    let x0 = if t == 0.0 { x } else { wrap(x - a * t, domain) };
    ic.scalar(x0).ok_or_else(|| {
        WenoError::InvalidParameter("exact advection needs a scalar initial condition".into())
    })
}

/// Exact Burgers solution for the `±1` data switching at `|x| = 1/3` on the
/// periodic domain `[-1, 1]`: a rarefaction fan centered at `x = -1/3` and a
/// steady shock at `x = 1/3`.
pub fn exact_burgers_riemann_ic(x: f64, t: f64) -> Result<f64> {
    if !(0.0..BURGERS_VALIDITY_LIMIT).contains(&t) {
        return Err(WenoError::OutsideValidity {
            t,
            limit: BURGERS_VALIDITY_LIMIT,
        });
    }
    let x = wrap(x, &Domain::line(-1.0, 1.0));
    if t == 0.0 {
        return Ok(InitialCondition::BurgersRiemann.scalar(x).unwrap_or(-1.0));
    }
    let fan_center = -1.0 / 3.0;
    Ok(if x < fan_center - t {
        -1.0
    } else if x <= fan_center + t {
        (x - fan_center) / t
    } else if x < 1.0 / 3.0 {
        1.0
    } else {
        -1.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn advection_identity_and_period() {
        let d = Domain::line(-1.0, 1.0);
        let ic = InitialCondition::Sine;
        for x in [-0.9, -0.1, 0.37] {
            assert_eq!(exact_advection(&ic, 1.0, 0.0, x, &d).unwrap(), ic.scalar(x).unwrap());
            let v = exact_advection(&ic, 1.0, 2.0, x, &d).unwrap();
            assert!((v - ic.scalar(x).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn square_wave_shifts() {
        let d = Domain::line(-1.0, 1.0);
        let ic = InitialCondition::Square { half_width: 0.3 };
        assert_eq!(exact_advection(&ic, 1.0, 0.5, 0.75, &d).unwrap(), 1.0);
        assert_eq!(exact_advection(&ic, 1.0, 0.5, 0.85, &d).unwrap(), 0.0);
        assert_eq!(exact_advection(&ic, 1.0, 0.5, 0.15, &d).unwrap(), 0.0);
        assert_eq!(exact_advection(&ic, 1.0, 0.5, 0.25, &d).unwrap(), 1.0);
    }

    #[test]
    fn burgers_structure() {
        let t = 0.3;
        let left_edge = -1.0 / 3.0 - t;
        let right_edge = -1.0 / 3.0 + t;
        assert_eq!(exact_burgers_riemann_ic(left_edge - 1e-9, t).unwrap(), -1.0);
        assert!((exact_burgers_riemann_ic(left_edge + 1e-12, t).unwrap() + 1.0).abs() < 1e-9);
        assert!((exact_burgers_riemann_ic(right_edge, t).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(exact_burgers_riemann_ic(0.0, t).unwrap(), 1.0);
        // steady shock
        for t in [0.1, 0.3, 0.6] {
            assert_eq!(exact_burgers_riemann_ic(1.0 / 3.0 - 1e-9, t).unwrap(), 1.0);
            assert_eq!(exact_burgers_riemann_ic(1.0 / 3.0 + 1e-9, t).unwrap(), -1.0);
        }
        assert!(exact_burgers_riemann_ic(0.0, 0.7).is_err());
        assert!(exact_burgers_riemann_ic(0.0, -0.1).is_err());
    }
}
