//! Error norms, convergence tables and oscillation metrics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WenoError};
use crate::problems::{exact_advection, exact_burgers_riemann_ic, ExactRiemann};
use crate::problems::{Equation, InitialCondition, ProblemSpec};
use crate::solvers::{advance, GridSize, RunOutput, Solution, TimeControls};
use crate::weights::WeightScheme;

/// Discrete L¹ and L∞ norms of an error field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorPair {
    pub l1: f64,
    pub linf: f64,
}

/// `l1 = dx Σ|a - b|`, `linf = max |a - b|`.
pub fn error_norms(numeric: &[f64], exact: &[f64], dx: f64) -> Result<ErrorPair> {
    if numeric.len() != exact.len() {
        return Err(WenoError::LengthMismatch {
            expected: exact.len(),
            actual: numeric.len(),
        });
    }
    let mut l1 = 0.0;
    let mut linf: f64 = 0.0;
    for (a, b) in numeric.iter().zip(exact) {
        let d = (a - b).abs();
        l1 += d;
        linf = linf.max(d);
    }
    Ok(ErrorPair { l1: l1 * dx, linf })
}

/// Exact solution at the points `x` and time `t`: the scalar itself for
/// scalar problems, the density for shock tubes.
pub fn exact_field(problem: &ProblemSpec, x: &[f64], t: f64) -> Result<Vec<f64>> {
    match (problem.equation, problem.initial) {
        (Equation::Advection { a }, ic) => x
            .iter()
            .map(|&x| exact_advection(&ic, a, t, x, &problem.domain))
            .collect(),
        (Equation::Burgers, InitialCondition::BurgersRiemann) => {
            x.iter().map(|&x| exact_burgers_riemann_ic(x, t)).collect()
        }
        (Equation::Euler1d, InitialCondition::Riemann1d { x0, left, right }) => {
            let gamma = problem.gamma.unwrap_or(crate::problems::DEFAULT_GAMMA);
            if t == 0.0 {
                return Ok(x.iter().map(|&x| if x < x0 { left.rho } else { right.rho }).collect());
            }
            let sol = ExactRiemann::solve(left, right, gamma)?;
            Ok(x.iter().map(|&x| sol.sample((x - x0) / t).rho).collect())
        }
        _ => Err(WenoError::InvalidParameter(format!(
            "problem {} has no exact solution",
            problem.id
        ))),
    }
}

/// The field compared against exact solutions: the scalar or the density.
pub fn primary_field(solution: &Solution) -> &[f64] {
    match solution {
        Solution::Scalar(u) => u,
        Solution::Euler1d(s) => &s.rho,
        Solution::Euler2d(s) => &s.rho,
    }
}

/// Error of a finished 1D run against the exact solution at its final time.
pub fn run_error(problem: &ProblemSpec, run: &RunOutput) -> Result<ErrorPair> {
    let exact = exact_field(problem, &run.x, run.diagnostics.t_final)?;
    let dx = problem.domain.length_x() / run.x.len() as f64;
    error_norms(primary_field(&run.solution), &exact, dx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub linf: f64,
    /// `None` on the first row.
    pub rate_linf: Option<f64>,
    pub l1: f64,
    pub rate_l1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub problem: String,
    pub scheme: String,
    pub rows: Vec<ConvergenceRow>,
}

pub const CONVERGENCE_HEADER: &str = "N,Linf,rate_Linf,L1,rate_L1";

/// Scientific notation with five decimals and a signed two-digit exponent,
/// e.g. `1.24987e-02`.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.5e}");
    let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn format_rate(r: Option<f64>) -> String {
    match r {
        None => "-Inf".to_string(),
        Some(r) => format!("{r:.2}"),
    }
}

impl ConvergenceReport {
    pub fn from_errors(problem: &str, scheme: &str, errors: &[(usize, ErrorPair)]) -> Self {
        let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(errors.len());
        for (idx, &(n, e)) in errors.iter().enumerate() {
            let (rate_linf, rate_l1) = if idx == 0 {
                (None, None)
            } else {
                let prev = errors[idx - 1].1;
                (Some((prev.linf / e.linf).log2()), Some((prev.l1 / e.l1).log2()))
            };
            rows.push(ConvergenceRow {
                n,
                linf: e.linf,
                rate_linf,
                l1: e.l1,
                rate_l1,
            });
        }
        Self {
            problem: problem.to_string(),
            scheme: scheme.to_string(),
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CONVERGENCE_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                format_sci(r.linf),
                format_rate(r.rate_linf),
                format_sci(r.l1),
                format_rate(r.rate_l1)
            ));
        }
        out
    }
}

/// Default resolutions of the convergence tables.
pub const DEFAULT_RESOLUTIONS: [usize; 6] = [80, 160, 320, 640, 1280, 2560];

/// Runs `problem` at each resolution and tabulates errors and observed rates.
///
/// Resolutions must double from one row to the next. Runs are independent and
/// execute in parallel; rows are assembled in resolution order.
pub fn convergence_study(
    problem: &ProblemSpec,
    scheme: WeightScheme,
    resolutions: &[usize],
    controls: &TimeControls,
) -> Result<ConvergenceReport> {
    if resolutions.is_empty() {
        return Err(WenoError::InvalidParameter("no resolutions given".into()));
    }
    if resolutions[0] == 0 || resolutions.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(WenoError::InvalidParameter(format!(
            "resolutions must double strictly, got {resolutions:?}"
        )));
    }
    if problem.is_2d() {
        return Err(WenoError::InvalidParameter(
            "convergence studies are one-dimensional".into(),
        ));
    }
    exact_field(problem, &[problem.domain.x_min], controls.t_final)?;
    let errors: Vec<Result<(usize, ErrorPair)>> = resolutions
        .par_iter()
        .map(|&n| {
            let run = advance(problem, scheme, GridSize { nx: n, ny: 1 }, controls)?;
            Ok((n, run_error(problem, &run)?))
        })
        .collect();
    let errors = errors.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_errors(&problem.id, &scheme.display_name(), &errors))
}

/// Bound violations and total variation of a field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationMetrics {
    pub overshoot: f64,
    pub undershoot: f64,
    pub total_variation: f64,
}

pub fn oscillation_metrics(field: &[f64], ic_min: f64, ic_max: f64) -> OscillationMetrics {
    let max = field.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = field.iter().cloned().fold(f64::INFINITY, f64::min);
    let total_variation = field.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    OscillationMetrics {
        overshoot: if field.is_empty() { 0.0 } else { (max - ic_max).max(0.0) },
        undershoot: if field.is_empty() { 0.0 } else { (ic_min - min).max(0.0) },
        total_variation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::problem;

    #[test]
    fn norm_examples() {
        let e = error_norms(&[1.0, 2.0], &[1.0, 2.0], 0.1).unwrap();
        assert_eq!((e.l1, e.linf), (0.0, 0.0));
        let e = error_norms(&[1.0, -1.0], &[0.0, 0.0], 0.5).unwrap();
        assert_eq!((e.l1, e.linf), (1.0, 1.0));
        let c = -3.0;
        let s = error_norms(&[c * 1.0, c * -1.0], &[0.0, 0.0], 0.5).unwrap();
        assert_eq!((s.l1, s.linf), (3.0, 3.0));
        assert!(error_norms(&[1.0], &[1.0, 2.0], 0.1).is_err());
    }

    #[test]
    fn sci_format_matches_tables() {
        assert_eq!(format_sci(1.24987e-2), "1.24987e-02");
        assert_eq!(format_sci(9.28233e-7), "9.28233e-07");
        assert_eq!(format_sci(0.0), "0.00000e+00");
        assert_eq!(format_sci(12345.0), "1.23450e+04");
    }

    #[test]
    fn report_rates_and_sentinel() {
        let errs = [
            (80, ErrorPair { l1: 4.44919e-3, linf: 1.24987e-2 }),
            (160, ErrorPair { l1: 8.45946e-4, linf: 3.81984e-3 }),
        ];
        let csv = ConvergenceReport::from_errors("p", "s", &errs).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CONVERGENCE_HEADER);
        assert_eq!(lines[1], "80,1.24987e-02,-Inf,4.44919e-03,-Inf");
        assert_eq!(lines[2], "160,3.81984e-03,1.71,8.45946e-04,2.39");
    }

    #[test]
    fn oscillation_examples() {
        let m = oscillation_metrics(&[0.0, 1.05, 0.0], 0.0, 1.0);
        assert!((m.overshoot - 0.05).abs() < 1e-15);
        assert_eq!(m.undershoot, 0.0);
        assert!((m.total_variation - 2.1).abs() < 1e-15);
        let m = oscillation_metrics(&[0.2, 0.5, 0.1], 0.0, 1.0);
        assert_eq!((m.overshoot, m.undershoot), (0.0, 0.0));
    }

    #[test]
    fn rejects_non_doubling_resolutions() {
        let p = problem("advection_sin").unwrap();
        let c = TimeControls {
            step: p.step,
            t_final: 0.1,
        };
        assert!(convergence_study(&p, WeightScheme::default(), &[80, 100], &c).is_err());
        assert!(convergence_study(&p, WeightScheme::default(), &[], &c).is_err());
    }

    #[test]
    fn single_resolution_gives_sentinel_row() {
        let p = problem("advection_sin").unwrap();
        let c = TimeControls {
            step: p.step,
            t_final: 0.05,
        };
        let r = convergence_study(&p, WeightScheme::default(), &[40], &c).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.to_csv().lines().nth(1).unwrap().ends_with("-Inf"));
    }
}
