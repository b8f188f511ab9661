//! Nonlinear weights for the third-order WENO reconstruction.
//!
//! Two families live here. The classical α-based weights (JS3, Z3, N3, P+3)
//! normalize unnormalized weights `α_k` built from smoothness indicators. The
//! weight-limiter family maps the consecutive-gradient ratio `r` through a
//! limiter function `χ(r)` and sets the upwind weight directly:
//!
//! ```text
//! ω0 = 1/3 + 2/3 (1 - χ(r)),   ω1 = 1 - ω0
//! ```
//!
//! Every function in this module is pure and allocation-free.

use std::fmt;

use crate::error::{Result, WenoError};

/// Ideal (linear) weight of the upwind candidate.
pub const D0: f64 = 1.0 / 3.0;
/// Ideal (linear) weight of the centered candidate.
pub const D1: f64 = 2.0 / 3.0;

/// Relative threshold below which the forward difference counts as degenerate.
pub const RATIO_REL_TOL: f64 = 1e-12;
/// Absolute floor for "flat" differences.
pub const RATIO_ABS_TOL: f64 = 1e-300;
/// Magnitude returned for a degenerate forward difference.
pub const RATIO_MAX: f64 = 1e12;

/// Default `ε` for the α-based schemes.
pub const DEFAULT_EPSILON: f64 = 1e-6;
/// Default JS3 exponent.
pub const DEFAULT_POWER: u32 = 2;

/// Split-flux values `(f_{i-1}, f_i, f_{i+1})` feeding one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilValues {
    pub fm1: f64,
    pub f0: f64,
    pub fp1: f64,
}

impl StencilValues {
    pub const fn new(fm1: f64, f0: f64, fp1: f64) -> Self {
        Self { fm1, f0, fp1 }
    }

    pub fn is_finite(&self) -> bool {
        self.fm1.is_finite() && self.f0.is_finite() && self.fp1.is_finite()
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(WenoError::NonFiniteStencil {
                fm1: self.fm1,
                f0: self.f0,
                fp1: self.fp1,
            })
        }
    }

    pub fn scaled(self, c: f64) -> Self {
        Self::new(c * self.fm1, c * self.f0, c * self.fp1)
    }

    /// `f_i - f_{i-1}`
    #[inline]
    pub fn backward_diff(&self) -> f64 {
        self.f0 - self.fm1
    }

    /// `f_{i+1} - f_i`
    #[inline]
    pub fn forward_diff(&self) -> f64 {
        self.fp1 - self.f0
    }
}

/// Smoothness indicators of the two sub-stencils plus the global measures used
/// by the Z3, N3 and P+3 weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessIndicators {
    pub beta0: f64,
    pub beta1: f64,
    pub beta3: f64,
    pub tau_p: f64,
}

impl SmoothnessIndicators {
    /// Global indicator of WENO-Z3: `|β0 - β1|`.
    pub fn tau_z(&self) -> f64 {
        (self.beta0 - self.beta1).abs()
    }

    /// Global indicator of WENO-N3: `|(β0 + β1)/2 - β3|`.
    pub fn tau_n(&self) -> f64 {
        (0.5 * (self.beta0 + self.beta1) - self.beta3).abs()
    }
}

pub fn smoothness_indicators(s: &StencilValues) -> SmoothnessIndicators {
    let beta0 = s.backward_diff() * s.backward_diff();
    let beta1 = s.forward_diff() * s.forward_diff();
    let second = s.fm1 - 2.0 * s.f0 + s.fp1;
    let wide = s.fm1 - s.fp1;
    let beta3 = 13.0 / 12.0 * second * second + 0.25 * wide * wide;
    let tau_p = (0.5 * (beta0 + beta1) - 0.25 * wide * wide).abs();
    SmoothnessIndicators {
        beta0,
        beta1,
        beta3,
        tau_p,
    }
}

/// Ratio of consecutive gradients `r = Δ₋f / Δ₊f`.
///
/// A forward difference that is negligible against the backward one yields
/// `±RATIO_MAX` (sign of `Δ₋f·Δ₊f`, positive when `Δ₊f == 0`); flat data
/// (both differences below `RATIO_ABS_TOL`) yields 1.
#[inline]
pub fn gradient_ratio(s: &StencilValues) -> f64 {
    let back = s.backward_diff();
    let fwd = s.forward_diff();
    let back_abs = back.abs();
    let fwd_abs = fwd.abs();
    if back_abs < RATIO_ABS_TOL && fwd_abs < RATIO_ABS_TOL {
        return 1.0;
    }
    if fwd_abs < RATIO_REL_TOL * back_abs.max(RATIO_ABS_TOL) {
        return if fwd == 0.0 || (back > 0.0) == (fwd > 0.0) {
            RATIO_MAX
        } else {
            -RATIO_MAX
        };
    }
    back / fwd
}

/// Parameter `k` of the `χ5` limiter family.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LimiterK(f64);

impl LimiterK {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// The weight-limiter functions `χ(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimiterKind {
    /// `3r² / (2r² + 1)`
    Chi1,
    /// `3|r| / (2|r| + 1)`
    Chi2,
    /// `min(|r|, 3/2)`
    Chi3,
    /// `min(2|r| / (1 + |r|), 3/2)`
    Chi4,
    /// `min(k|r|, max(1, 3|r| / (2|r| + k)))`
    Chi5(LimiterK),
}

impl LimiterKind {
    /// `χ5` with `1 <= k <= 3`; larger `k` breaks the non-oscillatory region
    /// of the upwind and centered candidates.
    pub fn chi5(k: f64) -> Result<Self> {
        if !(1.0..=3.0).contains(&k) {
            return Err(WenoError::InvalidParameter(format!(
                "chi5 requires 1 <= k <= 3 (got {k}); use the unsafe override to go outside"
            )));
        }
        Ok(LimiterKind::Chi5(LimiterK(k)))
    }

    /// `χ5` with any finite `k > 0`. Used to reproduce the oscillatory `k = 4` runs.
    pub fn chi5_unrestricted(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(WenoError::InvalidParameter(format!(
                "chi5 parameter must be finite and positive (got {k})"
            )));
        }
        Ok(LimiterKind::Chi5(LimiterK(k)))
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        let a = r.abs();
        match *self {
            LimiterKind::Chi1 => {
                let r2 = r * r;
                (3.0 * r2 / (2.0 * r2 + 1.0)).min(1.5)
            }
            LimiterKind::Chi2 => (3.0 * a / (2.0 * a + 1.0)).min(1.5),
            LimiterKind::Chi3 => a.min(1.5),
            LimiterKind::Chi4 => (2.0 * a / (1.0 + a)).min(1.5),
            LimiterKind::Chi5(LimiterK(k)) => (k * a).min(1.0f64.max(3.0 * a / (2.0 * a + k))),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            LimiterKind::Chi1 => "chi1",
            LimiterKind::Chi2 => "chi2",
            LimiterKind::Chi3 => "chi3",
            LimiterKind::Chi4 => "chi4",
            LimiterKind::Chi5(_) => "chi5",
        }
    }
}

/// Evaluates the limiter `kind` at `r`. The result lies in `[0, 3/2]`.
pub fn chi_eval(kind: LimiterKind, r: f64) -> f64 {
    kind.eval(r)
}

/// Selects one nonlinear-weight family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightScheme {
    Js3 { epsilon: f64, p: u32 },
    Z3 { epsilon: f64 },
    N3 { epsilon: f64 },
    Pplus3 { epsilon: f64 },
    Limiter(LimiterKind),
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::Limiter(LimiterKind::Chi1)
    }
}

impl WeightScheme {
    pub fn js3() -> Self {
        WeightScheme::Js3 {
            epsilon: DEFAULT_EPSILON,
            p: DEFAULT_POWER,
        }
    }

    pub fn z3() -> Self {
        WeightScheme::Z3 {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn n3() -> Self {
        WeightScheme::N3 {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn pplus3() -> Self {
        WeightScheme::Pplus3 {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let eps = match *self {
            WeightScheme::Js3 { epsilon, p } => {
                if p == 0 {
                    return Err(WenoError::InvalidParameter(
                        "JS3 exponent p must be positive".into(),
                    ));
                }
                epsilon
            }
            WeightScheme::Z3 { epsilon }
            | WeightScheme::N3 { epsilon }
            | WeightScheme::Pplus3 { epsilon } => epsilon,
            WeightScheme::Limiter(_) => return Ok(()),
        };
        if eps.is_finite() && eps > 0.0 {
            Ok(())
        } else {
            Err(WenoError::InvalidParameter(format!(
                "epsilon must be finite and positive (got {eps})"
            )))
        }
    }

    /// Human-readable name in the naming convention of the experiments.
    pub fn display_name(&self) -> String {
        match self {
            WeightScheme::Js3 { .. } => "WENO-JS3".into(),
            WeightScheme::Z3 { .. } => "WENO-Z3".into(),
            WeightScheme::N3 { .. } => "WENO-N3".into(),
            WeightScheme::Pplus3 { .. } => "WENO-P+3".into(),
            WeightScheme::Limiter(LimiterKind::Chi5(k)) => format!("WENO3-w0,5^{}", k.get()),
            WeightScheme::Limiter(kind) => format!("WENO3-w0^{}", &kind.tag()[3..]),
        }
    }
}

/// Normalized weight pair of the upwind (`w0`) and centered (`w1`) candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightPair {
    pub w0: f64,
    pub w1: f64,
}

impl WeightPair {
    pub const IDEAL: WeightPair = WeightPair { w0: D0, w1: D1 };

    /// Upwind weight `w0` with `w1 = 1 - w0`.
    #[inline]
    fn from_upwind(w0: f64) -> Self {
        let w0 = w0.clamp(0.0, 1.0);
        WeightPair { w0, w1: 1.0 - w0 }
    }

    /// Normalizes nonnegative unnormalized weights. The smaller weight is
    /// divided by the sum and the larger one is its complement, so
    /// `w0 + w1 == 1.0` holds in floating point.
    #[inline]
    fn normalize(a0: f64, a1: f64) -> Self {
        if a1 == 2.0 * a0 {
            return Self::IDEAL;
        }
        let sum = a0 + a1;
        if !sum.is_finite() || sum == 0.0 {
            return match (a0.is_infinite(), a1.is_infinite()) {
                (true, false) => WeightPair { w0: 1.0, w1: 0.0 },
                (false, true) => WeightPair { w0: 0.0, w1: 1.0 },
                _ => Self::IDEAL,
            };
        }
        if a0 >= a1 {
            let w1 = a1 / sum;
            WeightPair { w0: 1.0 - w1, w1 }
        } else {
            let w0 = a0 / sum;
            WeightPair { w0, w1: 1.0 - w0 }
        }
    }
}

/// A scheme with its grid-dependent constants resolved, ready for the inner
/// reconstruction loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparedWeights {
    scheme: WeightScheme,
    lambda_p: f64,
}

impl PreparedWeights {
    pub fn new(scheme: WeightScheme, dx: f64) -> Self {
        let lambda_p = match scheme {
            WeightScheme::Pplus3 { .. } => dx.powf(1.0 / 6.0),
            _ => 0.0,
        };
        Self { scheme, lambda_p }
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
    }

    #[inline]
    pub fn weights(&self, s: &StencilValues) -> WeightPair {
        match self.scheme {
            WeightScheme::Limiter(kind) => limiter_weights(kind, gradient_ratio(s)),
            WeightScheme::Js3 { epsilon, p } => {
                let b0 = s.backward_diff() * s.backward_diff();
                let b1 = s.forward_diff() * s.forward_diff();
                if b0 == b1 {
                    return WeightPair::IDEAL;
                }
                let (a0, a1) = if p == 2 {
                    let q0 = epsilon + b0;
                    let q1 = epsilon + b1;
                    (D0 / (q0 * q0), D1 / (q1 * q1))
                } else {
                    let p = p as i32;
                    (D0 / (epsilon + b0).powi(p), D1 / (epsilon + b1).powi(p))
                };
                WeightPair::normalize(a0, a1)
            }
            WeightScheme::Z3 { epsilon } => {
                let b0 = s.backward_diff() * s.backward_diff();
                let b1 = s.forward_diff() * s.forward_diff();
                let tau = (b0 - b1).abs();
                WeightPair::normalize(
                    D0 * (1.0 + tau / (epsilon + b0)),
                    D1 * (1.0 + tau / (epsilon + b1)),
                )
            }
            WeightScheme::N3 { epsilon } => {
                let si = smoothness_indicators(s);
                let tau = si.tau_n();
                WeightPair::normalize(
                    D0 * (1.0 + tau / (epsilon + si.beta0)),
                    D1 * (1.0 + tau / (epsilon + si.beta1)),
                )
            }
            WeightScheme::Pplus3 { epsilon } => {
                let si = smoothness_indicators(s);
                let tau = si.tau_p;
                let lam = self.lambda_p;
                let alpha = |d: f64, beta: f64| {
                    d * (1.0 + tau / (epsilon + beta) + lam * (beta + epsilon) / (tau + epsilon))
                };
                WeightPair::normalize(alpha(D0, si.beta0), alpha(D1, si.beta1))
            }
        }
    }
}

/// `ω0 = 1/3 + 2/3 (1 - χ(r))`, `ω1 = 1 - ω0`.
#[inline]
pub fn limiter_weights(kind: LimiterKind, r: f64) -> WeightPair {
    let chi = kind.eval(r);
    if chi == 1.0 {
        return WeightPair::IDEAL;
    }
    WeightPair::from_upwind(D0 + D1 * (1.0 - chi))
}

/// Nonlinear weights of one stencil. `dx` enters only the P+3 weights.
pub fn compute_weights(scheme: WeightScheme, s: &StencilValues, dx: f64) -> Result<WeightPair> {
    scheme.validate()?;
    s.check_finite()?;
    if matches!(scheme, WeightScheme::Pplus3 { .. }) && !(dx.is_finite() && dx > 0.0) {
        return Err(WenoError::InvalidParameter(format!(
            "dx must be positive (got {dx})"
        )));
    }
    Ok(PreparedWeights::new(scheme, dx).weights(s))
}

/// One endpoint-aware real interval; infinite endpoints are always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl Interval {
    pub fn contains(&self, r: f64) -> bool {
        let above = if self.lower_closed {
            r >= self.lower
        } else {
            r > self.lower
        };
        let below = if self.upper_closed {
            r <= self.upper
        } else {
            r < self.upper
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

/// Union of disjoint intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub intervals: Vec<Interval>,
}

impl Region {
    pub fn contains(&self, r: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(r))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Data-dependent non-oscillatory regions of the centered and second-order
/// upwind candidate fluxes under forward-Euler time stepping at CFL `aλ`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRegions {
    pub a_lambda: f64,
    /// `(-∞, -1) ∪ [aλ/(2-aλ), ∞)`
    pub centered: Region,
    /// `[-(2-3aλ)/aλ, 3)`
    pub upwind: Region,
}

pub fn stability_regions(a_lambda: f64) -> Result<StabilityRegions> {
    if !(a_lambda > 0.0 && a_lambda <= 0.5) {
        return Err(WenoError::InvalidParameter(format!(
            "a_lambda must lie in (0, 1/2] (got {a_lambda})"
        )));
    }
    let centered = Region {
        intervals: vec![
            Interval {
                lower: f64::NEG_INFINITY,
                upper: -1.0,
                lower_closed: false,
                upper_closed: false,
            },
            Interval {
                lower: a_lambda / (2.0 - a_lambda),
                upper: f64::INFINITY,
                lower_closed: true,
                upper_closed: false,
            },
        ],
    };
    let upwind = Region {
        intervals: vec![Interval {
            lower: -(2.0 - 3.0 * a_lambda) / a_lambda,
            upper: 3.0,
            lower_closed: true,
            upper_closed: false,
        }],
    };
    Ok(StabilityRegions {
        a_lambda,
        centered,
        upwind,
    })
}
