//! Extremal functions `f₀` (starlike) and `l₀` (convex) and their Koebe radii.
//!
//! `f₀` solves `z f₀'/f₀ = ψ`, i.e. `f₀(z) = z exp ∫_0^z (ψ(t) - 1)/t dt`, and
//! `l₀` is tied to it by the Alexander relation `z l₀' = f₀`.

use std::cell::Cell;

use serde::Serialize;

use crate::catalog::PsiSpec;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Absolute target for the single-integral quadratures.
const QUAD_TOL: f64 = 1e-13;
/// Absolute target for the outer integral of the convex Koebe radius.
const QUAD_TOL_OUTER: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Starlike,
    Convex,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Starlike => "starlike",
            Family::Convex => "convex",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "starlike" => Ok(Family::Starlike),
            "convex" => Ok(Family::Convex),
            other => Err(Error::InvalidParameter(format!(
                "unknown family '{other}' (expected starlike or convex)"
            ))),
        }
    }
}

/// Taylor coefficients of `f₀` by the recurrence
/// `t_1 = 1`, `(n - 1) t_n = sum_{j=1}^{n-1} c_{n-j} t_j`.
pub fn build_f0(psi: &PsiSpec, order: usize) -> TruncatedSeries {
    let c = psi.series(order);
    let order = c.order();
    let mut t = vec![0.0; order + 1];
    t[1] = 1.0;
    for n in 2..=order {
        let s: f64 = (1..n).map(|j| c.coeff(n - j) * t[j]).sum();
        t[n] = s / (n - 1) as f64;
    }
    TruncatedSeries::new(t).expect("finite recurrence")
}

/// `f₀` assembled from series operations: `z · exp(∫_0^z (ψ - 1)/t)`.
pub fn build_f0_exp_integrate(psi: &PsiSpec, order: usize) -> Result<TruncatedSeries> {
    let c = psi.series(order);
    let one = TruncatedSeries::constant(1.0, c.order());
    Ok(c.checked_sub(&one)?.integrate_over_t()?.exp()?.shift_up())
}

/// `l₀` from `f₀` via `l_n = t_n / n`.
pub fn build_l0(f0: &TruncatedSeries) -> TruncatedSeries {
    let c = f0
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &t)| if n == 0 { 0.0 } else { t / n as f64 })
        .collect();
    TruncatedSeries::new(c).expect("finite coefficients")
}

/// Koebe radius `r*`: the closed form when the catalog has one (starlike
/// only), otherwise quadrature.
pub fn koebe_radius(psi: &PsiSpec, family: Family) -> Result<f64> {
    match (family, psi.koebe_closed()) {
        (Family::Starlike, Some(v)) => Ok(v),
        _ => koebe_radius_quadrature(psi, family),
    }
}

/// Koebe radius by quadrature of the integral representation:
/// `-f₀(-1) = exp(-∫_0^1 φ(-u) du)` and
/// `-l₀(-1) = ∫_0^1 exp(-∫_0^s φ(-u) du) ds`, where `φ(t) = (ψ(t) - 1)/t`.
pub fn koebe_radius_quadrature(psi: &PsiSpec, family: Family) -> Result<f64> {
    match family {
        Family::Starlike => Ok((-log_growth(psi, 1.0, QUAD_TOL)?).exp()),
        Family::Convex => {
            let failure = Cell::new(None);
            let out = quadrature::integrate(
                |s| match log_growth(psi, s, QUAD_TOL) {
                    Ok(v) => (-v).exp(),
                    Err(e) => {
                        failure.set(Some(e));
                        f64::NAN
                    }
                },
                0.0,
                1.0,
                QUAD_TOL_OUTER,
            );
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            finish(out, QUAD_TOL_OUTER, "convex Koebe radius")
        }
    }
}

// ∫_0^s φ(-u) du, so that -f₀(-s)/s = exp(-that).
fn log_growth(psi: &PsiSpec, s: f64, tol: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    let bad = Cell::new(None);
    let out = quadrature::integrate(
        |u| {
            let v = psi.phi(-u);
            if !v.is_finite() {
                bad.set(Some(u));
            }
            v
        },
        0.0,
        s,
        tol,
    );
    if let Some(u) = bad.get() {
        return Err(Error::Quadrature(format!(
            "(psi(t) - 1)/t is not finite at t = {} for {psi}",
            -u
        )));
    }
    finish(out, tol, "log-growth integral")
}

fn finish(out: quadrature::Output, tol: f64, what: &str) -> Result<f64> {
    if !out.integral.is_finite() || out.error_estimate > tol {
        return Err(Error::Quadrature(format!(
            "{what}: estimate {} with error {:e} after {} evaluations (target {tol:e})",
            out.integral, out.error_estimate, out.num_function_evaluations
        )));
    }
    Ok(out.integral)
}

/// `f₀`, `l₀` and both Koebe radii at a common truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    pub f0: TruncatedSeries,
    pub l0: TruncatedSeries,
    pub koebe_starlike: f64,
    pub koebe_convex: f64,
}

impl ExtremalPair {
    pub fn new(psi: &PsiSpec, order: usize) -> Result<Self> {
        let f0 = build_f0(psi, order);
        let l0 = build_l0(&f0);
        Ok(Self {
            f0,
            l0,
            koebe_starlike: koebe_radius(psi, Family::Starlike)?,
            koebe_convex: koebe_radius(psi, Family::Convex)?,
        })
    }

    /// The extremal series for `family`.
    pub fn series(&self, family: Family) -> &TruncatedSeries {
        match family {
            Family::Starlike => &self.f0,
            Family::Convex => &self.l0,
        }
    }

    pub fn koebe(&self, family: Family) -> f64 {
        match family {
            Family::Starlike => self.koebe_starlike,
            Family::Convex => self.koebe_convex,
        }
    }
}
