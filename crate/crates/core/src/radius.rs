//! Bohr–Rogosinski radius equations and their solution.
//!
//! For a family with extremal series `h` (`f₀` or `l₀`) and Koebe radius `r*`,
//! the radius `r₀` is the root of
//!
//! ```text
//! G(r) = ĥ(r^m) + ĥ(r) - p(r) - r*
//! ```
//!
//! where `ĥ` is the majorant series and `p` the majorant's first `N - 1`
//! terms, so `ĥ(r) - p(r) = sum_{n >= N} |h_n| r^n`. `G(0) = -r* < 0` and `G`
//! increases, so the root is bracketed on `[0, 1)` and found by bisection.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::PsiSpec;
use crate::error::{Error, Result};
use crate::extremal::{ExtremalPair, Family};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};

/// Right end of the search bracket is `1 - BRACKET_EPS`.
pub const BRACKET_EPS: f64 = 1e-9;
pub const DEFAULT_TOL: f64 = 1e-10;
/// The radius up to which subordination preserves majorant tails.
pub const ONE_THIRD: f64 = 1.0 / 3.0;

const GRID_POINTS: usize = 100;
const NEWTON_STEP: f64 = 1e-7;
const MAX_BISECTIONS: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `|g(z^m)| + sum_{k >= N} |b_k| r^k`.
    BohrRogosinski,
    /// The `m -> ∞`, `N = 1` specialization: the classical Bohr sum.
    BohrLimit,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::BohrRogosinski => "bohr-rogosinski",
            Mode::BohrLimit => "bohr-limit",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bohr-rogosinski" | "br" => Ok(Mode::BohrRogosinski),
            "bohr-limit" | "bohr" => Ok(Mode::BohrLimit),
            other => Err(Error::InvalidParameter(format!(
                "unknown mode '{other}' (expected bohr-rogosinski or bohr-limit)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProblem {
    pub psi: PsiSpec,
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub mode: Mode,
    pub order: usize,
    pub tol: f64,
}

impl RadiusProblem {
    /// `m = N = 1`, Bohr–Rogosinski mode, default order and tolerance.
    pub fn new(psi: PsiSpec, family: Family) -> Self {
        Self {
            psi,
            family,
            m: 1,
            n: 1,
            mode: Mode::BohrRogosinski,
            order: DEFAULT_ORDER,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = m;
        self
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidParameter(format!(
                "m and N must be positive, got m={}, N={}",
                self.m, self.n
            )));
        }
        if self.order < 2 {
            return Err(Error::InvalidParameter(format!(
                "truncation order must be at least 2, got {}",
                self.order
            )));
        }
        if !(self.tol > 0.0 && self.tol < 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must lie in (0, 1e-3), got {}",
                self.tol
            )));
        }
        Ok(())
    }

    /// `N` after the mode is applied; the Bohr limit always starts at 1.
    pub fn effective_n(&self) -> u32 {
        match self.mode {
            Mode::BohrRogosinski => self.n,
            Mode::BohrLimit => 1,
        }
    }

    /// Whether the reported radius is clamped to `1/3`. Classes with sharp
    /// closed coefficient bounds (the Janowski family) are not.
    pub fn clamps_to_one_third(&self) -> bool {
        !self.psi.has_exact_coefficient_bounds()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub psi: String,
    pub family: Family,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub mode: Mode,
    pub r0: f64,
    pub rb: f64,
    pub residual: f64,
    pub iterations: u32,
    pub sharp: bool,
    #[serde(skip)]
    pub bracket: (f64, f64),
    /// `r*` used on the right-hand side.
    #[serde(skip)]
    pub koebe: f64,
    /// Sign changes of `G` on a uniform grid over the bracket; anything but 1
    /// means the root is not unique at the grid's resolution.
    #[serde(skip)]
    pub grid_sign_changes: usize,
}

/// `p(r)`: the majorant's terms below index `N`, in the piecewise form
/// `0` (N = 1), `r` (N = 2), `r + sum_{n=2}^{N-1} |h_n| r^n` (N >= 3).
pub fn p_polynomial(series: &TruncatedSeries, n: u32, r: f64) -> f64 {
    match n {
        0 | 1 => 0.0,
        2 => r,
        _ => {
            r + (2..n as usize)
                .map(|k| series.coeff(k).abs() * r.powi(k as i32))
                .sum::<f64>()
        }
    }
}

/// The radius function for a fixed problem and extremal series.
#[derive(Debug, Clone, Copy)]
pub struct RadiusEquation<'a> {
    series: &'a TruncatedSeries,
    koebe: f64,
    m: i32,
    n: usize,
    with_head: bool,
}

impl<'a> RadiusEquation<'a> {
    pub fn new(problem: &RadiusProblem, extremal: &'a ExtremalPair) -> Result<Self> {
        problem.validate()?;
        let series = extremal.series(problem.family);
        if series.order() != problem.order {
            return Err(Error::OrderMismatch {
                left: series.order(),
                right: problem.order,
            });
        }
        Ok(Self {
            series,
            koebe: extremal.koebe(problem.family),
            m: i32::try_from(problem.m).unwrap_or(i32::MAX),
            n: problem.effective_n() as usize,
            with_head: problem.mode == Mode::BohrRogosinski,
        })
    }

    pub fn koebe(&self) -> f64 {
        self.koebe
    }

    /// `G(r)` without domain checks; callers keep `0 <= r < 1`.
    pub fn value(&self, r: f64) -> f64 {
        let head = if self.with_head {
            self.series.abs_tail(0, r.powi(self.m))
        } else {
            0.0
        };
        head + self.series.abs_tail(self.n, r) - self.koebe
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "[0, 1)",
            });
        }
        Ok(self.value(r))
    }
}

/// `G(r)` for `problem` (the starlike `G` or the convex `H`).
pub fn g_function(problem: &RadiusProblem, extremal: &ExtremalPair, r: f64) -> Result<f64> {
    RadiusEquation::new(problem, extremal)?.eval(r)
}

/// A bracketed root of an increasing function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub r: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
    pub residual: f64,
    pub grid_sign_changes: usize,
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`, then one
/// guarded Newton step with a centered-difference slope. Requires
/// `f(lo) < 0 < f(hi)`.
pub fn bracket_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<Root> {
    let (mut lo, mut hi) = (lo, hi);
    let (g_lo, g_hi) = (f(lo), f(hi));
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, g_lo, g_hi });
    }
    let grid_sign_changes = count_sign_changes(&f, lo, hi);

    let mut iterations = 0;
    while hi - lo >= tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let g = f(mid);
        if g == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let mut r = 0.5 * (lo + hi);
    let mut residual = f(r);
    if residual != 0.0 {
        let h = NEWTON_STEP.min(r).min(1.0 - r - f64::EPSILON).max(0.0);
        if h > 0.0 {
            let slope = (f(r + h) - f(r - h)) / (2.0 * h);
            if slope.is_finite() && slope > 0.0 {
                let cand = r - residual / slope;
                if (lo..=hi).contains(&cand) {
                    let g = f(cand);
                    if g.abs() <= residual.abs() {
                        r = cand;
                        residual = g;
                    }
                }
            }
        }
    }
    Ok(Root {
        r,
        lo,
        hi,
        iterations,
        residual,
        grid_sign_changes,
    })
}

fn count_sign_changes(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> usize {
    let step = (hi - lo) / GRID_POINTS as f64;
    let mut changes = 0;
    let mut prev = f(lo);
    for i in 1..=GRID_POINTS {
        let x = if i == GRID_POINTS { hi } else { lo + step * i as f64 };
        let g = f(x);
        if (prev < 0.0) != (g < 0.0) {
            changes += 1;
        }
        prev = g;
    }
    changes
}

/// Solves the radius equation of `problem`.
pub fn solve(problem: &RadiusProblem) -> Result<RadiusResult> {
    problem.validate()?;
    let extremal = ExtremalPair::new(&problem.psi, problem.order)?;
    solve_with(problem, &extremal)
}

/// Same as [`solve`] with a prebuilt extremal pair of order `problem.order`.
pub fn solve_with(problem: &RadiusProblem, extremal: &ExtremalPair) -> Result<RadiusResult> {
    let eq = RadiusEquation::new(problem, extremal)?;
    let root = bracket_root(|r| eq.value(r), 0.0, 1.0 - BRACKET_EPS, problem.tol)?;
    let rb = if problem.clamps_to_one_third() {
        root.r.min(ONE_THIRD)
    } else {
        root.r
    };
    let positive = extremal
        .series(problem.family)
        .coeffs()
        .iter()
        .skip(1)
        .all(|&c| c > 0.0);
    Ok(RadiusResult {
        psi: problem.psi.to_string(),
        family: problem.family,
        m: problem.m,
        n: problem.effective_n(),
        mode: problem.mode,
        r0: root.r,
        rb,
        residual: root.residual,
        iterations: root.iterations,
        sharp: positive && rb == root.r,
        bracket: (root.lo, root.hi),
        koebe: eq.koebe(),
        grid_sign_changes: root.grid_sign_changes,
    })
}

/// Parameters of the closed-form Janowski radius equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JanowskiProblem {
    pub d: f64,
    pub e: f64,
    pub m: u32,
    pub n: u32,
    pub mode: Mode,
    pub tol: f64,
}

impl JanowskiProblem {
    pub fn new(d: f64, e: f64, m: u32, n: u32) -> Self {
        Self {
            d,
            e,
            m,
            n,
            mode: Mode::BohrRogosinski,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn effective_n(&self) -> u32 {
        match self.mode {
            Mode::BohrRogosinski => self.n,
            Mode::BohrLimit => 1,
        }
    }

    /// Left-hand side of the closed Janowski equation. For `E != 0`:
    /// `r^m (1 + E r^m)^{(D-E)/E} + A(r) + sum_{n >= max(N,2)} P_n r^n - (1 - E)^{(D-E)/E}`
    /// with `P_n = prod_{k=0}^{n-2} |E - D + E k|/(k + 1)` and `A(r) = r` iff `N = 1`.
    /// For `E = 0`: `r^m e^{D r^m} + r e^{D r} - J(r) - e^{-D}`.
    pub fn value(&self, r: f64) -> f64 {
        let (d, e) = (self.d, self.e);
        let n = self.effective_n();
        let head = match self.mode {
            Mode::BohrLimit => 0.0,
            Mode::BohrRogosinski => {
                let x = r.powi(i32::try_from(self.m).unwrap_or(i32::MAX));
                if e == 0.0 {
                    x * (d * x).exp()
                } else {
                    x * (1.0 + e * x).powf((d - e) / e)
                }
            }
        };
        if e == 0.0 {
            head + r * (d * r).exp() - janowski_j(d, n, r) - (-d).exp()
        } else {
            let a = if n == 1 { r } else { 0.0 };
            head + a + janowski_tail(d, e, n.max(2) as usize, r) - (1.0 - e).powf((d - e) / e)
        }
    }
}

/// `J(r)`: `0`, `r`, or `r + sum_{n=2}^{N-1} D^{n-1}/(n-1)! r^n`.
fn janowski_j(d: f64, n: u32, r: f64) -> f64 {
    match n {
        0 | 1 => 0.0,
        _ => {
            let mut sum = r;
            let mut term = r;
            for k in 2..n {
                term *= d * r / (k - 1) as f64;
                sum += term;
            }
            sum
        }
    }
}

const JANOWSKI_TAIL_EPS: f64 = 1e-16;
const JANOWSKI_TAIL_MAX_TERMS: usize = 200_000;

// sum_{n >= start} P_n r^n, start >= 2, summed until the increment drops
// below 1e-16 or the term cap is hit. Partial sums are lower bounds.
fn janowski_tail(d: f64, e: f64, start: usize, r: f64) -> f64 {
    // term = P_n r^n, starting at n = 1 where P_1 = 1.
    let mut term = r;
    let mut sum = 0.0;
    for n in 2..JANOWSKI_TAIL_MAX_TERMS {
        let k = (n - 2) as f64;
        term *= (e - d + e * k).abs() / (k + 1.0) * r;
        if n >= start {
            sum += term;
            if term < JANOWSKI_TAIL_EPS {
                break;
            }
        }
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// Solves the closed Janowski equation; no `1/3` clamp applies.
pub fn solve_janowski_exact(problem: &JanowskiProblem) -> Result<RadiusResult> {
    let psi = PsiSpec::janowski(problem.d, problem.e)?;
    if problem.m == 0 || problem.n == 0 {
        return Err(Error::InvalidParameter(format!(
            "m and N must be positive, got m={}, N={}",
            problem.m, problem.n
        )));
    }
    if !(problem.tol > 0.0 && problem.tol < 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must lie in (0, 1e-3), got {}",
            problem.tol
        )));
    }
    let root = bracket_root(|r| problem.value(r), 0.0, 1.0 - BRACKET_EPS, problem.tol)?;
    // t_n = prod (D - E - E k)/(k + 1) is positive for every n iff no factor
    // is non-positive over the truncation window.
    let positive = (0..DEFAULT_ORDER).all(|k| problem.d - problem.e - problem.e * k as f64 > 0.0);
    Ok(RadiusResult {
        psi: psi.to_string(),
        family: Family::Starlike,
        m: problem.m,
        n: problem.effective_n(),
        mode: problem.mode,
        r0: root.r,
        rb: root.r,
        residual: root.residual,
        iterations: root.iterations,
        sharp: positive,
        bracket: (root.lo, root.hi),
        koebe: psi.koebe_closed().expect("janowski has a closed Koebe radius"),
        grid_sign_changes: root.grid_sign_changes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepAxis {
    N(RangeInclusive<u32>),
    M(RangeInclusive<u32>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<RadiusResult>,
    /// Whether `r0` is nondecreasing along the swept axis.
    pub nondecreasing: bool,
}

/// Solves `problem` at each grid point of `axis`, in grid order.
pub fn sweep(problem: &RadiusProblem, axis: &SweepAxis) -> Result<SweepTable> {
    problem.validate()?;
    let (range, is_n) = match axis {
        SweepAxis::N(r) => (r.clone(), true),
        SweepAxis::M(r) => (r.clone(), false),
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(Error::InvalidInput(format!(
            "sweep range {}..={} must be nonempty and start at 1 or later",
            range.start(),
            range.end()
        )));
    }
    let extremal = ExtremalPair::new(&problem.psi, problem.order)?;
    let points: Vec<u32> = range.collect();
    let rows = points
        .par_iter()
        .map(|&v| {
            let p = if is_n {
                problem.clone().with_n(v)
            } else {
                problem.clone().with_m(v)
            };
            solve_with(&p, &extremal)
        })
        .collect::<Result<Vec<_>>>()?;
    let nondecreasing = rows.windows(2).all(|w| w[1].r0 >= w[0].r0);
    Ok(SweepTable {
        rows,
        nondecreasing,
    })
}
