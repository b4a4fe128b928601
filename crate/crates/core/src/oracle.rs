//! Empirical verification of the majorant inequalities.
//!
//! Subordinants `g = f ∘ ω` are generated from random Schwarz functions
//! `ω(z) = ±z · prod_j (z - a_j)/(1 - a_j z)` with real zeros `a_j`, which keeps
//! every series real while still covering non-trivial `ω`. Each check returns
//! a signed margin (bound minus value); a margin below `-tolerance` becomes an
//! [`Error::Counterexample`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::PsiSpec;
use crate::error::{Counterexample, Error, Result};
use crate::extremal::{ExtremalPair, Family};
use crate::radius::{Mode, RadiusProblem, RadiusResult, ONE_THIRD};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};

/// Zeros are drawn uniformly from `(-ZERO_BOUND, ZERO_BOUND)`.
pub const ZERO_BOUND: f64 = 0.95;
/// Relative slack on inequality checks.
pub const REL_TOL: f64 = 1e-9;
/// Absolute slack on the Bohr-operator axioms.
pub const AXIOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchwarzSample {
    pub zeros: Vec<f64>,
    /// `+1` or `-1`.
    pub sign: f64,
}

impl SchwarzSample {
    pub fn new(zeros: Vec<f64>, sign: f64) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.abs() < 1.0)) {
            return Err(Error::InvalidInput(format!("Blaschke zero {a} is not inside the unit disk")));
        }
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::InvalidInput(format!("sign must be +1 or -1, got {sign}")));
        }
        Ok(Self { zeros, sign })
    }

    pub fn identity() -> Self {
        Self {
            zeros: Vec::new(),
            sign: 1.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_rotation(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Degree uniform in `0..=degree_max`, zeros uniform in `(-0.95, 0.95)`,
    /// sign uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree_max: usize) -> Self {
        let d = rng.random_range(0..=degree_max);
        let zeros = (0..d)
            .map(|_| rng.random_range(-ZERO_BOUND..ZERO_BOUND))
            .collect();
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        Self { zeros, sign }
    }

    /// Taylor coefficients of `ω` up to `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let mut w = TruncatedSeries::monomial(self.sign, 1, order);
        for &a in &self.zeros {
            // (z - a)/(1 - a z) = -a + sum_{i>=1} (1 - a²) a^{i-1} z^i
            let mut c = vec![0.0; w.order() + 1];
            c[0] = -a;
            let mut p = 1.0 - a * a;
            for ci in c.iter_mut().skip(1) {
                *ci = p;
                p *= a;
            }
            let factor = TruncatedSeries::new(c).expect("finite Blaschke factor");
            w = w.checked_mul(&factor).expect("same order");
        }
        w
    }

    /// `ω(x)` on the real segment, straight from the product.
    pub fn eval(&self, x: f64) -> f64 {
        self.zeros
            .iter()
            .fold(self.sign * x, |acc, &a| acc * (x - a) / (1.0 - a * x))
    }
}

/// Draws one sample from a ChaCha8 stream seeded with `seed`.
pub fn sample_schwarz(seed: u64, degree_max: usize) -> SchwarzSample {
    SchwarzSample::random(&mut ChaCha8Rng::seed_from_u64(seed), degree_max)
}

pub fn schwarz_series(sample: &SchwarzSample, order: usize) -> TruncatedSeries {
    sample.series(order)
}

/// The Bohr operator `M_r^N(f) = sum_{n >= N} |a_n| r^n` over the stored window.
#[derive(Debug, Clone, Copy)]
pub struct BohrOperatorView<'a> {
    pub series: &'a TruncatedSeries,
    pub start: usize,
    pub r: f64,
}

impl BohrOperatorView<'_> {
    pub fn value(&self) -> f64 {
        bohr_operator(self.series, self.start, self.r)
    }
}

pub fn bohr_operator(f: &TruncatedSeries, start: usize, r: f64) -> f64 {
    f.abs_tail(start, r)
}

fn check_radius(r: f64, max: f64, name: &'static str) -> Result<()> {
    if !(0.0..=max).contains(&r) {
        return Err(Error::Domain {
            what: name,
            value: r,
            domain: "[0, 1/3] (scaled by tau for the weighted bound)",
        });
    }
    Ok(())
}

fn margin_or_counterexample(
    check: &'static str,
    bound: f64,
    value: f64,
    tolerance: f64,
    detail: impl FnOnce() -> String,
) -> Result<f64> {
    let margin = bound - value;
    if margin < -tolerance {
        return Err(Error::Counterexample(Box::new(Counterexample {
            check,
            detail: detail(),
            bound,
            value,
            margin,
            tolerance,
        })));
    }
    Ok(margin)
}

/// `M_r^N(f) - M_r^N(f ∘ ω)` for `r <= 1/3`.
///
/// For `N >= 2` this can be negative: the coefficients of `f ∘ ω` at index
/// `k >= N` also collect `a_n β_k^(n)` with `n < N` (take `f = z`, `ω = z²`,
/// `N = 2`). [`verify_high_order_tail`] checks the bound that survives.
pub fn verify_tail_inequality(
    f: &TruncatedSeries,
    sample: &SchwarzSample,
    n: usize,
    r: f64,
) -> Result<f64> {
    let g = f.compose(&sample.series(f.order()))?;
    tail_margin(f, &g, n, r, || format!("{sample:?}"))
}

/// `M_r^N(f) - M_r^N(F_N ∘ ω)` for `r <= 1/3`, where `F_N = sum_{n >= N} a_n z^n`.
/// Holds for every `N` since `M_r(ω^n) <= r^n` on `r <= 1/3`.
pub fn verify_high_order_tail(
    f: &TruncatedSeries,
    sample: &SchwarzSample,
    n: usize,
    r: f64,
) -> Result<f64> {
    let g = high_order_part(f, n).compose(&sample.series(f.order()))?;
    tail_margin(f, &g, n, r, || format!("{sample:?}"))
}

fn high_order_part(f: &TruncatedSeries, n: usize) -> TruncatedSeries {
    let mut c = f.coeffs().to_vec();
    c.iter_mut().take(n).for_each(|x| *x = 0.0);
    TruncatedSeries::new(c).expect("finite")
}

/// Which subordinant the tail runs compare against `M_r^N(f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailForm {
    /// `g = f ∘ ω`.
    #[default]
    Subordinate,
    /// `g = F_N ∘ ω` with the first `N` coefficients of `f` dropped.
    HighOrder,
}

fn tail_margin(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    n: usize,
    r: f64,
    describe: impl FnOnce() -> String,
) -> Result<f64> {
    check_radius(r, ONE_THIRD, "r")?;
    let bound = bohr_operator(f, n, r);
    let value = bohr_operator(g, n, r);
    let tol = REL_TOL * bound + f.tail_bound(r);
    margin_or_counterexample("subordination tail inequality", bound, value, tol, || {
        format!("N={n}, r={r}, omega={}", describe())
    })
}

/// `τ M_r^N(f) - M_r^N(h · (f ∘ ω))` for `r <= τ/3`, where the caller's `h`
/// satisfies `sum |h_n| τ^n <= τ`.
pub fn verify_weighted(
    tau: f64,
    f: &TruncatedSeries,
    sample: &SchwarzSample,
    h: &TruncatedSeries,
    n: usize,
    r: f64,
) -> Result<f64> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidInput(format!("tau must lie in (0, 1], got {tau}")));
    }
    check_radius(r, tau / 3.0, "r")?;
    let h_max = if tau < 1.0 {
        h.eval_abs(tau)?
    } else {
        h.coeffs().iter().map(|c| c.abs()).sum()
    };
    if h_max > tau * (1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!(
            "h exceeds tau on |z| = tau: sum |h_n| tau^n = {h_max} > {tau}"
        )));
    }
    let g = h.checked_mul(&f.compose(&sample.series(f.order()))?)?;
    let bound = tau * bohr_operator(f, n, r);
    let value = bohr_operator(&g, n, r);
    let tol = REL_TOL * bound + f.tail_bound(r);
    margin_or_counterexample("weighted tail inequality", bound, value, tol, || {
        format!("tau={tau}, N={n}, r={r}, omega={sample:?}")
    })
}

/// `r* - ĝ(r^m) - M_r^N(g)` for `g = h ∘ ω`, `h` the extremal series of the
/// problem's family, at `r <= rb`. With `ω = z` and `r = rb = r₀` the margin
/// is `-G(r₀) ≈ 0`.
pub fn verify_br_inequality(
    problem: &RadiusProblem,
    extremal: &ExtremalPair,
    solved: &RadiusResult,
    sample: &SchwarzSample,
    r: f64,
) -> Result<f64> {
    if !(0.0..=solved.rb).contains(&r) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "[0, rb]",
        });
    }
    let h = extremal.series(problem.family);
    if h.order() != problem.order {
        return Err(Error::OrderMismatch {
            left: h.order(),
            right: problem.order,
        });
    }
    let g = h.compose(&sample.series(h.order()))?;
    br_margin(problem, extremal, &g, r, || format!("{sample:?}"))
}

fn br_margin(
    problem: &RadiusProblem,
    extremal: &ExtremalPair,
    g: &TruncatedSeries,
    r: f64,
    describe: impl FnOnce() -> String,
) -> Result<f64> {
    let koebe = extremal.koebe(problem.family);
    let head = match problem.mode {
        Mode::BohrRogosinski => g.eval_abs(r.powi(problem.m.min(i32::MAX as u32) as i32))?,
        Mode::BohrLimit => 0.0,
    };
    let n = problem.effective_n() as usize;
    let value = head + bohr_operator(g, n, r);
    let tol = REL_TOL * koebe + g.tail_bound(r);
    margin_or_counterexample("Bohr-Rogosinski inequality", koebe, value, tol, || {
        format!(
            "{} {}, m={}, N={n}, r={r}, omega={}",
            problem.psi,
            problem.family,
            problem.m,
            describe()
        )
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomMargins {
    pub nonnegative: f64,
    /// 0 when `M = 0` exactly matches an all-zero window, -1 otherwise.
    pub definite: f64,
    pub subadditive: f64,
    pub homogeneous: f64,
    /// Submultiplicativity of the full operator (`N = 0`).
    pub submultiplicative: f64,
    /// `1 - M_r(1)` for the full operator.
    pub unit: f64,
}

impl AxiomMargins {
    pub fn worst(&self) -> f64 {
        [
            self.nonnegative,
            self.definite,
            self.subadditive,
            self.homogeneous,
            self.submultiplicative,
            self.unit,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self) -> bool {
        self.worst() >= -AXIOM_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub r: f64,
    pub alpha: f64,
    pub margins: AxiomMargins,
    /// `M^N(f) M^N(g) - M^N(fg)` at the requested `N`; informational, since
    /// submultiplicativity generally fails for `N >= 1`.
    pub submultiplicative_at_n: f64,
    /// `1 - M^N(1)` at the requested `N`; informational, equals 1 for `N >= 1`.
    pub unit_at_n: f64,
}

/// Checks the Bohr-operator properties for one pair `(f, g)` and scalar `α`.
/// The product and unit properties are checked on the full operator (`N = 0`);
/// their values at the requested `N` are reported alongside.
pub fn verify_bohr_operator_axioms(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    alpha: f64,
    n: usize,
    r: f64,
) -> Result<AxiomReport> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "[0, 1)",
        });
    }
    let m = |s: &TruncatedSeries, start: usize| bohr_operator(s, start, r);
    let mf = m(f, n);
    let mg = m(g, n);
    let window_zero = n > f.order() || f.coeffs()[n..].iter().all(|&c| c == 0.0);
    // Definiteness only makes sense for r > 0.
    let definite = if r == 0.0 || (mf == 0.0) == window_zero {
        0.0
    } else {
        -1.0
    };
    let fg = f.checked_mul(g)?;
    let one = TruncatedSeries::constant(1.0, f.order());
    let scale = mf.abs().max(1.0);
    Ok(AxiomReport {
        n,
        r,
        alpha,
        margins: AxiomMargins {
            nonnegative: mf,
            definite,
            subadditive: mf + mg - m(&f.checked_add(g)?, n),
            homogeneous: -(m(&f.scale(alpha), n) - alpha.abs() * mf).abs() / scale,
            submultiplicative: m(f, 0) * m(g, 0) - m(&fg, 0),
            unit: 1.0 - m(&one, 0),
        },
        submultiplicative_at_n: mf * mg - m(&fg, n),
        unit_at_n: 1.0 - m(&one, n),
    })
}

/// Aggregate result of a Monte-Carlo verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub config: serde_json::Value,
    /// First violation in sample order, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailRunConfig {
    pub psi: Vec<String>,
    pub families: Vec<Family>,
    #[serde(rename = "N")]
    pub n_values: Vec<usize>,
    pub radii: Vec<f64>,
    pub degree_max: usize,
    pub order: usize,
    pub form: TailForm,
}

impl Default for TailRunConfig {
    fn default() -> Self {
        Self {
            psi: PsiSpec::catalog().iter().map(ToString::to_string).collect(),
            families: vec![Family::Starlike],
            n_values: vec![1, 2, 3],
            radii: vec![0.1, 0.25, ONE_THIRD],
            degree_max: 4,
            order: DEFAULT_ORDER,
            form: TailForm::Subordinate,
        }
    }
}

// Per-sample tally, folded in sample order.
#[derive(Debug, Clone)]
struct Tally {
    checks: usize,
    violations: usize,
    worst: f64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            violations: 0,
            worst: f64::INFINITY,
            first: None,
        }
    }

    fn record(&mut self, outcome: Result<f64>) -> Result<()> {
        self.checks += 1;
        match outcome {
            Ok(m) => self.worst = self.worst.min(m),
            Err(Error::Counterexample(c)) => {
                self.violations += 1;
                self.worst = self.worst.min(c.margin);
                if self.first.is_none() {
                    self.first = Some(c.to_string());
                }
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.violations += other.violations;
        self.worst = self.worst.min(other.worst);
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }
}

fn sample_stream(seed: u64, trials: usize, degree_max: usize) -> Vec<SchwarzSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| SchwarzSample::random(&mut rng, degree_max))
        .collect()
}

fn fold_ordered(tallies: Vec<Tally>) -> Tally {
    tallies.into_iter().fold(Tally::new(), Tally::merge)
}

/// Monte-Carlo run of the subordination tail inequality over the extremal
/// series of every listed `ψ` and family.
pub fn run_tail_monte_carlo(seed: u64, trials: usize, config: &TailRunConfig) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mut targets = Vec::new();
    for name in &config.psi {
        let psi: PsiSpec = name.parse()?;
        let f0 = crate::extremal::build_f0(&psi, config.order);
        for fam in &config.families {
            targets.push(match fam {
                Family::Starlike => f0.clone(),
                Family::Convex => crate::extremal::build_l0(&f0),
            });
        }
    }
    let samples = sample_stream(seed, trials, config.degree_max);
    let tallies = samples
        .par_iter()
        .map(|s| {
            let w = s.series(config.order);
            let mut t = Tally::new();
            for f in &targets {
                let full = f.compose(&w)?;
                for &n in &config.n_values {
                    let g = match config.form {
                        TailForm::Subordinate => full.clone(),
                        TailForm::HighOrder => high_order_part(f, n).compose(&w)?,
                    };
                    for &r in &config.radii {
                        t.record(tail_margin(f, &g, n, r, || format!("{s:?}")))?;
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = fold_ordered(tallies);
    Ok(VerificationReport {
        seed,
        trials,
        violations: total.violations,
        worst_margin: total.worst,
        config: serde_json::json!({ "lemma": "tail", "checks": total.checks, "settings": config }),
        counterexample: total.first,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedRunConfig {
    pub psi: String,
    pub tau: f64,
    #[serde(rename = "N")]
    pub n_values: Vec<usize>,
    pub degree_max: usize,
    pub order: usize,
}

impl WeightedRunConfig {
    pub fn new(psi: &PsiSpec, tau: f64) -> Self {
        Self {
            psi: psi.to_string(),
            tau,
            n_values: vec![1, 2, 3],
            degree_max: 4,
            order: DEFAULT_ORDER,
        }
    }
}

/// Monte-Carlo run of the weighted inequality with `h(z) = τ(1 + z)/2`,
/// `f = f₀`, at `r = τ/3`.
pub fn run_weighted_monte_carlo(
    seed: u64,
    trials: usize,
    config: &WeightedRunConfig,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let tau = config.tau;
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidInput(format!("tau must lie in (0, 1], got {tau}")));
    }
    let psi: PsiSpec = config.psi.parse()?;
    let f = crate::extremal::build_f0(&psi, config.order);
    let h = TruncatedSeries::from_coeffs(&[tau / 2.0, tau / 2.0], config.order)?;
    let r = tau / 3.0;
    let samples = sample_stream(seed, trials, config.degree_max);
    let tallies = samples
        .par_iter()
        .map(|s| {
            let mut t = Tally::new();
            for &n in &config.n_values {
                t.record(verify_weighted(tau, &f, s, &h, n, r))?;
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = fold_ordered(tallies);
    Ok(VerificationReport {
        seed,
        trials,
        violations: total.violations,
        worst_margin: total.worst,
        config: serde_json::json!({
            "lemma": "weighted",
            "h": "tau*(1+z)/2",
            "r": r,
            "checks": total.checks,
            "settings": config,
        }),
        counterexample: total.first,
    })
}

/// Monte-Carlo run of the full Bohr–Rogosinski inequality for `g = h ∘ ω` at
/// radii spread over `(0, rb]`.
pub fn run_br_monte_carlo(
    seed: u64,
    trials: usize,
    problem: &RadiusProblem,
    degree_max: usize,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let extremal = ExtremalPair::new(&problem.psi, problem.order)?;
    let solved = crate::radius::solve_with(problem, &extremal)?;
    let radii: Vec<f64> = [0.25, 0.5, 0.75, 1.0].iter().map(|f| f * solved.rb).collect();
    let h = extremal.series(problem.family);
    let samples = sample_stream(seed, trials, degree_max);
    let tallies = samples
        .par_iter()
        .map(|s| {
            let g = h.compose(&s.series(problem.order))?;
            let mut t = Tally::new();
            for &r in &radii {
                t.record(br_margin(problem, &extremal, &g, r, || format!("{s:?}")))?;
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = fold_ordered(tallies);
    Ok(VerificationReport {
        seed,
        trials,
        violations: total.violations,
        worst_margin: total.worst,
        config: serde_json::json!({
            "lemma": "bohr-rogosinski",
            "psi": problem.psi.to_string(),
            "family": problem.family,
            "m": problem.m,
            "N": problem.effective_n(),
            "mode": problem.mode,
            "rb": solved.rb,
            "radii": radii,
            "degree_max": degree_max,
            "order": problem.order,
            "checks": total.checks,
        }),
        counterexample: total.first,
    })
}

/// Outcome of the randomized Bohr-operator axiom suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomSuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub worst_margin: f64,
    /// `f = g = z`, `N = 2`: `M(fg) = r² > 0 = M(f) M(g)`.
    pub product_counterexample: AxiomReport,
    pub config: serde_json::Value,
}

/// Random coefficient pairs in `[-1, 1]` (with occasional exact zeros) at
/// each `N` in `n_values` and `r` in `{0, 0.1, 1/3, 0.6, 0.9}`.
pub fn run_axiom_suite(seed: u64, trials: usize, n_values: &[usize], order: usize) -> Result<AxiomSuiteReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let radii = [0.0, 0.1, ONE_THIRD, 0.6, 0.9];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let random_series = |rng: &mut ChaCha8Rng| {
        let c: Vec<f64> = (0..=order)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    rng.random_range(-1.0..1.0)
                }
            })
            .collect();
        TruncatedSeries::new(c).expect("finite")
    };
    for _ in 0..trials {
        let f = random_series(&mut rng);
        let g = random_series(&mut rng);
        let alpha = rng.random_range(-3.0..3.0);
        for &n in n_values {
            for &r in &radii {
                let rep = verify_bohr_operator_axioms(&f, &g, alpha, n, r)?;
                let w = rep.margins.worst();
                worst = worst.min(w);
                if !rep.margins.holds() {
                    violations += 1;
                }
            }
        }
    }
    // Zero and unit series exercise definiteness and the unit property exactly.
    for &n in n_values {
        let zero = TruncatedSeries::zero(order);
        let one = TruncatedSeries::constant(1.0, order);
        for (f, g) in [(&zero, &one), (&one, &zero)] {
            let rep = verify_bohr_operator_axioms(f, g, -2.0, n, 0.5)?;
            worst = worst.min(rep.margins.worst());
            if !rep.margins.holds() {
                violations += 1;
            }
        }
    }
    let z = TruncatedSeries::identity(order);
    let product_counterexample = verify_bohr_operator_axioms(&z, &z, 1.0, 2, 0.5)?;
    Ok(AxiomSuiteReport {
        seed,
        trials,
        violations,
        worst_margin: worst,
        product_counterexample,
        config: serde_json::json!({
            "lemma": "bohr-operator",
            "N": n_values,
            "radii": radii,
            "order": order,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_f0;
    use crate::radius::solve_with;
    use approx::assert_relative_eq;

    fn koebe(order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|n| n as f64).collect()).unwrap()
    }

    #[test]
    fn schwarz_series_examples() {
        assert_eq!(SchwarzSample::identity().series(6), TruncatedSeries::identity(6));
        let z2 = SchwarzSample::new(vec![0.0], 1.0).unwrap().series(6);
        assert_eq!(z2, TruncatedSeries::monomial(1.0, 2, 6));
        let w = SchwarzSample::new(vec![0.5], 1.0).unwrap().series(6);
        assert_relative_eq!(w.coeff(1), -0.5);
        assert_relative_eq!(w.coeff(2), 0.75);
        assert_relative_eq!(w.coeff(3), 0.375);
        let neg = SchwarzSample::new(vec![0.5], -1.0).unwrap().series(6);
        assert_eq!(neg, w.scale(-1.0));
        assert!(SchwarzSample::new(vec![1.0], 1.0).is_err());
        assert!(SchwarzSample::new(vec![], 0.5).is_err());
    }

    #[test]
    fn random_samples_are_schwarz_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = SchwarzSample::random(&mut rng, 5);
            assert!(s.degree() <= 5);
            assert!(s.zeros.iter().all(|a| a.abs() < ZERO_BOUND));
            let w = s.series(64);
            assert_eq!(w.coeff(0), 0.0);
            for x in [-0.6, -0.3, 0.3, 0.6] {
                assert!(s.eval(x).abs() < 1.0);
                assert!((w.eval(x).unwrap() - s.eval(x)).abs() < 1e-6 + w.tail_bound(x));
            }
            // Bohr's theorem applied to ω/z.
            assert!(w.eval_abs(ONE_THIRD).unwrap() <= ONE_THIRD * (1.0 + 1e-12));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_schwarz(5, 4), sample_schwarz(5, 4));
        let a: Vec<_> = (0..20).map(|s| sample_schwarz(s, 4)).collect();
        assert!(a.iter().any(|s| s.degree() == 0));
        assert!(a.iter().any(|s| s.sign < 0.0));
    }

    #[test]
    fn powers_of_omega_obey_bohr_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = SchwarzSample::random(&mut rng, 4).series(64);
            let mut p = w.clone();
            for n in 1..=5 {
                let m = p.eval_abs(ONE_THIRD).unwrap();
                assert!(m <= ONE_THIRD.powi(n) * (1.0 + 1e-12), "n={n}: {m}");
                p = p.checked_mul(&w).unwrap();
            }
        }
    }

    #[test]
    fn tail_inequality_examples() {
        let k = koebe(64);
        for n in 1..4 {
            assert_eq!(verify_tail_inequality(&k, &SchwarzSample::identity(), n, ONE_THIRD).unwrap(), 0.0);
            let rot = SchwarzSample::new(vec![], -1.0).unwrap();
            assert_eq!(verify_tail_inequality(&k, &rot, n, ONE_THIRD).unwrap(), 0.0);
        }
        let z2 = SchwarzSample::new(vec![0.0], 1.0).unwrap();
        // Koebe ∘ z² has coefficients 1, 2, 3, ... at even powers.
        let m = verify_tail_inequality(&k, &z2, 2, ONE_THIRD).unwrap();
        let direct: f64 = (2..=64).map(|n| n as f64 / 3f64.powi(n)).sum::<f64>()
            - (1..=32).map(|j| j as f64 / 3f64.powi(2 * j)).sum::<f64>();
        assert_relative_eq!(m, direct, epsilon = 1e-14);
        assert!(m > 0.0);
        assert!(verify_tail_inequality(&k, &z2, 2, 0.34).is_err());
    }

    #[test]
    fn tail_violation_is_reported() {
        // A g that dominates f coefficientwise fails at every r > 0.
        let f = TruncatedSeries::from_coeffs(&[0.0, 1.0], 8).unwrap();
        let g = TruncatedSeries::from_coeffs(&[0.0, 2.0], 8).unwrap();
        let err = tail_margin(&f, &g, 1, 0.2, || "test".into()).unwrap_err();
        assert!(matches!(err, Error::Counterexample(ref c) if c.margin < 0.0));
    }

    #[test]
    fn weighted_examples() {
        let f = build_f0(&PsiSpec::cardioid(), 64);
        let s = sample_schwarz(9, 3);
        let one = TruncatedSeries::constant(1.0, 64);
        for n in 1..4 {
            let plain = verify_tail_inequality(&f, &s, n, 0.3).unwrap();
            assert_relative_eq!(verify_weighted(1.0, &f, &s, &one, n, 0.3).unwrap(), plain, epsilon = 1e-15);
            let tau = 0.6;
            let h = TruncatedSeries::constant(tau, 64);
            let m = verify_weighted(tau, &f, &s, &h, n, 0.15).unwrap();
            let base = verify_tail_inequality(&f, &s, n, 0.15).unwrap();
            assert_relative_eq!(m, tau * base, epsilon = 1e-15);
        }
        let too_big = TruncatedSeries::from_coeffs(&[0.5, 0.5], 64).unwrap();
        assert!(matches!(
            verify_weighted(0.8, &f, &s, &too_big, 1, 0.2),
            Err(Error::InvalidInput(_))
        ));
        assert!(verify_weighted(0.8, &f, &s, &one.scale(0.5), 1, 0.3).is_err());
    }

    #[test]
    fn weighted_literal_reading_admits_counterexample() {
        // h(z) = z satisfies |h| <= tau on |z| < tau, yet with f the Koebe
        // function, ω = z, N = 2, tau = 0.4: M(zf) ≈ r² > 2 tau r² ≈ tau M(f).
        let tau = 0.4;
        let f = koebe(64);
        let h = TruncatedSeries::identity(64);
        let res = verify_weighted(tau, &f, &SchwarzSample::identity(), &h, 2, tau / 3.0);
        assert!(matches!(res, Err(Error::Counterexample(_))));
    }

    #[test]
    fn axioms_on_simple_series() {
        let f = TruncatedSeries::from_coeffs(&[1.0, 1.0], 8).unwrap();
        let rep = verify_bohr_operator_axioms(&f, &f, -2.0, 0, 0.2).unwrap();
        assert_relative_eq!(rep.margins.submultiplicative, 0.0, epsilon = 1e-15);
        assert!(rep.margins.holds());
        assert_relative_eq!(bohr_operator(&f.checked_mul(&f).unwrap(), 0, 0.2), 1.44, epsilon = 1e-15);
        assert_relative_eq!(bohr_operator(&f.scale(-2.0), 0, 0.2), 2.0 * bohr_operator(&f, 0, 0.2));
        assert_eq!(rep.margins.unit, 0.0);

        let z = TruncatedSeries::identity(8);
        let ce = verify_bohr_operator_axioms(&z, &z, 1.0, 2, 0.5).unwrap();
        assert_relative_eq!(ce.submultiplicative_at_n, -0.25);
        assert_eq!(ce.unit_at_n, 1.0);
        assert!(ce.margins.holds());
        assert!(verify_bohr_operator_axioms(&z, &z, 1.0, 2, 1.0).is_err());
    }

    #[test]
    fn axiom_suite_passes() {
        let rep = run_axiom_suite(1, 50, &[0, 1, 3], 16).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.worst_margin >= -AXIOM_TOL);
        assert!(rep.product_counterexample.submultiplicative_at_n < 0.0);
    }

    #[test]
    fn tail_inequality_fails_for_low_order_leakage() {
        let z = TruncatedSeries::identity(16);
        let z2 = SchwarzSample::new(vec![0.0], 1.0).unwrap();
        let err = verify_tail_inequality(&z, &z2, 2, 0.25).unwrap_err();
        assert!(matches!(err, Error::Counterexample(ref c) if (c.value - 0.0625).abs() < 1e-15 && c.bound == 0.0));
        assert_eq!(verify_high_order_tail(&z, &z2, 2, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn high_order_tail_examples() {
        let k = koebe(64);
        let s = sample_schwarz(4, 3);
        assert_eq!(
            verify_high_order_tail(&k, &s, 1, 0.3).unwrap(),
            verify_tail_inequality(&k, &s, 1, 0.3).unwrap()
        );
        assert_eq!(verify_high_order_tail(&k, &SchwarzSample::identity(), 3, ONE_THIRD).unwrap(), 0.0);
    }

    #[test]
    fn small_monte_carlo_runs_are_deterministic() {
        let families = vec![Family::Starlike, Family::Convex];
        let first_order = TailRunConfig {
            families: families.clone(),
            n_values: vec![1],
            ..TailRunConfig::default()
        };
        let a = run_tail_monte_carlo(7, 40, &first_order).unwrap();
        assert_eq!(a.violations, 0, "{:?}", a.counterexample);
        assert_eq!(a, run_tail_monte_carlo(7, 40, &first_order).unwrap());

        let high = TailRunConfig {
            families: families.clone(),
            form: TailForm::HighOrder,
            ..TailRunConfig::default()
        };
        let h = run_tail_monte_carlo(7, 40, &high).unwrap();
        assert_eq!(h.violations, 0, "{:?}", h.counterexample);

        let literal = TailRunConfig {
            families,
            n_values: vec![2, 3],
            ..TailRunConfig::default()
        };
        let l = run_tail_monte_carlo(7, 40, &literal).unwrap();
        assert!(l.violations > 0 && l.worst_margin < 0.0);
        assert!(l.counterexample.is_some());

        let w = run_weighted_monte_carlo(7, 40, &WeightedRunConfig::new(&PsiSpec::cardioid(), 0.8)).unwrap();
        assert!(w.worst_margin.is_finite());
        assert!(run_tail_monte_carlo(7, 0, &first_order).is_err());
    }

    #[test]
    fn br_inequality_sharp_at_extremal() {
        let problem = RadiusProblem::new(PsiSpec::classical_starlike(), Family::Starlike);
        let ex = ExtremalPair::new(&problem.psi, 64).unwrap();
        let solved = solve_with(&problem, &ex).unwrap();
        let m = verify_br_inequality(&problem, &ex, &solved, &SchwarzSample::identity(), solved.rb).unwrap();
        assert!(m.abs() < 1e-9, "{m}");
        let m0 = verify_br_inequality(&problem, &ex, &solved, &sample_schwarz(1, 3), 0.0).unwrap();
        assert_eq!(m0, ex.koebe_starlike);
        assert!(verify_br_inequality(&problem, &ex, &solved, &SchwarzSample::identity(), solved.rb + 0.01).is_err());
    }

    #[test]
    fn br_margin_decreases_with_r() {
        let problem = RadiusProblem::new(PsiSpec::cardioid(), Family::Starlike).with_n(2);
        let ex = ExtremalPair::new(&problem.psi, 64).unwrap();
        let solved = solve_with(&problem, &ex).unwrap();
        for seed in 0..10 {
            let s = sample_schwarz(seed, 3);
            let mut prev = f64::INFINITY;
            for i in 0..=20 {
                let r = solved.rb * i as f64 / 20.0;
                let m = verify_br_inequality(&problem, &ex, &solved, &s, r).unwrap();
                assert!(m <= prev);
                prev = m;
            }
        }
    }

    #[test]
    fn br_monte_carlo_is_clean() {
        for fam in [Family::Starlike, Family::Convex] {
            let p = RadiusProblem::new(PsiSpec::sine(), fam).with_n(3);
            let rep = run_br_monte_carlo(3, 50, &p, 4).unwrap();
            assert_eq!(rep.violations, 0, "{:?}", rep.counterexample);
        }
    }
}
