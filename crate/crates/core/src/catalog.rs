//! Registry of Ma–Minda functions `ψ`.
//!
//! Each entry knows its Taylor coefficients, the real-line integrand
//! `(ψ(t) - 1)/t` used by the Koebe-radius quadrature, and, where one exists,
//! a closed form for the starlike extremal function `f₀` and its Koebe radius
//! `-f₀(-1)`. Parameters are validated once, in [`PsiSpec::new`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// `k = √2 + 1`, the parameter of the Booth-type rational ψ.
pub const BOOTH_K: f64 = std::f64::consts::SQRT_2 + 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsiId {
    /// `(1 + D z)/(1 + E z)`, `-1 <= E < D <= 1`.
    Janowski { d: f64, e: f64 },
    /// `1 + 4z/3 + 2z²/3`.
    Cardioid,
    /// `1 + z e^z`.
    ZExpZ,
    /// `1 + (z/k)(k + z)/(k - z)`.
    Booth { k: f64 },
    /// `1 + sin z`.
    Sine,
    /// `(1 + (1 - 2α) z)/(1 - z)`, starlike of order α.
    StarlikeAlpha { alpha: f64 },
    /// `(1 + z)/(1 - z)`.
    ClassicalStarlike,
    /// `(1 + z)/(1 - z)`, catalogued separately as the generator of the
    /// classical convex class.
    ClassicalConvexGenerator,
    /// Caller-supplied Taylor coefficients `c_0 = 1, c_1 > 0, ...`.
    Custom { coeffs: Vec<f64> },
}

/// A validated catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiSpec {
    id: PsiId,
}

impl PsiSpec {
    pub fn new(id: PsiId) -> Result<Self> {
        match &id {
            PsiId::Janowski { d, e } => check_janowski(*d, *e)?,
            PsiId::StarlikeAlpha { alpha } => {
                if !(0.0..1.0).contains(alpha) {
                    return Err(Error::InvalidParameter(format!(
                        "starlike order alpha must lie in [0, 1), got {alpha}"
                    )));
                }
            }
            PsiId::Booth { k } => {
                if !(k.is_finite() && *k > 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "Booth parameter k must exceed 1, got {k}"
                    )));
                }
            }
            PsiId::Custom { coeffs } => {
                if coeffs.len() < 2 || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "custom psi needs at least two finite coefficients".into(),
                    ));
                }
                if coeffs[0] != 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "custom psi must satisfy psi(0) = 1, got {}",
                        coeffs[0]
                    )));
                }
                if coeffs[1] <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "custom psi must satisfy psi'(0) > 0, got {}",
                        coeffs[1]
                    )));
                }
            }
            _ => {}
        }
        Ok(Self { id })
    }

    pub fn janowski(d: f64, e: f64) -> Result<Self> {
        Self::new(PsiId::Janowski { d, e })
    }

    pub fn starlike_alpha(alpha: f64) -> Result<Self> {
        Self::new(PsiId::StarlikeAlpha { alpha })
    }

    pub fn cardioid() -> Self {
        Self { id: PsiId::Cardioid }
    }

    pub fn zexpz() -> Self {
        Self { id: PsiId::ZExpZ }
    }

    pub fn booth() -> Self {
        Self {
            id: PsiId::Booth { k: BOOTH_K },
        }
    }

    pub fn sine() -> Self {
        Self { id: PsiId::Sine }
    }

    pub fn classical_starlike() -> Self {
        Self {
            id: PsiId::ClassicalStarlike,
        }
    }

    pub fn classical_convex() -> Self {
        Self {
            id: PsiId::ClassicalConvexGenerator,
        }
    }

    pub fn custom(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(PsiId::Custom { coeffs })
    }

    /// The named presets, in a fixed order.
    pub fn catalog() -> Vec<PsiSpec> {
        vec![
            Self::janowski(0.5, -0.5).expect("valid preset"),
            Self::janowski(1.0, 0.0).expect("valid preset"),
            Self::cardioid(),
            Self::zexpz(),
            Self::booth(),
            Self::sine(),
            Self::starlike_alpha(0.25).expect("valid preset"),
            Self::classical_starlike(),
        ]
    }

    pub fn id(&self) -> &PsiId {
        &self.id
    }

    /// Janowski parameters `(D, E)` when the entry belongs to that family.
    pub fn janowski_params(&self) -> Option<(f64, f64)> {
        match self.id {
            PsiId::Janowski { d, e } => Some((d, e)),
            PsiId::StarlikeAlpha { alpha } => Some((1.0 - 2.0 * alpha, -1.0)),
            PsiId::ClassicalStarlike | PsiId::ClassicalConvexGenerator => Some((1.0, -1.0)),
            _ => None,
        }
    }

    /// Whether the class has sharp closed coefficient bounds, so that its
    /// radius results are stated without the `1/3` clamp.
    pub fn has_exact_coefficient_bounds(&self) -> bool {
        self.janowski_params().is_some()
    }

    /// Taylor coefficients of ψ up to `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let order = order.max(1);
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        match &self.id {
            PsiId::Janowski { .. }
            | PsiId::StarlikeAlpha { .. }
            | PsiId::ClassicalStarlike
            | PsiId::ClassicalConvexGenerator => {
                let (d, e) = self.janowski_params().expect("janowski family");
                // (1 + Dz)/(1 + Ez) = 1 + (D - E) z sum (-E z)^j
                let mut p = d - e;
                for cn in c.iter_mut().skip(1) {
                    *cn = p;
                    p *= -e;
                }
            }
            PsiId::Cardioid => {
                c[1] = 4.0 / 3.0;
                if order >= 2 {
                    c[2] = 2.0 / 3.0;
                }
            }
            PsiId::ZExpZ => {
                let mut inv_fact = 1.0;
                for n in 1..=order {
                    if n > 1 {
                        inv_fact /= (n - 1) as f64;
                    }
                    c[n] = inv_fact;
                }
            }
            PsiId::Booth { k } => {
                // (z/k)(1 + z/k)/(1 - z/k) = z/k + 2 sum_{n>=2} (z/k)^n
                c[1] = 1.0 / k;
                for n in 2..=order {
                    c[n] = 2.0 / k.powi(n as i32);
                }
            }
            PsiId::Sine => {
                let mut term = 1.0;
                for n in 1..=order {
                    if n > 1 {
                        term /= n as f64;
                    }
                    if n % 2 == 1 {
                        c[n] = if (n / 2) % 2 == 0 { term } else { -term };
                    }
                }
            }
            PsiId::Custom { coeffs } => {
                for (dst, src) in c.iter_mut().zip(coeffs) {
                    *dst = *src;
                }
            }
        }
        TruncatedSeries::new(c).expect("catalog coefficients are finite")
    }

    /// `(ψ(t) - 1)/t` on the real segment `[-1, 1)`, with its limit `ψ'(0)` at 0.
    pub fn phi(&self, t: f64) -> f64 {
        match &self.id {
            PsiId::Janowski { d, e } => (d - e) / (1.0 + e * t),
            PsiId::StarlikeAlpha { alpha } => 2.0 * (1.0 - alpha) / (1.0 - t),
            PsiId::ClassicalStarlike | PsiId::ClassicalConvexGenerator => 2.0 / (1.0 - t),
            PsiId::Cardioid => 4.0 / 3.0 + 2.0 * t / 3.0,
            PsiId::ZExpZ => t.exp(),
            PsiId::Booth { k } => (k + t) / (k * (k - t)),
            PsiId::Sine => {
                if t == 0.0 {
                    1.0
                } else {
                    t.sin() / t
                }
            }
            PsiId::Custom { coeffs } => coeffs[1..].iter().rev().fold(0.0, |acc, c| acc * t + c),
        }
    }

    /// ψ(t) on the real line.
    pub fn eval(&self, t: f64) -> f64 {
        1.0 + t * self.phi(t)
    }

    /// Closed form of the starlike extremal function `f₀(r)` where one exists.
    pub fn f0_closed(&self, r: f64) -> Option<f64> {
        let v = match &self.id {
            PsiId::Janowski { .. }
            | PsiId::StarlikeAlpha { .. }
            | PsiId::ClassicalStarlike
            | PsiId::ClassicalConvexGenerator => {
                let (d, e) = self.janowski_params().expect("janowski family");
                if e == 0.0 {
                    r * (d * r).exp()
                } else {
                    r * (1.0 + e * r).powf((d - e) / e)
                }
            }
            PsiId::Cardioid => r * (4.0 * r / 3.0 + r * r / 3.0).exp(),
            PsiId::ZExpZ => r * (r.exp() - 1.0).exp(),
            PsiId::Booth { k } => r * (-r / k).exp() * (k / (k - r)).powi(2),
            PsiId::Sine => r * si(r).exp(),
            PsiId::Custom { .. } => return None,
        };
        Some(v)
    }

    /// Same as [`f0_closed`](Self::f0_closed) but as a checked operation.
    pub fn f0_closed_eval(&self, r: f64) -> Result<f64> {
        if !(r.abs() <= 1.0) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "[-1, 1]",
            });
        }
        self.f0_closed(r)
            .ok_or_else(|| Error::Unsupported(format!("{self} has no closed-form f0")))
    }

    /// Closed-form starlike Koebe radius `-f₀(-1)` where one is known.
    pub fn koebe_closed(&self) -> Option<f64> {
        let v = match &self.id {
            PsiId::Janowski { .. }
            | PsiId::StarlikeAlpha { .. }
            | PsiId::ClassicalStarlike
            | PsiId::ClassicalConvexGenerator => {
                let (d, e) = self.janowski_params().expect("janowski family");
                match self.id {
                    PsiId::StarlikeAlpha { alpha } => 4f64.powf(-(1.0 - alpha)),
                    _ if e == 0.0 => (-d).exp(),
                    _ => (1.0 - e).powf((d - e) / e),
                }
            }
            PsiId::Cardioid => (-1f64).exp(),
            PsiId::ZExpZ => ((-1f64).exp() - 1.0).exp(),
            PsiId::Booth { k } => (1.0 / k).exp() * (k / (k + 1.0)).powi(2),
            PsiId::Sine => si(-1.0).exp(),
            PsiId::Custom { .. } => return None,
        };
        Some(v)
    }
}

fn check_janowski(d: f64, e: f64) -> Result<()> {
    if !(d.is_finite() && e.is_finite() && -1.0 <= e && e < d && d <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Janowski parameters need -1 <= E < D <= 1, got D={d}, E={e}"
        )));
    }
    Ok(())
}

impl fmt::Display for PsiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            PsiId::Janowski { d, e } => write!(f, "janowski:D={d},E={e}"),
            PsiId::Cardioid => write!(f, "cardioid"),
            PsiId::ZExpZ => write!(f, "zexpz"),
            PsiId::Booth { k } if *k == BOOTH_K => write!(f, "booth"),
            PsiId::Booth { k } => write!(f, "booth:k={k}"),
            PsiId::Sine => write!(f, "sine"),
            PsiId::StarlikeAlpha { alpha } => write!(f, "alpha:{alpha}"),
            PsiId::ClassicalStarlike => write!(f, "classical-starlike"),
            PsiId::ClassicalConvexGenerator => write!(f, "classical-convex"),
            PsiId::Custom { .. } => write!(f, "custom"),
        }
    }
}

impl FromStr for PsiSpec {
    type Err = Error;

    /// Parses `name` or `name:key=val,key=val`, e.g. `janowski:D=0.5,E=-0.5`,
    /// `alpha:0.25`, `booth:k=3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let params = args.map(parse_params).transpose()?.unwrap_or_default();
        let get = |keys: &[&str]| -> Option<f64> {
            params
                .iter()
                .find(|(k, _)| keys.iter().any(|key| k.eq_ignore_ascii_case(key)))
                .map(|(_, v)| *v)
        };
        let no_params = |spec: PsiSpec| -> Result<PsiSpec> {
            if params.is_empty() {
                Ok(spec)
            } else {
                Err(Error::InvalidParameter(format!("{name} takes no parameters")))
            }
        };
        match name.to_ascii_lowercase().as_str() {
            "janowski" => {
                let d = get(&["D"]).ok_or_else(|| missing("janowski", "D"))?;
                let e = get(&["E"]).ok_or_else(|| missing("janowski", "E"))?;
                Self::janowski(d, e)
            }
            "alpha" | "starlike-alpha" => {
                let a = get(&["", "alpha", "a"]).ok_or_else(|| missing("alpha", "alpha"))?;
                Self::starlike_alpha(a)
            }
            "booth" => match get(&["k"]) {
                Some(k) => Self::new(PsiId::Booth { k }),
                None => no_params(Self::booth()),
            },
            "cardioid" => no_params(Self::cardioid()),
            "zexpz" => no_params(Self::zexpz()),
            "sine" => no_params(Self::sine()),
            "classical-starlike" => no_params(Self::classical_starlike()),
            "classical-convex" => no_params(Self::classical_convex()),
            other => Err(Error::InvalidParameter(format!(
                "unknown psi '{other}' (expected janowski, cardioid, zexpz, booth, sine, alpha, \
                 classical-starlike, classical-convex)"
            ))),
        }
    }
}

fn missing(name: &str, key: &str) -> Error {
    Error::InvalidParameter(format!("{name} requires parameter {key}"))
}

// "D=0.5,E=-0.5" -> [("D", 0.5), ("E", -0.5)]; a bare value gets the empty key.
fn parse_params(s: &str) -> Result<Vec<(String, f64)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').unwrap_or(("", p));
            let v: f64 = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("cannot parse '{}' as a number", v.trim()))
            })?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// Sine integral `Si(x) = ∫_0^x sin t / t dt` by its Maclaurin series
/// `sum (-1)^n x^{2n+1} / ((2n+1)(2n+1)!)`, accurate to machine precision
/// for `|x| <= 1`.
pub fn si(x: f64) -> f64 {
    let x2 = x * x;
    // term_n = (-1)^n x^{2n+1} / (2n+1)!
    let mut term = x;
    let mut sum = 0.0;
    let mut n = 0u32;
    loop {
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-17 || n > 200 {
            break;
        }
        n += 1;
        term *= -x2 / ((2 * n) as f64 * (2 * n + 1) as f64);
    }
    sum
}

/// Bell numbers `B_0..=B_{n_max}` via `B_{n+1} = sum_k C(n, k) B_k`.
/// `n_max <= 25` fits in 64 bits.
pub fn bell_numbers(n_max: usize) -> Result<Vec<u64>> {
    let mut bell: Vec<u128> = vec![1];
    // Row n of Pascal's triangle.
    let mut binom: Vec<u128> = vec![1];
    for n in 0..n_max {
        let next = binom
            .iter()
            .zip(&bell)
            .try_fold(0u128, |acc, (c, b)| c.checked_mul(*b).and_then(|p| acc.checked_add(p)))
            .ok_or_else(|| Error::Overflow(format!("B_{}", n + 1)))?;
        bell.push(next);
        let mut row = vec![1u128; n + 2];
        for k in 1..=n {
            row[k] = binom[k - 1] + binom[k];
        }
        binom = row;
    }
    bell.into_iter()
        .enumerate()
        .map(|(n, b)| u64::try_from(b).map_err(|_| Error::Overflow(format!("B_{n} exceeds u64"))))
        .collect()
}

/// Sharp Janowski coefficient bound `prod_{k=0}^{n-2} |E - D + E k| / (k + 1)`.
pub fn janowski_coeff_bound(d: f64, e: f64, n: usize) -> Result<f64> {
    check_janowski(d, e)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "coefficient index must be at least 2, got {n}"
        )));
    }
    Ok((0..=n - 2)
        .map(|k| (e - d + e * k as f64).abs() / (k + 1) as f64)
        .product())
}
