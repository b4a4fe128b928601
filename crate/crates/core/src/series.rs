//! Truncated real power series.
//!
//! A [`TruncatedSeries`] stores the coefficients `c_0, ..., c_K` of a power
//! series at a fixed truncation order `K`. Every binary operation requires both
//! operands to share the same order and returns a series of that order, so a
//! computation picks `K` once and never grows or shrinks it implicitly.

use crate::error::{Error, Result};

/// Default truncation order used throughout the crate.
pub const DEFAULT_ORDER: usize = 64;

/// Radius at which the stored tail estimate is evaluated.
const TAIL_HINT_RADIUS: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
    tail_hint: f64,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_K`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidSeries(format!(
                "order must be positive, got {} coefficient(s)",
                coeffs.len()
            )));
        }
        if let Some((n, c)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::InvalidSeries(format!("coefficient {n} is {c}")));
        }
        Ok(Self::from_finite(coeffs))
    }

    /// Pads (with zeros) or truncates `coeffs` to order `order`.
    pub fn from_coeffs(coeffs: &[f64], order: usize) -> Result<Self> {
        let mut c = vec![0.0; order + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Self::new(c)
    }

    // Callers guarantee len >= 2 and finite entries.
    fn from_finite(coeffs: Vec<f64>) -> Self {
        let tail_hint = tail_estimate(&coeffs, TAIL_HINT_RADIUS);
        Self { coeffs, tail_hint }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(0.0, order)
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = vec![0.0; order.max(1) + 1];
        c[0] = value;
        Self::from_finite(c)
    }

    /// `coef * z^power`, or the zero series if `power` exceeds the order.
    pub fn monomial(coef: f64, power: usize, order: usize) -> Self {
        let mut c = vec![0.0; order.max(1) + 1];
        if power < c.len() {
            c[power] = coef;
        }
        Self::from_finite(c)
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1.0, 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, zero beyond the stored order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Heuristic size of the dropped tail at `r = 1/3`.
    pub fn tail_hint(&self) -> f64 {
        self.tail_hint
    }

    /// Heuristic size of the dropped tail at radius `r`:
    /// `|c_K| r^K / (1 - rho r)` with `rho = |c_K / c_{K-1}|` clamped to `[0, 2]`.
    /// Infinite when the geometric model does not converge.
    pub fn tail_bound(&self, r: f64) -> f64 {
        tail_estimate(&self.coeffs, r.abs())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_finite(c))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_finite(c))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::from_finite(self.coeffs.iter().map(|c| alpha * c).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let k = self.order();
        let a = &self.coeffs;
        let b = &other.coeffs;
        let mut out = vec![0.0; k + 1];
        // Skip the leading zeros of `b`.
        let b_lo = b.iter().position(|&x| x != 0.0).unwrap_or(k + 1);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 || i + b_lo > k {
                continue;
            }
            for j in b_lo..=(k - i) {
                out[i + j] += ai * b[j];
            }
        }
        Self::from_finite(out)
    }

    /// Taylor coefficients of `self ∘ w`, evaluated by Horner's scheme.
    pub fn compose(&self, w: &Self) -> Result<Self> {
        self.check_order(w)?;
        if w.coeffs[0] != 0.0 {
            return Err(Error::NonZeroConstant {
                op: "compose",
                value: w.coeffs[0],
            });
        }
        let k = self.order();
        let mut acc = Self::constant(self.coeffs[k], k);
        for n in (0..k).rev() {
            acc = acc.mul_unchecked(w);
            acc.coeffs[0] += self.coeffs[n];
        }
        Ok(Self::from_finite(acc.coeffs))
    }

    /// `exp(self)` for a series with zero constant term, via the recurrence
    /// `n e_n = sum_{k=1}^{n} k f_k e_{n-k}` that follows from `(e^f)' = f' e^f`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::NonZeroConstant {
                op: "exp",
                value: self.coeffs[0],
            });
        }
        let k = self.order();
        let f = &self.coeffs;
        let mut e = vec![0.0; k + 1];
        e[0] = 1.0;
        for n in 1..=k {
            let s: f64 = (1..=n).map(|j| j as f64 * f[j] * e[n - j]).sum();
            e[n] = s / n as f64;
        }
        Self::new(e)
    }

    /// `∫_0^z p(t)/t dt` for `p` with zero constant term: `c_n -> c_n / n`.
    pub fn integrate_over_t(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::NonZeroConstant {
                op: "integrate_over_t",
                value: self.coeffs[0],
            });
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| if n == 0 { 0.0 } else { c / n as f64 })
            .collect();
        Ok(Self::from_finite(c))
    }

    /// Formal derivative by index shift; the top coefficient becomes zero.
    pub fn derivative(&self) -> Self {
        let k = self.order();
        let mut c = vec![0.0; k + 1];
        for n in 0..k {
            c[n] = (n + 1) as f64 * self.coeffs[n + 1];
        }
        Self::from_finite(c)
    }

    /// Multiplies by `z`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let k = self.order();
        let mut c = vec![0.0; k + 1];
        c[1..].copy_from_slice(&self.coeffs[..k]);
        Self::from_finite(c)
    }

    /// Same coefficients with absolute values (the majorant series).
    pub fn majorant(&self) -> Self {
        Self::from_finite(self.coeffs.iter().map(|c| c.abs()).collect())
    }

    /// `sum_n c_n r^n` for `|r| < 1`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r.abs() < 1.0) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "(-1, 1)",
            });
        }
        Ok(horner(&self.coeffs, r))
    }

    /// Majorant evaluation `sum_n |c_n| r^n` for `0 <= r < 1`.
    pub fn eval_abs(&self, r: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "[0, 1)",
            });
        }
        Ok(self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs()))
    }

    /// `sum_{n >= start} |c_n| r^n`; no domain check.
    pub(crate) fn abs_tail(&self, start: usize, r: f64) -> f64 {
        if start > self.order() {
            return 0.0;
        }
        let s = self.coeffs[start..]
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.abs());
        s * r.powi(start as i32)
    }
}

fn horner(c: &[f64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, x| acc * r + x)
}

fn tail_estimate(c: &[f64], r: f64) -> f64 {
    let k = c.len() - 1;
    let last = c[k].abs();
    if last == 0.0 {
        return 0.0;
    }
    let prev = c[k - 1].abs();
    let rho = if prev == 0.0 { 2.0 } else { (last / prev).clamp(0.0, 2.0) };
    let denom = 1.0 - rho * r;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    last * r.powi(k as i32) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn s(c: &[f64], k: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c, k).unwrap()
    }

    fn koebe(k: usize) -> TruncatedSeries {
        let c: Vec<f64> = (0..=k).map(|n| n as f64).collect();
        TruncatedSeries::new(c).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(TruncatedSeries::new(vec![1.0]).is_err());
        assert!(TruncatedSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TruncatedSeries::new(vec![1.0, f64::INFINITY, 0.0]).is_err());
        assert_eq!(s(&[1.0, 2.0, 3.0, 4.0], 2).coeffs(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn add_examples() {
        let a = s(&[1.0, 1.0], 4);
        let b = s(&[1.0, -1.0], 4);
        assert_eq!(a.checked_add(&b).unwrap(), TruncatedSeries::constant(2.0, 4));
        assert_eq!(a.checked_add(&TruncatedSeries::zero(4)).unwrap(), a);
        let c = s(&[1.0, 2.0, 1.0], 4);
        assert_eq!(c.checked_add(&a).unwrap().coeffs(), &[2.0, 3.0, 1.0, 0.0, 0.0]);
        assert_eq!(
            a.checked_add(&s(&[1.0], 3)),
            Err(Error::OrderMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn mul_examples() {
        let a = s(&[1.0, 1.0], 4);
        assert_eq!(a.checked_mul(&a).unwrap().coeffs(), &[1.0, 2.0, 1.0, 0.0, 0.0]);
        assert_eq!(a.checked_mul(&TruncatedSeries::constant(1.0, 4)).unwrap(), a);
        // (1 - z) * (1 + z + ... + z^K) = 1 - z^{K+1}, which truncates to 1.
        let k = 9;
        let geo = TruncatedSeries::new(vec![1.0; k + 1]).unwrap();
        let p = s(&[1.0, -1.0], k).checked_mul(&geo).unwrap();
        assert_eq!(p, TruncatedSeries::constant(1.0, k));
        assert!(a.checked_mul(&s(&[1.0], 2)).is_err());
    }

    #[test]
    fn compose_simple_cases() {
        let f = s(&[0.3, 1.0, -2.0, 0.5, 4.0], 6);
        assert_eq!(f.compose(&TruncatedSeries::identity(6)).unwrap(), f);
        let g = s(&[0.0, 1.0, 1.0], 6);
        let w = TruncatedSeries::monomial(1.0, 2, 6);
        assert_eq!(g.compose(&w).unwrap().coeffs(), &[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
        let bad = s(&[0.1, 1.0], 6);
        assert!(matches!(f.compose(&bad), Err(Error::NonZeroConstant { .. })));
    }

    // Taylor coefficients of F on a circle of radius rho by the discrete
    // Cauchy integral; independent of any series arithmetic.
    fn cauchy_coeffs(f: impl Fn((f64, f64)) -> (f64, f64), k: usize, rho: f64) -> Vec<f64> {
        let m = 256;
        (0..=k)
            .map(|n| {
                let mut acc = 0.0;
                for j in 0..m {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                    let (re, im) = f((rho * th.cos(), rho * th.sin()));
                    let a = -(n as f64) * th;
                    acc += re * a.cos() - im * a.sin();
                }
                acc / m as f64 / rho.powi(n as i32)
            })
            .collect()
    }

    fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    }

    #[test]
    fn compose_koebe_with_blaschke_matches_cauchy_oracle() {
        let k = 8;
        let a = 0.5;
        let w_fn = |z: (f64, f64)| cdiv(cmul(z, (z.0 - a, z.1)), (1.0 - a * z.0, -a * z.1));
        let f_fn = |w: (f64, f64)| {
            let one_minus = (1.0 - w.0, -w.1);
            cdiv(w, cmul(one_minus, one_minus))
        };
        let expected = cauchy_coeffs(|z| f_fn(w_fn(z)), k, 0.3);

        let mut wc = vec![0.0; k + 1];
        wc[1] = -a;
        for (i, c) in wc.iter_mut().enumerate().skip(2) {
            *c = (1.0 - a * a) * a.powi(i as i32 - 2);
        }
        let w = TruncatedSeries::new(wc).unwrap();
        let got = koebe(k).compose(&w).unwrap();
        for n in 0..=k {
            assert!(
                (got.coeff(n) - expected[n]).abs() < 1e-10,
                "n={n}: {} vs {}",
                got.coeff(n),
                expected[n]
            );
        }
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::zero(5).exp().unwrap(), TruncatedSeries::constant(1.0, 5));
        let e = TruncatedSeries::identity(10).exp().unwrap();
        let mut fact = 1.0;
        for n in 0..=10 {
            if n > 0 {
                fact *= n as f64;
            }
            assert_relative_eq!(e.coeff(n), 1.0 / fact, max_relative = 1e-15);
        }
        let g = s(&[0.0, 4.0 / 3.0, 1.0 / 3.0], 6).exp().unwrap();
        assert_relative_eq!(g.coeff(1), 4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(g.coeff(2), 11.0 / 9.0, max_relative = 1e-15);
        assert!(s(&[1.0, 1.0], 4).exp().is_err());
    }

    #[test]
    fn integrate_over_t_examples() {
        assert_eq!(
            TruncatedSeries::zero(4).integrate_over_t().unwrap(),
            TruncatedSeries::zero(4)
        );
        let p = s(&[0.0, 4.0 / 3.0, 2.0 / 3.0], 4).integrate_over_t().unwrap();
        assert_eq!(p.coeffs(), &[0.0, 4.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]);
        assert!(s(&[0.5, 1.0], 4).integrate_over_t().is_err());
    }

    #[test]
    fn integrate_zexpz_then_exp_gives_bell_over_factorial() {
        // z e^z = sum z^{n+1}/n!; z exp(∫ e^t dt) = z exp(e^z - 1) = sum B_{n-1}/(n-1)! z^n.
        let k = 12;
        let mut c = vec![0.0; k + 1];
        let mut fact = 1.0;
        for n in 0..k {
            if n > 0 {
                fact *= n as f64;
            }
            c[n + 1] = 1.0 / fact;
        }
        let f0 = TruncatedSeries::new(c)
            .unwrap()
            .integrate_over_t()
            .unwrap()
            .exp()
            .unwrap()
            .shift_up();
        let bell = [1.0, 1.0, 2.0, 5.0, 15.0, 52.0, 203.0, 877.0, 4140.0, 21147.0, 115975.0];
        let mut fact = 1.0;
        for (i, b) in bell.iter().enumerate() {
            if i > 0 {
                fact *= i as f64;
            }
            assert_relative_eq!(f0.coeff(i + 1), b / fact, max_relative = 1e-13);
        }
    }

    #[test]
    fn eval_examples() {
        let f = s(&[0.0, 1.0, -1.0], 4);
        assert_eq!(f.eval_abs(0.5).unwrap(), 0.75);
        assert_relative_eq!(koebe(64).eval_abs(1.0 / 3.0).unwrap(), 0.75, max_relative = 1e-14);
        assert_relative_eq!(koebe(64).eval(-0.5).unwrap(), -2.0 / 9.0, max_relative = 1e-14);
        assert_eq!(TruncatedSeries::constant(1.0, 3).eval(0.7).unwrap(), 1.0);
        assert!(f.eval_abs(1.0).is_err());
        assert!(f.eval_abs(-0.1).is_err());
        assert!(f.eval(-1.0).is_err());
        assert!(f.eval(f64::NAN).is_err());
    }

    #[test]
    fn tail_hint_follows_geometric_model() {
        let k = koebe(64);
        let expected = 64.0 * (1.0f64 / 3.0).powi(64) / (1.0 - (64.0 / 63.0) / 3.0);
        assert_relative_eq!(k.tail_hint(), expected, max_relative = 1e-12);
        assert_eq!(TruncatedSeries::constant(1.0, 4).tail_hint(), 0.0);
        assert_eq!(s(&[0.0, 0.0, 1.0], 2).tail_bound(0.6), f64::INFINITY);
    }

    #[test]
    fn derivative_and_shift() {
        let f = s(&[1.0, 2.0, 3.0, 4.0], 3);
        assert_eq!(f.derivative().coeffs(), &[2.0, 6.0, 12.0, 0.0]);
        assert_eq!(f.shift_up().coeffs(), &[0.0, 1.0, 2.0, 3.0]);
    }

    const K: usize = 12;

    fn series_strategy() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-2.0f64..2.0, K + 1).prop_map(|c| TruncatedSeries::new(c).unwrap())
    }

    fn zero_const_strategy() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-1.0f64..1.0, K + 1).prop_map(|mut c| {
            c[0] = 0.0;
            TruncatedSeries::new(c).unwrap()
        })
    }

    fn close(a: &TruncatedSeries, b: &TruncatedSeries, rel: f64) -> bool {
        a.coeffs()
            .iter()
            .zip(b.coeffs())
            .all(|(x, y)| (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0))
    }

    proptest! {
        #[test]
        fn ring_laws(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
            prop_assert!(close(&a.checked_add(&b).unwrap(), &b.checked_add(&a).unwrap(), 1e-12));
            prop_assert!(close(&a.checked_mul(&b).unwrap(), &b.checked_mul(&a).unwrap(), 1e-12));
            let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
            let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
            prop_assert!(close(&ab_c, &a_bc, 1e-12));
            let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-12));
        }

        #[test]
        fn compose_with_monomials_is_associative(f in series_strategy(), p in 1usize..4, q in 1usize..4) {
            let wp = TruncatedSeries::monomial(1.0, p, K);
            let wq = TruncatedSeries::monomial(1.0, q, K);
            let lhs = f.compose(&wp).unwrap().compose(&wq).unwrap();
            let rhs = f.compose(&wp.compose(&wq).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.compose(&TruncatedSeries::identity(K)).unwrap(), f);
        }

        #[test]
        fn exp_is_a_homomorphism(a in zero_const_strategy(), b in zero_const_strategy()) {
            let lhs = a.checked_add(&b).unwrap().exp().unwrap();
            let rhs = a.exp().unwrap().checked_mul(&b.exp().unwrap()).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-10));
        }

        #[test]
        fn exp_satisfies_its_ode(a in zero_const_strategy()) {
            let e = a.exp().unwrap();
            let lhs = e.derivative();
            let rhs = a.derivative().checked_mul(&e).unwrap();
            // The top coefficient of a derivative is lost to truncation.
            for n in 0..K {
                prop_assert!((lhs.coeff(n) - rhs.coeff(n)).abs() <= 1e-12 * lhs.coeff(n).abs().max(1.0));
            }
        }

        #[test]
        fn majorant_dominates(a in series_strategy(), r in 0.0f64..0.999) {
            prop_assert!(a.eval_abs(r).unwrap() >= a.eval(r).unwrap().abs());
        }
    }
}
