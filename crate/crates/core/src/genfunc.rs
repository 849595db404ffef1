//! Coefficient sequences `n -> A_n(x)` of a generating function
//! `G(x, t) = sum_n A_n(x) t^n`, with the parameter `x` bound at
//! construction.
//!
//! The builtins carry their closed form `G(x, t)` so that expansions can be
//! checked against direct evaluation.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Integer interval, either end possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Support {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Support {
    pub const ALL: Support = Support { lo: None, hi: None };

    pub fn finite(lo: i64, hi: i64) -> Self {
        Self {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn from(lo: i64) -> Self {
        Self { lo: Some(lo), hi: None }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo.is_none_or(|lo| n >= lo) && self.hi.is_none_or(|hi| n <= hi)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(lo), Some(hi)) if lo > hi)
    }

    /// True when no negative powers of `t` occur.
    pub fn is_nonnegative(&self) -> bool {
        self.lo.is_some_and(|lo| lo >= 0)
    }

    pub fn intersect(&self, other: &Support) -> Support {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Support { lo, hi }
    }

    /// Clamps `[lo, hi]` to the support.
    pub fn clamp(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        let lo = self.lo.map_or(lo, |s| s.max(lo));
        let hi = self.hi.map_or(hi, |s| s.min(hi));
        (lo <= hi).then_some((lo, hi))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(lo) => write!(f, "[{lo}, ")?,
            None => f.write_str("(-inf, ")?,
        }
        match self.hi {
            Some(hi) => write!(f, "{hi}]"),
            None => f.write_str("inf)"),
        }
    }
}

type RawFn = dyn Fn(i64) -> Complex64 + Send + Sync;
type ClosedFn = dyn Fn(Complex64) -> Option<Complex64> + Send + Sync;

struct Inner {
    name: String,
    support: Support,
    nonneg_coeffs: bool,
    raw: Arc<RawFn>,
    closed_form: Option<Arc<ClosedFn>>,
    memo: RwLock<HashMap<i64, Complex64>>,
}

/// The map `n -> A_n`, zero outside its declared support.
///
/// Cloning is cheap and clones share the memo table.
#[derive(Clone)]
pub struct CoefficientSequence {
    inner: Arc<Inner>,
}

impl fmt::Debug for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSequence")
            .field("name", &self.inner.name)
            .field("support", &self.inner.support)
            .field("nonneg_coeffs", &self.inner.nonneg_coeffs)
            .field("closed_form", &self.inner.closed_form.is_some())
            .finish()
    }
}

/// Indices sampled when checking a `nonneg_coeffs` claim.
const NONNEG_SAMPLES: i64 = 64;

impl CoefficientSequence {
    /// Wraps a user coefficient function. `raw` is only ever called inside
    /// `support`. A `nonneg_coeffs` claim is checked on the first indices of
    /// the support.
    pub fn new<F>(name: impl Into<String>, support: Support, nonneg_coeffs: bool, raw: F) -> Result<Self>
    where
        F: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        let seq = Self::build(name.into(), support, nonneg_coeffs, Arc::new(raw), None);
        if nonneg_coeffs {
            let start = support.lo.unwrap_or(-NONNEG_SAMPLES / 2);
            for n in start..start + NONNEG_SAMPLES {
                let a = seq.eval(n);
                if a.im != 0.0 || a.re < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "sequence `{}` claims non-negative coefficients but A_{n} = {a}",
                        seq.name()
                    )));
                }
            }
        }
        Ok(seq)
    }

    /// Attaches the closed form `G(t)`; `None` from `g` marks a pole.
    pub fn with_closed_form<G>(self, g: G) -> Self
    where
        G: Fn(Complex64) -> Option<Complex64> + Send + Sync + 'static,
    {
        let inner = &self.inner;
        Self::build(
            inner.name.clone(),
            inner.support,
            inner.nonneg_coeffs,
            Arc::clone(&inner.raw),
            Some(Arc::new(g)),
        )
    }

    fn build(
        name: String,
        support: Support,
        nonneg_coeffs: bool,
        raw: Arc<RawFn>,
        closed_form: Option<Arc<ClosedFn>>,
    ) -> Self {
        Self {
            inner: Arc::new(Inner {
                name,
                support,
                nonneg_coeffs,
                raw,
                closed_form,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn support(&self) -> Support {
        self.inner.support
    }

    pub fn nonneg_coeffs(&self) -> bool {
        self.inner.nonneg_coeffs
    }

    pub fn has_closed_form(&self) -> bool {
        self.inner.closed_form.is_some()
    }

    /// `A_n`, exactly zero outside the support.
    pub fn eval(&self, n: i64) -> Complex64 {
        if !self.inner.support.contains(n) {
            return ZERO;
        }
        if let Some(&v) = self.inner.memo.read().expect("memo lock").get(&n) {
            return v;
        }
        let v = (self.inner.raw)(n);
        self.inner.memo.write().expect("memo lock").insert(n, v);
        v
    }

    /// `A_lo, ..., A_hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Complex64> {
        (lo..=hi).map(|n| self.eval(n)).collect()
    }

    /// `G(t)` from the closed form.
    pub fn closed_form(&self, t: Complex64) -> Result<Complex64> {
        let g = self
            .inner
            .closed_form
            .as_ref()
            .ok_or_else(|| Error::MissingClosedForm(self.name().to_string()))?;
        match g(t) {
            Some(v) if v.re.is_finite() && v.im.is_finite() => Ok(v),
            _ => Err(Error::SingularEvaluation {
                name: self.name().to_string(),
                t,
            }),
        }
    }

    /// A finite Laurent polynomial `sum_k coeffs[k] t^{lo + k}`.
    pub fn from_finite(name: impl Into<String>, lo: i64, coeffs: Vec<Complex64>) -> Self {
        let hi = lo + coeffs.len() as i64 - 1;
        let nonneg = coeffs.iter().all(|a| a.im == 0.0 && a.re >= 0.0);
        let table = coeffs.clone();
        let seq = Self::build(
            name.into(),
            Support::finite(lo, hi),
            nonneg,
            Arc::new(move |n| table[(n - lo) as usize]),
            None,
        );
        seq.with_closed_form(move |t| {
            if t == ZERO && lo < 0 {
                return None;
            }
            let mut acc = ZERO;
            for a in coeffs.iter().rev() {
                acc = acc * t + a;
            }
            Some(acc * t.powi(lo as i32))
        })
    }
}

fn fmt_param(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{v}")
    }
}

fn is_nonneg_real(v: Complex64) -> bool {
    v.im == 0.0 && v.re >= 0.0
}

/// `G = 1/(1 - z t)`, `A_n = z^n` for `n >= 0`. Requires `|z| < 1`.
pub fn geometric(z: Complex64) -> Result<CoefficientSequence> {
    if z.norm().is_nan() || z.norm() >= 1.0 {
        return Err(Error::ConvergenceDomain {
            name: "z",
            value: fmt_param(z),
            domain: "|z| < 1",
        });
    }
    Ok(CoefficientSequence::build(
        format!("geometric(z={})", fmt_param(z)),
        Support::from(0),
        is_nonneg_real(z),
        Arc::new(move |n| z.powu(n as u32)),
        None,
    )
    .with_closed_form(move |t| {
        let d = ONE - z * t;
        (d != ZERO).then(|| d.inv())
    }))
}

/// `G = 1 - 2 x t + t^2`.
pub fn quadratic(x: f64) -> CoefficientSequence {
    let coeffs = [ONE, Complex64::new(-2.0 * x, 0.0), ONE];
    CoefficientSequence::build(
        format!("quadratic(x={x})"),
        Support::finite(0, 2),
        x <= 0.0,
        Arc::new(move |n| coeffs[n as usize]),
        None,
    )
    .with_closed_form(move |t| Some(ONE - 2.0 * x * t + t * t))
}

/// Chebyshev polynomials of the second kind, `1/(1 - 2 x t + t^2) = sum u_n(x) t^n`.
/// Requires `|x| < 1`.
pub fn chebyshev_u(x: f64) -> Result<CoefficientSequence> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::ConvergenceDomain {
            name: "x",
            value: x.to_string(),
            domain: "|x| < 1",
        });
    }
    let table: Arc<RwLock<Vec<f64>>> = Arc::new(RwLock::new(vec![1.0, 2.0 * x]));
    let raw = move |n: i64| {
        let n = n as usize;
        if let Some(&v) = table.read().expect("table lock").get(n) {
            return Complex64::new(v, 0.0);
        }
        let mut u = table.write().expect("table lock");
        while u.len() <= n {
            let k = u.len();
            let next = 2.0 * x * u[k - 1] - u[k - 2];
            u.push(next);
        }
        Complex64::new(u[n], 0.0)
    };
    Ok(CoefficientSequence::build(
        format!("chebyshev-u(x={x})"),
        Support::from(0),
        false,
        Arc::new(raw),
        None,
    )
    .with_closed_form(move |t| {
        let d = ONE - 2.0 * x * t + t * t;
        (d.norm() > 1e-15).then(|| d.inv())
    }))
}

/// `G = exp(x t)`, `A_n = x^n / n!`.
pub fn exponential(x: Complex64) -> CoefficientSequence {
    let raw = move |n: i64| {
        let mut a = ONE;
        for k in 1..=n {
            a *= x / k as f64;
        }
        a
    };
    CoefficientSequence::build(
        format!("exponential(x={})", fmt_param(x)),
        Support::from(0),
        is_nonneg_real(x),
        Arc::new(raw),
        None,
    )
    .with_closed_form(move |t| Some((x * t).exp()))
}

/// Modified Bessel function `I_n(2x) = sum_k x^{2k+n} / (k! (k+n)!)` by the
/// ascending series.
pub fn bessel_i_2x(n: i64, x: f64) -> f64 {
    let n = n.unsigned_abs();
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= x / k as f64;
    }
    let x2 = x * x;
    let mut term = lead;
    let mut sum = lead;
    for k in 0u64..10_000 {
        term *= x2 / ((k + 1) as f64 * (k + 1 + n) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `G = exp(x (t + 1/t))`, `A_n = I_|n|(2x)`, support all of Z.
pub fn bessel_like(x: f64) -> CoefficientSequence {
    CoefficientSequence::build(
        format!("bessel(x={x})"),
        Support::ALL,
        x >= 0.0,
        Arc::new(move |n| Complex64::new(bessel_i_2x(n, x), 0.0)),
        None,
    )
    .with_closed_form(move |t| (t != ZERO).then(|| (x * (t + t.inv())).exp()))
}

/// Cauchy product of two series, restricted to the indices in `clip`.
pub fn series_product(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    clip: RangeInclusive<i64>,
) -> Result<CoefficientSequence> {
    let (sa, sb) = (a.support(), b.support());
    // sum_k a_k b_{n-k}: k is bounded below by a.lo or n - b.hi, above by
    // a.hi or n - b.lo.
    if (sa.lo.is_none() && sb.hi.is_none()) || (sa.hi.is_none() && sb.lo.is_none()) {
        return Err(Error::UnsupportedSupport(format!(
            "convolution of {} on {sa} with {} on {sb} is not a finite sum",
            a.name(),
            b.name()
        )));
    }
    let natural = Support {
        lo: sa.lo.zip(sb.lo).map(|(x, y)| x + y),
        hi: sa.hi.zip(sb.hi).map(|(x, y)| x + y),
    };
    let support = natural.intersect(&Support::finite(*clip.start(), *clip.end()));
    let (ca, cb) = (a.clone(), b.clone());
    let raw = move |n: i64| {
        let lo = match (sa.lo, sb.hi) {
            (Some(x), Some(y)) => x.max(n - y),
            (Some(x), None) => x,
            (None, Some(y)) => n - y,
            (None, None) => unreachable!("checked above"),
        };
        let hi = match (sa.hi, sb.lo) {
            (Some(x), Some(y)) => x.min(n - y),
            (Some(x), None) => x,
            (None, Some(y)) => n - y,
            (None, None) => unreachable!("checked above"),
        };
        (lo..=hi).map(|k| ca.eval(k) * cb.eval(n - k)).sum()
    };
    let nonneg = a.nonneg_coeffs() && b.nonneg_coeffs();
    let seq = CoefficientSequence::build(
        format!("{}*{}", a.name(), b.name()),
        support,
        nonneg,
        Arc::new(raw),
        None,
    );
    if a.has_closed_form() && b.has_closed_form() {
        let (ga, gb) = (a.clone(), b.clone());
        Ok(seq.with_closed_form(move |t| Some(ga.closed_form(t).ok()? * gb.closed_form(t).ok()?)))
    } else {
        Ok(seq)
    }
}
