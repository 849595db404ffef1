//! Character expansions of `prod_i G(x, t_i)`.
//!
//! For a coefficient sequence `A_n`, the coefficient of the U(N) character
//! with row lengths `n_1 >= ... >= n_N` is the Toeplitz minor
//! `det(A_{n_j + i - j})`. Labels are either
//!
//! * a shape `l` with `l_N = 0` times `(det U)^{n_N}` with `n_N` in a caller
//!   range ([`Scheme::Split`]), which handles two-sided series, or
//! * a plain partition with all `n_i >= 0` ([`Scheme::Direct`]), available
//!   when the series has no negative powers of `t`; every other label then
//!   has a zero column in its determinant.
//!
//! Both schemes share [`coefficient_from_window`].

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfunc::CoefficientSequence;
use crate::linalg::determinant_from_fn;
use crate::partitions::{enumerate_labels, enumerate_partitions, GeneralizedLabel, Partition};
use crate::symfunc::{det_power, CharacterEvaluator, EigenvalueSet};

/// Relative threshold, against the largest queried `|A_n|`, below which a
/// coefficient is flagged as zero.
pub const PRUNE_RELATIVE: f64 = 1e-12;

/// Default cap on the number of enumerated terms.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// `det(A_{n_j + i - j})` for the label `g`.
pub fn coefficient(a: &CoefficientSequence, g: &GeneralizedLabel) -> Complex64 {
    let exps = g.exponents();
    determinant_from_fn(exps.len(), |i, j| a.eval(exps[j] + i as i64 - j as i64))
}

/// [`coefficient`] reading `A` from a precomputed window starting at index
/// `offset`; indices outside the window are zero.
pub fn coefficient_from_window(window: &[Complex64], offset: i64, g: &GeneralizedLabel) -> Complex64 {
    let exps = g.exponents();
    determinant_from_fn(exps.len(), |i, j| {
        let k = exps[j] + i as i64 - j as i64 - offset;
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            window.get(k as usize).copied().unwrap_or_default()
        }
    })
}

/// How labels are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Plain partitions with at most `max_boxes` boxes in total.
    Direct,
    /// Shapes with at most `max_boxes` boxes times every power of `det U` in
    /// the requested range.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpandOptions {
    pub max_terms: usize,
    /// `None` picks [`Scheme::Direct`] exactly when the support has no
    /// negative indices.
    pub scheme: Option<Scheme>,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            scheme: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm {
    pub label: GeneralizedLabel,
    pub coefficient: Complex64,
    /// `|coefficient|` fell below the prune tolerance. The term is kept.
    pub flagged_zero: bool,
}

/// A truncated character expansion, terms in graded label order.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    rank: usize,
    source_name: String,
    max_boxes: usize,
    det_power_range: (i64, i64),
    scheme: Scheme,
    prune_tol: f64,
    terms: Vec<ExpansionTerm>,
}

pub fn expand(
    a: &CoefficientSequence,
    rank: usize,
    max_boxes: usize,
    det_power_range: RangeInclusive<i64>,
) -> Result<Expansion> {
    expand_with(a, rank, max_boxes, det_power_range, &ExpandOptions::default())
}

pub fn expand_with(
    a: &CoefficientSequence,
    rank: usize,
    max_boxes: usize,
    det_power_range: RangeInclusive<i64>,
    options: &ExpandOptions,
) -> Result<Expansion> {
    if rank == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let scheme = options.scheme.unwrap_or(if a.support().is_nonnegative() {
        Scheme::Direct
    } else {
        Scheme::Split
    });
    let (dp_lo, dp_hi) = match scheme {
        Scheme::Direct => {
            if !a.support().is_nonnegative() {
                return Err(Error::UnsupportedSupport(format!(
                    "direct partitions need a series without negative powers; {} has support {}",
                    a.name(),
                    a.support()
                )));
            }
            (0, max_boxes as i64)
        }
        Scheme::Split => (*det_power_range.start(), *det_power_range.end()),
    };

    let limit = options.max_terms;
    let labels: Vec<GeneralizedLabel> = match scheme {
        Scheme::Direct => {
            let mut v: Vec<_> = enumerate_partitions(rank, max_boxes)
                .take(limit.saturating_add(1))
                .map(|p| GeneralizedLabel::from_partition(&p))
                .collect();
            v.sort();
            v
        }
        Scheme::Split => enumerate_labels(rank, max_boxes, dp_lo..=dp_hi)
            .take(limit.saturating_add(1))
            .collect(),
    };
    if labels.len() > limit {
        return Err(Error::ResourceLimit { limit });
    }

    // Every determinant entry index lies in this window.
    let n = rank as i64;
    let (w_lo, w_hi) = (dp_lo - (n - 1), max_boxes as i64 + dp_hi + (n - 1));
    let window = a.window(w_lo, w_hi);
    let scale = window.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let prune_tol = PRUNE_RELATIVE * scale;

    let terms = labels
        .into_par_iter()
        .map(|label| {
            let coefficient = coefficient_from_window(&window, w_lo, &label);
            let mag = coefficient.norm();
            ExpansionTerm {
                flagged_zero: mag < prune_tol || mag == 0.0,
                label,
                coefficient,
            }
        })
        .collect::<Vec<_>>();
    if let Some(bad) = terms
        .iter()
        .find(|t| !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()))
    {
        return Err(Error::Numerical(format!(
            "coefficient of {} is not finite",
            bad.label
        )));
    }

    Ok(Expansion {
        rank,
        source_name: a.name().to_string(),
        max_boxes,
        det_power_range: (dp_lo, dp_hi),
        scheme,
        prune_tol,
        terms,
    })
}

impl Expansion {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn max_boxes(&self) -> usize {
        self.max_boxes
    }

    pub fn det_power_range(&self) -> (i64, i64) {
        self.det_power_range
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn prune_tol(&self) -> f64 {
        self.prune_tol
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, label: &GeneralizedLabel) -> Option<&ExpansionTerm> {
        self.terms
            .binary_search_by(|t| t.label.cmp(label))
            .ok()
            .map(|i| &self.terms[i])
    }

    /// Truncated sum `sum_terms coefficient * char_generalized(label, t)`.
    pub fn reconstruct(&self, t: &EigenvalueSet) -> Result<Complex64> {
        if t.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: t.rank(),
            });
        }
        let mut eval = CharacterEvaluator::new(t.clone());
        let mut shape_chars: HashMap<&Partition, Complex64> = HashMap::new();
        let mut sum = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            if term.coefficient == Complex64::new(0.0, 0.0) {
                continue;
            }
            let shape = term.label.shape();
            let chi = match shape_chars.get(shape) {
                Some(&v) => v,
                None => {
                    let v = eval.char(shape)?;
                    shape_chars.insert(shape, v);
                    v
                }
            };
            sum += term.coefficient * det_power(t, term.label.det_power())? * chi;
        }
        Ok(sum)
    }

    pub fn to_record(&self) -> ExpansionRecord {
        ExpansionRecord {
            n: self.rank,
            source_name: self.source_name.clone(),
            cutoffs: Cutoffs {
                max_boxes: self.max_boxes,
                det_power_range: [self.det_power_range.0, self.det_power_range.1],
            },
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord {
                    label: t.label.to_string(),
                    coefficient: [t.coefficient.re, t.coefficient.im],
                    flagged_zero: t.flagged_zero,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("expansion serialises")
    }

    /// `label,re,im,flagged_zero`, labels quoted since they contain commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,re,im,flagged_zero\n");
        for t in &self.terms {
            let _ = writeln!(
                out,
                "\"{}\",{:?},{:?},{}",
                t.label, t.coefficient.re, t.coefficient.im, t.flagged_zero
            );
        }
        out
    }
}

/// Wire form of one term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub label: String,
    pub coefficient: [f64; 2],
    pub flagged_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cutoffs {
    pub max_boxes: usize,
    pub det_power_range: [i64; 2],
}

/// Wire form of an [`Expansion`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionRecord {
    #[serde(rename = "N")]
    pub n: usize,
    pub source_name: String,
    pub cutoffs: Cutoffs,
    pub terms: Vec<TermRecord>,
}

/// `prod_i G(x, t_i)` from the closed form of `a`.
pub fn direct_product(a: &CoefficientSequence, t: &EigenvalueSet) -> Result<Complex64> {
    t.values().iter().map(|&ti| a.closed_form(ti)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::{bessel_like, chebyshev_u, exponential, geometric, quadratic, Support};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(v: f64) -> Complex64 {
        c(v, 0.0)
    }

    fn label(s: &str) -> GeneralizedLabel {
        s.parse().unwrap()
    }

    #[test]
    fn geometric_single_rows() {
        let z = c(0.4, -0.3);
        let a = geometric(z).unwrap();
        for n in 0..6 {
            let g = GeneralizedLabel::new(Partition::row(n, 3), 0).unwrap();
            assert!((coefficient(&a, &g) - z.powu(n as u32)).norm() < 1e-15);
        }
        // exponents (1,1): [[A1, A0], [A2, A1]]
        let g = label("0,0@1");
        assert!(coefficient(&a, &g).norm() < 1e-15);
    }

    #[test]
    fn chebyshev_single_column_vanishes() {
        for &x in &[-0.8, -0.1, 0.2, 0.55, 0.9] {
            let a = chebyshev_u(x).unwrap();
            let g = GeneralizedLabel::from_exponents(&[1, 1, 1]).unwrap();
            assert!(coefficient(&a, &g).norm() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn expand_geometric_example() {
        let e = expand(&geometric(r(0.5)).unwrap(), 2, 3, 0..=3).unwrap();
        assert_eq!(e.scheme(), Scheme::Direct);
        for t in e.terms() {
            let exps = t.label.exponents();
            if exps[1] == 0 {
                assert!((t.coefficient - r(0.5f64.powi(exps[0] as i32))).norm() < 1e-15);
                assert!(!t.flagged_zero);
            } else {
                assert!(t.coefficient.norm() < 1e-15);
                assert!(t.flagged_zero);
            }
        }
        let labels: Vec<_> = e.terms().iter().map(|t| t.label.to_string()).collect();
        assert_eq!(labels, ["0,0", "0,0@1", "1,0", "1,0@1", "2,0", "3,0"]);
    }

    #[test]
    fn expand_quadratic_two_box_rows() {
        let e = expand(&quadratic(0.3), 2, 6, 0..=6).unwrap();
        for t in e.terms() {
            if t.label.exponents()[0] >= 3 {
                assert!(t.coefficient.norm() < 1e-15, "{}", t.label);
            }
        }
        // 1 - 2x(t1 + t2) + ... : the fundamental has coefficient -2x
        assert!((e.get(&label("1,0")).unwrap().coefficient - r(-0.6)).norm() < 1e-15);
    }

    #[test]
    fn expand_u1_exponential() {
        let e = expand_with(
            &exponential(ONE_C),
            1,
            0,
            0..=5,
            &ExpandOptions {
                scheme: Some(Scheme::Split),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(e.len(), 6);
        let mut fact = 1.0;
        for (k, t) in e.terms().iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert_eq!(t.label.det_power(), k as i64);
            assert!((t.coefficient - r(1.0 / fact)).norm() < 1e-15);
        }
    }

    const ONE_C: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn direct_scheme_needs_nonnegative_support() {
        let opts = ExpandOptions {
            scheme: Some(Scheme::Direct),
            ..Default::default()
        };
        assert!(matches!(
            expand_with(&bessel_like(0.5), 2, 2, 0..=0, &opts),
            Err(Error::UnsupportedSupport(_))
        ));
    }

    #[test]
    fn resource_limit() {
        let opts = ExpandOptions {
            max_terms: 10,
            scheme: None,
        };
        assert!(matches!(
            expand_with(&geometric(r(0.5)).unwrap(), 3, 10, 0..=0, &opts),
            Err(Error::ResourceLimit { limit: 10 })
        ));
    }

    #[test]
    fn reconstruct_examples() {
        let t = EigenvalueSet::from_phases(&[0.0, std::f64::consts::PI]).unwrap();
        let a = geometric(r(0.5)).unwrap();
        let e = expand(&a, 2, 60, 0..=0).unwrap();
        assert!((e.reconstruct(&t).unwrap() - r(4.0 / 3.0)).norm() < 1e-8);

        let t = EigenvalueSet::from_phases(&[0.4, 2.9]).unwrap();
        let q = quadratic(0.3);
        let e = expand(&q, 2, 4, 0..=0).unwrap();
        let direct = direct_product(&q, &t).unwrap();
        assert!((e.reconstruct(&t).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn reconstruct_two_sided() {
        let a = bessel_like(0.4);
        let t = EigenvalueSet::from_phases(&[0.3, 2.2]).unwrap();
        let e = expand(&a, 2, 24, -12..=12).unwrap();
        assert_eq!(e.scheme(), Scheme::Split);
        let direct = direct_product(&a, &t).unwrap();
        assert!((e.reconstruct(&t).unwrap() - direct).norm() < 1e-8);
    }

    #[test]
    fn reconstruct_rank_mismatch() {
        let e = expand(&quadratic(0.1), 2, 2, 0..=0).unwrap();
        let t = EigenvalueSet::from_phases(&[0.3]).unwrap();
        assert!(matches!(e.reconstruct(&t), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn direct_product_examples() {
        let t = EigenvalueSet::from_phases(&[0.3, 1.7, -2.0]).unwrap();
        let v = t.values();
        let z = c(0.3, 0.2);
        let got = direct_product(&geometric(z).unwrap(), &t).unwrap();
        let want: Complex64 = v.iter().map(|ti| (r(1.0) - z * ti).inv()).product();
        assert!((got - want).norm() < 1e-14);
        let got = direct_product(&exponential(r(0.7)), &t).unwrap();
        assert!((got - (0.7 * t.sum()).exp()).norm() < 1e-13);
        let q = direct_product(&quadratic(0.3), &t).unwrap();
        let want: Complex64 = v.iter().map(|ti| r(1.0) - 0.6 * ti + ti * ti).product();
        assert!((q - want).norm() < 1e-14);
        let user = CoefficientSequence::new("user", Support::from(0), false, |_| r(1.0)).unwrap();
        assert!(matches!(direct_product(&user, &t), Err(Error::MissingClosedForm(_))));
    }

    #[test]
    fn serialisation_forms() {
        let e = expand(&geometric(r(0.5)).unwrap(), 2, 1, 0..=0).unwrap();
        let record: ExpansionRecord = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(record, e.to_record());
        assert_eq!(record.n, 2);
        assert_eq!(record.cutoffs.det_power_range, [0, 1]);
        let csv = e.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("label,re,im,flagged_zero"));
        assert_eq!(lines.next(), Some("\"0,0\",1.0,0.0,false"));
    }
}
