//! Integration over U(N) with the normalised Haar measure.
//!
//! Two backends for class functions (functions of the eigenvalues only):
//!
//! * Monte Carlo over Haar-random matrices ([`mc_integrate`]).
//! * A uniform grid on the eigenphase torus with the Weyl density
//!   `|Delta(t)|^2 / (N! (2 pi)^N)` ([`torus_integrate`]), for `N <= 3`.
//!
//! Both are used to project an invariant function onto a character, which
//! recovers expansion coefficients independently of the determinant formula.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfunc::CoefficientSequence;
use crate::partitions::{GeneralizedLabel, Partition};
use crate::symfunc::{det_power, CharacterEvaluator, EigenvalueSet};

/// Max entry of `|U^dagger U - 1|` accepted as unitary.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Samples per Monte Carlo block; each block has its own RNG stream.
pub const MC_BLOCK: usize = 4096;

/// Largest rank the torus grid accepts.
pub const MAX_TORUS_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidArgument("unitary matrix must be square and non-empty".into()));
        }
        let u = Self { entries };
        let dev = u.unitarity_deviation();
        if dev.is_nan() || dev > UNITARITY_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "matrix is not unitary: max |U^H U - 1| = {dev:e}"
            )));
        }
        Ok(u)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn diagonal(phases: &[f64]) -> Self {
        let d = phases.iter().map(|&p| Complex64::from_polar(1.0, p));
        Self {
            entries: DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(phases.len(), d)),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `max |(U^dagger U - 1)_{ij}|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.rank();
        let g = self.entries.adjoint() * &self.entries - DMatrix::<Complex64>::identity(n, n);
        g.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn product(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix {
            entries: &self.entries * &other.entries,
        }
    }

    pub fn eigenphases(&self) -> Result<EigenvalueSet> {
        eigenphases(self)
    }
}

/// Haar-distributed U(N) element: QR of a matrix of standard complex
/// Gaussians `(g1 + i g2)/sqrt 2`, with `Q` multiplied column-wise by the
/// phases of `R`'s diagonal.
pub fn haar_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(n >= 1, "rank must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    UnitaryMatrix { entries: q }
}

fn phase_of(t: Complex64) -> f64 {
    let p = t.arg();
    if p < 0.0 {
        p + TAU
    } else {
        p
    }
}

/// Eigenvalues of `u`, sorted by phase in `[0, 2 pi)`.
pub fn eigenphases(u: &UnitaryMatrix) -> Result<EigenvalueSet> {
    let schur = u
        .entries
        .clone()
        .try_schur(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let vals = schur
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("Schur form is not triangular".into()))?;
    let mut v: Vec<Complex64> = vals.iter().copied().collect();
    v.sort_by(|a, b| phase_of(*a).total_cmp(&phase_of(*b)));
    EigenvalueSet::on_unit_circle(v).map_err(|e| Error::Numerical(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    TorusQuadrature,
}

/// An integral estimate. `std_error` is zero for quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralEstimate {
    pub value: Complex64,
    pub std_error: f64,
    pub n_samples: usize,
    pub method: Method,
    pub seed: Option<u64>,
}

/// Wire form of an [`IntegralEstimate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralRecord {
    pub value: [f64; 2],
    pub std_error: f64,
    pub n_samples: usize,
    pub method: Method,
    pub seed: Option<u64>,
}

impl IntegralEstimate {
    pub fn to_record(&self) -> IntegralRecord {
        IntegralRecord {
            value: [self.value.re, self.value.im],
            std_error: self.std_error,
            n_samples: self.n_samples,
            method: self.method,
            seed: self.seed,
        }
    }

    /// `|value - expected|` in units of the standard error; infinite when
    /// the error is zero and the values differ.
    pub fn deviation_in_se(&self, expected: Complex64) -> f64 {
        let d = (self.value - expected).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }

    fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.std_error *= factor.abs();
        self
    }
}

/// Running mean and sum of squared deviations, re and im separately.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
}

impl Moments {
    fn push(&mut self, x: Complex64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        let delta2 = x - self.mean;
        self.m2_re += delta.re * delta2.re;
        self.m2_im += delta.im * delta2.im;
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = self.count * other.count / count;
        Moments {
            count,
            mean: self.mean + delta * (other.count / count),
            m2_re: self.m2_re + other.m2_re + delta.re * delta.re * w,
            m2_im: self.m2_im + other.m2_im + delta.im * delta.im * w,
        }
    }

    fn std_error(&self) -> f64 {
        let n = self.count;
        let var_re = self.m2_re / (n - 1.0);
        let var_im = self.m2_im / (n - 1.0);
        ((var_re + var_im) / n).max(0.0).sqrt()
    }
}

/// Monte Carlo estimate of `int dU f(U)` for a class function `f`.
pub fn mc_integrate<F>(f: F, n: usize, n_samples: usize, seed: u64) -> Result<IntegralEstimate>
where
    F: Fn(&EigenvalueSet) -> Complex64 + Sync,
{
    let mut out = mc_integrate_many(|t| vec![f(t)], 1, n, n_samples, seed)?;
    Ok(out.pop().expect("one output"))
}

/// Monte Carlo estimates of several class functions from the same draws.
/// `f` must return `width` values.
///
/// Samples are split into blocks of [`MC_BLOCK`]; block `b` draws from the
/// ChaCha stream `b` of `seed`, and blocks are merged in order, so the
/// result depends only on the arguments.
pub fn mc_integrate_many<F>(
    f: F,
    width: usize,
    n: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<IntegralEstimate>>
where
    F: Fn(&EigenvalueSet) -> Vec<Complex64> + Sync,
{
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if n_samples < 2 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least 2 samples".into()));
    }
    let blocks = n_samples.div_ceil(MC_BLOCK);
    let partials = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = MC_BLOCK.min(n_samples - b * MC_BLOCK);
            let mut acc = vec![Moments::default(); width];
            for _ in 0..count {
                let u = haar_sample(n, &mut rng);
                let t = eigenphases(&u)?;
                let vals = f(&t);
                if vals.len() != width {
                    return Err(Error::InvalidArgument(format!(
                        "integrand returned {} values, expected {width}",
                        vals.len()
                    )));
                }
                for (m, v) in acc.iter_mut().zip(vals) {
                    m.push(v);
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![Moments::default(); width];
    for block in partials {
        for (t, m) in total.iter_mut().zip(block) {
            *t = t.merge(m);
        }
    }
    Ok(total
        .into_iter()
        .map(|m| IntegralEstimate {
            value: m.mean,
            std_error: m.std_error(),
            n_samples,
            method: Method::MonteCarlo,
            seed: Some(seed),
        })
        .collect())
}

/// Rectangle rule on the eigenphase torus:
/// `sum f(t(theta)) |Delta|^2 / N! / grid^N`.
pub fn torus_integrate<F>(f: F, n: usize, grid: usize) -> Result<IntegralEstimate>
where
    F: Fn(&EigenvalueSet) -> Complex64 + Sync,
{
    let mut out = torus_integrate_many(|t| vec![f(t)], 1, n, grid)?;
    Ok(out.pop().expect("one output"))
}

/// [`torus_integrate`] for several integrands sharing the grid. Grid points
/// where two phases coincide carry zero weight and are skipped.
pub fn torus_integrate_many<F>(f: F, width: usize, n: usize, grid: usize) -> Result<Vec<IntegralEstimate>>
where
    F: Fn(&EigenvalueSet) -> Vec<Complex64> + Sync,
{
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if n > MAX_TORUS_RANK {
        return Err(Error::UnsupportedRank(n));
    }
    if grid < 8 {
        return Err(Error::InvalidArgument(format!("grid must be at least 8, got {grid}")));
    }
    let points: Vec<Complex64> = (0..grid)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / grid as f64))
        .collect();
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let norm = 1.0 / (factorial * (grid as f64).powi(n as i32));
    let inner = grid.pow(n as u32 - 1);

    // one slab per value of the first phase, summed in slab order
    let slabs = (0..grid)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![Complex64::new(0.0, 0.0); width];
            let mut idx = vec![0usize; n];
            idx[0] = first;
            let mut t = vec![Complex64::new(0.0, 0.0); n];
            for rest in 0..inner {
                let mut r = rest;
                for slot in idx.iter_mut().skip(1).rev() {
                    *slot = r % grid;
                    r /= grid;
                }
                let mut weight = 1.0;
                for i in 0..n {
                    t[i] = points[idx[i]];
                    for j in 0..i {
                        weight *= (t[i] - t[j]).norm_sqr();
                    }
                }
                if weight == 0.0 {
                    continue;
                }
                let set = EigenvalueSet::on_unit_circle(t.clone())?;
                let vals = f(&set);
                if vals.len() != width {
                    return Err(Error::InvalidArgument(format!(
                        "integrand returned {} values, expected {width}",
                        vals.len()
                    )));
                }
                for (a, v) in acc.iter_mut().zip(vals) {
                    *a += v * weight;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![Complex64::new(0.0, 0.0); width];
    for slab in slabs {
        for (t, v) in total.iter_mut().zip(slab) {
            *t += v;
        }
    }
    Ok(total
        .into_iter()
        .map(|v| IntegralEstimate {
            value: v * norm,
            std_error: 0.0,
            n_samples: grid.pow(n as u32),
            method: Method::TorusQuadrature,
            seed: None,
        })
        .collect())
}

/// Grid size that resolves characters and truncated series of the given
/// degrees: `max(64, 4 (max_boxes + |det_power| + N))`.
pub fn default_grid(max_boxes: usize, det_power: i64, n: usize) -> usize {
    64.max(4 * (max_boxes + det_power.unsigned_abs() as usize + n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrator {
    MonteCarlo { samples: usize, seed: u64 },
    /// `grid: None` uses [`default_grid`] for the labels being extracted.
    Torus { grid: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractOptions {
    pub integrator: Integrator,
    /// Contour radius `r`: the projection is taken of `prod_i G(r t_i)` and
    /// divided by `r^degree`. `1` integrates on the group itself; smaller
    /// values handle series whose poles sit on the unit circle.
    pub radius: f64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            integrator: Integrator::Torus { grid: None },
            radius: 1.0,
        }
    }
}

/// `int dU prod_i G(t_i) conj(chi_g(U))`, which by orthogonality is the
/// coefficient of `chi_g` in the expansion of `prod_i G(t_i)`.
pub fn extract_coefficient(
    a: &CoefficientSequence,
    g: &GeneralizedLabel,
    options: &ExtractOptions,
) -> Result<IntegralEstimate> {
    let mut out = extract_coefficients(a, std::slice::from_ref(g), options)?;
    Ok(out.pop().expect("one label"))
}

/// [`extract_coefficient`] for several labels of the same rank from one pass
/// over the integration points.
pub fn extract_coefficients(
    a: &CoefficientSequence,
    labels: &[GeneralizedLabel],
    options: &ExtractOptions,
) -> Result<Vec<IntegralEstimate>> {
    let Some(first) = labels.first() else {
        return Ok(Vec::new());
    };
    let n = first.rank();
    if labels.iter().any(|g| g.rank() != n) {
        return Err(Error::InvalidArgument("labels must share one rank".into()));
    }
    if !a.has_closed_form() {
        return Err(Error::MissingClosedForm(a.name().to_string()));
    }
    let radius = options.radius;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }

    let mut shapes: Vec<Partition> = labels.iter().map(|g| g.shape().clone()).collect();
    shapes.sort();
    shapes.dedup();
    let shape_index: Vec<usize> = labels
        .iter()
        .map(|g| shapes.binary_search(g.shape()).expect("shape present"))
        .collect();

    let integrand = |t: &EigenvalueSet| -> Vec<Complex64> {
        let product: Complex64 = t
            .values()
            .iter()
            .map(|&ti| a.closed_form(ti * radius).unwrap_or(Complex64::new(f64::NAN, f64::NAN)))
            .product();
        let mut eval = CharacterEvaluator::new(t.clone());
        let chars: Vec<Complex64> = shapes
            .iter()
            .map(|s| eval.char(s).expect("rank checked"))
            .collect();
        labels
            .iter()
            .zip(&shape_index)
            .map(|(g, &k)| {
                let chi = det_power(t, g.det_power()).expect("unit circle") * chars[k];
                product * chi.conj()
            })
            .collect()
    };

    let width = labels.len();
    let raw = match options.integrator {
        Integrator::MonteCarlo { samples, seed } => mc_integrate_many(integrand, width, n, samples, seed)?,
        Integrator::Torus { grid } => {
            let grid = grid.unwrap_or_else(|| {
                let boxes = labels.iter().map(|g| g.shape().boxes()).max().unwrap_or(0);
                let power = labels.iter().map(|g| g.det_power().abs()).max().unwrap_or(0);
                default_grid(boxes, power, n)
            });
            torus_integrate_many(integrand, width, n, grid)?
        }
    };
    let out: Vec<IntegralEstimate> = raw
        .into_iter()
        .zip(labels)
        .map(|(est, g)| est.scaled(radius.powi(-(g.degree() as i32))))
        .collect();
    if let Some(bad) = out.iter().position(|e| !(e.value.re.is_finite() && e.value.im.is_finite())) {
        return Err(Error::Numerical(format!(
            "projection of {} onto {} is not finite: the generating function has a pole on the contour |t| = {radius}",
            a.name(),
            labels[bad]
        )));
    }
    Ok(out)
}

/// `int_{U(1)} exp(x (t + 1/t)) dU` next to `I_0(2x)` from the series.
pub fn bessel_check(x: f64, integrator: Integrator) -> Result<(IntegralEstimate, Complex64)> {
    let seq = crate::genfunc::bessel_like(x);
    let f = |t: &EigenvalueSet| {
        let ti = t.values()[0];
        (x * (ti + ti.conj())).exp()
    };
    let est = match integrator {
        Integrator::MonteCarlo { samples, seed } => mc_integrate(f, 1, samples, seed)?,
        Integrator::Torus { grid } => torus_integrate(f, 1, grid.unwrap_or(64))?,
    };
    Ok((est, seq.eval(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::{exponential, geometric, quadratic};
    use crate::symfunc::char;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(v: f64) -> Complex64 {
        c(v, 0.0)
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            for _ in 0..50 {
                let u = haar_sample(n, &mut rng);
                assert!(u.unitarity_deviation() < UNITARITY_TOLERANCE);
                let t = u.eigenphases().unwrap();
                assert!(t.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-8));
                // trace from eigenvalues agrees with the matrix trace
                assert!((t.sum() - u.trace()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenphase_examples() {
        let t = eigenphases(&UnitaryMatrix::identity(3)).unwrap();
        assert!(t.values().iter().all(|z| (z - r(1.0)).norm() < 1e-14));
        let t = eigenphases(&UnitaryMatrix::diagonal(&[-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2])).unwrap();
        assert!((t.values()[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((t.values()[1] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn u1_phase_is_uniform() {
        let est = mc_integrate(|t| t.values()[0], 1, 100_000, 3).unwrap();
        assert!(est.value.norm() < 0.02);
    }

    #[test]
    fn mc_constant_and_orthogonality() {
        let one = mc_integrate(|_| r(1.0), 2, 1000, 5).unwrap();
        assert_eq!(one.value, r(1.0));
        assert!(one.std_error < 1e-15);
        assert_eq!(one.seed, Some(5));
        assert_eq!(one.method, Method::MonteCarlo);

        let fund = part(&[1, 0]);
        let est = mc_integrate(|t| char(&fund, t).unwrap().norm_sqr().into(), 2, 100_000, 9).unwrap();
        assert!(est.deviation_in_se(r(1.0)) < 5.0, "{est:?}");
        let est = mc_integrate(|t| char(&fund, t).unwrap(), 2, 100_000, 10).unwrap();
        assert!(est.deviation_in_se(r(0.0)) < 5.0, "{est:?}");
    }

    #[test]
    fn mc_is_reproducible() {
        let f = |t: &EigenvalueSet| t.sum();
        let a = mc_integrate(f, 3, 9000, 42).unwrap();
        let b = mc_integrate(f, 3, 9000, 42).unwrap();
        assert_eq!(a, b);
        let c2 = mc_integrate(f, 3, 9000, 43).unwrap();
        assert_ne!(a.value, c2.value);
        assert!(mc_integrate(f, 3, 1, 42).is_err());
    }

    #[test]
    fn torus_examples() {
        for n in 1..=3 {
            let est = torus_integrate(|_| r(1.0), n, 64).unwrap();
            assert!((est.value - r(1.0)).norm() < 1e-10, "N = {n}");
            assert_eq!(est.std_error, 0.0);
        }
        let sym = part(&[2, 0]);
        let est = torus_integrate(|t| char(&sym, t).unwrap().norm_sqr().into(), 2, 128).unwrap();
        assert!((est.value - r(1.0)).norm() < 1e-8);
        let (fund, triv) = (part(&[1, 0]), part(&[0, 0]));
        let est = torus_integrate(|t| char(&fund, t).unwrap() * char(&triv, t).unwrap().conj(), 2, 64).unwrap();
        assert!(est.value.norm() < 1e-10);
    }

    #[test]
    fn torus_rejects_large_rank_and_small_grid() {
        assert!(matches!(torus_integrate(|_| r(1.0), 4, 16), Err(Error::UnsupportedRank(4))));
        assert!(torus_integrate(|_| r(1.0), 2, 4).is_err());
    }

    #[test]
    fn default_grid_rule() {
        assert_eq!(default_grid(4, -2, 3), 64);
        assert_eq!(default_grid(20, 3, 2), 100);
    }

    #[test]
    fn extract_examples() {
        let opts = ExtractOptions {
            integrator: Integrator::Torus { grid: Some(128) },
            radius: 1.0,
        };
        let g = GeneralizedLabel::new(part(&[2, 0]), 0).unwrap();
        let est = extract_coefficient(&geometric(r(0.5)).unwrap(), &g, &opts).unwrap();
        assert!((est.value - r(0.25)).norm() < 1e-6);

        let g = GeneralizedLabel::new(part(&[3, 0]), 0).unwrap();
        let est = extract_coefficient(&quadratic(0.3), &g, &opts).unwrap();
        assert!(est.value.norm() < 1e-6);

        let g = GeneralizedLabel::new(part(&[0]), 2).unwrap();
        let est = extract_coefficient(&exponential(r(1.0)), &g, &ExtractOptions::default()).unwrap();
        assert!((est.value - r(0.5)).norm() < 1e-6);
    }

    #[test]
    fn extract_with_shrunken_contour() {
        let g = GeneralizedLabel::new(part(&[2, 0]), 1).unwrap();
        let a = geometric(c(0.3, 0.4)).unwrap();
        let unit = extract_coefficient(&a, &g, &ExtractOptions::default()).unwrap();
        let inner = extract_coefficient(
            &a,
            &g,
            &ExtractOptions {
                radius: 0.8,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((unit.value - inner.value).norm() < 1e-9);
    }

    #[test]
    fn bessel_check_examples() {
        let (est, series) = bessel_check(0.0, Integrator::Torus { grid: None }).unwrap();
        assert!((est.value - r(1.0)).norm() < 1e-14);
        assert_eq!(series, r(1.0));
        for &x in &[0.5, 1.0] {
            let (est, series) = bessel_check(x, Integrator::Torus { grid: None }).unwrap();
            assert!((est.value - series).norm() < 1e-8);
            let (mc, _) = bessel_check(x, Integrator::MonteCarlo { samples: 20_000, seed: 1 }).unwrap();
            assert!(mc.deviation_in_se(series) < 5.0);
        }
    }

    #[test]
    fn integral_record_serialises() {
        let est = mc_integrate(|t| t.sum(), 1, 100, 7).unwrap();
        let json = serde_json::to_value(est.to_record()).unwrap();
        assert_eq!(json["method"], "monte_carlo");
        assert_eq!(json["seed"], 7);
        assert_eq!(json["n_samples"], 100);
        assert!(json["value"].as_array().unwrap().len() == 2);
    }
}
