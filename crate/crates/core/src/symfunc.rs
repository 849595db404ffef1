//! Characters of U(N) at numeric eigenvalues.
//!
//! Two independent routes are provided:
//!
//! * [`char_weyl`]: the ratio `det(t_i^{n_j + N - j}) / det(t_i^{N - j})`,
//!   undefined when two eigenvalues coincide.
//! * [`char_jacobi_trudi`]: `det(h_{n_j + i - j})` over complete homogeneous
//!   symmetric functions, a polynomial in the eigenvalues and valid
//!   everywhere.
//!
//! [`char`] dispatches between them on the pairwise eigenvalue spacing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::determinant_from_fn;
use crate::partitions::{GeneralizedLabel, Partition};

/// Below this pairwise distance the Weyl ratio is treated as `0/0`.
pub const DEGENERACY_THRESHOLD: f64 = 1e-6;

/// Allowed deviation of `|t|` from 1 for sets flagged as unit-circle.
pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-10;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues `t_1, ..., t_N` of a group element in the fundamental
/// representation.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueSet {
    values: Vec<Complex64>,
    unit_circle: bool,
}

impl EigenvalueSet {
    /// Arbitrary non-empty set of finite complex numbers.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidEigenvalues("need at least one eigenvalue".into()));
        }
        if values.iter().any(|t| !t.re.is_finite() || !t.im.is_finite()) {
            return Err(Error::InvalidEigenvalues("eigenvalues must be finite".into()));
        }
        Ok(Self {
            values,
            unit_circle: false,
        })
    }

    /// A set asserted to lie on the unit circle; checked to [`UNIT_CIRCLE_TOLERANCE`].
    pub fn on_unit_circle(values: Vec<Complex64>) -> Result<Self> {
        let mut set = Self::new(values)?;
        if let Some(bad) = set
            .values
            .iter()
            .find(|t| (t.norm() - 1.0).abs() > UNIT_CIRCLE_TOLERANCE)
        {
            return Err(Error::InvalidEigenvalues(format!(
                "|{bad}| = {} is not on the unit circle",
                bad.norm()
            )));
        }
        set.unit_circle = true;
        Ok(set)
    }

    /// `t_k = exp(i phase_k)`.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidEigenvalues("phases must be finite".into()));
        }
        Self::on_unit_circle(phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn is_unit_circle(&self) -> bool {
        self.unit_circle
    }

    pub fn conj(&self) -> Self {
        Self {
            values: self.values.iter().map(Complex64::conj).collect(),
            unit_circle: self.unit_circle,
        }
    }

    /// Every eigenvalue multiplied by `r`. Only `r = 1` keeps the unit-circle flag.
    pub fn scaled(&self, r: f64) -> Self {
        Self {
            values: self.values.iter().map(|t| t * r).collect(),
            unit_circle: self.unit_circle && r == 1.0,
        }
    }

    /// `det U`, the product of the eigenvalues.
    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }

    /// `Tr U`.
    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.values.iter().enumerate() {
            for b in &self.values[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }

    pub fn is_degenerate(&self) -> bool {
        self.min_pairwise_distance() < DEGENERACY_THRESHOLD
    }
}

fn check_rank(p: &Partition, t: &EigenvalueSet) -> Result<()> {
    if p.rank() != t.rank() {
        return Err(Error::RankMismatch {
            expected: p.rank(),
            found: t.rank(),
        });
    }
    Ok(())
}

fn pow(t: Complex64, k: usize) -> Complex64 {
    if k == 0 {
        ONE
    } else {
        t.powu(k as u32)
    }
}

/// `det(t_i^{N-j})`.
pub fn vandermonde(t: &EigenvalueSet) -> Complex64 {
    let n = t.rank();
    determinant_from_fn(n, |i, j| pow(t.values[i], n - 1 - j))
}

/// `prod_{i<j} (t_i - t_j)`, which equals [`vandermonde`] exactly in
/// exact arithmetic.
pub fn vandermonde_product(t: &EigenvalueSet) -> Complex64 {
    let mut acc = ONE;
    for (i, a) in t.values.iter().enumerate() {
        for b in &t.values[i + 1..] {
            acc *= a - b;
        }
    }
    acc
}

/// `h_0, ..., h_max` at `t`, built one variable at a time:
/// `h_n(t_1..t_k) = h_n(t_1..t_{k-1}) + t_k h_{n-1}(t_1..t_k)`.
pub fn complete_symmetric_upto(max: usize, t: &EigenvalueSet) -> Vec<Complex64> {
    let mut h = vec![ZERO; max + 1];
    h[0] = ONE;
    for &tk in &t.values {
        for n in 1..=max {
            let prev = h[n - 1];
            h[n] += tk * prev;
        }
    }
    h
}

/// Complete homogeneous symmetric function `h_n(t)`; zero for `n < 0`.
pub fn complete_symmetric(n: i64, t: &EigenvalueSet) -> Complex64 {
    if n < 0 {
        return ZERO;
    }
    complete_symmetric_upto(n as usize, t)[n as usize]
}

/// Weyl's ratio of alternants. Fails on degenerate eigenvalues.
pub fn char_weyl(p: &Partition, t: &EigenvalueSet) -> Result<Complex64> {
    check_rank(p, t)?;
    let min_distance = t.min_pairwise_distance();
    if min_distance < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateEigenvalues {
            min_distance,
            threshold: DEGENERACY_THRESHOLD,
        });
    }
    Ok(weyl_unchecked(p.parts(), t))
}

fn weyl_unchecked(parts: &[usize], t: &EigenvalueSet) -> Complex64 {
    let n = t.rank();
    let numerator = determinant_from_fn(n, |i, j| pow(t.values[i], parts[j] + n - 1 - j));
    numerator / vandermonde(t)
}

/// Jacobi-Trudi determinant `det(h_{n_j + i - j})`.
pub fn char_jacobi_trudi(p: &Partition, t: &EigenvalueSet) -> Result<Complex64> {
    check_rank(p, t)?;
    let n = t.rank();
    let h = complete_symmetric_upto(p.first_row() + n, t);
    Ok(jacobi_trudi_from_table(p.parts(), &h))
}

fn jacobi_trudi_from_table(parts: &[usize], h: &[Complex64]) -> Complex64 {
    // columns past the last nonzero part form a unitriangular block
    let n = parts.iter().take_while(|&&x| x > 0).count();
    determinant_from_fn(n, |i, j| {
        let idx = parts[j] as i64 + i as i64 - j as i64;
        if idx < 0 {
            ZERO
        } else {
            h[idx as usize]
        }
    })
}

/// Character of the irrep `p` at `t`: Weyl when the eigenvalues are
/// separated by at least [`DEGENERACY_THRESHOLD`], Jacobi-Trudi otherwise.
pub fn char(p: &Partition, t: &EigenvalueSet) -> Result<Complex64> {
    check_rank(p, t)?;
    if t.is_degenerate() {
        char_jacobi_trudi(p, t)
    } else {
        Ok(weyl_unchecked(p.parts(), t))
    }
}

/// `(det U)^{det_power} * char(shape)`.
pub fn char_generalized(g: &GeneralizedLabel, t: &EigenvalueSet) -> Result<Complex64> {
    let base = char(g.shape(), t)?;
    Ok(det_power(t, g.det_power())? * base)
}

pub(crate) fn det_power(t: &EigenvalueSet, power: i64) -> Result<Complex64> {
    let det = t.product();
    if power < 0 && det == ZERO {
        return Err(Error::SingularInput(
            "zero eigenvalue with a negative determinant power".into(),
        ));
    }
    Ok(if power >= 0 {
        pow(det, power as usize)
    } else {
        pow(det.inv(), power.unsigned_abs() as usize)
    })
}

/// Evaluates many characters at one fixed eigenvalue set, sharing the
/// degeneracy decision, the Vandermonde denominator and the `h` table.
#[derive(Debug, Clone)]
pub struct CharacterEvaluator {
    t: EigenvalueSet,
    degenerate: bool,
    denominator: Complex64,
    h: Vec<Complex64>,
}

impl CharacterEvaluator {
    pub fn new(t: EigenvalueSet) -> Self {
        let degenerate = t.is_degenerate();
        let denominator = if degenerate { ZERO } else { vandermonde(&t) };
        Self {
            t,
            degenerate,
            denominator,
            h: Vec::new(),
        }
    }

    pub fn eigenvalues(&self) -> &EigenvalueSet {
        &self.t
    }

    pub fn char(&mut self, p: &Partition) -> Result<Complex64> {
        check_rank(p, &self.t)?;
        let n = self.t.rank();
        if !self.degenerate {
            let numerator = determinant_from_fn(n, |i, j| pow(self.t.values[i], p.parts()[j] + n - 1 - j));
            return Ok(numerator / self.denominator);
        }
        let needed = p.first_row() + n;
        if self.h.len() <= needed {
            self.h = complete_symmetric_upto(needed.max(2 * self.h.len()), &self.t);
        }
        Ok(jacobi_trudi_from_table(p.parts(), &self.h))
    }

    pub fn char_generalized(&mut self, g: &GeneralizedLabel) -> Result<Complex64> {
        let base = self.char(g.shape())?;
        Ok(det_power(&self.t, g.det_power())? * base)
    }
}
