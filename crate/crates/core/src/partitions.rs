//! Irrep labels of U(N).
//!
//! A [`Partition`] is a weakly decreasing row of `N` non-negative integers,
//! trailing zeros included, so the rank is always `parts.len()`. A
//! [`GeneralizedLabel`] pairs a shape whose last row is empty with a signed
//! power of `det U`; together they cover every irreducible representation of
//! U(N), including those with negative entries.
//!
//! Labels are totally ordered by the graded order used for every enumerated
//! stream in the crate: total boxes of the shape, then the shape parts
//! lexicographically, then the determinant power.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition {
                parts: Vec::new(),
                reason: "a partition needs at least one row (N >= 1)",
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts: parts.iter().map(|&p| p as i64).collect(),
                reason: "parts must be weakly decreasing",
            });
        }
        Ok(Self { parts })
    }

    /// The trivial representation of U(N).
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        Self { parts: vec![0; rank] }
    }

    /// The single-row shape `(n, 0, ..., 0)`.
    pub fn row(n: usize, rank: usize) -> Self {
        let mut p = Self::zero(rank);
        p.parts[0] = n;
        p
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn boxes(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_row(&self) -> usize {
        self.parts[0]
    }

    /// Number of non-zero rows.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }
}

/// Total boxes of a partition.
pub fn boxes(p: &Partition) -> usize {
    p.boxes()
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.boxes()
            .cmp(&other.boxes())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidLabel(format!("`{s}`: `{t}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A shape with empty last row and a signed determinant power.
///
/// The induced row lengths are `shape[i] + det_power`; they are weakly
/// decreasing because the shape is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedLabel {
    shape: Partition,
    det_power: i64,
}

impl GeneralizedLabel {
    pub fn new(shape: Partition, det_power: i64) -> Result<Self> {
        if *shape.parts.last().expect("non-empty") != 0 {
            return Err(Error::InvalidLabel(format!(
                "shape {shape} must have an empty last row; move it into the determinant power"
            )));
        }
        Ok(Self { shape, det_power })
    }

    /// Builds the label from the row differences `m_i = l_i - l_{i+1}`,
    /// `i = 1..N-1`, so that `l_i = m_i + ... + m_{N-1}` and `l_N = 0`.
    pub fn from_m_vector(m: &[i64], det_power: i64, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidLabel("rank must be positive".into()));
        }
        if m.len() != rank - 1 {
            return Err(Error::InvalidLabel(format!(
                "expected {} row differences for N = {rank}, got {}",
                rank - 1,
                m.len()
            )));
        }
        if let Some(bad) = m.iter().find(|&&v| v < 0) {
            return Err(Error::InvalidLabel(format!("row difference {bad} is negative")));
        }
        let mut parts = vec![0usize; rank];
        for i in (0..rank - 1).rev() {
            parts[i] = parts[i + 1] + m[i] as usize;
        }
        Ok(Self {
            shape: Partition { parts },
            det_power,
        })
    }

    /// Builds the label whose induced row lengths are `exponents`.
    pub fn from_exponents(exponents: &[i64]) -> Result<Self> {
        let Some(&last) = exponents.last() else {
            return Err(Error::InvalidLabel("empty exponent list".into()));
        };
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidLabel(format!(
                "exponents {exponents:?} are not weakly decreasing"
            )));
        }
        let parts = exponents.iter().map(|&e| (e - last) as usize).collect();
        Ok(Self {
            shape: Partition { parts },
            det_power: last,
        })
    }

    /// A plain partition `(n_1, ..., n_N)` seen as `det^{n_N}` times its
    /// reduced shape.
    pub fn from_partition(p: &Partition) -> Self {
        let exps: Vec<i64> = p.parts.iter().map(|&v| v as i64).collect();
        Self::from_exponents(&exps).expect("partitions are weakly decreasing")
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn det_power(&self) -> i64 {
        self.det_power
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    /// Row differences `m_i = l_i - l_{i+1}` for `i = 1..N-1`.
    pub fn m_vector(&self) -> Vec<i64> {
        self.shape
            .parts
            .windows(2)
            .map(|w| (w[0] - w[1]) as i64)
            .collect()
    }

    /// Induced row lengths `n_i = l_i + det_power`.
    pub fn exponents(&self) -> Vec<i64> {
        self.shape
            .parts
            .iter()
            .map(|&l| l as i64 + self.det_power)
            .collect()
    }

    /// Total degree of the character as a Laurent polynomial in the eigenvalues.
    pub fn degree(&self) -> i64 {
        self.shape.boxes() as i64 + self.rank() as i64 * self.det_power
    }
}

impl Ord for GeneralizedLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape
            .cmp(&other.shape)
            .then_with(|| self.det_power.cmp(&other.det_power))
    }
}

impl PartialOrd for GeneralizedLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneralizedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)?;
        if self.det_power != 0 {
            write!(f, "@{}", self.det_power)?;
        }
        Ok(())
    }
}

impl FromStr for GeneralizedLabel {
    type Err = Error;

    /// Parses `"3,2,0"` or `"3,2,0@-1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (shape, power) = match s.split_once('@') {
            Some((shape, power)) => {
                let power = power
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidLabel(format!("`{s}`: bad determinant power")))?;
                (shape, power)
            }
            None => (s, 0),
        };
        GeneralizedLabel::new(shape.parse()?, power)
    }
}

/// Partitions of `total` into at most `max_rows` non-zero rows, padded with
/// zeros to `rank` entries, in ascending lexicographic order.
fn partitions_of(total: usize, max_rows: usize, rank: usize) -> Vec<Partition> {
    fn fill(remaining: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            cur.push(p);
            fill(remaining - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    fill(total, total, max_rows, &mut Vec::new(), &mut raw);
    let mut out: Vec<Partition> = raw
        .into_iter()
        .map(|mut parts| {
            parts.resize(rank, 0);
            Partition { parts }
        })
        .collect();
    out.sort_by(|a, b| a.parts.cmp(&b.parts));
    out
}

/// Every partition with at most `rank` rows and at most `max_boxes` boxes,
/// in graded order.
pub fn enumerate_partitions(rank: usize, max_boxes: usize) -> impl Iterator<Item = Partition> {
    assert!(rank >= 1, "rank must be positive");
    (0..=max_boxes).flat_map(move |b| partitions_of(b, rank, rank))
}

/// Every [`GeneralizedLabel`] of U(`rank`) whose shape has at most
/// `max_boxes` boxes and whose determinant power lies in `det_powers`, each
/// once, in graded order.
pub fn enumerate_labels(
    rank: usize,
    max_boxes: usize,
    det_powers: RangeInclusive<i64>,
) -> impl Iterator<Item = GeneralizedLabel> {
    assert!(rank >= 1, "rank must be positive");
    (0..=max_boxes)
        .flat_map(move |b| partitions_of(b, rank - 1, rank))
        .flat_map(move |shape| {
            det_powers.clone().map(move |det_power| GeneralizedLabel {
                shape: shape.clone(),
                det_power,
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes(labels: &[GeneralizedLabel]) -> Vec<String> {
        labels.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn from_m_vector_examples() {
        let g = GeneralizedLabel::from_m_vector(&[0, 0], 0, 3).unwrap();
        assert_eq!(g.shape().parts(), &[0, 0, 0]);
        assert_eq!(g.det_power(), 0);

        let g = GeneralizedLabel::from_m_vector(&[1, 2], 0, 3).unwrap();
        assert_eq!(g.shape().parts(), &[3, 2, 0]);

        let g = GeneralizedLabel::from_m_vector(&[1, 0], -1, 3).unwrap();
        assert_eq!(g.shape().parts(), &[1, 0, 0]);
        assert_eq!(g.det_power(), -1);
        assert_eq!(g.exponents(), vec![0, -1, -1]);

        let g = GeneralizedLabel::from_m_vector(&[], 4, 1).unwrap();
        assert_eq!(g.exponents(), vec![4]);
    }

    #[test]
    fn from_m_vector_rejects_bad_input() {
        assert!(matches!(
            GeneralizedLabel::from_m_vector(&[1, -1], 0, 3),
            Err(Error::InvalidLabel(_))
        ));
        assert!(GeneralizedLabel::from_m_vector(&[1], 0, 3).is_err());
    }

    #[test]
    fn boxes_examples() {
        assert_eq!(boxes(&Partition::new(vec![0, 0, 0]).unwrap()), 0);
        assert_eq!(boxes(&Partition::new(vec![3, 2, 0]).unwrap()), 5);
        assert_eq!(boxes(&Partition::new(vec![1, 1, 1]).unwrap()), 3);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 2, 0]).is_ok());
    }

    #[test]
    fn enumerate_small_cases() {
        let l: Vec<_> = enumerate_labels(2, 1, 0..=0).collect();
        assert_eq!(shapes(&l), ["0,0", "1,0"]);

        let l: Vec<_> = enumerate_labels(2, 2, 0..=0).collect();
        assert_eq!(shapes(&l), ["0,0", "1,0", "2,0"]);

        let l: Vec<_> = enumerate_labels(1, 0, -2..=2).collect();
        assert_eq!(l.len(), 5);
        assert_eq!(
            l.iter().map(GeneralizedLabel::det_power).collect::<Vec<_>>(),
            vec![-2, -1, 0, 1, 2]
        );
    }

    #[test]
    fn enumerate_order_within_a_grade() {
        let l: Vec<_> = enumerate_labels(3, 4, 0..=0).filter(|g| g.shape().boxes() == 4).collect();
        assert_eq!(shapes(&l), ["2,2,0", "3,1,0", "4,0,0"]);
    }

    #[test]
    fn enumerate_partitions_counts() {
        // p(0..=4) = 1, 1, 2, 3, 5
        assert_eq!(enumerate_partitions(4, 4).count(), 12);
        // at most two rows: 1, 1, 2, 2, 3
        assert_eq!(enumerate_partitions(2, 4).count(), 9);
    }

    #[test]
    fn text_form() {
        let g: GeneralizedLabel = "3,2,0@-1".parse().unwrap();
        assert_eq!(g.shape().parts(), &[3, 2, 0]);
        assert_eq!(g.det_power(), -1);
        assert_eq!(g.to_string(), "3,2,0@-1");
        assert_eq!("3,2,0".parse::<GeneralizedLabel>().unwrap().to_string(), "3,2,0");
        assert!("2,1,1".parse::<GeneralizedLabel>().is_err());
        assert!("2,x,0".parse::<GeneralizedLabel>().is_err());
        assert!("1,0@".parse::<GeneralizedLabel>().is_err());
    }

    #[test]
    fn from_exponents_normalises() {
        let g = GeneralizedLabel::from_exponents(&[1, 1, 1]).unwrap();
        assert_eq!(g.to_string(), "0,0,0@1");
        assert_eq!(g.degree(), 3);
        assert!(GeneralizedLabel::from_exponents(&[0, 1]).is_err());
    }
}
