//! Dense complex determinants.
//!
//! Every determinant in the crate (Weyl numerator and Vandermonde, the
//! Jacobi-Trudi matrix of complete symmetric functions, the expansion
//! coefficient) goes through [`determinant`]. Matrices are at most a dozen
//! rows, so a plain row-major `Vec` and Gaussian elimination with partial
//! pivoting is all that is needed.

use num_complex::Complex64;

/// Determinant of the `n x n` row-major matrix `entries`, destroying it.
///
/// LU factorisation with partial pivoting. An exactly zero pivot column
/// returns zero.
pub fn determinant(entries: &mut [Complex64], n: usize) -> Complex64 {
    assert_eq!(entries.len(), n * n, "matrix is not {n}x{n}");
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut pivot = k;
        let mut best = entries[k * n + k].norm_sqr();
        for i in k + 1..n {
            let mag = entries[i * n + k].norm_sqr();
            if mag > best {
                best = mag;
                pivot = i;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            for j in k..n {
                entries.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        let diag = entries[k * n + k];
        det *= diag;
        for i in k + 1..n {
            let factor = entries[i * n + k] / diag;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let upper = entries[k * n + j];
                entries[i * n + j] -= factor * upper;
            }
        }
    }
    det
}

/// Determinant of the matrix whose `(i, j)` entry (0-based) is `entry(i, j)`.
pub fn determinant_from_fn<F>(n: usize, mut entry: F) -> Complex64
where
    F: FnMut(usize, usize) -> Complex64,
{
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(entry(i, j));
        }
    }
    determinant(&mut entries, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Leibniz expansion over permutations, an independent check.
    fn leibniz(m: &[Complex64], n: usize) -> Complex64 {
        fn rec(m: &[Complex64], n: usize, row: usize, used: &mut [bool]) -> Complex64 {
            if row == n {
                return c(1.0, 0.0);
            }
            let mut acc = c(0.0, 0.0);
            let mut skipped = 0;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let sign = if skipped % 2 == 0 { 1.0 } else { -1.0 };
                used[j] = true;
                acc += m[row * n + j] * sign * rec(m, n, row + 1, used);
                used[j] = false;
                skipped += 1;
            }
            acc
        }
        rec(m, n, 0, &mut vec![false; n])
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&mut [c(3.0, 0.0)], 1), c(3.0, 0.0));
        let mut m = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        assert!((determinant(&mut m, 2) - c(-2.0, 0.0)).norm() < 1e-15);
        assert_eq!(determinant(&mut [], 0), c(1.0, 0.0));
    }

    #[test]
    fn singular_matrix_is_zero() {
        let mut m = [c(1.0, 1.0), c(2.0, 2.0), c(0.5, 0.5), c(1.0, 1.0)];
        assert!(determinant(&mut m, 2).norm() < 1e-15);
    }

    #[test]
    fn matches_leibniz_expansion() {
        let n = 5;
        let m: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let k = k as f64;
                c((1.3 * k).sin() + 0.1 * k, (0.7 * k * k).cos())
            })
            .collect();
        let expected = leibniz(&m, n);
        let got = determinant(&mut m.clone(), n);
        assert!((got - expected).norm() <= 1e-12 * expected.norm().max(1.0));
    }
}
