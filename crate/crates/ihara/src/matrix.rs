//! Dense matrices over scalars and polynomials, with exact and
//! floating-point determinants.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{div_exact, ComplexPoly, IntPoly};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "entry count mismatch");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

pub type IntMatrix = Mat<i64>;

impl Mat<i64> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| i64::from(i == j))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        (0..self.cols).map(|j| self.at(i, j)).sum()
    }
}

/// Traces of `W^1 .. W^n` in exact big-integer arithmetic.
pub fn traces_up_to(w: &Mat<i64>, n: usize) -> Result<Vec<BigInt>> {
    let dim = w.require_square()?;
    let wb: Mat<BigInt> = w.map(|&e| BigInt::from(e));
    let mut power = wb.clone();
    let mut out = Vec::with_capacity(n);
    for step in 0..n {
        out.push((0..dim).map(|i| power.at(i, i).clone()).sum());
        if step + 1 < n {
            power = big_mat_mul(&power, &wb);
        }
    }
    Ok(out)
}

fn big_mat_mul(a: &Mat<BigInt>, b: &Mat<BigInt>) -> Mat<BigInt> {
    assert_eq!(a.cols, b.rows);
    Mat::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = BigInt::zero();
        for t in 0..a.cols {
            acc += a.at(i, t) * b.at(t, j);
        }
        acc
    })
}

/// Exact determinant of an integer-polynomial matrix by fraction-free
/// Bareiss elimination lifted to the polynomial ring. The interior divisions
/// are exact by the Sylvester identity, so no fractions ever appear.
pub fn det_int(m: &Mat<IntPoly>) -> Result<IntPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut a: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(IntPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = div_exact(&t, &prev);
            }
            a[i][k] = IntPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Determinant of a complex-polynomial matrix by evaluation at the
/// `(D+1)`-th roots of unity followed by inverse-DFT interpolation, where
/// `D` bounds the determinant degree by the sum of row-wise maximal entry
/// degrees. Each scalar determinant uses partially pivoted elimination.
pub fn det_complex(m: &Mat<ComplexPoly>) -> Result<ComplexPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(ComplexPoly::one());
    }
    let degree_bound: usize = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m.at(i, j).degree().unwrap_or(0))
                .max()
                .unwrap_or(0)
        })
        .sum();
    let points = degree_bound + 1;
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / points as f64);
    let mut values = Vec::with_capacity(points);
    for t in 0..points {
        let x = omega.powu(t as u32);
        let scalar = Mat::from_fn(n, n, |i, j| m.at(i, j).eval(x));
        values.push(lu_det(scalar));
    }
    let mut coeffs = Vec::with_capacity(points);
    for k in 0..points {
        let mut acc = Complex64::default();
        for (t, v) in values.iter().enumerate() {
            acc += v * omega.powu((t * k % points) as u32).conj();
        }
        coeffs.push(acc / points as f64);
    }
    Ok(ComplexPoly::new(coeffs))
}

/// Scalar complex determinant via LU with partial pivoting.
fn lu_det(mut m: Mat<Complex64>) -> Complex64 {
    let n = m.rows;
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&a, &b| {
                m.at(a, k)
                    .norm()
                    .partial_cmp(&m.at(b, k).norm())
                    .expect("NaN in matrix entry")
            })
            .unwrap();
        if m.at(pivot_row, k).norm() == 0.0 {
            return Complex64::default();
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = *m.at(k, j);
                *m.at_mut(k, j) = *m.at(pivot_row, j);
                *m.at_mut(pivot_row, j) = tmp;
            }
            det = -det;
        }
        let pivot = *m.at(k, k);
        det *= pivot;
        for i in k + 1..n {
            let factor = *m.at(i, k) / pivot;
            for j in k..n {
                let sub = factor * *m.at(k, j);
                *m.at_mut(i, j) -= sub;
            }
        }
    }
    det
}

/// The polynomial matrix `I - A u + B u^2` from integer matrices `A`, `B`.
pub fn int_pencil(a: &Mat<i64>, b: &Mat<i64>) -> Mat<IntPoly> {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows());
    Mat::from_fn(a.rows(), a.cols(), |i, j| {
        IntPoly::from_i64(&[i64::from(i == j), -a.at(i, j), *b.at(i, j)])
    })
}

/// The polynomial matrix `I - A u` from an integer matrix `A`.
pub fn int_linear_pencil(a: &Mat<i64>) -> Mat<IntPoly> {
    assert!(a.is_square());
    Mat::from_fn(a.rows(), a.cols(), |i, j| {
        IntPoly::from_i64(&[i64::from(i == j), -a.at(i, j)])
    })
}

/// The polynomial matrix `I - A u + B u^2` from complex matrices.
pub fn complex_pencil(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<ComplexPoly> {
    assert!(a.is_square() && b.is_square() && a.rows() == b.rows());
    Mat::from_fn(a.rows(), a.cols(), |i, j| {
        ComplexPoly::new(vec![
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0),
            -*a.at(i, j),
            *b.at(i, j),
        ])
    })
}

/// The polynomial matrix `I - A u` from a complex matrix.
pub fn complex_linear_pencil(a: &Mat<Complex64>) -> Mat<ComplexPoly> {
    assert!(a.is_square());
    Mat::from_fn(a.rows(), a.cols(), |i, j| {
        ComplexPoly::new(vec![
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0),
            -*a.at(i, j),
        ])
    })
}

/// Converts big-integer coefficients losslessly into `f64` entries.
pub fn int_to_complex_matrix(m: &Mat<i64>) -> Mat<Complex64> {
    m.map(|&e| Complex64::new(e.to_f64().expect("entry out of f64 range"), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::EPS_DET;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn det_of_empty_matrix_is_one() {
        let m: Mat<IntPoly> = Mat::new(0, 0, vec![]);
        assert_eq!(det_int(&m).unwrap(), IntPoly::one());
        let c: Mat<ComplexPoly> = Mat::new(0, 0, vec![]);
        assert!(det_complex(&c).unwrap().approx_eq(&ComplexPoly::one(), 1e-12));
    }

    #[test]
    fn det_of_diagonal() {
        let m = Mat::new(2, 2, vec![ip(&[1, -1]), ip(&[]), ip(&[]), ip(&[1, 1])]);
        assert_eq!(det_int(&m).unwrap(), ip(&[1, 0, -1]));
    }

    #[test]
    fn det_dipole_pencil() {
        // The 2x2 matrix of the two-vertex multigraph with m = 2 edges:
        // [[1+u^2, -2u], [-2u, 1+u^2]] has determinant 1 - 2u^2 + u^4.
        let m = Mat::new(
            2,
            2,
            vec![ip(&[1, 0, 1]), ip(&[0, -2]), ip(&[0, -2]), ip(&[1, 0, 1])],
        );
        assert_eq!(det_int(&m).unwrap(), ip(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn det_needs_square() {
        let m = Mat::new(1, 2, vec![ip(&[1]), ip(&[2])]);
        assert!(matches!(
            det_int(&m),
            Err(Error::NonSquareMatrix { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn det_with_zero_pivot() {
        // Requires a row swap: [[0, 1], [1, 0]] -> det = -1.
        let m = Mat::new(2, 2, vec![ip(&[]), ip(&[1]), ip(&[1]), ip(&[])]);
        assert_eq!(det_int(&m).unwrap(), ip(&[-1]));
        // Singular matrix.
        let m = Mat::new(2, 2, vec![ip(&[]), ip(&[]), ip(&[1]), ip(&[1])]);
        assert_eq!(det_int(&m).unwrap(), IntPoly::zero());
    }

    #[test]
    fn det_complex_examples() {
        let one_by_one = Mat::new(
            1,
            1,
            vec![ComplexPoly::new(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-2.0, 0.0),
            ])],
        );
        assert!(det_complex(&one_by_one)
            .unwrap()
            .approx_eq(&ComplexPoly::from(&ip(&[1, -2])), 1e-12));

        // [[1, zeta*u], [zeta^2*u, 1]] with zeta a primitive cube root -> 1 - u^2.
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let m = Mat::new(
            2,
            2,
            vec![
                ComplexPoly::one(),
                ComplexPoly::new(vec![Complex64::default(), zeta]),
                ComplexPoly::new(vec![Complex64::default(), zeta * zeta]),
                ComplexPoly::one(),
            ],
        );
        assert!(det_complex(&m)
            .unwrap()
            .approx_eq(&ComplexPoly::from(&ip(&[1, 0, -1])), 1e-12));
    }

    #[test]
    fn int_and_complex_determinants_agree() {
        // A fixed awkward case: repeated structure and zero pivots.
        let entries: Vec<IntPoly> = vec![
            ip(&[0, 1]),
            ip(&[1, -1, 2]),
            ip(&[3]),
            ip(&[0, 0, 1]),
            ip(&[-2, 1]),
            ip(&[1]),
            ip(&[1, 1]),
            ip(&[]),
            ip(&[2, 0, -1]),
        ];
        let m = Mat::new(3, 3, entries);
        let exact = det_int(&m).unwrap();
        let float = det_complex(&m.map(|e| ComplexPoly::from(e))).unwrap();
        assert!(float.approx_eq(&ComplexPoly::from(&exact), EPS_DET));
    }

    #[test]
    fn traces() {
        let w = Mat::new(2, 2, vec![0, 1, 1, 0]);
        let t = traces_up_to(&w, 4).unwrap();
        let expect = [0, 2, 0, 2];
        assert!(t.iter().zip(&expect).all(|(a, b)| *a == BigInt::from(*b)));
    }
}
