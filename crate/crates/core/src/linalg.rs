//! Dense complex linear algebra for the small matrices that occur at desk
//! scale: elimination with pivoting, reduced row echelon form, kernels, and
//! singular values by one-sided Jacobi rotations.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{Cx, Real};

/// Row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[Vec<Cx<T>>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, z) in r.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Cx<T>>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Cx<T>> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Cx<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Complex::zero(), |s: Cx<T>, j| s + self[(i, j)] * v[j])
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// LU factorisation with partial pivoting of a square matrix.
    /// Returns `None` if a pivot vanishes exactly.
    fn lu(&self) -> Option<(Self, Vec<usize>, bool)> {
        assert_eq!(self.rows, self.cols, "LU of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[(x, k)].norm().partial_cmp(&a[(y, k)].norm()).unwrap())
                .unwrap();
            if a[(p, k)].is_zero() {
                return None;
            }
            if p != k {
                a.swap_rows(p, k);
                perm.swap(p, k);
                odd = !odd;
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                a[(i, k)] = f;
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a[(i, j)] -= f * u;
                }
            }
        }
        Some((a, perm, odd))
    }

    pub fn determinant(&self) -> Cx<T> {
        match self.lu() {
            None => Complex::zero(),
            Some((lu, _, odd)) => {
                let d = (0..self.rows).fold(Complex::one(), |d: Cx<T>, i| d * lu[(i, i)]);
                if odd {
                    -d
                } else {
                    d
                }
            }
        }
    }

    /// Solves `self * x = b` for square `self`.
    pub fn solve(&self, b: &[Cx<T>]) -> Option<Vec<Cx<T>>> {
        let (lu, perm, _) = self.lu()?;
        Some(lu_substitute(&lu, &perm, b))
    }

    pub fn inverse(&self) -> Option<Self> {
        let (lu, perm, _) = self.lu()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Complex::zero(); n];
            e[j] = Complex::one();
            let col = lu_substitute(&lu, &perm, &e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form with partial pivoting. Entries with modulus
    /// at most `rel_tol * max_abs` are treated as zero. Returns the reduced
    /// matrix and the pivot columns.
    pub fn rref(&self, rel_tol: T) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let cutoff = rel_tol * self.max_abs();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let p = (row..a.rows)
                .max_by(|&x, &y| a[(x, col)].norm().partial_cmp(&a[(y, col)].norm()).unwrap())
                .unwrap();
            if a[(p, col)].norm() <= cutoff {
                for i in row..a.rows {
                    a[(i, col)] = Complex::zero();
                }
                continue;
            }
            a.swap_rows(p, row);
            let piv = a[(row, col)];
            for j in col..a.cols {
                let v = a[(row, j)];
                a[(row, j)] = v / piv;
            }
            for i in 0..a.rows {
                if i != row {
                    let f = a[(i, col)];
                    if !f.is_zero() {
                        for j in col..a.cols {
                            let u = a[(row, j)];
                            a[(i, j)] -= f * u;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Rank by elimination with relative pivot tolerance.
    pub fn rank(&self, rel_tol: T) -> usize {
        if self.rows == 0 || self.cols == 0 || self.max_abs().is_zero() {
            return 0;
        }
        self.rref(rel_tol).1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}` read off the reduced
    /// echelon form: one vector per free column, with a 1 in that column.
    pub fn kernel(&self, rel_tol: T) -> Vec<Vec<Cx<T>>> {
        if self.max_abs().is_zero() {
            return (0..self.cols)
                .map(|f| {
                    let mut v = vec![Complex::zero(); self.cols];
                    v[f] = Complex::one();
                    v
                })
                .collect();
        }
        let (r, pivots) = self.rref(rel_tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Complex::zero(); self.cols];
                v[f] = Complex::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Singular values in decreasing order (one-sided Jacobi).
    pub fn singular_values(&self) -> Vec<T> {
        // Work on columns of the taller orientation.
        let a = if self.rows >= self.cols {
            self.clone()
        } else {
            self.transpose()
        };
        let (m, n) = (a.rows, a.cols);
        let mut cols: Vec<Vec<Cx<T>>> = (0..n).map(|j| a.column(j)).collect();
        let eps = T::epsilon();
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha: T = cols[p].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
                    let beta: T = cols[q].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
                    // gamma = <c_p, c_q> (conjugate-linear in c_p)
                    let gamma: Cx<T> = cols[p]
                        .iter()
                        .zip(&cols[q])
                        .fold(Complex::zero(), |s, (x, y)| s + x.conj() * y);
                    let g = gamma.norm();
                    if g <= eps * (alpha * beta).sqrt() || g.is_zero() {
                        continue;
                    }
                    rotated = true;
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (T::of(2.0) * g);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = c * t;
                    for i in 0..m {
                        let xp = cols[p][i];
                        let xq = cols[q][i];
                        cols[p][i] = xp * c - xq * phase.conj() * s;
                        cols[q][i] = xp * phase * s + xq * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<T> = cols
            .iter()
            .map(|c| c.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt())
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    /// Numeric rank: number of singular values above `rel_tol * sigma_max`.
    pub fn numeric_rank(&self, rel_tol: T) -> usize {
        let sv = self.singular_values();
        match sv.first() {
            None => 0,
            Some(&top) if top.is_zero() => 0,
            Some(&top) => sv.iter().filter(|&&s| s > rel_tol * top).count(),
        }
    }
}

fn lu_substitute<T: Real>(lu: &CMatrix<T>, perm: &[usize], b: &[Cx<T>]) -> Vec<Cx<T>> {
    let n = lu.rows;
    let mut y: Vec<Cx<T>> = perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for k in 0..i {
            let l = lu[(i, k)];
            let yk = y[k];
            y[i] -= l * yk;
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let u = lu[(i, k)];
            let yk = y[k];
            y[i] -= u * yk;
        }
        y[i] = y[i] / lu[(i, i)];
    }
    y
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Cx<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn m(rows: &[&[f64]]) -> CMatrix<f64> {
        CMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| cx(x, 0.0)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 4.0]]);
        // 2(12-1) - 1(4-0) = 18
        assert!((a.determinant() - cx(18.0, 0.0)).norm() < 1e-12);
        let inv = a.inverse().unwrap();
        let id = a.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - cx(e, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let a = m(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(a.determinant().norm() < 1e-15);
        assert_eq!(a.rank(1e-10), 1);
    }

    #[test]
    fn kernel_of_gauss_relation_matrix() {
        let w = m(&[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 1.0], &[0.0, 0.0, 1.0, -1.0]]);
        let k = w.kernel(1e-10);
        assert_eq!(k.len(), 1);
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (z, e) in k[0].iter().zip(expect) {
            assert!((z - cx(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn singular_values_of_diagonal_and_complex() {
        let a = m(&[&[3.0, 0.0], &[0.0, -4.0], &[0.0, 0.0]]);
        let sv = a.singular_values();
        assert!((sv[0] - 4.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14);

        // [[1, i], [i, -1]] has rank 1: second row = i * first row.
        let b = CMatrix::<f64>::from_rows(&[
            vec![cx(1.0, 0.0), cx(0.0, 1.0)],
            vec![cx(0.0, 1.0), cx(-1.0, 0.0)],
        ]);
        let sv = b.singular_values();
        assert!((sv[0] - 2.0).abs() < 1e-14);
        assert!(sv[1] < 1e-14);
        assert_eq!(b.numeric_rank(1e-8), 1);
    }

    #[test]
    fn frobenius_norm_is_preserved_by_jacobi() {
        let a = CMatrix::from_rows(&[
            vec![cx::<f64>(1.0, 2.0), cx(-0.5, 0.3), cx(2.0, -1.0)],
            vec![cx(0.1, 0.0), cx(1.5, 1.5), cx(-3.0, 0.2)],
        ]);
        let fro: f64 = (0..2)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|ij| a[ij].norm_sqr())
            .sum();
        let sv = a.singular_values();
        let s2: f64 = sv.iter().map(|s| s * s).sum();
        assert!((fro - s2).abs() < 1e-12 * fro);
    }
}
