//! Dense exact matrices over a [`Field`].
//!
//! Row-major storage; `0×n` and `n×0` matrices are legal (zero vertex spaces
//! occur in walk representations all the time). A matrix of shape
//! `dim(target) × dim(source)` acts on coordinate columns.

use crate::field::{Elem, Field};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Elem>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<Elem>) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        Mat { rows, cols, field, data: entries }
    }

    /// Convenience constructor from integer rows, mostly for tests.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for v in *row {
                data.push(field.from_i64(*v));
            }
        }
        Mat { rows: r, cols: c, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, c: &Elem) -> Mat {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        Mat { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    /// Exact product; `(r×0)·(0×c)` is the `r×c` zero matrix.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "mul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // find a pivot in this column
            let mut piv = None;
            for r in row..self.rows {
                if !f.is_zero(self.get(r, col)) {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            self.swap_rows(row, p);
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.get(r, col)) {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = f.sub(self.get(r, j), &f.mul(&factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the ambient field via exact row reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{x : self·x = 0}` as column vectors, reduced-echelon
    /// normalized so the output is deterministic. Size is `cols − rank`.
    pub fn nullspace_basis(&self) -> Vec<Mat> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for (free, pivot_col) in is_pivot.iter().enumerate() {
            if *pivot_col {
                continue;
            }
            let mut v = Mat::zero(f, self.cols, 1);
            v.set(free, 0, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                // x[pc] = -m[r][free]
                v.set(pc, 0, f.neg(m.get(r, free)));
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse, or a `Singular` signal. Non-square input is a shape
    /// error.
    pub fn inverse(&self) -> Result<Mat, MatError> {
        if self.rows != self.cols {
            return Err(MatError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let f = self.field;
        let n = self.rows;
        // row-reduce [self | I]
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(MatError::Singular);
        }
        let mut out = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Solve `self · X = rhs` when `self` has full column rank; used to
    /// express vectors in a chosen basis. Returns `None` when inconsistent.
    pub fn solve_full_col_rank(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let f = self.field;
        let n = self.cols;
        let mut aug = Mat::zero(f, self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.rref();
        // full column rank on the coefficient side
        let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < n).collect();
        if coeff_pivots.len() != n {
            return None;
        }
        // any pivot in the rhs block means the system is inconsistent
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zero(f, n, rhs.cols);
        for (r, &pc) in coeff_pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, n + j).clone());
            }
        }
        Some(x)
    }

    /// Columns `sel` of `self` as a new matrix.
    pub fn select_cols(&self, sel: &[usize]) -> Mat {
        let mut out = Mat::zero(self.field, self.rows, sel.len());
        for (jj, &j) in sel.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Glue horizontally.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hcat shape mismatch");
        let mut out = Mat::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum, used for direct sums of representations.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zero(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Nilpotency test: some power up to `rows` vanishes.
    pub fn is_nilpotent(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        if self.rows == 0 {
            return true;
        }
        let mut acc = self.clone();
        for _ in 0..self.rows {
            if acc.is_zero() {
                return true;
            }
            acc = acc.mul(self);
        }
        acc.is_zero()
    }

    pub fn trace(&self) -> Elem {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let f = self.field;
        let mut t = f.zero();
        for i in 0..self.rows {
            t = f.add(&t, self.get(i, i));
        }
        t
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.field.render(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    /// Subdiagonal-ones nilpotent block.
    fn j_mat(field: Field, d: usize) -> Mat {
        let mut m = Mat::zero(field, d, d);
        for i in 1..d {
            m.set(i, i - 1, field.one());
        }
        m
    }

    #[test]
    fn mul_identity() {
        let f = fp(101);
        let a = Mat::from_i64(f, &[&[1, 2], &[0, 1]]);
        let id = Mat::identity(f, 2);
        assert_eq!(a.mul(&id), a);
    }

    #[test]
    fn mul_mod_5() {
        let f = fp(5);
        let a = Mat::from_i64(f, &[&[2, 3]]);
        let b = Mat::from_i64(f, &[&[4], &[1]]);
        // 8 + 3 = 11 = 1 mod 5
        assert_eq!(a.mul(&b), Mat::from_i64(f, &[&[1]]));
    }

    #[test]
    fn mul_empty_product() {
        let f = fp(101);
        let a = Mat::zero(f, 2, 0);
        let b = Mat::zero(f, 0, 3);
        assert_eq!(a.mul(&b), Mat::zero(f, 2, 3));
    }

    #[test]
    fn rank_examples() {
        let f = fp(101);
        assert_eq!(Mat::identity(f, 3).rank(), 3);
        assert_eq!(j_mat(f, 3).rank(), 2);
        assert_eq!(Mat::zero(f, 0, 4).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        let f = fp(101);
        assert!(Mat::identity(f, 2).nullspace_basis().is_empty());

        let m = Mat::from_i64(f, &[&[1, -1]]);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], Mat::from_i64(f, &[&[1], &[1]]));

        let ns = j_mat(f, 2).nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], Mat::from_i64(f, &[&[0], &[1]]));
    }

    #[test]
    fn inverse_examples() {
        let f = fp(101);
        let theta = Mat::from_i64(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(theta.inverse().unwrap(), theta);

        let q = Field::Rational;
        let m = Mat::from_i64(q, &[&[2, 0], &[1, 2]]); // 2·id + J_2
        let inv = m.inverse().unwrap();
        let expected = Mat::from_entries(
            q,
            2,
            2,
            vec![
                q.parse("1/2").unwrap(),
                q.zero(),
                q.parse("-1/4").unwrap(),
                q.parse("1/2").unwrap(),
            ],
        );
        assert_eq!(inv, expected);

        assert_eq!(j_mat(f, 2).inverse(), Err(MatError::Singular));
        assert!(matches!(Mat::zero(f, 2, 3).inverse(), Err(MatError::Shape(_))));
    }

    #[test]
    fn solve_full_col_rank_roundtrip() {
        let f = fp(101);
        let a = Mat::from_i64(f, &[&[1, 0], &[1, 1], &[0, 2]]);
        let x = Mat::from_i64(f, &[&[3, 5], &[7, 11]]);
        let b = a.mul(&x);
        assert_eq!(a.solve_full_col_rank(&b).unwrap(), x);
        // inconsistent right-hand side
        let bad = Mat::from_i64(f, &[&[1, 0], &[0, 0], &[0, 0]]);
        let sol = a.solve_full_col_rank(&bad);
        assert!(sol.is_none());
    }

    fn random_mat(f: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = Mat::zero(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f.sample(rng));
            }
        }
        m
    }

    #[test]
    fn random_inverse_roundtrip() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 50 {
            let n = rng.gen_range(1..=8);
            let a = random_mat(f, n, n, &mut rng);
            if a.rank() < n {
                continue;
            }
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv), Mat::identity(f, n));
            done += 1;
        }
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows = rng.gen_range(0..=12);
            let cols = rng.gen_range(0..=12);
            let a = random_mat(f, rows, cols, &mut rng);
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    #[test]
    fn nullspace_is_exact_kernel() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let rows = rng.gen_range(0..=10);
            let cols = rng.gen_range(0..=10);
            let a = random_mat(f, rows, cols, &mut rng);
            let ns = a.nullspace_basis();
            assert_eq!(ns.len(), cols - a.rank());
            for v in &ns {
                assert!(a.mul(v).is_zero());
            }
        }
    }

    #[test]
    fn nilpotency() {
        let f = fp(101);
        assert!(j_mat(f, 4).is_nilpotent());
        assert!(!Mat::identity(f, 3).is_nilpotent());
        assert!(Mat::zero(f, 0, 0).is_nilpotent());
    }
}
