use std::fmt;

use super::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = F::zero();
                for &j in &support {
                    if !row[j].is_zero() {
                        acc = acc + row[j].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            let mut support = Vec::new();
            for j in c..self.cols {
                let idx = r * self.cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = self.data[idx].clone() * inv.clone();
                    support.push(j);
                }
            }
            let pivot_row: Vec<(usize, F)> =
                support.iter().map(|&j| (j, self.get(r, j).clone())).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let idx = i * self.cols + j;
                    self.data[idx] = self.data[idx].clone() - f.clone() * v.clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` together with the free column indices.
    /// The j-th basis vector has a 1 at `free[j]` and 0 at the other free
    /// indices, so coordinates of a kernel vector are its entries at `free`.
    pub fn nullspace(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    let x = r.get(i, f);
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect();
        (basis, free)
    }

    /// Some solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(rhs.rows, self.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_matrix(&Matrix::identity(n))?;
        if self.rank() < n {
            return None;
        }
        Some(x)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Matrix<F> {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Characteristic polynomial `det(xI - self)`, constant term first,
    /// by the division-free Berkowitz algorithm.
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return vec![F::one()];
        }
        // v holds coefficients of the char poly of the leading r x r block,
        // highest degree first.
        let mut v = vec![F::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // Toeplitz column built from the bordering row/column of block r.
            let a_rr = self.get(r, r).clone();
            let col: Vec<F> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<F> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let lead = self.submatrix(&(0..r).collect::<Vec<_>>(), &(0..r).collect::<Vec<_>>());
            let mut t = Vec::with_capacity(r + 2);
            t.push(F::one());
            t.push(-a_rr);
            let mut w = col.clone();
            for _ in 0..r {
                let s = row
                    .iter()
                    .zip(&w)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                t.push(-s);
                w = lead.mul_vec(&w);
            }
            // new v = T * v where T is the (r+2) x (r+1) lower Toeplitz matrix
            let mut nv = vec![F::zero(); r + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                let mut acc = F::zero();
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        let tij = &t[i - j];
                        if !tij.is_zero() && !vj.is_zero() {
                            acc = acc + tij.clone() * vj.clone();
                        }
                    }
                }
                *slot = acc;
            }
            v = nv;
        }
        v.reverse();
        v
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn rref_identity_and_rank_one() {
        let id = Matrix::<Q>::identity(2);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);

        let m = Matrix::<Q>::from_i64(&[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::<Q>::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let (basis, free) = m.nullspace();
        assert_eq!(free, vec![1, 2]);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let b = vec![Q::integer(1), Q::integer(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[Q::integer(1), Q::integer(1)]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::<Q>::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), Q::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::<Q>::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.det().is_zero());
    }

    #[test]
    fn charpoly_matches_det() {
        let m = Matrix::<Q>::from_i64(&[&[2, 1, 0], &[0, 3, 4], &[1, 0, 5]]);
        let cp = m.charpoly();
        // det(xI - M) at x = 0 is det(-M)
        assert_eq!(cp[0], m.scale(&Q::integer(-1)).det());
        assert_eq!(cp[3], Q::one());
        assert_eq!(cp[2], -m.trace());
        let f = Matrix::<Fp<5>>::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.charpoly(), vec![Fp::from_i64(-1), Fp::from_i64(0), Fp::from_i64(1)]);
    }
}
