use thiserror::Error;

use super::field::Field;
use super::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Subspace of `F^n`, stored as its reduced row echelon basis.
///
/// The echelon basis is unique, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace({}; {:?})", self.ambient, self.basis)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let m = Matrix::from_rows(ambient, vectors.to_vec());
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let rows: Vec<Vec<F>> = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient: m.cols(), basis: Matrix::from_rows(m.cols(), rows), pivots }
    }

    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    /// Kernel of `m` as a subspace of its column space dimension.
    pub fn kernel(m: &Matrix<F>) -> Self {
        let (basis, _) = m.nullspace();
        Self::span(m.cols(), &basis)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            Err(SubspaceError::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn residue(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    r[j] = r[j].clone() - c.clone() * b.clone();
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.residue(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, c: &[F]) -> Vec<F> {
        assert_eq!(c.len(), self.dim());
        let mut v = vec![F::zero(); self.ambient];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    v[j] = v[j].clone() + ci.clone() * b.clone();
                }
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.check(other)?;
        Ok((0..self.dim()).all(|i| other.contains(self.basis.row(i))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the kernel of `[A; -B]^T`: solutions `(x, y)` of
    /// `x A = y B` give the common vectors `x A`.
    pub fn intersection(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis.scale(&-F::one()));
        let (ker, _) = stacked.transpose().nullspace();
        let vecs: Vec<Vec<F>> = ker
            .iter()
            .map(|k| {
                let x = &k[..a];
                self.from_coordinates(x)
            })
            .collect();
        Ok(Self::span(self.ambient, &vecs))
    }

    /// Splits `v` as `u + w` with `u` in `self` and `w` in `other`, or
    /// reports that `v` is outside the sum.
    pub fn split(&self, other: &Self, v: &[F]) -> Result<Option<(Vec<F>, Vec<F>)>, SubspaceError> {
        self.check(other)?;
        let a = self.dim();
        let stacked = self.basis.vstack(&other.basis);
        let Some(x) = stacked.transpose().solve(v) else {
            return Ok(None);
        };
        let u = self.from_coordinates(&x[..a]);
        let w = other.from_coordinates(&x[a..]);
        Ok(Some((u, w)))
    }

    /// Image of the subspace under `v -> m v` (columns of `m` index the ambient).
    pub fn image(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.cols(), self.ambient);
        let vecs: Vec<Vec<F>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Self::span(m.rows(), &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Fp, Rational};

    type Q = Rational;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::integer(x)).collect()
    }

    #[test]
    fn idempotence() {
        let a = Subspace::span(3, &[q(&[1, 2, 0]), q(&[0, 1, 1])]);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
    }

    #[test]
    fn coordinate_split() {
        let a = Subspace::span(4, &[q(&[1, 0, 0, 0]), q(&[0, 1, 0, 0])]);
        let b = Subspace::span(4, &[q(&[0, 0, 1, 0]), q(&[0, 0, 0, 1])]);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(4));
        let (u, w) = a.split(&b, &q(&[1, 2, 3, 4])).unwrap().unwrap();
        assert_eq!(u, q(&[1, 2, 0, 0]));
        assert_eq!(w, q(&[0, 0, 3, 4]));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::<Q>::zero(2);
        let b = Subspace::<Q>::zero(3);
        assert_eq!(a.sum(&b), Err(SubspaceError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = Subspace::span(3, &[q(&[1, 1, 0]), q(&[0, 1, 1])]);
        let v = q(&[2, 5, 3]);
        let c = a.coordinates(&v).unwrap();
        assert_eq!(a.from_coordinates(&c), v);
        assert!(a.coordinates(&q(&[1, 0, 0])).is_none());
    }

    #[test]
    fn prime_field_intersection() {
        type F = Fp<3>;
        let v = |x: &[i64]| x.iter().map(|&c| F::from_i64(c)).collect::<Vec<_>>();
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let b = Subspace::span(3, &[v(&[1, 1, 1])]);
        assert_eq!(a.intersection(&b).unwrap(), b);
    }
}
