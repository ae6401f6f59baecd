use thiserror::Error;

use crate::algebra::{BoundAlgebra, Element};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::quiver::{Path, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} vertices, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("expected {expected} arrow maps, got {got}")]
    ArrowCount { expected: usize, got: usize },
    #[error("map of arrow {arrow} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { arrow: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("relation {0} does not vanish")]
    RelationViolated(usize),
    #[error("the module is not indecomposable")]
    Decomposable,
    #[error("could not decide a decomposition over this field")]
    DecompositionInconclusive,
}

/// A right module given as a representation: a space per vertex and, for an
/// arrow `a: s -> t`, a `dim_t x dim_s` matrix acting on column vectors.
/// A path `a1 ... ak` acts by `M_ak ... M_a1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation<F> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

impl<F: Field> Representation<F> {
    /// Checks shapes against the quiver and that every relation acts by zero.
    pub fn new(a: &BoundAlgebra<F>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, RepError> {
        let r = Self::with_quiver(a.quiver(), dims, maps)?;
        for (i, rel) in a.relations().iter().enumerate() {
            if !r.element_map(a.quiver(), rel).is_zero() {
                return Err(RepError::RelationViolated(i));
            }
        }
        Ok(r)
    }

    /// Checks shapes only.
    pub fn with_quiver(q: &Quiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, RepError> {
        if dims.len() != q.num_vertices() {
            return Err(RepError::VertexCount { expected: q.num_vertices(), got: dims.len() });
        }
        if maps.len() != q.num_arrows() {
            return Err(RepError::ArrowCount { expected: q.num_arrows(), got: maps.len() });
        }
        for (i, m) in maps.iter().enumerate() {
            let ar = q.arrow(i);
            let (wr, wc) = (dims[ar.target], dims[ar.source]);
            if m.rows() != wr || m.cols() != wc {
                return Err(RepError::Shape { arrow: i, rows: m.rows(), cols: m.cols(), want_rows: wr, want_cols: wc });
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero(q: &Quiver) -> Self {
        let dims = vec![0; q.num_vertices()];
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { dims, maps }
    }

    pub fn simple(a: &BoundAlgebra<F>, x: usize) -> Self {
        let q = a.quiver();
        let mut dims = vec![0; q.num_vertices()];
        dims[x] = 1;
        let maps = q.arrows().iter().map(|ar| Matrix::zeros(dims[ar.target], dims[ar.source])).collect();
        Representation { dims, maps }
    }

    /// `P_x = e_x A`, with basis the basis paths starting at `x`.
    pub fn projective(a: &BoundAlgebra<F>, x: usize) -> Self {
        let q = a.quiver();
        let n = q.num_vertices();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut pos = vec![0; a.dim()];
        for i in a.basis_from(x) {
            let v = a.basis()[i].end();
            pos[i] = at[v].len();
            at[v].push(i);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                let mut m = Matrix::zeros(dims[ar.target], dims[ar.source]);
                for (col, &i) in at[ar.source].iter().enumerate() {
                    for (k, c) in a.right_table(i, b) {
                        m.set(pos[*k], col, c.clone());
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// `I_x = D(A e_x)`: at `v` the dual of the span of basis paths `v -> x`.
    pub fn injective(a: &BoundAlgebra<F>, x: usize) -> Self {
        let q = a.quiver();
        let n = q.num_vertices();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut pos = vec![0; a.dim()];
        for i in a.basis_to(x) {
            let v = a.basis()[i].start();
            pos[i] = at[v].len();
            at[v].push(i);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                // (phi . b)(u) = phi(b u) for u: target -> x
                let mut m = Matrix::zeros(dims[ar.target], dims[ar.source]);
                for (row, &u) in at[ar.target].iter().enumerate() {
                    for (k, c) in a.left_table(b, u) {
                        m.set(row, pos[*k], c.clone());
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.len()
    }

    pub fn path_map(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[p.start()]);
        for &a in p.arrows() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of a parallel combination of paths; zero matrix for zero.
    pub fn element_map(&self, _q: &Quiver, x: &Element<F>) -> Matrix<F> {
        let Some((s, t)) = x.endpoints() else {
            return Matrix::zeros(0, 0);
        };
        let mut out = Matrix::zeros(self.dims[t], self.dims[s]);
        for (p, c) in x.terms() {
            out = out.add(&self.path_map(p).scale(c));
        }
        out
    }

    pub fn satisfies_relations(&self, a: &BoundAlgebra<F>) -> bool {
        a.relations().iter().all(|r| self.element_map(a.quiver(), r).is_zero())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(m, n)| block_diag(m, n))
            .collect();
        Representation { dims, maps }
    }

    /// Direct sum of several modules at once.
    pub fn direct_sum_all(q: &Quiver, parts: &[&Self]) -> Self {
        let n = q.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                let mut m = Matrix::zeros(dims[ar.target], dims[ar.source]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let pm = &p.maps[b];
                    for i in 0..pm.rows() {
                        for j in 0..pm.cols() {
                            let x = pm.get(i, j);
                            if !x.is_zero() {
                                m.set(r0 + i, c0 + j, x.clone());
                            }
                        }
                    }
                    r0 += pm.rows();
                    c0 += pm.cols();
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// The dual `DM`, a representation of the opposite quiver.
    pub fn dual(&self) -> Self {
        Representation { dims: self.dims.clone(), maps: self.maps.iter().map(Matrix::transpose).collect() }
    }

    /// `sum of images of arrows into v`, the radical at `v`.
    pub fn radical_at(&self, q: &Quiver, v: usize) -> Subspace<F> {
        let mut vecs = Vec::new();
        for &b in q.arrows_to(v) {
            let m = &self.maps[b];
            for j in 0..m.cols() {
                vecs.push(m.column(j));
            }
        }
        Subspace::span(self.dims[v], &vecs)
    }

    /// Dimension vector of `top M = M / rad M`.
    pub fn top_dims(&self, q: &Quiver) -> Vec<usize> {
        (0..self.dims.len()).map(|v| self.dims[v] - self.radical_at(q, v).dim()).collect()
    }

    /// Dimension vector of `soc M`, the common kernel of all outgoing arrows.
    pub fn socle_dims(&self, q: &Quiver) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| {
                let outs = q.arrows_from(v);
                let mut m = Matrix::zeros(0, self.dims[v]);
                for &b in outs {
                    m = m.vstack(&self.maps[b]);
                }
                self.dims[v] - m.rank()
            })
            .collect()
    }

    /// Submodule spanned at each vertex by the columns of `bases[v]`, which
    /// must be linearly independent and invariant under the arrows.
    pub fn submodule(&self, q: &Quiver, bases: &[Matrix<F>]) -> Self {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                let img = self.maps[b].mul(&bases[ar.source]);
                bases[ar.target].solve_matrix(&img).expect("invariant subspace")
            })
            .collect();
        Representation { dims, maps }
    }

    /// Submodule whose basis at `v` is a nullspace basis with identity rows
    /// at `free[v]`; coordinates are then read off those rows.
    pub fn kernel_submodule(&self, q: &Quiver, bases: &[Matrix<F>], free: &[Vec<usize>]) -> Self {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                let img = self.maps[b].mul(&bases[ar.source]);
                let all: Vec<usize> = (0..img.cols()).collect();
                img.submatrix(&free[ar.target], &all)
            })
            .collect();
        Representation { dims, maps }
    }

    /// Quotient by an invariant subspace given by column bases.
    pub fn quotient(&self, q: &Quiver, bases: &[Matrix<F>]) -> Self {
        let n = self.dims.len();
        let mut proj = Vec::with_capacity(n);
        let mut lift = Vec::with_capacity(n);
        for v in 0..n {
            let sub = Subspace::span(self.dims[v], &(0..bases[v].cols()).map(|j| bases[v].column(j)).collect::<Vec<_>>());
            // complement: unit vectors at non-pivot positions
            let comp: Vec<usize> = (0..self.dims[v]).filter(|i| !sub.pivots().contains(i)).collect();
            let mut full = bases[v].clone();
            let units = Matrix::from_fn(self.dims[v], comp.len(), |i, j| if i == comp[j] { F::one() } else { F::zero() });
            full = full.hstack(&units);
            let inv = full.inverse().expect("complement");
            let k = bases[v].cols();
            let rows: Vec<usize> = (k..self.dims[v]).collect();
            let all: Vec<usize> = (0..self.dims[v]).collect();
            proj.push(inv.submatrix(&rows, &all));
            lift.push(units);
        }
        let dims: Vec<usize> = lift.iter().map(Matrix::cols).collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let ar = q.arrow(b);
                proj[ar.target].mul(&self.maps[b]).mul(&lift[ar.source])
            })
            .collect();
        Representation { dims, maps }
    }

    /// Pullback along an algebra map that sends arrow `i` of the source
    /// quiver to arrow `arrow_map[i]` of this module's quiver, or to zero.
    /// Vertices correspond by index.
    pub fn restrict(&self, source: &Quiver, arrow_map: &[Option<usize>]) -> Self {
        let maps = (0..source.num_arrows())
            .map(|i| match arrow_map[i] {
                Some(j) => self.maps[j].clone(),
                None => {
                    let ar = source.arrow(i);
                    Matrix::zeros(self.dims[ar.target], self.dims[ar.source])
                }
            })
            .collect();
        Representation { dims: self.dims.clone(), maps }
    }

    /// `M / M K` for the ideal `K` generated by the arrows mapped to zero,
    /// as a module over the target quiver of `arrow_map`.
    pub fn pushforward(&self, source: &Quiver, target: &Quiver, arrow_map: &[Option<usize>]) -> Self {
        let n = self.dims.len();
        let mut vecs: Vec<Vec<Vec<F>>> = vec![Vec::new(); n];
        for i in 0..source.num_arrows() {
            if arrow_map[i].is_none() {
                let t = source.arrow(i).target;
                let m = &self.maps[i];
                vecs[t].extend((0..m.cols()).map(|j| m.column(j)));
            }
        }
        let seeds: Vec<Subspace<F>> = (0..n).map(|v| Subspace::span(self.dims[v], &vecs[v])).collect();
        let sub = self.generated_submodule(source, seeds);
        let bases: Vec<Matrix<F>> = sub.iter().map(|s| s.basis().transpose()).collect();
        let quo = self.quotient(source, &bases);
        let mut maps: Vec<Option<Matrix<F>>> = vec![None; target.num_arrows()];
        for i in 0..source.num_arrows() {
            if let Some(j) = arrow_map[i] {
                maps[j] = Some(quo.maps[i].clone());
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(j, m)| {
                m.unwrap_or_else(|| {
                    let ar = target.arrow(j);
                    Matrix::zeros(quo.dims[ar.target], quo.dims[ar.source])
                })
            })
            .collect();
        Representation { dims: quo.dims, maps }
    }

    /// Smallest invariant family of subspaces containing `seeds`.
    pub fn generated_submodule(&self, q: &Quiver, mut cur: Vec<Subspace<F>>) -> Vec<Subspace<F>> {
        loop {
            let mut changed = false;
            for b in 0..q.num_arrows() {
                let ar = q.arrow(b);
                let img = cur[ar.source].image(&self.maps[b]);
                let s = cur[ar.target].sum(&img).expect("same ambient");
                if s.dim() > cur[ar.target].dim() {
                    cur[ar.target] = s;
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }
}

pub(crate) fn block_diag<F: Field>(m: &Matrix<F>, n: &Matrix<F>) -> Matrix<F> {
    let (r1, c1) = (m.rows(), m.cols());
    Matrix::from_fn(r1 + n.rows(), c1 + n.cols(), |i, j| {
        if i < r1 && j < c1 {
            m.get(i, j).clone()
        } else if i >= r1 && j >= c1 {
            n.get(i - r1, j - c1).clone()
        } else {
            F::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::quiver::parse_quiver;

    fn ex13() -> BoundAlgebra<Rational> {
        let f = parse_quiver("vertices 1 2 3 4 5\narrow beta 3 1\narrow delta 3 2\narrow alpha 4 3\narrow gamma 5 3\nrelation alpha*beta\nrelation gamma*delta\n").unwrap();
        BoundAlgebra::from_file(&f, 64).unwrap()
    }

    #[test]
    fn projectives_partition_the_basis() {
        let a = ex13();
        let total: usize = (0..5).map(|x| Representation::projective(&a, x).total_dim()).sum();
        assert_eq!(total, a.dim());
        let p4 = Representation::projective(&a, 3);
        assert_eq!(p4.dims(), &[0, 1, 1, 1, 0]);
        assert!(p4.satisfies_relations(&a));
    }

    #[test]
    fn injectives_are_modules() {
        let a = ex13();
        let total: usize = (0..5).map(|x| Representation::injective(&a, x).total_dim()).sum();
        assert_eq!(total, a.dim());
        for x in 0..5 {
            let i = Representation::injective(&a, x);
            assert!(i.satisfies_relations(&a));
            let soc = i.socle_dims(a.quiver());
            assert_eq!(soc.iter().sum::<usize>(), 1);
            assert_eq!(soc[x], 1);
        }
    }

    #[test]
    fn top_of_projective_is_simple() {
        let a = ex13();
        for x in 0..5 {
            let t = Representation::projective(&a, x).top_dims(a.quiver());
            let mut want = vec![0; 5];
            want[x] = 1;
            assert_eq!(t, want);
        }
    }

    #[test]
    fn quotient_by_radical_is_top() {
        let a = ex13();
        let q = a.quiver();
        let p = Representation::projective(&a, 4);
        let rad: Vec<_> = (0..5).map(|v| p.radical_at(q, v).basis().transpose()).collect();
        let top = p.quotient(q, &rad);
        assert_eq!(top.dims(), &[0, 0, 0, 0, 1]);
    }
}
