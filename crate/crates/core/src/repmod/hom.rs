use crate::exactlin::{Field, Matrix, Subspace};
use crate::quiver::Quiver;

use super::rep::Representation;

/// A module homomorphism, one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

/// Basis of `Hom(M, N)` together with the flattened intertwiner subspace.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub basis: Vec<Morphism<F>>,
    pub space: Subspace<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[F]) -> Morphism<F> {
        let mut out: Morphism<F> = self.basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(f) {
                *o = o.add(&m.scale(c));
            }
        }
        out
    }
}

fn offsets(m: &Representation<impl Field>, n: &Representation<impl Field>) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.num_vertices());
    let mut total = 0;
    for v in 0..m.num_vertices() {
        off.push(total);
        total += m.dims()[v] * n.dims()[v];
    }
    (off, total)
}

/// `Hom(M, N)`: all families `phi_v` with `N_a phi_s = phi_t M_a`.
pub fn hom_space<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> HomSpace<F> {
    let (off, total) = offsets(m, n);
    let (dm, dn) = (m.dims(), n.dims());
    // unknown (v, i, j) is entry i,j of phi_v (dn[v] x dm[v])
    let var = |v: usize, i: usize, j: usize| off[v] + i * dm[v] + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for b in 0..q.num_arrows() {
        let ar = q.arrow(b);
        let (s, t) = (ar.source, ar.target);
        let (ma, na) = (m.map(b), n.map(b));
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = vec![F::zero(); total];
                for k in 0..dn[s] {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let idx = var(s, k, j);
                        row[idx] = row[idx].clone() + c.clone();
                    }
                }
                for l in 0..dm[t] {
                    let c = ma.get(l, j);
                    if !c.is_zero() {
                        let idx = var(t, i, l);
                        row[idx] = row[idx].clone() - c.clone();
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(total, rows);
    let (kernel, _) = sys.nullspace();
    let basis = kernel
        .iter()
        .map(|vec| {
            (0..m.num_vertices())
                .map(|v| Matrix::from_fn(dn[v], dm[v], |i, j| vec[var(v, i, j)].clone()))
                .collect()
        })
        .collect();
    HomSpace { basis, space: Subspace::span(total, &kernel) }
}

pub fn compose<F: Field>(g: &Morphism<F>, f: &Morphism<F>) -> Morphism<F> {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub fn is_invertible<F: Field>(f: &Morphism<F>) -> bool {
    f.iter().all(|m| m.is_square() && m.is_invertible())
}

pub fn is_zero_morphism<F: Field>(f: &Morphism<F>) -> bool {
    f.iter().all(Matrix::is_zero)
}

/// Isomorphism test for indecomposable modules.
///
/// Since `End M` is local, `M` and `N` are isomorphic exactly when some
/// `g_j f_i` built from bases of `Hom(M, N)` and `Hom(N, M)` is invertible.
pub fn is_isomorphic_indecomposable<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m == n {
        return true;
    }
    let hmn = hom_space(q, m, n);
    if hmn.dim() == 0 {
        return false;
    }
    // an invertible element of Hom(M, N) settles it at once
    if hmn.basis.iter().any(is_invertible) {
        return true;
    }
    let hnm = hom_space(q, n, m);
    hmn.basis.iter().any(|f| hnm.basis.iter().any(|g| is_invertible(&compose(g, f))))
}
