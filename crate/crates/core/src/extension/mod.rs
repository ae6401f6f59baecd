//! Relation extensions `C ⋉ Ext²(DC, C)`, their relation bimodule, and
//! partial relation extensions.

mod bimodule;
mod partial;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{global_dimension_le, minimal_relation_system, AlgebraError, BoundAlgebra, Element, RelationSystem};
use crate::exactlin::{Field, Matrix};
use crate::potential::{jacobian_relations, Potential};
use crate::quiver::{Path, Quiver, QuiverError};

pub use bimodule::{Bimodule, InducedDecomposition, Obstruction, PotentialSplit, ProjectiveInjectiveSplit};
pub use partial::{check_surjection, PartialExtension};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("the quiver has an oriented cycle")]
    NotTriangular,
    #[error("global dimension exceeds {0}")]
    GlobalDimensionExceeded(usize),
    #[error("element does not lie in the relation bimodule")]
    OutsideBimodule,
    #[error("potential is not a sum of cycles of the Keller potential")]
    NotASummand,
    #[error("the two parts are not a direct decomposition")]
    NotDirect,
    #[error("subspace is not closed under the bimodule action")]
    NotClosed,
    #[error("arrow `{0}` is not a new arrow")]
    NotNewArrow(String),
    #[error("kept arrows split the dependency component of `{0}`")]
    NotComponentAligned(String),
    #[error("arrow map is incompatible: {0}")]
    IncompatibleMap(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// The relation extension of a triangular algebra of global dimension at
/// most two, presented as `J(Q~, W)` modulo the square of the ideal of new arrows.
#[derive(Clone, Debug)]
pub struct RelationExtension<F: Field> {
    pub base: BoundAlgebra<F>,
    pub relations: RelationSystem<F>,
    /// `Q~`: the arrows of `Q` keep their indices, new arrows follow.
    pub quiver: Quiver,
    /// `new_arrows[i]` corresponds to `relations.relations[i]`.
    pub new_arrows: Vec<usize>,
    pub potential: Potential<F>,
    pub algebra: BoundAlgebra<F>,
    /// Basis indices of the extended algebra with exactly one new arrow.
    pub e_basis: Vec<usize>,
    /// Matrices on `E` of left and right multiplication by vertices and old arrows.
    actions: Vec<Matrix<F>>,
}

fn fresh_name(q: &Quiver, taken: &BTreeSet<String>, i: usize) -> String {
    let mut k = i + 1;
    loop {
        let name = format!("r{k}");
        if q.arrow_by_name(&name).is_err() && !taken.contains(&name) {
            return name;
        }
        k += 1;
    }
}

/// Paths `a p b` with `a`, `b` among `arrows` and `p` a basis path of `c`;
/// these generate the square of the ideal of those arrows modulo `I_C`.
pub(crate) fn two_arrow_monomials<F: Field>(qt: &Quiver, c: &BoundAlgebra<F>, arrows: &[usize]) -> Vec<Element<F>> {
    let mut out = Vec::new();
    for &a in arrows {
        for &b in arrows {
            let (s, t) = (qt.arrow(a).target, qt.arrow(b).source);
            for i in c.basis_between(s, t) {
                let mut seq = vec![a];
                seq.extend_from_slice(c.basis()[i].arrows());
                seq.push(b);
                out.push(Element::path(Path::from_arrows(qt, &seq).expect("composable")));
            }
        }
    }
    out
}

impl<F: Field> RelationExtension<F> {
    pub fn build(c: &BoundAlgebra<F>) -> Result<Self, ExtensionError> {
        let q = c.quiver();
        if !q.is_acyclic() {
            return Err(ExtensionError::NotTriangular);
        }
        if !global_dimension_le(c, 2).holds {
            return Err(ExtensionError::GlobalDimensionExceeded(2));
        }
        let relations = minimal_relation_system(c);
        let mut qt = q.clone();
        let mut taken = BTreeSet::new();
        let mut new_arrows = Vec::new();
        for (i, r) in relations.relations.iter().enumerate() {
            let name = match &r.label {
                Some(l) if qt.arrow_by_name(l).is_err() && !taken.contains(l) => l.clone(),
                _ => fresh_name(q, &taken, i),
            };
            taken.insert(name.clone());
            new_arrows.push(qt.add_arrow_by_index(&name, r.target, r.source)?);
        }
        let mut w = Element::zero();
        for (r, &a) in relations.relations.iter().zip(&new_arrows) {
            w = w + r.element.mul_path_right(&Path::arrow(&qt, a));
        }
        let potential = Potential::from_element(&qt, &w).expect("relation followed by its new arrow is closed");
        let mut gens: Vec<Element<F>> = jacobian_relations(&qt, &potential).into_iter().filter(|e| !e.is_zero()).collect();
        gens.extend(two_arrow_monomials(&qt, c, &new_arrows));
        let algebra = BoundAlgebra::build(qt.clone(), gens, c.length_cap())?;
        let nq = q.num_arrows();
        let e_basis: Vec<usize> = (0..algebra.dim())
            .filter(|&i| algebra.basis()[i].arrows().iter().filter(|&&a| a >= nq).count() == 1)
            .collect();
        let mut re = RelationExtension {
            base: c.clone(),
            relations,
            quiver: qt,
            new_arrows,
            potential,
            algebra,
            e_basis,
            actions: Vec::new(),
        };
        re.actions = re.action_matrices();
        Ok(re)
    }

    /// `dim E`.
    pub fn e_dim(&self) -> usize {
        self.e_basis.len()
    }

    pub fn is_new_arrow(&self, a: usize) -> bool {
        self.new_arrows.contains(&a)
    }

    /// Number of new arrows on a path of `Q~`.
    pub fn new_arrow_count(&self, p: &Path) -> usize {
        let nq = self.base.quiver().num_arrows();
        p.arrows().iter().filter(|&&a| a >= nq).count()
    }

    /// The new arrow standing for relation `i`.
    pub fn new_arrow_of(&self, i: usize) -> usize {
        self.new_arrows[i]
    }

    /// Coordinates of an element of the extended algebra in the basis of
    /// `E`, or `None` when its normal form leaves `E`.
    pub fn e_coords(&self, x: &Element<F>) -> Option<Vec<F>> {
        let coords = self.algebra.coords_of(x);
        let mut v = vec![F::zero(); self.e_dim()];
        for (i, c) in coords {
            let k = self.e_basis.iter().position(|&j| j == i)?;
            v[k] = c;
        }
        Some(v)
    }

    /// The element of the extended algebra with given `E`-coordinates.
    pub fn e_element(&self, v: &[F]) -> Element<F> {
        let coords: Vec<(usize, F)> = v
            .iter()
            .zip(&self.e_basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &i)| (i, c.clone()))
            .collect();
        self.algebra.element_of(&coords)
    }

    fn action_matrices(&self) -> Vec<Matrix<F>> {
        let a = &self.algebra;
        let n = self.e_dim();
        let pos = |i: usize| self.e_basis.iter().position(|&j| j == i).expect("action stays in E");
        let column_matrix = |f: &dyn Fn(usize) -> Vec<(usize, F)>| {
            let mut m = Matrix::zeros(n, n);
            for (col, &i) in self.e_basis.iter().enumerate() {
                for (k, c) in f(i) {
                    m.set(pos(k), col, c);
                }
            }
            m
        };
        let mut out = Vec::new();
        let q = self.base.quiver();
        for v in 0..q.num_vertices() {
            let e = a.trivial_index(v);
            out.push(column_matrix(&|i| a.basis_product(e, i).clone()));
            out.push(column_matrix(&|i| a.basis_product(i, e).clone()));
        }
        for b in 0..q.num_arrows() {
            out.push(column_matrix(&|i| a.left_table(b, i).clone()));
            out.push(column_matrix(&|i| a.right_table(i, b).clone()));
        }
        out
    }

    /// Left and right actions of `C` on `E` by generators.
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// `dim e_x E e_y` for all `x`, `y`: paths from `x` to `y` with one new arrow.
    pub fn graded_dims(&self) -> Vec<Vec<usize>> {
        self.full_bimodule().graded
    }
}

#[cfg(test)]
mod tests;
