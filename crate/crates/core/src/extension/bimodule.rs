use std::collections::BTreeSet;

use crate::algebra::Element;
use crate::exactlin::{Field, Matrix, Subspace};
use crate::potential::{is_direct_decomposition, Potential};
use crate::quiver::{Cycle, Path, DEFAULT_CYCLE_CAP};

use super::{ExtensionError, RelationExtension};

/// A subbimodule of `E`, as a subspace of `E` in the one-new-arrow basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    pub space: Subspace<F>,
    /// `graded[x][y] = dim e_x M e_y`.
    pub graded: Vec<Vec<usize>>,
}

impl<F: Field> Bimodule<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }
}

/// `E = E' + E''` induced by a split of the potential.
#[derive(Clone, Debug)]
pub struct InducedDecomposition<F: Field> {
    pub first: Bimodule<F>,
    pub second: Bimodule<F>,
    pub intersection_zero: bool,
    pub sum_is_e: bool,
}

impl<F: Field> InducedDecomposition<F> {
    pub fn is_direct(&self) -> bool {
        self.intersection_zero && self.sum_is_e
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The class of this new arrow lies in neither summand.
    SplitArrow(usize),
    /// The grouped cycles share arrows.
    NotDirect,
    /// The grouped potentials generate different bimodules.
    NotReproduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PotentialSplit<F: Field> {
    Split(Potential<F>, Potential<F>),
    Obstruction(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveInjectiveSplit {
    /// `P' = sum P_x` over `p1`, `I' = sum I_y` over `i1`, with `E' = Ext²(I', P')`.
    Split { p1: BTreeSet<usize>, p2: BTreeSet<usize>, i1: BTreeSet<usize>, i2: BTreeSet<usize> },
    /// Both `e_x E' e_y` and `e_x E'' e_y` are nonzero.
    Failure { witness: (usize, usize) },
}

impl<F: Field> RelationExtension<F> {
    fn graded_of(&self, space: &Subspace<F>) -> Vec<Vec<usize>> {
        let n = self.base.quiver().num_vertices();
        let basis = self.algebra.basis();
        let rows: Vec<usize> = (0..space.dim()).collect();
        let mut g = vec![vec![0; n]; n];
        for (x, row) in g.iter_mut().enumerate() {
            for (y, d) in row.iter_mut().enumerate() {
                let cols: Vec<usize> = (0..self.e_dim())
                    .filter(|&k| {
                        let p = &basis[self.e_basis[k]];
                        p.start() == x && p.end() == y
                    })
                    .collect();
                if !cols.is_empty() && !rows.is_empty() {
                    *d = space.basis().submatrix(&rows, &cols).rank();
                }
            }
        }
        g
    }

    fn closure(&self, space: Subspace<F>) -> Subspace<F> {
        let mut s = space;
        loop {
            let mut vecs = s.basis_vectors();
            for a in &self.actions {
                for v in s.basis_vectors() {
                    vecs.push(a.mul_vec(&v));
                }
            }
            let next = Subspace::span(self.e_dim(), &vecs);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    /// Wraps a subspace of `E`, which must be closed under both actions.
    pub fn bimodule(&self, space: Subspace<F>) -> Result<Bimodule<F>, ExtensionError> {
        if self.closure(space.clone()).dim() != space.dim() {
            return Err(ExtensionError::NotClosed);
        }
        let graded = self.graded_of(&space);
        Ok(Bimodule { space, graded })
    }

    pub fn full_bimodule(&self) -> Bimodule<F> {
        let space = Subspace::full(self.e_dim());
        let graded = self.graded_of(&space);
        Bimodule { space, graded }
    }

    /// The smallest subbimodule containing the generators.
    pub fn subbimodule_generated(&self, gens: &[Element<F>]) -> Result<Bimodule<F>, ExtensionError> {
        let vecs = gens
            .iter()
            .map(|g| self.e_coords(g).ok_or(ExtensionError::OutsideBimodule))
            .collect::<Result<Vec<_>, _>>()?;
        let space = self.closure(Subspace::span(self.e_dim(), &vecs));
        let graded = self.graded_of(&space);
        Ok(Bimodule { space, graded })
    }

    fn arrow_class(&self, a: usize) -> Element<F> {
        Element::path(Path::arrow(&self.quiver, a))
    }

    /// The subbimodule generated by the new arrows on the cycles of `summand`.
    pub fn partial_bimodule_of(&self, summand: &Potential<F>) -> Result<Bimodule<F>, ExtensionError> {
        for (c, v) in summand.terms() {
            if self.potential.coeff(c) != *v {
                return Err(ExtensionError::NotASummand);
            }
        }
        let gens: Vec<Element<F>> = summand
            .arrows()
            .into_iter()
            .filter(|&a| self.is_new_arrow(a))
            .map(|a| self.arrow_class(a))
            .collect();
        self.subbimodule_generated(&gens)
    }

    pub fn induced_bimodule_decomposition(
        &self,
        w1: &Potential<F>,
        w2: &Potential<F>,
    ) -> Result<InducedDecomposition<F>, ExtensionError> {
        if !is_direct_decomposition(&self.potential, w1, w2) {
            return Err(ExtensionError::NotDirect);
        }
        let first = self.partial_bimodule_of(w1)?;
        let second = self.partial_bimodule_of(w2)?;
        let intersection_zero = first.space.intersection(&second.space).expect("same ambient").is_zero();
        let sum_is_e = first.space.sum(&second.space).expect("same ambient").dim() == self.e_dim();
        Ok(InducedDecomposition { first, second, intersection_zero, sum_is_e })
    }

    /// A complement of `e1` that is again a subbimodule, found as the kernel
    /// of a bimodule retraction `E -> e1`; `None` when no retraction exists.
    pub fn is_direct_summand(&self, e1: &Bimodule<F>) -> Result<Option<Bimodule<F>>, ExtensionError> {
        let b = e1.space.clone();
        if self.closure(b.clone()).dim() != b.dim() {
            return Err(ExtensionError::NotClosed);
        }
        let (k, n) = (b.dim(), self.e_dim());
        if k == 0 {
            return Ok(Some(self.full_bimodule()));
        }
        // unknown P (k x n), entry (r, m) at r * n + m
        let var = |r: usize, m: usize| r * n + m;
        let mut rows: Vec<Vec<F>> = Vec::new();
        let mut rhs: Vec<F> = Vec::new();
        let basis = b.basis_vectors();
        for (j, bj) in basis.iter().enumerate() {
            for r in 0..k {
                let mut row = vec![F::zero(); k * n];
                for m in 0..n {
                    row[var(r, m)] = bj[m].clone();
                }
                rows.push(row);
                rhs.push(if r == j { F::one() } else { F::zero() });
            }
        }
        for a in &self.actions {
            // restriction of a to e1, in the echelon basis
            let restricted: Vec<Vec<F>> = basis
                .iter()
                .map(|v| b.coordinates(&a.mul_vec(v)).expect("e1 is closed"))
                .collect();
            // (P a)[r][c] = (a' P)[r][c] with a'[r][s] = restricted[s][r]
            for r in 0..k {
                for c in 0..n {
                    let mut row = vec![F::zero(); k * n];
                    for m in 0..n {
                        let x = a.get(m, c);
                        if !x.is_zero() {
                            row[var(r, m)] = row[var(r, m)].clone() + x.clone();
                        }
                    }
                    for (s, col) in restricted.iter().enumerate() {
                        let x = &col[r];
                        if !x.is_zero() {
                            row[var(s, c)] = row[var(s, c)].clone() - x.clone();
                        }
                    }
                    rows.push(row);
                    rhs.push(F::zero());
                }
            }
        }
        let system = Matrix::from_rows(k * n, rows);
        let Some(sol) = system.solve(&rhs) else { return Ok(None) };
        let p = Matrix::from_fn(k, n, |r, m| sol[var(r, m)].clone());
        let complement = Subspace::kernel(&p);
        Ok(Some(self.bimodule(complement)?))
    }

    fn check_direct(&self, e1: &Bimodule<F>, e2: &Bimodule<F>) -> Result<(), ExtensionError> {
        let zero = e1.space.intersection(&e2.space).expect("same ambient").is_zero();
        let full = e1.space.sum(&e2.space).expect("same ambient").dim() == self.e_dim();
        if zero && full {
            Ok(())
        } else {
            Err(ExtensionError::NotDirect)
        }
    }

    /// Recovers `W = W' + W''` from `E = e1 + e2` by sorting new arrows by
    /// the summand holding their class.
    pub fn potential_split_from_bimodule(&self, e1: &Bimodule<F>, e2: &Bimodule<F>) -> Result<PotentialSplit<F>, ExtensionError> {
        self.check_direct(e1, e2)?;
        let mut first: BTreeSet<usize> = BTreeSet::new();
        for &a in &self.new_arrows {
            let v = self.e_coords(&self.arrow_class(a)).expect("new arrow lies in E");
            if e1.space.contains(&v) {
                first.insert(a);
            } else if !e2.space.contains(&v) {
                return Ok(PotentialSplit::Obstruction(Obstruction::SplitArrow(a)));
            }
        }
        let (mut c1, mut c2): (BTreeSet<Cycle>, BTreeSet<Cycle>) = (BTreeSet::new(), BTreeSet::new());
        for c in self.potential.cycles() {
            let new: Vec<usize> = c.arrows().iter().copied().filter(|&a| self.is_new_arrow(a)).collect();
            if new.iter().all(|a| first.contains(a)) {
                c1.insert(c.clone());
            } else if new.iter().all(|a| !first.contains(a)) {
                c2.insert(c.clone());
            } else {
                return Ok(PotentialSplit::Obstruction(Obstruction::NotDirect));
            }
        }
        let (w1, w2) = (self.potential.restrict(&c1), self.potential.restrict(&c2));
        if !is_direct_decomposition(&self.potential, &w1, &w2) {
            return Ok(PotentialSplit::Obstruction(Obstruction::NotDirect));
        }
        if self.partial_bimodule_of(&w1)? != *e1 || self.partial_bimodule_of(&w2)? != *e2 {
            return Ok(PotentialSplit::Obstruction(Obstruction::NotReproduced));
        }
        Ok(PotentialSplit::Split(w1, w2))
    }

    /// Whether every chordless cycle of `Q~` is oriented.
    pub fn is_cyclically_oriented(&self) -> Result<bool, ExtensionError> {
        Ok(self.quiver.chordless_cycles(DEFAULT_CYCLE_CAP)?.iter().all(|c| c.oriented))
    }

    /// Splits the vertices so that `e1 = Ext²(I', P')` and `e2 = Ext²(I'', P'')`,
    /// possible when no graded piece `e_x E e_y` meets both summands.
    pub fn projective_injective_split(&self, e1: &Bimodule<F>, e2: &Bimodule<F>) -> Result<ProjectiveInjectiveSplit, ExtensionError> {
        self.check_direct(e1, e2)?;
        let n = self.base.quiver().num_vertices();
        for x in 0..n {
            for y in 0..n {
                if e1.graded[x][y] > 0 && e2.graded[x][y] > 0 {
                    return Ok(ProjectiveInjectiveSplit::Failure { witness: (x, y) });
                }
            }
        }
        let p1: BTreeSet<usize> = (0..n).filter(|&x| e1.graded[x].iter().any(|&d| d > 0)).collect();
        let i1: BTreeSet<usize> = (0..n).filter(|&y| (0..n).any(|x| e1.graded[x][y] > 0)).collect();
        let p2 = (0..n).filter(|x| !p1.contains(x)).collect();
        let i2 = (0..n).filter(|y| !i1.contains(y)).collect();
        Ok(ProjectiveInjectiveSplit::Split { p1, p2, i1, i2 })
    }
}
