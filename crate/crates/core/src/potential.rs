//! Potentials: linear combinations of oriented cycles up to rotation, their
//! cyclic derivatives, and direct decompositions along shared arrows.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::algebra::Element;
use crate::exactlin::Field;
use crate::quiver::{Cycle, Path, Quiver};

/// Most coarsenings `coarsenings` will list.
pub const COARSENING_CAP: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("term `{0}` is not a closed path")]
    NotClosed(String),
    #[error("coefficient has no image in the field")]
    Coefficient,
    #[error("{components} components give more than {cap} coarsenings")]
    TooManyCoarsenings { components: usize, cap: usize },
}

/// A potential, each cycle kept in its canonical rotation so that cyclic
/// equivalence is equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential<F> {
    terms: BTreeMap<Cycle, F>,
}

impl<F: Field> Default for Potential<F> {
    fn default() -> Self {
        Potential { terms: BTreeMap::new() }
    }
}

impl<F: Field> Potential<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, c: F, cycle: Cycle) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&cycle) {
            Some(v) => v + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(cycle, s);
        }
    }

    pub fn from_element(q: &Quiver, e: &Element<F>) -> Result<Self, PotentialError> {
        let mut w = Self::zero();
        for (p, c) in e.terms() {
            let cycle = Cycle::new(p).filter(|_| !p.is_trivial()).ok_or_else(|| PotentialError::NotClosed(p.display(q)))?;
            w.add_term(c.clone(), cycle);
        }
        Ok(w)
    }

    pub fn from_rational_terms(q: &Quiver, terms: &[(BigRational, Path)]) -> Result<Self, PotentialError> {
        let e = Element::from_rational_terms(terms).ok_or(PotentialError::Coefficient)?;
        Self::from_element(q, &e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cycle, &F)> {
        self.terms.iter()
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Cycle> {
        self.terms.keys()
    }

    pub fn coeff(&self, c: &Cycle) -> F {
        self.terms.get(c).cloned().unwrap_or_else(F::zero)
    }

    /// Arrows occurring in some cycle.
    pub fn arrows(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|c| c.arrows().iter().copied()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (cy, v) in &self.terms {
            out.add_term(v.clone() * c.clone(), cy.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// The sub-potential on the given cycles.
    pub fn restrict(&self, cycles: &BTreeSet<Cycle>) -> Self {
        Potential { terms: self.terms.iter().filter(|(c, _)| cycles.contains(c)).map(|(c, v)| (c.clone(), v.clone())).collect() }
    }

    /// As an element of the path algebra, each cycle in canonical rotation.
    pub fn to_element(&self, q: &Quiver) -> Element<F> {
        Element::from_terms(self.terms.iter().map(|(c, v)| (v.clone(), c.to_path(q))))
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.to_element(q).display(q)
    }
}

/// `rotated path after position i`: the arrows following `i` around the cycle.
fn rotation_after(q: &Quiver, arrows: &[usize], i: usize) -> Path {
    let mut r = arrows[i + 1..].to_vec();
    r.extend_from_slice(&arrows[..i]);
    if r.is_empty() {
        return Path::trivial(q.arrow(arrows[i]).target);
    }
    Path::from_arrows(q, &r).expect("rotation of a cycle")
}

/// Cyclic derivative of a list of (not necessarily canonical) cycle terms.
pub fn cyclic_derivative_of_terms<F: Field>(q: &Quiver, terms: &[(F, Vec<usize>)], b: usize) -> Element<F> {
    let mut out = Element::zero();
    for (c, arrows) in terms {
        for (i, &a) in arrows.iter().enumerate() {
            if a == b {
                out.add_term(c.clone(), rotation_after(q, arrows, i));
            }
        }
    }
    out
}

/// `d_b W`: for every occurrence of `b` in a cycle, the path that follows
/// it around the cycle.
pub fn cyclic_derivative<F: Field>(q: &Quiver, w: &Potential<F>, b: usize) -> Element<F> {
    let terms: Vec<(F, Vec<usize>)> = w.terms().map(|(c, v)| (v.clone(), c.arrows().to_vec())).collect();
    cyclic_derivative_of_terms(q, &terms, b)
}

/// All cyclic derivatives, one per arrow of `q`.
pub fn jacobian_relations<F: Field>(q: &Quiver, w: &Potential<F>) -> Vec<Element<F>> {
    (0..q.num_arrows()).map(|b| cyclic_derivative(q, w, b)).collect()
}

/// Checks that every derivative survives rotating each term of `w` by
/// `shift[i]` positions (term `i` in canonical order).
pub fn derivative_cyclic_invariance_check<F: Field>(q: &Quiver, w: &Potential<F>, shift: &[usize]) -> bool {
    let rotated: Vec<(F, Vec<usize>)> = w
        .terms()
        .enumerate()
        .map(|(i, (c, v))| {
            let rots = c.rotations();
            let k = shift.get(i).copied().unwrap_or(0) % rots.len();
            (v.clone(), rots[k].clone())
        })
        .collect();
    (0..q.num_arrows()).all(|b| cyclic_derivative_of_terms(q, &rotated, b) == cyclic_derivative(q, w, b))
}

/// Connected parts of the arrow-sharing relation on cycles.
fn cycle_classes(cycles: &[Cycle]) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(cycles.len());
    let mut first_with: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for &a in c.arrows() {
            match first_with.get(&a) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    first_with.insert(a, i);
                }
            }
        }
    }
    (0..cycles.len()).map(|i| uf.find(i)).collect()
}

/// The finest direct decomposition of a potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialDecomposition<F> {
    pub summands: Vec<Potential<F>>,
    /// Arrows of each summand; pairwise disjoint.
    pub arrows: Vec<BTreeSet<usize>>,
}

impl<F: Field> PotentialDecomposition<F> {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Every two-part grouping `(W', W'')` of the components, `W'` holding
    /// the first component. Includes the trivial split `(W, 0)`.
    pub fn coarsenings(&self) -> Result<Vec<(Potential<F>, Potential<F>)>, PotentialError> {
        let k = self.summands.len();
        if k == 0 {
            return Ok(vec![(Potential::zero(), Potential::zero())]);
        }
        if k - 1 > COARSENING_CAP.trailing_zeros() as usize {
            return Err(PotentialError::TooManyCoarsenings { components: k, cap: COARSENING_CAP });
        }
        let mut out = Vec::new();
        for mask in 0..(1usize << (k - 1)) {
            let (mut w1, mut w2) = (self.summands[0].clone(), Potential::zero());
            for i in 1..k {
                if mask >> (i - 1) & 1 == 0 {
                    w1 = w1.add(&self.summands[i]);
                } else {
                    w2 = w2.add(&self.summands[i]);
                }
            }
            out.push((w1, w2));
        }
        Ok(out)
    }
}

/// Partitions the cycles of `w` into classes of the transitive closure of
/// "shares an arrow". Summands are ordered by their smallest cycle.
pub fn dependency_components<F: Field>(w: &Potential<F>) -> PotentialDecomposition<F> {
    let cycles: Vec<Cycle> = w.cycles().cloned().collect();
    let class = cycle_classes(&cycles);
    let mut groups: BTreeMap<usize, BTreeSet<Cycle>> = BTreeMap::new();
    let mut order: Vec<usize> = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        if !groups.contains_key(&class[i]) {
            order.push(class[i]);
        }
        groups.entry(class[i]).or_default().insert(c.clone());
    }
    let summands: Vec<Potential<F>> = order.iter().map(|r| w.restrict(&groups[r])).collect();
    let arrows = summands.iter().map(Potential::arrows).collect();
    PotentialDecomposition { summands, arrows }
}

/// `W = W' + W''` with no cycle of `W'` related to a cycle of `W''`.
pub fn is_direct_decomposition<F: Field>(w: &Potential<F>, w1: &Potential<F>, w2: &Potential<F>) -> bool {
    if w1.add(w2) != *w {
        return false;
    }
    let mut cycles: Vec<Cycle> = w1.cycles().cloned().collect();
    let n1 = cycles.len();
    cycles.extend(w2.cycles().cloned());
    let class = cycle_classes(&cycles);
    let left: BTreeSet<usize> = class[..n1].iter().copied().collect();
    class[n1..].iter().all(|c| !left.contains(c))
}
