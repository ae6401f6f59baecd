use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::exactlin::Field;
use crate::quiver::{enumerate_paths, Path, Quiver, QuiverFile};

use super::echelon::Echelon;
use super::element::Element;

pub const DEFAULT_LENGTH_CAP: usize = 64;

/// Guard against path explosion on large quivers with cycles.
const PATH_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no nilpotency bound found up to length {cap}; the algebra may be infinite-dimensional")]
    NotFiniteDimensional { cap: usize },
    #[error("more than {limit} paths up to length {length}")]
    PathLimitExceeded { limit: usize, length: usize },
    #[error("relation {0} is not a combination of parallel paths of length >= 2")]
    InvalidRelation(usize),
    #[error("global dimension exceeds {0}")]
    GlobalDimensionExceeded(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

/// Sparse coordinate vector over the basis of an algebra.
pub type Coords<F> = Vec<(usize, F)>;

/// A bound quiver algebra `kQ/I` with a path basis and multiplication tables.
#[derive(Clone, Debug)]
pub struct BoundAlgebra<F> {
    quiver: Quiver,
    relations: Vec<Element<F>>,
    labels: Vec<Option<String>>,
    nilpotency: usize,
    length_cap: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Echelon<F>,
    /// right[i][a] = normal form of basis[i] * arrow a
    right: Vec<Vec<Coords<F>>>,
    /// left[a][i] = normal form of arrow a * basis[i]
    left: Vec<Vec<Coords<F>>>,
    /// products[i][j] = normal form of basis[i] * basis[j]
    products: Vec<Vec<Coords<F>>>,
}

/// Span of all `u * g * v` truncated to length `<= m`, closed under arrow
/// multiplication on both sides.
pub(crate) fn closure<F: Field>(q: &Quiver, gens: &[Element<F>], m: usize) -> Echelon<F> {
    let mut ech = Echelon::new();
    let mut queue: VecDeque<Element<F>> = gens.iter().map(|g| g.truncate(m)).collect();
    let arrows: Vec<Path> = (0..q.num_arrows()).map(|a| Path::arrow(q, a)).collect();
    while let Some(v) = queue.pop_front() {
        let Some(row) = ech.insert(&v) else {
            continue;
        };
        if row.min_len() >= m {
            // every product leaves the truncation window
            continue;
        }
        for a in &arrows {
            let r = row.mul_path_right(a).truncate(m);
            if !r.is_zero() {
                queue.push_back(r);
            }
            let l = row.mul_path_left(a).truncate(m);
            if !l.is_zero() {
                queue.push_back(l);
            }
        }
    }
    ech
}

fn count_paths(q: &Quiver, m: usize) -> Result<Vec<Vec<Path>>, AlgebraError> {
    let mut layers = Vec::with_capacity(m + 1);
    let mut total = 0;
    for len in 0..=m {
        let layer = enumerate_paths(q, len);
        total += layer.len();
        if total > PATH_LIMIT {
            return Err(AlgebraError::PathLimitExceeded { limit: PATH_LIMIT, length: len });
        }
        layers.push(layer);
    }
    Ok(layers)
}

impl<F: Field> BoundAlgebra<F> {
    /// Builds `kQ/I` for the ideal generated by `relations`, searching for the
    /// smallest `N` with every path of length `N` in the ideal.
    ///
    /// The ideal is assumed admissible; finiteness is only detected through
    /// the existence of `N` below `length_cap`.
    pub fn build(quiver: Quiver, relations: Vec<Element<F>>, length_cap: usize) -> Result<Self, AlgebraError> {
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if r.endpoints().is_none() || r.min_len() < 2 {
                return Err(AlgebraError::InvalidRelation(i));
            }
        }
        let mut prev = Echelon::new();
        let mut found = None;
        for m in 0..=length_cap {
            let layers = count_paths(&quiver, m)?;
            let ech = closure(&quiver, &relations, m);
            if layers[m].iter().all(|p| ech.contains(&Element::path(p.clone()))) {
                found = Some((m, layers));
                break;
            }
            prev = ech;
        }
        let Some((n, layers)) = found else {
            return Err(AlgebraError::NotFiniteDimensional { cap: length_cap });
        };
        let ideal = prev;
        let basis: Vec<Path> = layers[..n]
            .iter()
            .flatten()
            .filter(|p| !ideal.is_lead(p))
            .cloned()
            .collect();
        let mut alg = BoundAlgebra {
            quiver,
            labels: vec![None; relations.len()],
            relations,
            nilpotency: n,
            length_cap,
            index: basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(),
            basis,
            ideal,
            right: Vec::new(),
            left: Vec::new(),
            products: Vec::new(),
        };
        alg.fill_tables();
        Ok(alg)
    }

    /// Builds the algebra of a parsed file, keeping relation labels.
    pub fn from_file(file: &QuiverFile, length_cap: usize) -> Result<Self, AlgebraError> {
        let mut rels = Vec::with_capacity(file.relations.len());
        for (i, r) in file.relations.iter().enumerate() {
            rels.push(Element::from_spec(r).ok_or(AlgebraError::InvalidRelation(i))?);
        }
        let mut a = Self::build(file.quiver.clone(), rels, length_cap)?;
        a.labels = file.relations.iter().map(|r| r.label.clone()).collect();
        Ok(a)
    }

    /// Labels of the generating relations, parallel to `relations()`.
    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.relations.len());
        self.labels = labels;
        self
    }

    fn path_coords(&self, p: &Path) -> Coords<F> {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        let r = self.ideal.reduce(&Element::path(p.clone()));
        r.terms().map(|(q, c)| (self.index[q], c.clone())).collect()
    }

    fn fill_tables(&mut self) {
        let q = &self.quiver;
        let arrows: Vec<Path> = (0..q.num_arrows()).map(|a| Path::arrow(q, a)).collect();
        self.right = self
            .basis
            .iter()
            .map(|b| {
                arrows
                    .iter()
                    .map(|a| b.compose(a).map(|p| self.path_coords(&p)).unwrap_or_default())
                    .collect()
            })
            .collect();
        self.left = arrows
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .map(|b| a.compose(b).map(|p| self.path_coords(&p)).unwrap_or_default())
                    .collect()
            })
            .collect();
        let d = self.basis.len();
        let mut products = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let (bi, bj) = (&self.basis[i], &self.basis[j]);
                if bi.end() != bj.start() {
                    continue;
                }
                let mut v: Coords<F> = vec![(i, F::one())];
                for &a in bj.arrows() {
                    v = self.act_right(&v, a);
                }
                products[i][j] = v;
            }
        }
        self.products = products;
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest `N` with every path of length `N` in the ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    /// Basis indices of paths from `x` to `y`.
    pub fn basis_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].start() == x && self.basis[i].end() == y)
            .collect()
    }

    pub fn basis_from(&self, x: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].start() == x).collect()
    }

    pub fn basis_to(&self, y: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].end() == y).collect()
    }

    fn combine(out: &mut HashMap<usize, F>, c: &F, v: &Coords<F>) {
        for (k, x) in v {
            let e = out.entry(*k).or_insert_with(F::zero);
            *e = e.clone() + c.clone() * x.clone();
        }
    }

    fn finish(acc: HashMap<usize, F>) -> Coords<F> {
        let mut v: Coords<F> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// `x * arrow` in coordinates.
    pub fn act_right(&self, x: &Coords<F>, a: usize) -> Coords<F> {
        let mut acc = HashMap::new();
        for (i, c) in x {
            Self::combine(&mut acc, c, &self.right[*i][a]);
        }
        Self::finish(acc)
    }

    /// `arrow * x` in coordinates.
    pub fn act_left(&self, a: usize, x: &Coords<F>) -> Coords<F> {
        let mut acc = HashMap::new();
        for (i, c) in x {
            Self::combine(&mut acc, c, &self.left[a][*i]);
        }
        Self::finish(acc)
    }

    pub fn right_table(&self, i: usize, a: usize) -> &Coords<F> {
        &self.right[i][a]
    }

    pub fn left_table(&self, a: usize, i: usize) -> &Coords<F> {
        &self.left[a][i]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Coords<F> {
        &self.products[i][j]
    }

    pub fn mul_coords(&self, x: &Coords<F>, y: &Coords<F>) -> Coords<F> {
        let mut acc = HashMap::new();
        for (i, a) in x {
            for (j, b) in y {
                Self::combine(&mut acc, &(a.clone() * b.clone()), &self.products[*i][*j]);
            }
        }
        Self::finish(acc)
    }

    pub fn coords_of(&self, x: &Element<F>) -> Coords<F> {
        let mut acc = HashMap::new();
        for (p, c) in x.terms() {
            let v = self.path_normal_coords(p);
            Self::combine(&mut acc, c, &v);
        }
        Self::finish(acc)
    }

    /// Normal form of a single path, following the right action arrow by arrow.
    pub fn path_normal_coords(&self, p: &Path) -> Coords<F> {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        let mut v: Coords<F> = vec![(self.trivial_index(p.start()), F::one())];
        for &a in p.arrows() {
            v = self.act_right(&v, a);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    pub fn element_of(&self, x: &Coords<F>) -> Element<F> {
        Element::from_terms(x.iter().map(|(i, c)| (c.clone(), self.basis[*i].clone())))
    }

    /// The unique representative of `x` supported on basis paths.
    pub fn normal_form(&self, x: &Element<F>) -> Element<F> {
        self.element_of(&self.coords_of(x))
    }

    pub fn in_ideal(&self, x: &Element<F>) -> bool {
        self.coords_of(x).is_empty()
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        self.element_of(&self.mul_coords(&self.coords_of(x), &self.coords_of(y)))
    }

    /// The opposite algebra on the reversed quiver; arrow and vertex indices
    /// are preserved.
    pub fn opposite(&self) -> Result<BoundAlgebra<F>, AlgebraError> {
        let rels = self.relations.iter().map(|r| r.reversed()).collect();
        BoundAlgebra::build(self.quiver.opposite(), rels, self.length_cap)
    }

    /// Dense coordinates of a sparse vector.
    pub fn dense(&self, x: &Coords<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        for (i, c) in x {
            v[*i] = c.clone();
        }
        v
    }
}
