//! Local slices, complete slices, and pulling complete slices back along
//! surjections `A -> C`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::BoundAlgebra;
use crate::exactlin::Field;
use crate::repmod::{hom_space, is_isomorphic_indecomposable, ArQuiver, Representation};

pub const DEFAULT_SEARCH_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("module id {0} is not registered")]
    UnknownId(usize),
    #[error("slice search visited more than {0} partial candidates")]
    SearchCap(usize),
    #[error("module with dimension vector {0:?} is missing from the AR quiver")]
    NotFound(Vec<usize>),
    #[error("arrow map does not fit the two algebras")]
    BadMap,
}

/// A set of vertices of an AR quiver.
#[derive(Clone, Debug)]
pub struct SliceCandidate<'a, F: Field> {
    ar: &'a ArQuiver<F>,
    ids: BTreeSet<usize>,
}

/// Which clause of the presection condition fails on the arrow `from -> to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresectionClause {
    /// `from` is in the set, neither `to` nor `tau to` is.
    Successor,
    /// `to` is in the set, neither `from` nor `tau^{-1} from` is.
    Predecessor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresectionViolation {
    pub from: usize,
    pub to: usize,
    pub clause: PresectionClause,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSliceReport {
    pub presection: Option<PresectionViolation>,
    /// A sectional path leaving the set and coming back.
    pub convexity: Option<Vec<usize>>,
    pub size: usize,
    pub rank: usize,
}

impl LocalSliceReport {
    pub fn is_local_slice(&self) -> bool {
        self.presection.is_none() && self.convexity.is_none() && self.size == self.rank
    }
}

impl<'a, F: Field> SliceCandidate<'a, F> {
    pub fn new(ar: &'a ArQuiver<F>, ids: impl IntoIterator<Item = usize>) -> Result<Self, SliceError> {
        let ids: BTreeSet<usize> = ids.into_iter().collect();
        if let Some(&bad) = ids.iter().find(|&&i| i >= ar.len()) {
            return Err(SliceError::UnknownId(bad));
        }
        Ok(SliceCandidate { ar, ids })
    }

    pub fn ids(&self) -> &BTreeSet<usize> {
        &self.ids
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.contains(&id)
    }

    fn has(&self, id: Option<usize>) -> bool {
        id.is_some_and(|i| self.ids.contains(&i))
    }

    pub fn presection_violation(&self) -> Option<PresectionViolation> {
        for a in &self.ar.arrows {
            let (l, m) = (a.from, a.to);
            if self.contains(l) && !self.contains(m) && !self.has(self.ar.nodes[m].tau) {
                return Some(PresectionViolation { from: l, to: m, clause: PresectionClause::Successor });
            }
            if self.contains(m) && !self.contains(l) && !self.has(self.ar.nodes[l].tau_inverse) {
                return Some(PresectionViolation { from: l, to: m, clause: PresectionClause::Predecessor });
            }
        }
        None
    }

    pub fn is_presection(&self) -> bool {
        self.presection_violation().is_none()
    }

    /// A sectional path `M_0 -> ... -> M_t` with both ends in the set and
    /// some `M_i` outside it. Subpaths of sectional paths are sectional, so
    /// it suffices to search paths whose interior avoids the set.
    pub fn convexity_violation(&self) -> Option<Vec<usize>> {
        let ar = self.ar;
        // states are (previous, current) pairs of a sectional path
        let mut parent: HashMap<(usize, usize), Option<(usize, usize)>> = HashMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for &l in &self.ids {
            for (m, _) in ar.successors(l) {
                if !self.contains(m) && !parent.contains_key(&(l, m)) {
                    parent.insert((l, m), None);
                    queue.push_back((l, m));
                }
            }
        }
        while let Some((p, c)) = queue.pop_front() {
            for (n, _) in ar.successors(c) {
                if ar.nodes[p].tau_inverse == Some(n) {
                    continue;
                }
                if self.contains(n) {
                    let mut path = vec![n, c];
                    let mut s = (p, c);
                    while let Some(prev) = parent[&s] {
                        path.push(prev.1);
                        s = prev;
                    }
                    path.push(s.0);
                    path.reverse();
                    return Some(path);
                }
                if !parent.contains_key(&(c, n)) {
                    parent.insert((c, n), Some((p, c)));
                    queue.push_back((c, n));
                }
            }
        }
        None
    }

    pub fn is_sectionally_convex(&self) -> bool {
        self.convexity_violation().is_none()
    }

    pub fn local_slice_report(&self) -> LocalSliceReport {
        LocalSliceReport {
            presection: self.presection_violation(),
            convexity: self.convexity_violation(),
            size: self.ids.len(),
            rank: rank(self.ar),
        }
    }

    pub fn is_local_slice(&self) -> bool {
        self.local_slice_report().is_local_slice()
    }
}

/// Number of simple modules, read off as the number of projectives.
pub fn rank<F: Field>(ar: &ArQuiver<F>) -> usize {
    ar.nodes.iter().filter(|n| n.projective.is_some()).count()
}

/// `hom_zero[x][y]`: `Hom(X, tau Y) = 0`, true when `Y` is projective.
fn hom_to_tau_table<F: Field>(a: &BoundAlgebra<F>, ar: &ArQuiver<F>) -> Vec<Vec<bool>> {
    let q = a.quiver();
    (0..ar.len())
        .map(|x| {
            (0..ar.len())
                .map(|y| match ar.nodes[y].tau {
                    None => true,
                    Some(t) => hom_space(q, &ar.nodes[x].module, &ar.nodes[t].module).dim() == 0,
                })
                .collect()
        })
        .collect()
}

/// A pair `(X, Y)` of members with `Hom(X, tau Y) != 0`.
pub fn hom_witness<F: Field>(a: &BoundAlgebra<F>, ar: &ArQuiver<F>, ids: &BTreeSet<usize>) -> Option<(usize, usize)> {
    let q = a.quiver();
    for &x in ids {
        for &y in ids {
            if let Some(t) = ar.nodes[y].tau {
                if hom_space(q, &ar.nodes[x].module, &ar.nodes[t].module).dim() != 0 {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

/// Local slices `S` with `Hom(X, tau Y) = 0` for all `X`, `Y` in `S`.
pub fn is_complete_slice<F: Field>(a: &BoundAlgebra<F>, ar: &ArQuiver<F>, ids: &BTreeSet<usize>) -> Result<bool, SliceError> {
    Ok(SliceCandidate::new(ar, ids.iter().copied())?.is_local_slice() && hom_witness(a, ar, ids).is_none())
}

/// All complete slices, by depth-first search over sets of pairwise
/// Hom-compatible modules of the right size.
pub fn enumerate_complete_slices<F: Field>(a: &BoundAlgebra<F>, ar: &ArQuiver<F>, cap: usize) -> Result<Vec<BTreeSet<usize>>, SliceError> {
    let n = rank(ar);
    let ok = hom_to_tau_table(a, ar);
    let allowed: Vec<usize> = (0..ar.len()).filter(|&x| ok[x][x]).collect();
    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    search(ar, &ok, &allowed, 0, n, &mut chosen, &mut visited, cap, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search<F: Field>(
    ar: &ArQuiver<F>,
    ok: &[Vec<bool>],
    allowed: &[usize],
    from: usize,
    n: usize,
    chosen: &mut Vec<usize>,
    visited: &mut usize,
    cap: usize,
    out: &mut Vec<BTreeSet<usize>>,
) -> Result<(), SliceError> {
    *visited += 1;
    if *visited > cap {
        return Err(SliceError::SearchCap(cap));
    }
    if chosen.len() == n {
        let s = SliceCandidate::new(ar, chosen.iter().copied())?;
        if s.is_local_slice() {
            out.push(s.ids);
        }
        return Ok(());
    }
    if allowed.len() - from < n - chosen.len() {
        return Ok(());
    }
    for k in from..allowed.len() {
        let x = allowed[k];
        if chosen.iter().all(|&y| ok[x][y] && ok[y][x]) {
            chosen.push(x);
            search(ar, ok, allowed, k + 1, n, chosen, visited, cap, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Reads an `A`-module as a `C`-module through `arrow_map: Q_A -> Q_C`,
/// when the arrows sent to zero act by zero and the relations of `C` hold.
pub fn descend<F: Field>(
    a: &BoundAlgebra<F>,
    c: &BoundAlgebra<F>,
    m: &Representation<F>,
    arrow_map: &[Option<usize>],
) -> Option<Representation<F>> {
    let mut maps = vec![None; c.quiver().num_arrows()];
    for i in 0..a.quiver().num_arrows() {
        match arrow_map[i] {
            None if !m.map(i).is_zero() => return None,
            None => {}
            Some(j) => match &maps[j] {
                Some(prev) if prev != m.map(i) => return None,
                Some(_) => {}
                None => maps[j] = Some(m.map(i).clone()),
            },
        }
    }
    let maps = maps.into_iter().collect::<Option<Vec<_>>>()?;
    let r = Representation::with_quiver(c.quiver(), m.dims().to_vec(), maps).ok()?;
    r.satisfies_relations(c).then_some(r)
}

/// Comparison of the translates over `C` and `A` for one slice module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauCheck {
    /// Id in the AR quiver of `C`.
    pub member: usize,
    /// Projective over `C` implies projective over `A`, otherwise `tau_C M = tau_A M`.
    pub tau_ok: bool,
    /// Injective over `C` implies injective over `A`, otherwise `tau_C^{-1} M = tau_A^{-1} M`.
    pub tau_inverse_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSlice {
    pub c_ids: BTreeSet<usize>,
    pub a_ids: BTreeSet<usize>,
    pub report: LocalSliceReport,
    pub tau: Vec<TauCheck>,
    /// Neighbours in the AR quiver of `A` of slice modules are `C`-modules.
    pub neighbours_descend: bool,
}

impl EmbeddedSlice {
    pub fn passes(&self) -> bool {
        self.report.is_local_slice() && self.neighbours_descend && self.tau.iter().all(|t| t.tau_ok && t.tau_inverse_ok)
    }
}

/// Pulls each slice of `C` back along `arrow_map: Q_A -> Q_C`, locates the
/// modules in the AR quiver of `A`, and checks the local slice axioms there.
pub fn embed_and_verify<F: Field>(
    c: &BoundAlgebra<F>,
    ar_c: &ArQuiver<F>,
    slices: &[BTreeSet<usize>],
    a: &BoundAlgebra<F>,
    ar_a: &ArQuiver<F>,
    arrow_map: &[Option<usize>],
) -> Result<Vec<EmbeddedSlice>, SliceError> {
    let (qa, qc) = (a.quiver(), c.quiver());
    if arrow_map.len() != qa.num_arrows() || qa.num_vertices() != qc.num_vertices() {
        return Err(SliceError::BadMap);
    }
    let locate = |id: usize| -> Result<usize, SliceError> {
        let m = ar_c.nodes[id].module.restrict(qa, arrow_map);
        ar_a.find(a, &m).ok_or_else(|| SliceError::NotFound(m.dim_vector()))
    };
    let same = |c_id: Option<usize>, a_id: Option<usize>| -> bool {
        match (c_id, a_id) {
            (Some(x), Some(y)) => {
                let m = ar_c.nodes[x].module.restrict(qa, arrow_map);
                is_isomorphic_indecomposable(qa, &m, &ar_a.nodes[y].module)
            }
            _ => false,
        }
    };
    let mut out = Vec::new();
    for s in slices {
        for &id in s {
            if id >= ar_c.len() {
                return Err(SliceError::UnknownId(id));
            }
        }
        let mut a_ids = BTreeSet::new();
        let mut tau = Vec::new();
        for &id in s {
            let j = locate(id)?;
            a_ids.insert(j);
            let (nc, na) = (&ar_c.nodes[id], &ar_a.nodes[j]);
            let tau_ok = if nc.projective.is_some() { na.projective.is_some() } else { same(nc.tau, na.tau) };
            let tau_inverse_ok =
                if nc.injective.is_some() { na.injective.is_some() } else { same(nc.tau_inverse, na.tau_inverse) };
            tau.push(TauCheck { member: id, tau_ok, tau_inverse_ok });
        }
        let neighbours_descend = a_ids.iter().all(|&j| {
            ar_a.successors(j)
                .into_iter()
                .chain(ar_a.predecessors(j))
                .all(|(k, _)| descend(a, c, &ar_a.nodes[k].module, arrow_map).is_some())
        });
        let report = SliceCandidate::new(ar_a, a_ids.iter().copied())?.local_slice_report();
        out.push(EmbeddedSlice { c_ids: s.clone(), a_ids, report, tau, neighbours_descend });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_LENGTH_CAP;
    use crate::exactlin::Rational;
    use crate::quiver::parse_quiver;
    use crate::repmod::{knit_ar_quiver, DEFAULT_KNIT_CAP};

    fn load(text: &str) -> BoundAlgebra<Rational> {
        BoundAlgebra::from_file(&parse_quiver(text).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
    }

    fn id_of(ar: &ArQuiver<Rational>, dims: &[usize]) -> usize {
        let ids: Vec<usize> = (0..ar.len()).filter(|&i| ar.nodes[i].module.dims() == dims).collect();
        assert_eq!(ids.len(), 1, "{dims:?}");
        ids[0]
    }

    #[test]
    fn a2_subsets() {
        let a = load("vertices 1 2\narrow a 1 2\n");
        let ar = knit_ar_quiver(&a, DEFAULT_KNIT_CAP).unwrap();
        assert_eq!(ar.len(), 3);
        let (s1, s2, p) = (id_of(&ar, &[1, 0]), id_of(&ar, &[0, 1]), id_of(&ar, &[1, 1]));
        let bad = SliceCandidate::new(&ar, [s1, s2]).unwrap();
        assert!(bad.presection_violation().is_some());
        assert!(!bad.is_local_slice());
        let all = SliceCandidate::new(&ar, 0..3).unwrap();
        assert!(all.is_presection());
        assert!(SliceCandidate::new(&ar, [p]).unwrap().is_sectionally_convex());

        // brute force over all 2-subsets
        let mut brute = Vec::new();
        for x in 0..3 {
            for y in x + 1..3 {
                let s: BTreeSet<usize> = [x, y].into();
                if is_complete_slice(&a, &ar, &s).unwrap() {
                    brute.push(s);
                }
            }
        }
        let found = enumerate_complete_slices(&a, &ar, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(found, brute);
        let expected: Vec<BTreeSet<usize>> = vec![[s2, p].into_iter().collect(), [p, s1].into_iter().collect()];
        let mut expected = expected;
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn single_simple() {
        let a = load("vertices 1\n");
        let ar = knit_ar_quiver(&a, DEFAULT_KNIT_CAP).unwrap();
        assert_eq!(enumerate_complete_slices(&a, &ar, DEFAULT_SEARCH_CAP).unwrap(), vec![BTreeSet::from([0])]);
    }

    #[test]
    fn a3_sectional_path() {
        // linear A3: the projectives form a sectional path of length 2
        let a = load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
        let ar = knit_ar_quiver(&a, DEFAULT_KNIT_CAP).unwrap();
        let ends = [id_of(&ar, &[0, 0, 1]), id_of(&ar, &[1, 1, 1])];
        let s = SliceCandidate::new(&ar, ends).unwrap();
        let path = s.convexity_violation().unwrap();
        assert_eq!(path, vec![ends[0], id_of(&ar, &[0, 1, 1]), ends[1]]);
        let slices = enumerate_complete_slices(&a, &ar, DEFAULT_SEARCH_CAP).unwrap();
        // sections of the A3 AR quiver
        assert_eq!(slices.len(), 4);
        assert!(SliceCandidate::new(&ar, [0, 1]).unwrap().local_slice_report().size != 3);
    }

    #[test]
    fn embed_into_itself() {
        let a = load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
        let ar = knit_ar_quiver(&a, DEFAULT_KNIT_CAP).unwrap();
        let slices = enumerate_complete_slices(&a, &ar, DEFAULT_SEARCH_CAP).unwrap();
        let map = [Some(0), Some(1)];
        let emb = embed_and_verify(&a, &ar, &slices, &a, &ar, &map).unwrap();
        assert!(emb.iter().all(EmbeddedSlice::passes));
        assert_eq!(embed_and_verify(&a, &ar, &slices, &a, &ar, &map[..1]).unwrap_err(), SliceError::BadMap);
    }

    #[test]
    fn unknown_id() {
        let a = load("vertices 1\n");
        let ar = knit_ar_quiver(&a, DEFAULT_KNIT_CAP).unwrap();
        assert_eq!(SliceCandidate::new(&ar, [4]).unwrap_err(), SliceError::UnknownId(4));
    }
}
