use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraError, BoundAlgebra};
use crate::exactlin::{Field, Subspace};

use super::cover::{tau, tau_inverse};
use super::decompose::decompose;
use super::decompose::endomorphism_radical;
use super::hom::{compose, hom_space, is_isomorphic_indecomposable, Morphism};
use super::rep::{RepError, Representation};

pub const DEFAULT_KNIT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnitError {
    #[error("more than {cap} indecomposables, {} modules unfinished", frontier.len())]
    CapExceeded { cap: usize, frontier: Vec<Vec<usize>> },
    #[error("knitting stopped with unreached or inconsistent data: {0}")]
    IncompleteKnit(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One indecomposable of the AR quiver.
#[derive(Clone, Debug)]
pub struct ArNode<F: Field> {
    pub module: Representation<F>,
    /// Vertex `x` when the module is `P_x`.
    pub projective: Option<usize>,
    /// Vertex `x` when the module is `I_x`.
    pub injective: Option<usize>,
    pub tau: Option<usize>,
    pub tau_inverse: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArArrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// The Auslander-Reiten quiver of a representation-finite algebra.
#[derive(Clone, Debug)]
pub struct ArQuiver<F: Field> {
    pub nodes: Vec<ArNode<F>>,
    pub arrows: Vec<ArArrow>,
}

impl<F: Field> ArQuiver<F> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        self.nodes.iter().map(|n| n.module.dim_vector()).collect()
    }

    pub fn successors(&self, id: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.from == id).map(|a| (a.to, a.multiplicity)).collect()
    }

    pub fn predecessors(&self, id: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.to == id).map(|a| (a.from, a.multiplicity)).collect()
    }

    pub fn has_arrow(&self, from: usize, to: usize) -> bool {
        self.arrows.iter().any(|a| a.from == from && a.to == to)
    }

    /// Registry id of a module isomorphic to the indecomposable `m`.
    pub fn find(&self, a: &BoundAlgebra<F>, m: &Representation<F>) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| is_isomorphic_indecomposable(a.quiver(), &n.module, m))
    }

    /// Mesh additivity at every `tau`-link: `dim M + dim tau^{-1} M` equals
    /// the total dimension of the middle terms. Returns the failing module.
    pub fn check_meshes(&self) -> Result<(), usize> {
        for (id, n) in self.nodes.iter().enumerate() {
            let Some(t) = n.tau_inverse else { continue };
            let lhs: Vec<usize> = n
                .module
                .dims()
                .iter()
                .zip(self.nodes[t].module.dims())
                .map(|(a, b)| a + b)
                .collect();
            let mut rhs = vec![0; lhs.len()];
            for (to, mult) in self.successors(id) {
                for (r, d) in rhs.iter_mut().zip(self.nodes[to].module.dims()) {
                    *r += mult * d;
                }
            }
            if lhs != rhs {
                return Err(id);
            }
            // arrows into tau^{-1} M mirror arrows out of M
            let mut out = self.successors(id);
            let mut inn = self.predecessors(t);
            out.sort();
            inn.sort();
            if out != inn {
                return Err(id);
            }
        }
        Ok(())
    }
}

struct Entry<F: Field> {
    module: Representation<F>,
    incoming: Option<Vec<(usize, usize)>>,
    outgoing: Option<Vec<(usize, usize)>>,
    tau: Option<Option<usize>>,
    tau_inv: Option<Option<usize>>,
}

struct Knitter<'a, F: Field> {
    alg: &'a BoundAlgebra<F>,
    op: BoundAlgebra<F>,
    cap: usize,
    entries: Vec<Entry<F>>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    rad: HashMap<(usize, usize), Vec<Morphism<F>>>,
}

impl<F: Field> Knitter<'_, F> {
    fn register(&mut self, m: Representation<F>) -> Result<usize, KnitError> {
        let dims = m.dim_vector();
        if let Some(ids) = self.buckets.get(&dims) {
            for &id in ids {
                if is_isomorphic_indecomposable(self.alg.quiver(), &self.entries[id].module, &m) {
                    return Ok(id);
                }
            }
        }
        if self.entries.len() >= self.cap {
            return Err(self.cap_error());
        }
        let id = self.entries.len();
        self.entries.push(Entry { module: m, incoming: None, outgoing: None, tau: None, tau_inv: None });
        self.buckets.entry(dims).or_default().push(id);
        Ok(id)
    }

    fn cap_error(&self) -> KnitError {
        let frontier = self
            .entries
            .iter()
            .filter(|e| e.outgoing.is_none())
            .map(|e| e.module.dim_vector())
            .collect();
        KnitError::CapExceeded { cap: self.cap, frontier }
    }

    /// Radical morphisms between registered indecomposables.
    fn rad_basis(&mut self, x: usize, y: usize) -> Result<Vec<Morphism<F>>, KnitError> {
        if let Some(b) = self.rad.get(&(x, y)) {
            return Ok(b.clone());
        }
        let q = self.alg.quiver();
        let (mx, my) = (&self.entries[x].module, &self.entries[y].module);
        let b = if x == y { endomorphism_radical(q, mx)? } else { hom_space(q, mx, my).basis };
        self.rad.insert((x, y), b.clone());
        Ok(b)
    }

    /// `dim rad(X, Y) / rad^2(X, Y)`, the number of arrows `X -> Y`, with
    /// `rad^2` computed through the registered modules. Exact once every
    /// indecomposable is registered.
    fn irreducible(&mut self, x: usize, y: usize) -> Result<usize, KnitError> {
        let rad = self.rad_basis(x, y)?;
        if rad.is_empty() {
            return Ok(0);
        }
        let flat = |f: &Morphism<F>| -> Vec<F> { f.iter().flat_map(|m| m.row_vecs().into_iter().flatten()).collect() };
        let ambient = flat(&rad[0]).len();
        let mut products = Vec::new();
        for z in 0..self.entries.len() {
            let first = self.rad_basis(x, z)?;
            if first.is_empty() {
                continue;
            }
            let second = self.rad_basis(z, y)?;
            for g in &second {
                for f in &first {
                    products.push(flat(&compose(g, f)));
                }
            }
        }
        Ok(rad.len() - Subspace::span(ambient, &products).dim())
    }

    fn tau_inv_of(&mut self, id: usize) -> Result<Option<usize>, KnitError> {
        if let Some(t) = self.entries[id].tau_inv {
            return Ok(t);
        }
        let n = tau_inverse(&self.op, &self.entries[id].module);
        let t = if n.is_zero() { None } else { Some(self.register(n)?) };
        self.entries[id].tau_inv = Some(t);
        if let Some(t) = t {
            self.entries[t].tau = Some(Some(id));
        }
        Ok(t)
    }

    fn tau_of(&mut self, id: usize) -> Result<Option<usize>, KnitError> {
        if let Some(t) = self.entries[id].tau {
            return Ok(t);
        }
        let n = tau(self.alg, &self.entries[id].module);
        let t = if n.is_zero() { None } else { Some(self.register(n)?) };
        self.entries[id].tau = Some(t);
        if let Some(t) = t {
            self.entries[t].tau_inv = Some(Some(id));
        }
        Ok(t)
    }
}

fn radical<F: Field>(q: &crate::quiver::Quiver, p: &Representation<F>) -> Representation<F> {
    let bases: Vec<_> = (0..q.num_vertices()).map(|v| p.radical_at(q, v).basis().transpose()).collect();
    p.submodule(q, &bases)
}

fn merge(list: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for (id, k) in list {
        *m.entry(id).or_default() += k;
    }
    m.into_iter().collect()
}

/// Fills in a complete neighbour list, or checks it against the known one.
fn settle(slot: &mut Option<Vec<(usize, usize)>>, list: Vec<(usize, usize)>, dims: &[usize]) -> Result<bool, KnitError> {
    match slot {
        None => {
            *slot = Some(list);
            Ok(true)
        }
        Some(prev) if *prev == list => Ok(false),
        Some(_) => Err(KnitError::IncompleteKnit(format!("conflicting meshes at {dims:?}"))),
    }
}

/// Knits the AR quiver from the indecomposable projectives and injectives.
///
/// Arrows into `P` come from the summands of `rad P`, arrows out of `I` go
/// to the summands of `I / soc I`. The remaining arrows follow from the
/// meshes: arrows out of `M` go to `tau^{-1} Y` for each arrow `Y -> M`
/// with `Y` not injective and to each projective with `M` as a radical
/// summand; dually for arrows into `M`. Arrows out of `M` are the arrows
/// into `tau^{-1} M`.
pub fn knit_ar_quiver<F: Field>(a: &BoundAlgebra<F>, cap: usize) -> Result<ArQuiver<F>, KnitError> {
    let q = a.quiver();
    let n = q.num_vertices();
    let mut k = Knitter { alg: a, op: a.opposite()?, cap, entries: Vec::new(), buckets: HashMap::new(), rad: HashMap::new() };

    let mut proj = Vec::with_capacity(n);
    for x in 0..n {
        let id = k.register(Representation::projective(a, x))?;
        k.entries[id].tau = Some(None);
        proj.push(id);
    }
    let mut inj = Vec::with_capacity(n);
    for x in 0..n {
        let id = k.register(Representation::injective(a, x))?;
        k.entries[id].tau_inv = Some(None);
        inj.push(id);
    }
    // rad P_x and, through the opposite algebra, I_x / soc I_x = D rad D I_x
    let mut rad_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut cosoc_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for x in 0..n {
        let p = Representation::projective(a, x);
        let mut list = Vec::new();
        for s in decompose(q, &radical(q, &p))? {
            list.push((k.register(s.module)?, s.multiplicity));
        }
        rad_of[x] = merge(list);
        let p = Representation::projective(&k.op, x);
        let mut list = Vec::new();
        for s in decompose(k.op.quiver(), &radical(k.op.quiver(), &p))? {
            list.push((k.register(s.module.dual())?, s.multiplicity));
        }
        cosoc_of[x] = merge(list);
    }
    for x in 0..n {
        k.entries[proj[x]].incoming = Some(rad_of[x].clone());
        k.entries[inj[x]].outgoing = Some(cosoc_of[x].clone());
    }

    loop {
        let mut progressed = false;
        let mut id = 0;
        while id < k.entries.len() {
            let dims = k.entries[id].module.dim_vector();
            if let (Some(inc), None) = (k.entries[id].incoming.clone(), &k.entries[id].outgoing) {
                let mut out = Vec::new();
                for (y, mult) in inc {
                    if let Some(t) = k.tau_inv_of(y)? {
                        out.push((t, mult));
                    }
                }
                for x in 0..n {
                    out.extend(rad_of[x].iter().filter(|&&(m, _)| m == id).map(|&(_, mult)| (proj[x], mult)));
                }
                progressed |= settle(&mut k.entries[id].outgoing, merge(out), &dims)?;
            }
            if let (Some(out), None) = (k.entries[id].outgoing.clone(), &k.entries[id].incoming) {
                let mut inc = Vec::new();
                for (y, mult) in out {
                    if let Some(t) = k.tau_of(y)? {
                        inc.push((t, mult));
                    }
                }
                for x in 0..n {
                    inc.extend(cosoc_of[x].iter().filter(|&&(m, _)| m == id).map(|&(_, mult)| (inj[x], mult)));
                }
                progressed |= settle(&mut k.entries[id].incoming, merge(inc), &dims)?;
            }
            if k.entries[id].tau_inv.is_none() {
                k.tau_inv_of(id)?;
                progressed = true;
            }
            if k.entries[id].tau.is_none() {
                k.tau_of(id)?;
                progressed = true;
            }
            let e = &k.entries[id];
            let (inc, out, t, ti) = (e.incoming.clone(), e.outgoing.clone(), e.tau.flatten(), e.tau_inv.flatten());
            if let (Some(out), Some(t)) = (out, ti) {
                let tdims = k.entries[t].module.dim_vector();
                progressed |= settle(&mut k.entries[t].incoming, out, &tdims)?;
            }
            if let (Some(inc), Some(t)) = (inc, t) {
                let tdims = k.entries[t].module.dim_vector();
                progressed |= settle(&mut k.entries[t].outgoing, inc, &tdims)?;
            }
            id += 1;
        }
        if progressed {
            continue;
        }
        // meshes say nothing about tau-periodic orbits; count irreducible maps directly
        let Some(id) = (0..k.entries.len()).find(|&i| k.entries[i].incoming.is_none()) else { break };
        let mut inc = Vec::new();
        for x in 0..k.entries.len() {
            let mult = k.irreducible(x, id)?;
            if mult > 0 {
                inc.push((x, mult));
            }
        }
        k.entries[id].incoming = Some(inc);
    }
    let stuck: Vec<Vec<usize>> = k
        .entries
        .iter()
        .filter(|e| e.incoming.is_none() || e.outgoing.is_none())
        .map(|e| e.module.dim_vector())
        .collect();
    if !stuck.is_empty() {
        return Err(KnitError::IncompleteKnit(format!("no mesh reaches {stuck:?}")));
    }

    let mut nodes: Vec<ArNode<F>> = k
        .entries
        .iter()
        .map(|e| ArNode {
            module: e.module.clone(),
            projective: None,
            injective: None,
            tau: e.tau.flatten(),
            tau_inverse: e.tau_inv.flatten(),
        })
        .collect();
    for (x, &id) in proj.iter().enumerate() {
        nodes[id].projective = Some(x);
    }
    let mut arrows = Vec::new();
    for (id, e) in k.entries.iter().enumerate() {
        for &(to, multiplicity) in e.outgoing.as_ref().unwrap() {
            arrows.push(ArArrow { from: id, to, multiplicity });
        }
    }
    let mut ar = ArQuiver { nodes, arrows };
    for (x, &id) in inj.iter().enumerate() {
        ar.nodes[id].injective = Some(x);
    }
    if let Some(id) = ar.nodes.iter().position(|n| n.tau_inverse.is_none() && n.injective.is_none()) {
        return Err(KnitError::IncompleteKnit(format!(
            "{:?} has no translate but is not injective",
            ar.nodes[id].module.dim_vector()
        )));
    }
    if let Err(id) = ar.check_meshes() {
        return Err(KnitError::IncompleteKnit(format!("mesh at {:?} is not additive", ar.nodes[id].module.dim_vector())));
    }
    Ok(ar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::quiver::parse_quiver;

    fn load(text: &str) -> BoundAlgebra<Rational> {
        BoundAlgebra::from_file(&parse_quiver(text).unwrap(), 64).unwrap()
    }

    #[test]
    fn single_vertex() {
        let ar = knit_ar_quiver(&load("vertices 1\n"), 16).unwrap();
        assert_eq!(ar.len(), 1);
    }

    #[test]
    fn a3_linear() {
        let ar = knit_ar_quiver(&load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n"), 16).unwrap();
        assert_eq!(ar.len(), 6);
    }

    #[test]
    fn d4_subspace() {
        let ar = knit_ar_quiver(&load("vertices 1 2 3 4\narrow a 2 1\narrow b 3 1\narrow c 4 1\n"), 64).unwrap();
        assert_eq!(ar.len(), 12);
    }

    #[test]
    fn kronecker_is_infinite() {
        let r = knit_ar_quiver(&load("vertices 1 2\narrow a 1 2\narrow b 1 2\n"), 20);
        assert!(matches!(r, Err(KnitError::CapExceeded { .. })));
    }

    #[test]
    fn two_zero_relations() {
        let a = load("vertices 1 2 3 4 5\narrow beta 3 1\narrow delta 3 2\narrow alpha 4 3\narrow gamma 5 3\nrelation alpha*beta\nrelation gamma*delta\n");
        let ar = knit_ar_quiver(&a, 64).unwrap();
        assert!(ar.check_meshes().is_ok());
    }

    #[test]
    fn periodic_orbits() {
        // tau-periodic simples at 1, 2, 4, 5 get their arrows from rad / rad^2
        let a = load("vertices 1 2 3 4 5\narrow beta 3 1\narrow delta 3 2\narrow alpha 4 3\narrow gamma 5 3\narrow lambda 1 4\narrow mu 2 5\nrelation alpha*beta\nrelation beta*lambda\nrelation lambda*alpha\nrelation gamma*delta\nrelation delta*mu\nrelation mu*gamma\n");
        let ar = knit_ar_quiver(&a, 64).unwrap();
        assert_eq!(ar.len(), 15);
        assert!(ar.check_meshes().is_ok());
    }
}
