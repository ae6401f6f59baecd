use std::collections::{BTreeSet, HashMap};

use crate::algebra::{BoundAlgebra, Coords, Element};
use crate::exactlin::Field;
use crate::potential::{cyclic_derivative, dependency_components, Potential};
use crate::quiver::Quiver;

use super::{two_arrow_monomials, ExtensionError, RelationExtension};

/// `B = C ⋉ E'` for `E'` generated by a union of dependency components.
#[derive(Clone, Debug)]
pub struct PartialExtension<F: Field> {
    /// Kept new arrows, as arrows of `Q~`.
    pub keep: BTreeSet<usize>,
    pub dropped: BTreeSet<usize>,
    /// `W'`, the part of the potential through kept arrows.
    pub potential: Potential<F>,
    /// `Q_B`: the arrows of `Q~` without the dropped ones, in order.
    pub quiver: Quiver,
    /// Arrow of `Q_B` for each arrow of `Q~`, `None` for dropped arrows.
    pub arrow_map: Vec<Option<usize>>,
    pub relations: Vec<Element<F>>,
    pub algebra: BoundAlgebra<F>,
}

impl<F: Field> PartialExtension<F> {
    /// Arrow map `Q_B -> Q` killing the kept new arrows.
    pub fn to_base_map(&self, re: &RelationExtension<F>) -> Vec<Option<usize>> {
        let nq = re.base.quiver().num_arrows();
        (0..self.quiver.num_arrows()).map(|b| self.source_arrow(b).filter(|&a| a < nq)).collect()
    }

    /// Arrow of `Q~` behind an arrow of `Q_B`.
    pub fn source_arrow(&self, b: usize) -> Option<usize> {
        self.arrow_map.iter().position(|&m| m == Some(b))
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl<F: Field> RelationExtension<F> {
    /// The bound quiver of `B`: drop the other new arrows, bind by the
    /// derivatives of `W'`, the relations of the dropped arrows and the
    /// paths through two kept arrows.
    pub fn build_partial_extension(&self, keep: &BTreeSet<usize>) -> Result<PartialExtension<F>, ExtensionError> {
        let qt = &self.quiver;
        for &a in keep {
            if !self.is_new_arrow(a) {
                return Err(ExtensionError::NotNewArrow(qt.arrow(a).name.clone()));
            }
        }
        let comps = dependency_components(&self.potential);
        for arrows in &comps.arrows {
            let new: Vec<usize> = arrows.iter().copied().filter(|&a| self.is_new_arrow(a)).collect();
            let kept = new.iter().filter(|a| keep.contains(a)).count();
            if kept != 0 && kept != new.len() {
                return Err(ExtensionError::NotComponentAligned(qt.arrow(new[0]).name.clone()));
            }
        }
        let dropped: BTreeSet<usize> = self.new_arrows.iter().copied().filter(|a| !keep.contains(a)).collect();
        let mut qb = Quiver::new();
        for v in qt.vertex_names() {
            qb.add_vertex(v)?;
        }
        let mut arrow_map = vec![None; qt.num_arrows()];
        for (i, ar) in qt.arrows().iter().enumerate() {
            if !dropped.contains(&i) {
                arrow_map[i] = Some(qb.add_arrow_by_index(&ar.name, ar.source, ar.target)?);
            }
        }
        let cycles = self
            .potential
            .cycles()
            .filter(|c| c.arrows().iter().all(|a| !dropped.contains(a)))
            .cloned()
            .collect();
        let w1 = self.potential.restrict(&cycles);
        let vmap = identity(qt.num_vertices());
        let mut relations: Vec<Element<F>> = Vec::new();
        for b in 0..qt.num_arrows() {
            if arrow_map[b].is_some() {
                let d = cyclic_derivative(qt, &w1, b);
                if !d.is_zero() {
                    relations.push(d.map_arrows(&qb, &arrow_map, &vmap));
                }
            }
        }
        for (r, a) in self.relations.relations.iter().zip(&self.new_arrows) {
            if dropped.contains(a) {
                relations.push(r.element.map_arrows(&qb, &arrow_map, &vmap));
            }
        }
        let kept: Vec<usize> = keep.iter().copied().collect();
        for m in two_arrow_monomials::<F>(qt, &self.base, &kept) {
            relations.push(m.map_arrows(&qb, &arrow_map, &vmap));
        }
        let algebra = BoundAlgebra::build(qb.clone(), relations.clone(), self.base.length_cap())?;
        Ok(PartialExtension { keep: keep.clone(), dropped, potential: w1, quiver: qb, arrow_map, relations, algebra })
    }

    /// Checks `C~ = B ⋉ E''` on structure constants: identifying each basis
    /// path of `C~` with a basis element of `B` or of `E''`, products in `C~`
    /// agree with `(b, e)(b', e') = (bb', b e' + e b')`, where `B` multiplies
    /// by its own bound quiver and acts on `E''` through `B -> C`.
    pub fn check_trivial_extension_transitivity(&self, pe: &PartialExtension<F>) -> bool {
        let ct = &self.algebra;
        let b = &pe.algebra;
        let vmap = identity(self.quiver.num_vertices());
        let dropped_of = |i: usize| ct.basis()[i].arrows().iter().any(|a| pe.dropped.contains(a));
        let e2: Vec<usize> = (0..ct.dim()).filter(|&i| dropped_of(i)).collect();
        let e2_pos: HashMap<usize, usize> = e2.iter().enumerate().map(|(k, &i)| (i, k)).collect();

        // phi: coordinates of C~ -> (B coordinates, E'' coordinates)
        let phi = |x: &Coords<F>| -> Option<(Coords<F>, Vec<(usize, F)>)> {
            let mut bu: Vec<(usize, F)> = Vec::new();
            let mut ev = Vec::new();
            for (i, c) in x {
                if let Some(&k) = e2_pos.get(i) {
                    ev.push((k, c.clone()));
                } else {
                    let p = Element::path(ct.basis()[*i].clone()).map_arrows(&pe.quiver, &pe.arrow_map, &vmap);
                    let nf = b.coords_of(&p);
                    if nf.len() != 1 {
                        return None;
                    }
                    bu.push((nf[0].0, nf[0].1.clone() * c.clone()));
                }
            }
            Some((normalize(bu), normalize(ev)))
        };
        // B -> C -> C~: kept new arrows act by zero on E''
        let to_base = pe.to_base_map(self);
        let base_in_ct = |u: &Coords<F>| -> Coords<F> {
            let mut out = Element::zero();
            for (j, c) in u {
                let p = Element::path(b.basis()[*j].clone()).map_arrows(self.base.quiver(), &to_base, &vmap);
                out = out + p.scale(c);
            }
            ct.coords_of(&out)
        };
        let e2_in_ct = |e: &[(usize, F)]| -> Coords<F> { e.iter().map(|(k, c)| (e2[*k], c.clone())).collect() };
        let e2_coords = |x: &Coords<F>| -> Option<Vec<(usize, F)>> {
            x.iter().map(|(i, c)| e2_pos.get(i).map(|&k| (k, c.clone()))).collect::<Option<Vec<_>>>().map(normalize)
        };

        let images: Vec<Option<(Coords<F>, Vec<(usize, F)>)>> = (0..ct.dim()).map(|i| phi(&vec![(i, F::one())])).collect();
        if images.iter().any(Option::is_none) {
            return false;
        }
        // phi must be a bijection onto B + E''
        if b.dim() + e2.len() != ct.dim() {
            return false;
        }
        for i in 0..ct.dim() {
            for j in 0..ct.dim() {
                let lhs = phi(ct.basis_product(i, j));
                let (u1, e1) = images[i].clone().unwrap();
                let (u2, e2v) = images[j].clone().unwrap();
                let bb = b.mul_coords(&u1, &u2);
                let mut e = ct.mul_coords(&base_in_ct(&u1), &e2_in_ct(&e2v));
                e.extend(ct.mul_coords(&e2_in_ct(&e1), &base_in_ct(&u2)));
                let Some(ev) = e2_coords(&normalize(e)) else { return false };
                if lhs != Some((normalize(bb), ev)) {
                    return false;
                }
            }
        }
        true
    }
}

fn normalize<F: Field>(v: Vec<(usize, F)>) -> Vec<(usize, F)> {
    let mut m: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
    for (k, c) in v {
        let s = m.remove(&k).map_or(c.clone(), |d| d + c);
        if !s.is_zero() {
            m.insert(k, s);
        }
    }
    m.into_iter().collect()
}

/// Whether the arrow map induces a surjection of bound quiver algebras:
/// every arrow is sent to a parallel arrow or to zero, the relations of
/// `source` land in the ideal of `target`, and every target arrow is hit.
pub fn check_surjection<F: Field>(
    source: &BoundAlgebra<F>,
    target: &BoundAlgebra<F>,
    arrow_map: &[Option<usize>],
) -> Result<bool, ExtensionError> {
    let (sq, tq) = (source.quiver(), target.quiver());
    if sq.num_vertices() != tq.num_vertices() || arrow_map.len() != sq.num_arrows() {
        return Err(ExtensionError::IncompatibleMap("vertex or arrow count".into()));
    }
    for (i, m) in arrow_map.iter().enumerate() {
        if let Some(j) = *m {
            let (a, b) = (sq.arrow(i), tq.arrow(j));
            if (a.source, a.target) != (b.source, b.target) {
                return Err(ExtensionError::IncompatibleMap(format!("{} -> {}", a.name, b.name)));
            }
        }
    }
    let vmap = identity(sq.num_vertices());
    let into = source.relations().iter().all(|r| target.in_ideal(&r.map_arrows(tq, arrow_map, &vmap)));
    let onto = (0..tq.num_arrows()).all(|j| arrow_map.contains(&Some(j)));
    Ok(into && onto)
}
