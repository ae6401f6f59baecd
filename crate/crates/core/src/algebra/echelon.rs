use std::collections::BTreeMap;

use crate::exactlin::Field;
use crate::quiver::Path;

use super::element::Element;

/// Sparse echelon basis of a space of path-algebra elements, indexed by the
/// leading (largest) path of each row. Rows are monic.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<Path, Element<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_lead(&self, p: &Path) -> bool {
        self.rows.contains_key(p)
    }

    pub fn leads(&self) -> impl Iterator<Item = &Path> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Element<F>> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every lead path, largest first.
    /// The remainder is supported on non-lead paths and is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &Element<F>) -> Element<F> {
        let mut work = v.clone();
        let mut rest = Element::zero();
        while let Some((p, c)) = work.pop_leading() {
            match self.rows.get(&p) {
                Some(row) => {
                    // row = p + lower terms; subtract c * (row - p)
                    for (q, d) in row.terms() {
                        if q != &p {
                            work.add_term(-(c.clone() * d.clone()), q.clone());
                        }
                    }
                }
                None => rest.add_term(c, p),
            }
        }
        rest
    }

    pub fn contains(&self, v: &Element<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns the new monic row if `v` was independent.
    pub fn insert(&mut self, v: &Element<F>) -> Option<Element<F>> {
        let r = self.reduce(v);
        let (lead, c) = r.leading()?;
        let lead = lead.clone();
        let row = r.scale(&c.inv().unwrap());
        self.rows.insert(lead, row.clone());
        Some(row)
    }

    /// The element `L - reduce(L)` for a lead `L`: the unique element of the
    /// span with lead `L` whose other terms are non-leads.
    pub fn reduced_row(&self, lead: &Path) -> Option<Element<F>> {
        if !self.is_lead(lead) {
            return None;
        }
        let l = Element::path(lead.clone());
        Some(l.clone() - self.reduce(&l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::quiver::Quiver;

    #[test]
    fn reduce_and_insert() {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "1", "2").unwrap();
        q.add_arrow("c", "1", "2").unwrap();
        let p = |i| Element::<Rational>::path(Path::arrow(&q, i));
        let mut e = Echelon::new();
        assert!(e.insert(&(p(2) - p(0))).is_some());
        assert!(e.insert(&(p(1) + p(2))).is_some());
        assert!(e.insert(&(p(1) + p(0))).is_none());
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&(p(1) + p(0))));
        let nf = e.reduce(&p(2));
        assert_eq!(nf, p(0));
        assert_eq!(e.reduced_row(&Path::arrow(&q, 1)).unwrap(), p(1) + p(0));
    }
}
