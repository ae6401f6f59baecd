use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use crate::exactlin::Field;
use crate::quiver::{Path, Quiver, RelationSpec};

/// A finite linear combination of paths in the path algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<F> {
    terms: BTreeMap<Path, F>,
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn path(p: Path) -> Self {
        Self::term(F::one(), p)
    }

    pub fn term(c: F, p: Path) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        Element { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (F, Path)>) -> Self {
        let mut e = Self::zero();
        for (c, p) in it {
            e.add_term(c, p);
        }
        e
    }

    /// Converts parsed rational coefficients into the field; `None` if some
    /// denominator vanishes there.
    pub fn from_rational_terms(terms: &[(BigRational, Path)]) -> Option<Self> {
        let mut e = Self::zero();
        for (c, p) in terms {
            e.add_term(F::from_fraction(c.numer(), c.denom())?, p.clone());
        }
        Some(e)
    }

    pub fn from_spec(spec: &RelationSpec) -> Option<Self> {
        Self::from_rational_terms(&spec.terms)
    }

    pub fn add_term(&mut self, c: F, p: Path) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> F {
        self.terms.get(p).cloned().unwrap_or_else(F::zero)
    }

    /// Largest path in the length-then-lex order.
    pub fn leading(&self) -> Option<(&Path, &F)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Path, F)> {
        self.terms.pop_last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element { terms: self.terms.iter().map(|(p, v)| (p.clone(), v.clone() * c.clone())).collect() }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &F, other: &Self) {
        for (p, v) in &other.terms {
            self.add_term(v.clone() * c.clone(), p.clone());
        }
    }

    /// Product in the path algebra (no relations): concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(a.clone() * b.clone(), pq);
                }
            }
        }
        out
    }

    pub fn mul_path_right(&self, q: &Path) -> Self {
        Element {
            terms: self.terms.iter().filter_map(|(p, c)| p.compose(q).map(|pq| (pq, c.clone()))).collect(),
        }
    }

    pub fn mul_path_left(&self, q: &Path) -> Self {
        Element {
            terms: self.terms.iter().filter_map(|(p, c)| q.compose(p).map(|qp| (qp, c.clone()))).collect(),
        }
    }

    /// Drops every term longer than `max_len`.
    pub fn truncate(&self, max_len: usize) -> Self {
        Element {
            terms: self.terms.iter().filter(|(p, _)| p.len() <= max_len).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).min().unwrap_or(0)
    }

    /// Common source and target of all terms, if they are parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.start(), first.end());
        it.all(|p| (p.start(), p.end()) == st).then_some(st)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_one())
    }

    /// The element with every path reversed, as an element of the opposite algebra.
    pub fn reversed(&self) -> Self {
        Element { terms: self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())).collect() }
    }

    /// Applies an arrow substitution; arrows mapped to `None` kill their paths.
    pub fn map_arrows(&self, target: &Quiver, map: &[Option<usize>], vertex_map: &[usize]) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            if p.is_trivial() {
                out.add_term(c.clone(), Path::trivial(vertex_map[p.start()]));
                continue;
            }
            let arrows: Option<Vec<usize>> = p.arrows().iter().map(|&a| map[a]).collect();
            if let Some(arrows) = arrows {
                if let Some(np) = Path::from_arrows(target, &arrows) {
                    out.add_term(c.clone(), np);
                }
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

impl<F: Field> Add for Element<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.axpy(&F::one(), &rhs);
        self
    }
}

impl<F: Field> Sub for Element<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.axpy(&-F::one(), &rhs);
        self
    }
}

impl<F: Field> Neg for Element<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-F::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn cancellation_and_leading() {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "1", "2").unwrap();
        let a = Element::<Rational>::path(Path::arrow(&q, 0));
        let b = Element::<Rational>::path(Path::arrow(&q, 1));
        let s = a.clone() + b.clone();
        assert_eq!(s.leading().unwrap().0, &Path::arrow(&q, 1));
        assert!((s.clone() - a - b).is_zero());
        assert_eq!(s.display(&q), "a + b");
        assert_eq!((-s).display(&q), "-a - b");
    }
}
