use crate::exactlin::Field;
use crate::quiver::{enumerate_paths, Path};

use super::bound::{closure, BoundAlgebra};
use super::echelon::Echelon;
use super::element::Element;

/// One minimal relation, an element of `e_source I e_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRelation<F> {
    pub source: usize,
    pub target: usize,
    pub element: Element<F>,
    /// Leading path, the pivot that selected this relation.
    pub pivot: Path,
    /// Label inherited from an input relation with the same pivot.
    pub label: Option<String>,
}

/// A system of relations: generates the ideal, and no proper subset does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSystem<F> {
    pub relations: Vec<MinimalRelation<F>>,
}

impl<F: Field> RelationSystem<F> {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Number of relations from `x` to `y`.
    pub fn count_between(&self, x: usize, y: usize) -> usize {
        self.relations.iter().filter(|r| r.source == x && r.target == y).count()
    }
}

/// Minimal relations of `a`: preimages of a basis of `I / (rI + Ir)`,
/// selected by echelon pivots in the length-then-lex order.
///
/// The computation happens modulo paths of length `> N`, which all lie in
/// `rI + Ir` because every path of length `N` lies in `I`.
pub fn minimal_relation_system<F: Field>(a: &BoundAlgebra<F>) -> RelationSystem<F> {
    let n = a.nilpotency();
    let q = a.quiver();
    let mut gens: Vec<Element<F>> = a.relations().to_vec();
    gens.extend(enumerate_paths(q, n).into_iter().map(Element::path));
    let ideal = closure(q, &gens, n);

    let mut rad = Echelon::new();
    let arrows: Vec<Path> = (0..q.num_arrows()).map(|i| Path::arrow(q, i)).collect();
    for row in ideal.rows() {
        for p in &arrows {
            rad.insert(&row.mul_path_right(p).truncate(n));
            rad.insert(&row.mul_path_left(p).truncate(n));
        }
    }

    let labels: Vec<(Path, String)> = a
        .relations()
        .iter()
        .zip(a.labels())
        .filter_map(|(g, l)| {
            let l = l.clone()?;
            let r = rad.reduce(&g.truncate(n));
            r.leading().map(|(p, _)| (p.clone(), l))
        })
        .collect();

    let mut relations = Vec::new();
    for lead in ideal.leads() {
        if rad.is_lead(lead) {
            continue;
        }
        let element = ideal.reduced_row(lead).expect("lead of the ideal");
        let label = labels.iter().find(|(p, _)| p == lead).map(|(_, l)| l.clone());
        relations.push(MinimalRelation {
            source: lead.start(),
            target: lead.end(),
            element,
            pivot: lead.clone(),
            label,
        });
    }
    RelationSystem { relations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bound::DEFAULT_LENGTH_CAP;
    use crate::exactlin::Rational;
    use crate::quiver::parse_quiver;

    fn load(text: &str) -> BoundAlgebra<Rational> {
        let f = parse_quiver(text).unwrap();
        BoundAlgebra::from_file(&f, DEFAULT_LENGTH_CAP).unwrap()
    }

    #[test]
    fn two_zero_relations() {
        let a = load("vertices 1 2 3 4 5\narrow beta 3 1\narrow delta 3 2\narrow alpha 4 3\narrow gamma 5 3\nrelation lambda: alpha*beta\nrelation mu: gamma*delta\n");
        let r = minimal_relation_system(&a);
        assert_eq!(r.len(), 2);
        let q = a.quiver();
        let names: Vec<_> = r.relations.iter().map(|m| m.element.display(q)).collect();
        assert_eq!(names, ["alpha*beta", "gamma*delta"]);
        assert_eq!(r.relations[0].label.as_deref(), Some("lambda"));
        assert_eq!((r.relations[0].source, r.relations[0].target), (3, 0));
    }

    #[test]
    fn hereditary_has_none() {
        let a = load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
        assert!(minimal_relation_system(&a).is_empty());
    }

    #[test]
    fn commutative_square() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n");
        assert_eq!(minimal_relation_system(&a).len(), 1);
    }

    #[test]
    fn redundant_generators_dropped() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a*b\nrelation a*b*c\n");
        let r = minimal_relation_system(&a);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn implicit_relation_from_nilpotency() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a*b*c\n");
        let r = minimal_relation_system(&a);
        assert_eq!(r.len(), 1);
        assert_eq!(r.relations[0].element.display(a.quiver()), "a*b*c");
    }
}
