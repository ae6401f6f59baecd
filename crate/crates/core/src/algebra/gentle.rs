use crate::exactlin::Field;
use crate::quiver::Path;

use super::bound::BoundAlgebra;
use super::element::Element;
use super::relations::minimal_relation_system;

/// Gentle bound quiver: monomial length-2 minimal relations, at most two
/// arrows in and out of each vertex, and for every arrow at most one
/// continuation (and at most one killed continuation) on each side.
pub fn is_gentle<F: Field>(a: &BoundAlgebra<F>) -> bool {
    let sys = minimal_relation_system(a);
    if !sys.relations.iter().all(|r| r.element.is_monomial() && r.pivot.len() == 2) {
        return false;
    }
    let q = a.quiver();
    for v in 0..q.num_vertices() {
        if q.arrows_from(v).len() > 2 || q.arrows_to(v).len() > 2 {
            return false;
        }
    }
    let killed = |b: usize, c: usize| {
        let p = Path::from_arrows(q, &[b, c]).expect("composable");
        a.in_ideal(&Element::path(p))
    };
    for b in 0..q.num_arrows() {
        let after = q.arrows_from(q.arrow(b).target);
        let before = q.arrows_to(q.arrow(b).source);
        let dead_after = after.iter().filter(|&&c| killed(b, c)).count();
        let dead_before = before.iter().filter(|&&c| killed(c, b)).count();
        if dead_after > 1 || after.len() - dead_after > 1 || dead_before > 1 || before.len() - dead_before > 1 {
            return false;
        }
    }
    true
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
    fn oriented_triangle_is_gentle() {
        let a = load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\nrelation a*b\nrelation b*c\nrelation c*a\n");
        assert!(is_gentle(&a));
    }

    #[test]
    fn binomial_is_not_gentle() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n");
        assert!(!is_gentle(&a));
    }

    #[test]
    fn three_arrows_out_is_not_gentle() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 1 3\narrow c 1 4\n");
        assert!(!is_gentle(&a));
    }

    #[test]
    fn two_continuations_is_not_gentle() {
        let a = load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 2 4\n");
        assert!(!is_gentle(&a));
    }
}
