use std::collections::BTreeSet;

use super::*;
use crate::algebra::DEFAULT_LENGTH_CAP;
use crate::exactlin::{Rational, Subspace};
use crate::potential::dependency_components;
use crate::quiver::parse_quiver;
use crate::repmod::ext2_dc_c;

fn load(text: &str) -> BoundAlgebra<Rational> {
    BoundAlgebra::from_file(&parse_quiver(text).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
}

const TWO_ZERO: &str = include_str!("../../../../corpus/two_zero.quiver");
const DOUBLE_ARROW: &str = include_str!("../../../../corpus/double_arrow.quiver");
const KITE: &str = include_str!("../../../../corpus/kite.quiver");

fn arrow(re: &RelationExtension<Rational>, name: &str) -> usize {
    re.quiver.arrow_by_name(name).unwrap()
}

fn path(re: &RelationExtension<Rational>, names: &[&str]) -> Element<Rational> {
    let arrows: Vec<usize> = names.iter().map(|n| arrow(re, n)).collect();
    Element::path(Path::from_arrows(&re.quiver, &arrows).unwrap())
}

#[test]
fn two_triangles() {
    let re = RelationExtension::build(&load(TWO_ZERO)).unwrap();
    let l = re.quiver.arrow(arrow(&re, "lambda"));
    assert_eq!((l.source, l.target), (0, 3));
    let m = re.quiver.arrow(arrow(&re, "mu"));
    assert_eq!((m.source, m.target), (1, 4));
    let w = parse_quiver(include_str!("../../../../corpus/independent.quiver")).unwrap();
    let w = Potential::from_rational_terms(&w.quiver, w.potential.as_ref().unwrap()).unwrap();
    assert_eq!(re.potential, w);
    assert_eq!(re.e_dim(), 2);
    let g = re.graded_dims();
    assert_eq!((g[0][3], g[1][4]), (1, 1));
    assert_eq!(g.iter().flatten().sum::<usize>(), 2);
    assert_eq!(re.algebra.dim(), re.base.dim() + re.e_dim());
    assert!(re.is_cyclically_oriented().unwrap());
}

#[test]
fn graded_dims_match_ext2() {
    for text in [TWO_ZERO, DOUBLE_ARROW, KITE] {
        let c = load(text);
        let re = RelationExtension::build(&c).unwrap();
        let ext = ext2_dc_c(&c).unwrap();
        let g = re.graded_dims();
        for x in 0..g.len() {
            for y in 0..g.len() {
                assert_eq!(g[y][x], ext[x][y]);
            }
        }
    }
}

#[test]
fn hereditary_has_no_extension() {
    let c = load("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
    let re = RelationExtension::build(&c).unwrap();
    assert_eq!(re.e_dim(), 0);
    assert!(re.potential.is_zero());
    assert_eq!(re.algebra.dim(), c.dim());
}

#[test]
fn rejects_cycles_and_gldim_three() {
    let c = load("vertices 1 2\narrow a 1 2\narrow b 2 1\nrelation a*b\nrelation b*a\n");
    assert_eq!(RelationExtension::build(&c).unwrap_err(), ExtensionError::NotTriangular);
    let c = load("vertices 1 2 3 4 5\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 4 5\nrelation a*b*c\nrelation b*c*d\n");
    assert_eq!(RelationExtension::build(&c).unwrap_err(), ExtensionError::GlobalDimensionExceeded(2));
}

#[test]
fn double_arrow_bimodules() {
    let re = RelationExtension::build(&load(DOUBLE_ARROW)).unwrap();
    assert_eq!(re.e_dim(), 8);
    let g = re.subbimodule_generated(&[path(&re, &["gamma"])]).unwrap();
    let expected: Vec<_> = [&["gamma"][..], &["gamma", "lambda"], &["mu", "gamma"], &["mu", "gamma", "lambda"]]
        .iter()
        .map(|p| re.e_coords(&path(&re, p)).unwrap())
        .collect();
    assert_eq!(g.space, Subspace::span(8, &expected));
    let n = re.subbimodule_generated(&[path(&re, &["nu"])]).unwrap();
    assert_eq!(n.dim(), 4);
    assert_eq!(re.is_direct_summand(&g).unwrap().unwrap(), n);

    let d = dependency_components(&re.potential);
    let split = re.induced_bimodule_decomposition(&d.summands[0], &d.summands[1]).unwrap();
    assert!(split.is_direct());
    match re.potential_split_from_bimodule(&g, &n).unwrap() {
        PotentialSplit::Split(w1, w2) => {
            assert_eq!(w1.display(&re.quiver), "alpha*beta*gamma");
            assert_eq!(w2.display(&re.quiver), "lambda*mu*nu");
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        re.projective_injective_split(&g, &n).unwrap(),
        ProjectiveInjectiveSplit::Failure { witness: (0, 3) }
    );
}

#[test]
fn kite_generator_sum() {
    let re = RelationExtension::build(&load(KITE)).unwrap();
    assert_eq!(re.e_dim(), 8);
    let s = re.subbimodule_generated(&[path(&re, &["u"]) + path(&re, &["v"])]).unwrap();
    assert_eq!(s.dim(), 7);
    assert_eq!(re.is_direct_summand(&s).unwrap(), None);
    assert!(re.is_direct_summand(&re.full_bimodule()).unwrap().unwrap().is_zero());
}

#[test]
fn diagonal_is_not_a_bimodule() {
    let re = RelationExtension::build(&load(TWO_ZERO)).unwrap();
    let diag = re.e_coords(&(path(&re, &["lambda"]) + path(&re, &["mu"]))).unwrap();
    assert_eq!(re.bimodule(Subspace::span(2, &[diag])).unwrap_err(), ExtensionError::NotClosed);
    let l = re.subbimodule_generated(&[path(&re, &["lambda"])]).unwrap();
    let m = re.subbimodule_generated(&[path(&re, &["mu"])]).unwrap();
    assert!(matches!(re.potential_split_from_bimodule(&l, &m).unwrap(), PotentialSplit::Split(..)));
    assert!(matches!(re.projective_injective_split(&l, &m).unwrap(), ProjectiveInjectiveSplit::Split { .. }));
}

#[test]
fn partial_extensions() {
    let re = RelationExtension::build(&load(TWO_ZERO)).unwrap();
    let keep: BTreeSet<usize> = [arrow(&re, "lambda")].into();
    let pe = re.build_partial_extension(&keep).unwrap();
    let e1 = re.subbimodule_generated(&[path(&re, &["lambda"])]).unwrap();
    assert_eq!(pe.algebra.dim(), re.base.dim() + e1.dim());
    let expected = load("vertices 1 2 3 4 5\narrow beta 3 1\narrow delta 3 2\narrow alpha 4 3\narrow gamma 5 3\narrow lambda 1 4\nrelation alpha*beta\nrelation gamma*delta\nrelation lambda*alpha\nrelation beta*lambda\n");
    assert!(pe.algebra.relations().iter().all(|r| expected.in_ideal(r)));
    assert!(expected.relations().iter().all(|r| pe.algebra.in_ideal(r)));
    assert!(re.check_trivial_extension_transitivity(&pe));
    assert!(check_surjection(&re.algebra, &pe.algebra, &pe.arrow_map).unwrap());
    assert!(check_surjection(&pe.algebra, &re.base, &pe.to_base_map(&re)).unwrap());

    let none = re.build_partial_extension(&BTreeSet::new()).unwrap();
    assert_eq!(none.algebra.dim(), re.base.dim());
    let all: BTreeSet<usize> = re.new_arrows.iter().copied().collect();
    let full = re.build_partial_extension(&all).unwrap();
    assert_eq!(full.algebra.dim(), re.algebra.dim());
    assert!(re.check_trivial_extension_transitivity(&full));
}

#[test]
fn keep_must_follow_components() {
    let re = RelationExtension::build(&load("vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 2 4\nrelation x: a*b\nrelation y: a*c\n")).unwrap();
    let keep: BTreeSet<usize> = [arrow(&re, "x")].into();
    assert!(matches!(re.build_partial_extension(&keep), Err(ExtensionError::NotComponentAligned(_))));
    assert!(matches!(re.build_partial_extension(&[0].into()), Err(ExtensionError::NotNewArrow(_))));
}
