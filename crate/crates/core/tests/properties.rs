mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn direct_potential_split_gives_direct_bimodule_split(text in triangular_algebra()) {
        let c = load_text(&text);
        prop_assume!(is_gldim_two(&c));
        check_direct_split(&c)?;
    }

    #[test]
    fn minimal_relations_count_ext2(text in triangular_algebra()) {
        check_relation_count(&load_text(&text))?;
    }

    #[test]
    fn knitted_quiver_is_consistent(text in dynkin_algebra(true)) {
        let a = load_text(&text);
        let ar = knit(&a)?;
        check_knitted(&a, &ar)?;
    }

    #[test]
    fn hereditary_translate_is_coxeter(text in dynkin_algebra(false)) {
        let a = load_text(&text);
        let ar = knit(&a)?;
        check_coxeter(&a, &ar)?;
    }

    #[test]
    fn normal_forms(
        text in triangular_algebra(),
        x in proptest::collection::vec((any::<usize>(), -3i64..=3), 0..6),
        y in proptest::collection::vec((any::<usize>(), -3i64..=3), 0..6),
        z in proptest::collection::vec((any::<usize>(), -3i64..=3), 0..6),
    ) {
        let a = load_text(&text);
        check_normal_forms(&a, &random_element(&a, &x), &random_element(&a, &y), &random_element(&a, &z))?;
    }

    #[test]
    fn subspace_dimensions(u in vectors(4, 4), w in vectors(4, 4)) {
        check_subspace_dims(&u, &w, 4)?;
    }
}
