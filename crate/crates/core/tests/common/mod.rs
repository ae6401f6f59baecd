//! Corpus loading, random algebras and the checks shared by the property
//! and acceptance suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use relext::algebra::{ext2_simples_dim, global_dimension_le, minimal_relation_system, BoundAlgebra, Element, DEFAULT_LENGTH_CAP};
use relext::exactlin::{Field, Fp, Matrix, Rational, Subspace};
use relext::extension::RelationExtension;
use relext::potential::dependency_components;
use relext::quiver::{enumerate_paths, parse_quiver, Path as QPath};
use relext::repmod::{is_isomorphic_indecomposable, knit_ar_quiver, tau, ArQuiver, Representation, DEFAULT_KNIT_CAP};

pub type Q = Rational;

pub fn corpus_text(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn load_text(text: &str) -> BoundAlgebra<Q> {
    BoundAlgebra::from_file(&parse_quiver(text).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
}

pub fn load(name: &str) -> BoundAlgebra<Q> {
    load_text(&corpus_text(name))
}

/// Corpus algebras given by relations that are triangular of global dimension at most two.
pub const TILTED: [&str; 4] = ["two_zero.quiver", "double_arrow.quiver", "kite.quiver", "e6_c.quiver"];

/// Every corpus algebra with relations whose AR quiver is finite.
pub const FINITE: [&str; 9] = [
    "two_zero.quiver",
    "two_zero_b.quiver",
    "two_zero_ext.quiver",
    "double_arrow.quiver",
    "double_arrow_b.quiver",
    "kite.quiver",
    "e6_a.quiver",
    "e6_b.quiver",
    "e6_c.quiver",
];

/// A figure file: node names are composition factors, one digit per factor.
pub struct Figure {
    pub nodes: Vec<Vec<usize>>,
    pub slice: Option<Vec<Vec<usize>>>,
}

fn factors(word: &str, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for c in word.chars() {
        let v = c.to_digit(10).expect("digit") as usize;
        d[v - 1] += 1;
    }
    d
}

pub fn figure(name: &str, n: usize) -> Figure {
    let mut nodes = Vec::new();
    let mut slice = None;
    for line in corpus_text(name).lines() {
        let line = line.split('#').next().unwrap().trim();
        let mut words = line.split_whitespace();
        match words.next() {
            Some("node") => nodes.push(factors(words.next().unwrap(), n)),
            Some("slice") => slice = Some(words.map(|w| factors(w, n)).collect()),
            _ => {}
        }
    }
    Figure { nodes, slice }
}

pub fn sorted_dims(ar: &ArQuiver<Q>) -> Vec<Vec<usize>> {
    let mut d = ar.dim_vectors();
    d.sort();
    d
}

pub fn ids_with_dims(ar: &ArQuiver<Q>, dims: &[Vec<usize>]) -> Option<Vec<usize>> {
    dims.iter()
        .map(|d| {
            let ids: Vec<usize> = (0..ar.len()).filter(|&i| ar.nodes[i].module.dims() == d.as_slice()).collect();
            (ids.len() == 1).then(|| ids[0])
        })
        .collect()
}

pub fn element(a: &BoundAlgebra<Q>, text: &str) -> Element<Q> {
    let terms = relext::quiver::parse_terms(a.quiver(), text).unwrap();
    Element::from_rational_terms(&terms).unwrap()
}

/// Input text of an acyclic quiver on `n` vertices with arrows `i -> j`,
/// `i < j`, and the listed length-two zero relations.
pub fn quiver_text(n: usize, arrows: &[(usize, usize)], zero: &[(usize, usize)]) -> String {
    let mut s = String::from("vertices");
    for v in 1..=n {
        s.push_str(&format!(" {v}"));
    }
    s.push('\n');
    for (k, (i, j)) in arrows.iter().enumerate() {
        s.push_str(&format!("arrow a{k} {} {}\n", i + 1, j + 1));
    }
    for (x, y) in zero {
        s.push_str(&format!("relation a{x}*a{y}\n"));
    }
    s
}

/// Composable arrow pairs of an arrow list.
pub fn composable(arrows: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, a) in arrows.iter().enumerate() {
        for (y, b) in arrows.iter().enumerate() {
            if a.1 == b.0 {
                out.push((x, y));
            }
        }
    }
    out
}

/// Random triangular algebras: arrows `i -> j` for `i < j`, with a random
/// subset of the length-two paths set to zero.
pub fn triangular_algebra() -> impl Strategy<Value = String> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let k = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(0usize..=2, k), any::<u64>())
        })
        .prop_map(|(n, pairs, mult, seed)| {
            let arrows: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mult)
                .flat_map(|(&p, &m)| std::iter::repeat_n(p, if m == 2 { 1 } else { m }))
                .collect();
            let comp = composable(&arrows);
            let zero: Vec<(usize, usize)> = comp
                .iter()
                .enumerate()
                .filter(|(i, _)| (seed >> (i % 64)) & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let mut text = quiver_text(n, &arrows, &zero);
            // one commutativity relation between two parallel surviving paths
            if seed >> 63 == 1 {
                let free: Vec<&(usize, usize)> = comp.iter().filter(|p| !zero.contains(p)).collect();
                let ends = |p: &(usize, usize)| (arrows[p.0].0, arrows[p.1].1);
                let pair = free.iter().enumerate().find_map(|(i, p)| free[i + 1..].iter().find(|r| ends(r) == ends(p)).map(|r| (*p, *r)));
                if let Some((p, r)) = pair {
                    text.push_str(&format!("relation a{}*a{} - a{}*a{}\n", p.0, p.1, r.0, r.1));
                }
            }
            text
        })
}

/// Random orientations of trees with at most five vertices and degree at
/// most three (Dynkin of type A or D), with random zero relations.
pub fn dynkin_algebra(with_relations: bool) -> impl Strategy<Value = String> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(any::<usize>(), n), proptest::collection::vec(any::<bool>(), n), any::<u64>())
        })
        .prop_map(move |(n, parents, orient, seed)| {
            let mut degree = vec![0usize; n];
            let mut edges = Vec::new();
            for v in 1..n {
                // attach to an earlier vertex of degree below three
                let choices: Vec<usize> = (0..v).filter(|&u| degree[u] < 3).collect();
                let u = choices[parents[v] % choices.len()];
                degree[u] += 1;
                degree[v] += 1;
                edges.push(if orient[v] { (u, v) } else { (v, u) });
            }
            let mut s = String::from("vertices");
            for v in 1..=n {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
            for (k, (i, j)) in edges.iter().enumerate() {
                s.push_str(&format!("arrow a{k} {} {}\n", i + 1, j + 1));
            }
            if with_relations {
                for (i, (x, y)) in composable(&edges).into_iter().enumerate() {
                    if (seed >> (i % 64)) & 1 == 1 {
                        s.push_str(&format!("relation a{x}*a{y}\n"));
                    }
                }
            }
            s
        })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// A direct split of the potential induces a direct split of `E`, for
/// every coarsening of the dependency components.
pub fn check_direct_split(c: &BoundAlgebra<Q>) -> Result<usize, TestCaseError> {
    let re = RelationExtension::build(c).map_err(|e| fail(e.to_string()))?;
    let d = dependency_components(&re.potential);
    let mut checked = 0;
    for (w1, w2) in d.coarsenings().map_err(|e| fail(e.to_string()))? {
        let split = re.induced_bimodule_decomposition(&w1, &w2).map_err(|e| fail(e.to_string()))?;
        if !split.is_direct() {
            return Err(fail(format!("{} + {} is not direct", w1.display(&re.quiver), w2.display(&re.quiver))));
        }
        checked += 1;
    }
    Ok(checked)
}

pub fn check_relation_count(a: &BoundAlgebra<Q>) -> Result<(), TestCaseError> {
    let r = minimal_relation_system(a);
    let n = a.quiver().num_vertices();
    for x in 0..n {
        for y in 0..n {
            let (lhs, rhs) = (r.count_between(x, y), ext2_simples_dim(a, x, y));
            if lhs != rhs {
                return Err(fail(format!("relations {x}->{y}: {lhs}, Ext2 dimension {rhs}")));
            }
        }
    }
    Ok(())
}

pub fn is_gldim_two(a: &BoundAlgebra<Q>) -> bool {
    global_dimension_le(a, 2).holds
}

/// Mesh additivity, `tau tau^{-1} = id`, and the stored translate agrees
/// with a translate recomputed from a projective presentation.
pub fn check_knitted(a: &BoundAlgebra<Q>, ar: &ArQuiver<Q>) -> Result<(), TestCaseError> {
    ar.check_meshes().map_err(|id| fail(format!("mesh fails at {:?}", ar.nodes[id].module.dims())))?;
    let q = a.quiver();
    for (id, n) in ar.nodes.iter().enumerate() {
        if let Some(t) = n.tau_inverse {
            if ar.nodes[t].tau != Some(id) {
                return Err(fail(format!("tau tau^-1 differs at {:?}", n.module.dims())));
            }
        }
        if let Some(t) = n.tau {
            if ar.nodes[t].tau_inverse != Some(id) {
                return Err(fail(format!("tau^-1 tau differs at {:?}", n.module.dims())));
            }
        }
        let t = tau(a, &n.module);
        match n.tau {
            None if !t.is_zero() => return Err(fail(format!("{:?} has a translate", n.module.dims()))),
            Some(i) if !is_isomorphic_indecomposable(q, &ar.nodes[i].module, &t) => {
                return Err(fail(format!("stored translate of {:?} is wrong", n.module.dims())))
            }
            _ => {}
        }
    }
    Ok(())
}

pub fn knit(a: &BoundAlgebra<Q>) -> Result<ArQuiver<Q>, TestCaseError> {
    knit_ar_quiver(a, DEFAULT_KNIT_CAP).map_err(|e| fail(e.to_string()))
}

/// Hereditary case: `dim tau M = -[dim I] [dim P]^{-1} dim M`.
pub fn check_coxeter(a: &BoundAlgebra<Q>, ar: &ArQuiver<Q>) -> Result<(), TestCaseError> {
    let n = a.quiver().num_vertices();
    let col = |m: Representation<Q>| m.dims().iter().map(|&d| Q::integer(d as i64)).collect::<Vec<_>>();
    let p = Matrix::from_columns(n, &(0..n).map(|x| col(Representation::projective(a, x))).collect::<Vec<_>>());
    let i = Matrix::from_columns(n, &(0..n).map(|x| col(Representation::injective(a, x))).collect::<Vec<_>>());
    let phi = i.mul(&p.inverse().ok_or_else(|| fail("Cartan matrix is singular".into()))?).scale(&Q::integer(-1));
    for node in &ar.nodes {
        let Some(t) = node.tau else { continue };
        let image = phi.mul_vec(&col(node.module.clone()));
        if image != col(ar.nodes[t].module.clone()) {
            return Err(fail(format!("Coxeter image of {:?} is not {:?}", node.module.dims(), ar.nodes[t].module.dims())));
        }
    }
    Ok(())
}

/// Random element of the path algebra: integer combination of paths of length at most four.
pub fn random_element(a: &BoundAlgebra<Q>, picks: &[(usize, i64)]) -> Element<Q> {
    let q = a.quiver();
    let paths: Vec<QPath> = (0..=4).flat_map(|l| enumerate_paths(q, l)).collect();
    let mut e = Element::zero();
    for &(k, c) in picks {
        e.add_term(Q::integer(c), paths[k % paths.len()].clone());
    }
    e
}

pub fn check_normal_forms(a: &BoundAlgebra<Q>, x: &Element<Q>, y: &Element<Q>, z: &Element<Q>) -> Result<(), TestCaseError> {
    let nf = |e: &Element<Q>| a.normal_form(e);
    if nf(&nf(x)) != nf(x) {
        return Err(fail("normal form is not idempotent".into()));
    }
    if !a.in_ideal(&(x.clone() - nf(x))) {
        return Err(fail("x - nf(x) is not in the ideal".into()));
    }
    if a.multiply(x, y) != nf(&x.mul(y)) {
        return Err(fail("structure constants disagree with reduction".into()));
    }
    if a.multiply(&a.multiply(x, y), z) != a.multiply(x, &a.multiply(y, z)) {
        return Err(fail("multiplication is not associative".into()));
    }
    Ok(())
}

pub type F3 = Fp<3>;

/// All `F_3`-combinations of the vectors.
pub fn brute_span(vs: &[Vec<F3>], len: usize) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let total = 3usize.pow(vs.len() as u32);
    for mut code in 0..total {
        let mut acc = vec![F3::zero(); len];
        for v in vs {
            let c = F3::new((code % 3) as u64);
            code /= 3;
            for (a, b) in acc.iter_mut().zip(v) {
                *a = *a + c * *b;
            }
        }
        out.insert(acc.iter().map(|x| x.value()).collect());
    }
    out
}

pub fn check_subspace_dims(us: &[Vec<u64>], ws: &[Vec<u64>], len: usize) -> Result<(), TestCaseError> {
    let conv = |vs: &[Vec<u64>]| vs.iter().map(|v| v.iter().map(|&x| F3::new(x)).collect()).collect::<Vec<Vec<F3>>>();
    let (u, w) = (conv(us), conv(ws));
    let (su, sw) = (Subspace::span(len, &u), Subspace::span(len, &w));
    let (bu, bw) = (brute_span(&u, len), brute_span(&w, len));
    if bu.len() != 3usize.pow(su.dim() as u32) || bw.len() != 3usize.pow(sw.dim() as u32) {
        return Err(fail("span dimension disagrees with enumeration".into()));
    }
    let inter = bu.intersection(&bw).count();
    let s = su.sum(&sw).unwrap();
    let i = su.intersection(&sw).unwrap();
    if inter != 3usize.pow(i.dim() as u32) {
        return Err(fail("intersection dimension disagrees with enumeration".into()));
    }
    if s.dim() + i.dim() != su.dim() + sw.dim() {
        return Err(fail("dimension formula fails".into()));
    }
    let mut both = u.clone();
    both.extend(w);
    if brute_span(&both, len).len() != 3usize.pow(s.dim() as u32) {
        return Err(fail("sum dimension disagrees with enumeration".into()));
    }
    Ok(())
}

pub fn vectors(len: usize, max: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    proptest::collection::vec(proptest::collection::vec(0u64..3, len), 0..=max)
}

/// `e_x . graded . e_y` against the homological table, used by several suites.
pub fn graded_matches_ext2(re: &RelationExtension<Q>) -> bool {
    let ext = relext::repmod::ext2_dc_c(&re.base).unwrap();
    let g = re.graded_dims();
    (0..g.len()).all(|x| (0..g.len()).all(|y| g[y][x] == ext[x][y]))
}

pub fn count_by_dims(dims: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    let mut m = BTreeMap::new();
    for d in dims {
        *m.entry(d.clone()).or_insert(0) += 1;
    }
    m
}
