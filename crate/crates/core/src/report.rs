//! JSON and DOT renderings of the computed objects. Every JSON report
//! carries a versioned `schema` field; object keys are sorted, so output
//! is byte-stable.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::algebra::{global_dimension_le, is_gentle, minimal_relation_system, BoundAlgebra};
use crate::exactlin::Field;
use crate::extension::{PartialExtension, RelationExtension};
use crate::potential::{dependency_components, Potential};
use crate::quiver::Quiver;
use crate::repmod::ArQuiver;
use crate::slices::{hom_witness, EmbeddedSlice, LocalSliceReport, PresectionClause, SliceCandidate};

pub fn quiver_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"name": a.name, "source": q.vertex_name(a.source), "target": q.vertex_name(a.target)}))
        .collect();
    json!({"vertices": q.vertex_names(), "arrows": arrows})
}

/// Minimal relations of `a`, displayed.
pub fn minimal_relations<F: Field>(a: &BoundAlgebra<F>) -> Vec<String> {
    minimal_relation_system(a).relations.iter().map(|r| r.element.display(a.quiver())).collect()
}

pub fn algebra_json<F: Field>(name: Option<&str>, a: &BoundAlgebra<F>) -> Value {
    let q = a.quiver();
    json!({
        "schema": "relext.algebra/1",
        "name": name,
        "field": F::label(),
        "quiver": quiver_json(q),
        "relations": minimal_relations(a),
        "dim": a.dim(),
        "basis": a.basis().iter().map(|p| p.display(q)).collect::<Vec<_>>(),
        "nilpotency": a.nilpotency(),
    })
}

pub fn check_json<F: Field>(name: Option<&str>, a: &BoundAlgebra<F>) -> Value {
    let g = global_dimension_le(a, 2);
    let q = a.quiver();
    let pds: Vec<Value> = g.projective_dims.iter().map(|d| json!(d)).collect();
    json!({
        "schema": "relext.check/1",
        "name": name,
        "field": F::label(),
        "dim": a.dim(),
        "basis_size": a.basis().len(),
        "vertices": q.num_vertices(),
        "arrows": q.num_arrows(),
        "triangular": q.is_acyclic(),
        "gldim_le_2": g.holds,
        "projective_dims_of_simples": pds,
        "gentle": is_gentle(a),
        "nilpotency": a.nilpotency(),
    })
}

fn graded_json(q: &Quiver, g: &[Vec<usize>]) -> Vec<Value> {
    let mut out = Vec::new();
    for (x, row) in g.iter().enumerate() {
        for (y, &d) in row.iter().enumerate() {
            if d > 0 {
                out.push(json!({"from": q.vertex_name(x), "to": q.vertex_name(y), "dim": d}));
            }
        }
    }
    out
}

pub fn extension_json<F: Field>(re: &RelationExtension<F>) -> Value {
    let q = &re.quiver;
    let new_arrows: Vec<Value> = re
        .relations
        .relations
        .iter()
        .zip(&re.new_arrows)
        .map(|(r, &a)| {
            let ar = q.arrow(a);
            json!({
                "name": ar.name,
                "source": q.vertex_name(ar.source),
                "target": q.vertex_name(ar.target),
                "relation": r.element.display(q),
            })
        })
        .collect();
    let basis = re.algebra.basis();
    json!({
        "schema": "relext.extension/1",
        "quiver": quiver_json(q),
        "new_arrows": new_arrows,
        "potential": re.potential.display(q),
        "e_dim": re.e_dim(),
        "e_graded": graded_json(q, &re.graded_dims()),
        "e_basis": re.e_basis.iter().map(|&i| basis[i].display(q)).collect::<Vec<_>>(),
        "dim": re.algebra.dim(),
        "relations": minimal_relations(&re.algebra),
        "cyclically_oriented": re.is_cyclically_oriented().ok(),
    })
}

fn arrow_names(q: &Quiver, arrows: &BTreeSet<usize>) -> Vec<String> {
    arrows.iter().map(|&a| q.arrow(a).name.clone()).collect()
}

/// Components of a bare potential, with no bimodule data.
pub fn potential_components_json<F: Field>(q: &Quiver, w: &Potential<F>) -> Value {
    let d = dependency_components(w);
    let comps: Vec<Value> = d
        .summands
        .iter()
        .zip(&d.arrows)
        .map(|(s, a)| json!({"potential": s.display(q), "arrows": arrow_names(q, a)}))
        .collect();
    json!({"schema": "relext.decomposition/1", "potential": w.display(q), "count": d.len(), "components": comps})
}

/// Components of the Keller potential, the bimodule each one generates,
/// and whether each component against the rest splits `E` directly.
pub fn decomposition_json<F: Field>(re: &RelationExtension<F>) -> Value {
    let q = &re.quiver;
    let d = dependency_components(&re.potential);
    let mut comps = Vec::new();
    for (k, (s, a)) in d.summands.iter().zip(&d.arrows).enumerate() {
        let rest = d
            .summands
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(Potential::zero(), |acc, (_, w)| acc.add(w));
        let split = re.induced_bimodule_decomposition(s, &rest).ok();
        comps.push(json!({
            "potential": s.display(q),
            "arrows": arrow_names(q, a),
            "bimodule_dim": split.as_ref().map(|x| x.first.dim()),
            "direct": split.as_ref().map(|x| x.is_direct()),
        }));
    }
    json!({
        "schema": "relext.decomposition/1",
        "potential": re.potential.display(q),
        "count": d.len(),
        "e_dim": re.e_dim(),
        "components": comps,
    })
}

pub fn partial_json<F: Field>(re: &RelationExtension<F>, pe: &PartialExtension<F>) -> Value {
    let q = &re.quiver;
    json!({
        "schema": "relext.partial/1",
        "kept": arrow_names(q, &pe.keep),
        "dropped": arrow_names(q, &pe.dropped),
        "potential": pe.potential.display(q),
        "algebra": algebra_json(None, &pe.algebra),
        "transitivity": re.check_trivial_extension_transitivity(pe),
    })
}

/// Bound quiver of `a` in the input file format.
pub fn quiver_text<F: Field>(name: Option<&str>, a: &BoundAlgebra<F>) -> String {
    let q = a.quiver();
    let mut out = String::new();
    if let Some(n) = name {
        writeln!(out, "algebra {n}").unwrap();
    }
    writeln!(out, "field {}", field_line::<F>()).unwrap();
    if q.num_vertices() > 0 {
        writeln!(out, "vertices {}", q.vertex_names().join(" ")).unwrap();
    }
    for ar in q.arrows() {
        writeln!(out, "arrow {} {} {}", ar.name, q.vertex_name(ar.source), q.vertex_name(ar.target)).unwrap();
    }
    for r in minimal_relations(a) {
        writeln!(out, "relation {r}").unwrap();
    }
    out
}

fn field_line<F: Field>() -> String {
    match F::characteristic() {
        0 => "Q".into(),
        p => format!("F {p}"),
    }
}

fn vertex_of(q: &Quiver, v: Option<usize>) -> Value {
    json!(v.map(|x| q.vertex_name(x)))
}

pub fn arquiver_json<F: Field>(q: &Quiver, ar: &ArQuiver<F>) -> Value {
    let nodes: Vec<Value> = ar
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "id": i,
                "dims": n.module.dim_vector(),
                "projective": vertex_of(q, n.projective),
                "injective": vertex_of(q, n.injective),
                "tau": n.tau,
                "tau_inverse": n.tau_inverse,
            })
        })
        .collect();
    let arrows: Vec<Value> = ar
        .arrows
        .iter()
        .map(|a| json!({"from": a.from, "to": a.to, "multiplicity": a.multiplicity}))
        .collect();
    json!({"schema": "relext.arquiver/1", "count": ar.len(), "nodes": nodes, "arrows": arrows})
}

pub fn dims_label(d: &[usize]) -> String {
    d.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// DOT graph of the AR quiver. Projectives are boxes, injectives
/// diamonds, modules that are both are octagons; `tau`-links are dashed.
/// Members of `highlight` are filled.
pub fn arquiver_dot<F: Field>(ar: &ArQuiver<F>, highlight: &BTreeSet<usize>) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
    for (i, n) in ar.nodes.iter().enumerate() {
        let shape = match (n.projective.is_some(), n.injective.is_some()) {
            (true, true) => "octagon",
            (true, false) => "box",
            (false, true) => "diamond",
            (false, false) => "ellipse",
        };
        let fill = if highlight.contains(&i) { ", style=filled, fillcolor=lightblue" } else { "" };
        writeln!(out, "  n{i} [label=\"{}\", shape={shape}{fill}];", dims_label(n.module.dims())).unwrap();
    }
    for a in &ar.arrows {
        let label = if a.multiplicity > 1 { format!(" [label=\"{}\"]", a.multiplicity) } else { String::new() };
        writeln!(out, "  n{} -> n{}{label};", a.from, a.to).unwrap();
    }
    for (i, n) in ar.nodes.iter().enumerate() {
        if let Some(t) = n.tau {
            writeln!(out, "  n{i} -> n{t} [style=dashed, constraint=false];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn arquiver_text<F: Field>(q: &Quiver, ar: &ArQuiver<F>) -> String {
    let mut out = format!("{} indecomposables\n", ar.len());
    for (i, n) in ar.nodes.iter().enumerate() {
        let mut flags = Vec::new();
        if let Some(x) = n.projective {
            flags.push(format!("P_{}", q.vertex_name(x)));
        }
        if let Some(x) = n.injective {
            flags.push(format!("I_{}", q.vertex_name(x)));
        }
        let succ: Vec<String> = ar.successors(i).iter().map(|(j, _)| j.to_string()).collect();
        let tau = n.tau.map_or("-".to_string(), |t| t.to_string());
        writeln!(out, "{i}: ({}) {} tau={tau} -> [{}]", dims_label(n.module.dims()), flags.join(" "), succ.join(" ")).unwrap();
    }
    out
}

fn local_report_json<F: Field>(ar: &ArQuiver<F>, r: &LocalSliceReport) -> Value {
    let dims = |i: usize| ar.nodes[i].module.dim_vector();
    let presection = r.presection.map(|v| {
        json!({
            "from": dims(v.from),
            "to": dims(v.to),
            "clause": match v.clause {
                PresectionClause::Successor => "successor",
                PresectionClause::Predecessor => "predecessor",
            },
        })
    });
    let path = r.convexity.as_ref().map(|p| p.iter().map(|&i| dims(i)).collect::<Vec<_>>());
    json!({
        "presection": r.presection.is_none(),
        "presection_witness": presection,
        "sectionally_convex": r.convexity.is_none(),
        "convexity_witness": path,
        "size": r.size,
        "rank": r.rank,
        "local_slice": r.is_local_slice(),
    })
}

pub fn slice_json<F: Field>(a: &BoundAlgebra<F>, s: &SliceCandidate<'_, F>, ar: &ArQuiver<F>) -> Value {
    let members: Vec<Vec<usize>> = s.ids().iter().map(|&i| ar.nodes[i].module.dim_vector()).collect();
    let hom = hom_witness(a, ar, s.ids()).map(|(x, y)| json!([ar.nodes[x].module.dim_vector(), ar.nodes[y].module.dim_vector()]));
    let report = s.local_slice_report();
    let complete = report.is_local_slice() && hom.is_none();
    json!({
        "schema": "relext.slice/1",
        "members": members,
        "ids": s.ids(),
        "axioms": local_report_json(ar, &report),
        "hom_to_tau_witness": hom,
        "complete": complete,
    })
}

pub fn embedding_json<F: Field>(ar_c: &ArQuiver<F>, ar_a: &ArQuiver<F>, e: &EmbeddedSlice) -> Value {
    let members: Vec<Vec<usize>> = e.c_ids.iter().map(|&i| ar_c.nodes[i].module.dim_vector()).collect();
    let tau: Vec<Value> = e
        .tau
        .iter()
        .map(|t| json!({"member": ar_c.nodes[t.member].module.dim_vector(), "tau": t.tau_ok, "tau_inverse": t.tau_inverse_ok}))
        .collect();
    json!({
        "members": members,
        "ids": e.a_ids,
        "axioms": local_report_json(ar_a, &e.report),
        "tau_comparison": tau,
        "neighbours_descend": e.neighbours_descend,
        "passes": e.passes(),
    })
}
