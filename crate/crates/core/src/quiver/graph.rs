use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("more than {0} chordless cycles")]
    CycleCapExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and named arrows.
#[derive(Clone, Debug, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), i);
        self.out_arrows.push(Vec::new());
        self.in_arrows.push(Vec::new());
        Ok(i)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize, QuiverError> {
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        self.add_arrow_by_index(name, s, t)
    }

    pub fn add_arrow_by_index(&mut self, name: &str, source: usize, target: usize) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        let i = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        self.arrow_index.insert(name.to_string(), i);
        self.out_arrows[source].push(i);
        self.in_arrows[target].push(i);
        Ok(i)
    }

    pub fn vertex(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn arrows_to(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    /// The quiver with every arrow reversed; indices are preserved.
    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v).unwrap();
        }
        for a in &self.arrows {
            q.add_arrow_by_index(&a.name, a.target, a.source).unwrap();
        }
        q
    }

    /// The quiver with the given arrows removed; returns the index map
    /// old arrow -> new arrow.
    pub fn without_arrows(&self, drop: &[usize]) -> (Quiver, Vec<Option<usize>>) {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v).unwrap();
        }
        let mut map = vec![None; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            if !drop.contains(&i) {
                map[i] = Some(q.add_arrow_by_index(&a.name, a.source, a.target).unwrap());
            }
        }
        (q, map)
    }

    /// True iff there is no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_arrows[v].len()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }

    /// Undirected edge multiplicities between distinct vertices, ignoring loops.
    fn edges_between(&self, x: usize, y: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| (a.source == x && a.target == y) || (a.source == y && a.target == x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Chordless cycles of the underlying graph, each tagged with whether it
    /// is oriented. A loop is a 1-cycle; a pair of vertices joined by exactly
    /// two edges is a 2-cycle. A parallel edge counts as a chord.
    pub fn chordless_cycles(&self, cap: usize) -> Result<Vec<ChordlessCycle>, QuiverError> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source == a.target {
                out.push(ChordlessCycle { vertices: vec![a.source], arrows: vec![i], oriented: true });
            }
        }
        let mut mult = vec![vec![0usize; n]; n];
        for a in &self.arrows {
            if a.source != a.target {
                mult[a.source][a.target] += 1;
                mult[a.target][a.source] += 1;
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if mult[x][y] == 2 {
                    let e = self.edges_between(x, y);
                    let oriented = self.arrows[e[0]].source != self.arrows[e[1]].source;
                    out.push(ChordlessCycle { vertices: vec![x, y], arrows: e, oriented });
                }
            }
        }
        let adj = |u: usize, v: usize| mult[u][v] > 0;
        // Induced cycles of length >= 3 through single edges, rooted at their
        // minimal vertex and deduplicated by direction.
        for s in 0..n {
            let mut path = vec![s];
            let mut found: Vec<Vec<usize>> = Vec::new();
            self.extend_cycle(s, &mut path, &mult, &adj, &mut found, cap)?;
            for vs in found {
                let k = vs.len();
                let mut arrows = Vec::with_capacity(k);
                let mut forward = true;
                let mut backward = true;
                for i in 0..k {
                    let (u, v) = (vs[i], vs[(i + 1) % k]);
                    let e = self.edges_between(u, v)[0];
                    if self.arrows[e].source == u {
                        backward = false;
                    } else {
                        forward = false;
                    }
                    arrows.push(e);
                }
                out.push(ChordlessCycle { vertices: vs, arrows, oriented: forward || backward });
                if out.len() > cap {
                    return Err(QuiverError::CycleCapExceeded(cap));
                }
            }
        }
        Ok(out)
    }

    fn extend_cycle(
        &self,
        s: usize,
        path: &mut Vec<usize>,
        mult: &[Vec<usize>],
        adj: &dyn Fn(usize, usize) -> bool,
        found: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), QuiverError> {
        let last = *path.last().unwrap();
        for w in s + 1..self.num_vertices() {
            if mult[last][w] != 1 || path.contains(&w) {
                continue;
            }
            // w may touch only `last` and possibly the root among path vertices.
            let interior: &[usize] = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[] };
            if interior.iter().any(|&u| adj(u, w)) {
                continue;
            }
            if path.len() >= 2 && adj(s, w) {
                if mult[s][w] == 1 && path[1] < w {
                    let mut c = path.clone();
                    c.push(w);
                    found.push(c);
                    if found.len() > cap {
                        return Err(QuiverError::CycleCapExceeded(cap));
                    }
                }
                continue;
            }
            if path.len() == 1 || !adj(s, w) {
                path.push(w);
                self.extend_cycle(s, path, mult, adj, found, cap)?;
                path.pop();
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordlessCycle {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
    pub oriented: bool,
}

pub const DEFAULT_CYCLE_CAP: usize = 10_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        let mut q = Quiver::new();
        for v in vs {
            q.add_vertex(v).unwrap();
        }
        for (n, s, t) in arrows {
            q.add_arrow(n, s, t).unwrap();
        }
        q
    }

    #[test]
    fn duplicate_and_unknown_names() {
        let mut q = quiver(&["1", "2"], &[("a", "1", "2")]);
        assert!(matches!(q.add_vertex("1"), Err(QuiverError::DuplicateVertex(_))));
        assert!(matches!(q.add_arrow("a", "2", "1"), Err(QuiverError::DuplicateArrow(_))));
        assert!(matches!(q.add_arrow("b", "2", "9"), Err(QuiverError::UnknownVertex(_))));
    }

    #[test]
    fn acyclicity() {
        assert!(quiver(&["1"], &[]).is_acyclic());
        assert!(quiver(&["1", "2"], &[("a", "1", "2")]).is_acyclic());
        assert!(!quiver(&["1"], &[("l", "1", "1")]).is_acyclic());
        let b = quiver(
            &["1", "2", "3", "4"],
            &[("alpha", "4", "2"), ("beta", "2", "1"), ("gamma", "1", "4"), ("lambda", "4", "3"), ("mu", "3", "1")],
        );
        assert!(!b.is_acyclic());
    }

    #[test]
    fn tree_has_no_cycles() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        assert!(q.chordless_cycles(DEFAULT_CYCLE_CAP).unwrap().is_empty());
    }

    #[test]
    fn two_cycle_and_mixed_square() {
        // x <-> y plus a square 1-2-3-4 with mixed orientation
        let q = quiver(
            &["x", "y", "1", "2", "3", "4"],
            &[
                ("p", "x", "y"),
                ("q", "y", "x"),
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "4", "3"),
                ("d", "1", "4"),
            ],
        );
        let cycles = q.chordless_cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].vertices, vec![0, 1]);
        assert!(cycles[0].oriented);
        assert_eq!(cycles[1].vertices.len(), 4);
        assert!(!cycles[1].oriented);
    }

    #[test]
    fn chord_kills_square() {
        // square 1-2-3-4 with diagonal 3->1: only the two triangles remain,
        // and only 1-2-3 can be traversed along its arrows
        let q = quiver(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1"), ("e", "3", "1")],
        );
        let cycles = q.chordless_cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.vertices.len() == 3));
        assert_eq!(cycles.iter().filter(|c| c.oriented).count(), 1);
    }

    #[test]
    fn opposite_reverses() {
        let q = quiver(&["1", "2"], &[("a", "1", "2")]);
        let o = q.opposite();
        assert_eq!(o.arrow(0).source, 1);
        assert_eq!(o.arrow(0).target, 0);
    }
}
