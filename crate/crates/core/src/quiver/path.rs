use std::cmp::Ordering;

use super::graph::Quiver;

/// A path in a quiver, composed left to right: `ab` means `a` then `b`.
///
/// Trivial paths carry their vertex in `start == end`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = q.arrow(a);
        Path { start: arr.source, end: arr.target, arrows: vec![a] }
    }

    /// Builds a path from an arrow sequence, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Self> {
        let (&first, rest) = arrows.split_first()?;
        let mut p = Path::arrow(q, first);
        for &a in rest {
            p = p.compose(&Path::arrow(q, a))?;
        }
        Some(p)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    /// Subpath of arrows `[i, j)`, starting at the source of arrow `i`.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> Path {
        if i == j {
            let v = if i == 0 {
                self.start
            } else {
                q.arrow(self.arrows[i - 1]).target
            };
            return Path::trivial(v);
        }
        Path::from_arrows(q, &self.arrows[i..j]).expect("subpath of a path")
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.arrows.contains(&a)
    }

    pub fn is_closed(&self) -> bool {
        !self.arrows.is_empty() && self.start == self.end
    }

    /// The same path read backwards in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { start: self.end, end: self.start, arrows }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.start))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length first, then arrow indices lexicographically, then the anchor vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

/// An oriented cycle stored in its lexicographically minimal rotation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cycle {
    arrows: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes a closed path; `None` if the path is not closed.
    pub fn new(p: &Path) -> Option<Self> {
        if !p.is_closed() {
            return None;
        }
        Some(Cycle { arrows: min_rotation(p.arrows()) })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn to_path(&self, q: &Quiver) -> Path {
        Path::from_arrows(q, &self.arrows).expect("cycle is a path")
    }

    /// All rotations, starting with the canonical one.
    pub fn rotations(&self) -> Vec<Vec<usize>> {
        let n = self.arrows.len();
        (0..n)
            .map(|i| {
                let mut r = self.arrows[i..].to_vec();
                r.extend_from_slice(&self.arrows[..i]);
                r
            })
            .collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.to_path(q).display(q)
    }
}

fn min_rotation(a: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut best: Option<Vec<usize>> = None;
    for i in 0..n {
        let mut r = a[i..].to_vec();
        r.extend_from_slice(&a[..i]);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.unwrap_or_default()
}

/// All paths of exactly `length` arrows, sorted by arrow sequence.
/// Length 0 yields one trivial path per vertex.
pub fn enumerate_paths(q: &Quiver, length: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    for _ in 0..length {
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.arrows_from(p.end()) {
                next.push(p.compose(&Path::arrow(q, a)).unwrap());
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Quiver {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "2", "3").unwrap();
        q.add_arrow("c", "3", "1").unwrap();
        q
    }

    #[test]
    fn composition_is_left_to_right() {
        let q = triangle();
        let a = Path::arrow(&q, 0);
        let b = Path::arrow(&q, 1);
        assert!(a.compose(&b).is_some());
        assert!(b.compose(&a).is_none());
        let e1 = Path::trivial(0);
        assert_eq!(e1.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&Path::trivial(1)).unwrap(), a);
    }

    #[test]
    fn canonical_rotation() {
        let q = triangle();
        let abc = Path::from_arrows(&q, &[0, 1, 2]).unwrap();
        let bca = Path::from_arrows(&q, &[1, 2, 0]).unwrap();
        assert_eq!(Cycle::new(&abc), Cycle::new(&bca));
        assert_eq!(Cycle::new(&bca).unwrap().arrows(), &[0, 1, 2]);
        assert!(Cycle::new(&Path::arrow(&q, 0)).is_none());
    }

    #[test]
    fn enumerate_lengths() {
        let q = triangle();
        assert_eq!(enumerate_paths(&q, 0).len(), 3);
        assert_eq!(enumerate_paths(&q, 2).len(), 3);
        let mut a2 = Quiver::new();
        a2.add_vertex("1").unwrap();
        a2.add_vertex("2").unwrap();
        a2.add_arrow("a", "1", "2").unwrap();
        assert!(enumerate_paths(&a2, 2).is_empty());
    }

    #[test]
    fn order_is_length_then_lex() {
        let q = triangle();
        let e = Path::trivial(2);
        let a = Path::arrow(&q, 0);
        let ab = Path::from_arrows(&q, &[0, 1]).unwrap();
        let c = Path::arrow(&q, 2);
        assert!(e < a && a < c && c < ab);
    }
}
