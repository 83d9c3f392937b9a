//! Faceted 3-balls: an oriented CW 2-sphere given by cyclic signed-edge words.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An edge of the boundary complex, oriented tail to head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// An edge traversal inside a face word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        SignedEdge { edge, forward }
    }

    pub fn reversed(self) -> Self {
        SignedEdge { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub word: Vec<SignedEdge>,
}

/// Word position `pos` of face `face`. As a corner it sits at the start of that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub face: usize,
    pub pos: usize,
}

pub type Corner = Side;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetedBall {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    occurrences: Vec<Vec<Side>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge does not occur exactly once with each sign.
    Orientability {
        edge: String,
        plus: usize,
        minus: usize,
    },
    /// Consecutive sides of a face do not meet.
    Endpoint {
        face: String,
        pos: usize,
    },
    EmptyFace {
        face: String,
    },
    Euler {
        chi: i64,
    },
    /// The corners around a vertex do not form a single disk link.
    VertexLink {
        vertex: String,
        links: usize,
    },
    Disconnected,
    NoEdges,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Orientability { edge, plus, minus } => {
                write!(f, "orientability: edge {edge} occurs {plus}x positive, {minus}x negative")
            }
            Violation::Endpoint { face, pos } => {
                write!(f, "endpoint: face {face} sides {pos} and {} do not meet", pos + 1)
            }
            Violation::EmptyFace { face } => write!(f, "empty face {face}"),
            Violation::Euler { chi } => write!(f, "euler: V - E + F = {chi}, expected 2"),
            Violation::VertexLink { vertex, links } => {
                write!(f, "vertex link: {vertex} has {links} corner cycles, expected 1")
            }
            Violation::Disconnected => write!(f, "disconnected: boundary complex is not connected"),
            Violation::NoEdges => write!(f, "no edges: a single vertex and face is not allowed"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: impl ToString) {
        self.violations.push(v.to_string());
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FacetedBall {
    /// Builds a ball from dense handles. Structural problems are left for [`validate_ball`];
    /// only out-of-range handles are rejected here.
    pub fn new(name: impl Into<String>, vertices: Vec<String>, edges: Vec<Edge>, faces: Vec<Face>) -> Result<Self> {
        for e in &edges {
            if e.tail >= vertices.len() || e.head >= vertices.len() {
                return Err(Error::InvalidBall(format!("edge {} has an unknown endpoint", e.id)));
            }
        }
        let mut occurrences = vec![Vec::new(); edges.len()];
        for (fi, f) in faces.iter().enumerate() {
            for (pos, s) in f.word.iter().enumerate() {
                if s.edge >= edges.len() {
                    return Err(Error::InvalidBall(format!("face {} uses an unknown edge", f.id)));
                }
                occurrences[s.edge].push(Side { face: fi, pos });
            }
        }
        Ok(FacetedBall { name: name.into(), vertices, edges, faces, occurrences })
    }

    /// Convenience constructor from ids. Face words use `+id` / `-id` tokens.
    pub fn from_ids(
        name: &str,
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
        faces: &[(&str, &[&str])],
    ) -> Result<Self> {
        let vix: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let eix: HashMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.0, i)).collect();
        let look = |m: &HashMap<&str, usize>, k: &str| {
            m.get(k).copied().ok_or_else(|| Error::Semantic(format!("undefined id {k}")))
        };
        let mut es = Vec::new();
        for (id, t, h) in edges {
            es.push(Edge { id: id.to_string(), tail: look(&vix, t)?, head: look(&vix, h)? });
        }
        let mut fs = Vec::new();
        for (id, word) in faces {
            let mut w = Vec::new();
            for tok in word.iter() {
                let (forward, name) =
                    parse_signed(tok).ok_or_else(|| Error::Semantic(format!("bad signed edge {tok}")))?;
                w.push(SignedEdge::new(look(&eix, name)?, forward));
            }
            fs.push(Face { id: id.to_string(), word: w });
        }
        FacetedBall::new(name, vertices.iter().map(|s| s.to_string()).collect(), es, fs)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face_len(&self, face: usize) -> usize {
        self.faces[face].word.len()
    }

    pub fn side(&self, s: Side) -> SignedEdge {
        self.faces[s.face].word[s.pos]
    }

    pub fn side_at(&self, face: usize, pos: i64) -> Side {
        let n = self.face_len(face) as i64;
        Side { face, pos: pos.rem_euclid(n) as usize }
    }

    /// Vertex where the side starts, i.e. the vertex of the corner at that position.
    pub fn side_start(&self, s: Side) -> usize {
        let se = self.side(s);
        let e = &self.edges[se.edge];
        if se.forward {
            e.tail
        } else {
            e.head
        }
    }

    pub fn side_end(&self, s: Side) -> usize {
        let se = self.side(s);
        let e = &self.edges[se.edge];
        if se.forward {
            e.head
        } else {
            e.tail
        }
    }

    pub fn occurrences(&self, edge: usize) -> &[Side] {
        &self.occurrences[edge]
    }

    /// The other occurrence of the side's edge.
    pub fn mate(&self, s: Side) -> Option<Side> {
        let occ = &self.occurrences[self.side(s).edge];
        if occ.len() != 2 {
            return None;
        }
        Some(if occ[0] == s { occ[1] } else { occ[0] })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn sides(&self) -> impl Iterator<Item = Side> + '_ {
        self.faces.iter().enumerate().flat_map(|(fi, f)| (0..f.word.len()).map(move |pos| Side { face: fi, pos }))
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn signed_name(&self, s: SignedEdge) -> String {
        format!("{}{}", if s.forward { '+' } else { '-' }, self.edges[s.edge].id)
    }

    /// Number of corner cycles around each vertex (rotation orbits of the combinatorial map).
    /// Only meaningful when every edge has exactly two occurrences.
    fn vertex_link_counts(&self) -> Vec<usize> {
        let mut seen: HashMap<Side, bool> = HashMap::new();
        let mut counts = vec![0; self.num_vertices()];
        for start in self.sides() {
            if seen.contains_key(&start) {
                continue;
            }
            counts[self.side_start(start)] += 1;
            // previous side of the corner, crossed to its mate, is the next corner around the vertex
            let mut c = start;
            loop {
                seen.insert(c, true);
                let prev = self.side_at(c.face, c.pos as i64 - 1);
                let next = match self.mate(prev) {
                    Some(m) => m,
                    None => break,
                };
                if next == start || seen.contains_key(&next) {
                    break;
                }
                c = next;
            }
        }
        counts
    }
}

pub(crate) fn parse_signed(tok: &str) -> Option<(bool, &str)> {
    if let Some(r) = tok.strip_prefix('+') {
        Some((true, r))
    } else if let Some(r) = tok.strip_prefix('-') {
        Some((false, r))
    } else {
        tok.strip_prefix('\u{2212}').map(|r| (false, r))
    }
}

pub fn validate_ball(ball: &FacetedBall) -> ValidationReport {
    let mut report = ValidationReport::default();
    if ball.num_edges() == 0 {
        report.push(Violation::NoEdges);
    }
    let mut paired = true;
    for (ei, e) in ball.edges.iter().enumerate() {
        let occ = ball.occurrences(ei);
        let plus = occ.iter().filter(|s| ball.side(**s).forward).count();
        let minus = occ.len() - plus;
        if plus != 1 || minus != 1 {
            paired = false;
            report.push(Violation::Orientability { edge: e.id.clone(), plus, minus });
        }
    }
    for (fi, f) in ball.faces.iter().enumerate() {
        if f.word.is_empty() {
            report.push(Violation::EmptyFace { face: f.id.clone() });
            continue;
        }
        for pos in 0..f.word.len() {
            let s = Side { face: fi, pos };
            let t = ball.side_at(fi, pos as i64 + 1);
            if ball.side_end(s) != ball.side_start(t) {
                report.push(Violation::Endpoint { face: f.id.clone(), pos });
            }
        }
    }
    let chi = ball.euler_characteristic();
    if chi != 2 {
        report.push(Violation::Euler { chi });
    }
    if !connected(ball) {
        report.push(Violation::Disconnected);
    }
    if paired && report.is_empty() {
        for (v, &links) in ball.vertex_link_counts().iter().enumerate() {
            if links != 1 {
                report.push(Violation::VertexLink { vertex: ball.vertices[v].clone(), links });
            }
        }
    }
    report
}

fn connected(ball: &FacetedBall) -> bool {
    let n = ball.num_vertices();
    if n == 0 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for e in &ball.edges {
        uf.union(e.tail, e.head);
    }
    let r = uf.find(0);
    (0..n).all(|v| uf.find(v) == r)
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense class labels in order of first appearance.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> FacetedBall {
        FacetedBall::from_ids(
            "tetra",
            &["A", "B", "C", "D"],
            &[
                ("AB", "A", "B"),
                ("BC", "B", "C"),
                ("BD", "B", "D"),
                ("AD", "A", "D"),
                ("AC", "A", "C"),
                ("CD", "C", "D"),
            ],
            &[
                ("ABC", &["+AB", "+BC", "-AC"]),
                ("ABD", &["-AB", "+AD", "-BD"]),
                ("ACD", &["+AC", "+CD", "-AD"]),
                ("BCD", &["-BC", "+BD", "-CD"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_is_valid() {
        let b = tetra();
        assert!(validate_ball(&b).is_empty(), "{}", validate_ball(&b));
        assert_eq!(b.euler_characteristic(), 2);
    }

    #[test]
    fn same_sign_twice_is_orientability_violation() {
        let mut b = tetra();
        b.faces[1].word[0].forward = true;
        let b = FacetedBall::new("bad", b.vertices, b.edges, b.faces).unwrap();
        let r = validate_ball(&b);
        assert!(r.violations.iter().any(|v| v.starts_with("orientability: edge AB")), "{r}");
    }

    #[test]
    fn mates_are_a_fixed_point_free_involution() {
        let b = tetra();
        for s in b.sides() {
            let m = b.mate(s).unwrap();
            assert_ne!(m, s);
            assert_eq!(b.mate(m), Some(s));
        }
    }

    #[test]
    fn torus_words_fail_vertex_link() {
        // a square with opposite sides glued: chi = 1 - 2 + 1 = 0, caught by euler
        let b = FacetedBall::from_ids(
            "torus",
            &["V"],
            &[("a", "V", "V"), ("b", "V", "V")],
            &[("F", &["+a", "+b", "-a", "-b"])],
        )
        .unwrap();
        let r = validate_ball(&b);
        assert!(r.violations.iter().any(|v| v.starts_with("euler")));
    }

    #[test]
    fn digon_ball_is_valid() {
        let b = FacetedBall::from_ids(
            "pinched",
            &["A", "B"],
            &[("x", "A", "B"), ("y", "A", "B")],
            &[("F", &["+x", "-y"]), ("G", &["+y", "-x"])],
        )
        .unwrap();
        assert!(validate_ball(&b).is_empty());
    }
}
