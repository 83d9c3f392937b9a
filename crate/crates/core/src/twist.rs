//! Multipliers, the twisted subdivision Q and the twisted pairing δ.

use std::fmt;

use serde::Serialize;

use crate::ball::{Edge, Face, FacetedBall, Side, SignedEdge, UnionFind};
use crate::error::{Error, Result};
use crate::pairing::{cycle_of_edges, edge_cycles, FacePairing, PairSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplierFunction(Vec<u32>);

impl MultiplierFunction {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if let Some(i) = values.iter().position(|&m| m == 0) {
            return Err(Error::MissingMultiplier(i));
        }
        Ok(MultiplierFunction(values))
    }

    pub fn ones(n: usize) -> Self {
        MultiplierFunction(vec![1; n])
    }

    pub fn get(&self, cycle: usize) -> u32 {
        self.0[cycle]
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Twist direction. `Cw` precomposes each pairing map with the rotation taking every
/// corner to the one after it in word order; `Ccw` uses the one before.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum Direction {
    #[default]
    Cw,
    Ccw,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Cw => Direction::Ccw,
            Direction::Ccw => Direction::Cw,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Cw => "cw",
            Direction::Ccw => "ccw",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedBall {
    pub ball: FacetedBall,
    /// Parent edge of every Q edge.
    pub parent_edge: Vec<usize>,
    /// 1-based position along the parent, tail to head.
    pub sub_index: Vec<usize>,
    /// Q-corner position of every P-corner, per face.
    pub corner_pos: Vec<Vec<usize>>,
    /// Children per parent edge.
    pub children: Vec<usize>,
}

pub fn subdivide(ball: &FacetedBall, pairing: &FacePairing, mul: &MultiplierFunction) -> Result<SubdividedBall> {
    let cycles = edge_cycles(ball, pairing)?;
    let mut children = vec![0; ball.num_edges()];
    for c in &cycles {
        if c.index >= mul.len() {
            return Err(Error::MissingMultiplier(c.index));
        }
        for e in c.edges() {
            children[e] = c.len() * mul.get(c.index) as usize;
        }
    }
    let mut vertices = ball.vertices.clone();
    // vertex after child t of edge e, for t in 1..n
    let mut inner = vec![Vec::new(); ball.num_edges()];
    for (ei, e) in ball.edges.iter().enumerate() {
        for t in 1..children[ei] {
            inner[ei].push(vertices.len());
            vertices.push(format!("{}.{t}", e.id));
        }
    }
    let mut edges = Vec::new();
    let mut parent_edge = Vec::new();
    let mut sub_index = Vec::new();
    let mut first_child = vec![0; ball.num_edges()];
    for (ei, e) in ball.edges.iter().enumerate() {
        first_child[ei] = edges.len();
        let n = children[ei];
        for t in 1..=n {
            let tail = if t == 1 { e.tail } else { inner[ei][t - 2] };
            let head = if t == n { e.head } else { inner[ei][t - 1] };
            let id = if n == 1 { e.id.clone() } else { format!("{}:{t}", e.id) };
            edges.push(Edge { id, tail, head });
            parent_edge.push(ei);
            sub_index.push(t);
        }
    }
    let mut faces = Vec::new();
    let mut corner_pos = Vec::new();
    for f in &ball.faces {
        let mut w = Vec::new();
        let mut pos = Vec::new();
        for s in &f.word {
            pos.push(w.len());
            let n = children[s.edge];
            let run = (0..n).map(|t| SignedEdge::new(first_child[s.edge] + t, s.forward));
            if s.forward {
                w.extend(run);
            } else {
                w.extend(run.rev());
            }
        }
        faces.push(Face { id: f.id.clone(), word: w });
        corner_pos.push(pos);
    }
    let q = FacetedBall::new(ball.name.clone(), vertices, edges, faces)?;
    Ok(SubdividedBall { ball: q, parent_edge, sub_index, corner_pos, children })
}

/// The subdivided pairing ε on Q, before twisting.
pub fn lift_pairing(q: &SubdividedBall, pairing: &FacePairing) -> FacePairing {
    let pairs = pairing
        .pairs
        .iter()
        .map(|p| PairSpec { rep: p.rep, inv: p.inv, offset: q.corner_pos[p.inv][p.offset] })
        .collect();
    FacePairing::new(q.ball.num_faces(), pairs).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPairing {
    pub pairing: FacePairing,
    pub direction: Direction,
}

pub fn twist_pairing(q: &SubdividedBall, pairing: &FacePairing, direction: Direction) -> TwistedPairing {
    let lifted = lift_pairing(q, pairing);
    let pairs = lifted
        .pairs
        .iter()
        .map(|p| {
            let n = q.ball.face_len(p.rep) as i64;
            let shift = match direction {
                Direction::Cw => -1,
                Direction::Ccw => 1,
            };
            PairSpec { offset: (p.offset as i64 + shift).rem_euclid(n) as usize, ..*p }
        })
        .collect();
    TwistedPairing { pairing: FacePairing::new(q.ball.num_faces(), pairs).unwrap(), direction }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientComplex {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells3: usize,
    pub chi: i64,
    /// Quotient vertex of every ball vertex.
    pub vertex_class: Vec<usize>,
    /// Quotient edge (edge-cycle index) of every ball edge.
    pub edge_class: Vec<usize>,
}

/// Cell counts of the quotient, without judging them.
pub fn quotient_counts(ball: &FacetedBall, pairing: &FacePairing) -> Result<QuotientComplex> {
    let cycles = edge_cycles(ball, pairing)?;
    let mut uf = UnionFind::new(ball.num_vertices());
    for c in ball.sides() {
        let img = pairing.map_corner(ball, c);
        uf.union(ball.side_start(c), ball.side_start(img));
    }
    let (vertex_class, v) = uf.classes();
    let e = cycles.len();
    let f = pairing.num_pairs();
    Ok(QuotientComplex {
        vertices: v,
        edges: e,
        faces: f,
        cells3: 1,
        chi: v as i64 - e as i64 + f as i64 - 1,
        vertex_class,
        edge_class: cycle_of_edges(ball, &cycles),
    })
}

/// Quotient complex; errors unless it is a closed manifold.
pub fn quotient(ball: &FacetedBall, pairing: &FacePairing) -> Result<QuotientComplex> {
    let qc = quotient_counts(ball, pairing)?;
    if qc.chi != 0 {
        return Err(Error::NotAManifold { chi: qc.chi, vertices: qc.vertices });
    }
    Ok(qc)
}

/// Everything produced by twisting one (P, ε, mul, direction).
#[derive(Debug, Clone)]
pub struct Twisted {
    pub q: SubdividedBall,
    pub delta: TwistedPairing,
    pub quotient: QuotientComplex,
}

pub fn twist(
    ball: &FacetedBall,
    pairing: &FacePairing,
    mul: &MultiplierFunction,
    direction: Direction,
) -> Result<Twisted> {
    let q = subdivide(ball, pairing, mul)?;
    let delta = twist_pairing(&q, pairing, direction);
    let quotient = quotient(&q.ball, &delta.pairing)?;
    if quotient.vertices != 1 {
        return Err(Error::NotAManifold { chi: quotient.chi, vertices: quotient.vertices });
    }
    Ok(Twisted { q, delta, quotient })
}

impl SubdividedBall {
    /// Q-side inside face `face` that corresponds to sub-step `t` (0-based) of P-side `pos`.
    pub fn child_side(&self, face: usize, pos: usize, t: usize) -> Side {
        Side { face, pos: self.corner_pos[face][pos] + t }
    }
}
