//! Corner-encoded face-pairings and edge cycles.

use std::fmt;

use crate::ball::{FacetedBall, Side, ValidationReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairSpec {
    /// Representative face f.
    pub rep: usize,
    /// Its partner f⁻¹.
    pub inv: usize,
    /// Corner i of f goes to corner (k - i) mod n of f⁻¹.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePairing {
    pub pairs: Vec<PairSpec>,
    /// For each face, (pair index, is representative).
    slot: Vec<Option<(usize, bool)>>,
}

impl FacePairing {
    /// Records the pairs. Totality and length agreement are checked by [`validate_pairing`].
    pub fn new(num_faces: usize, pairs: Vec<PairSpec>) -> Result<Self> {
        let mut slot = vec![None; num_faces];
        for (pi, p) in pairs.iter().enumerate() {
            for (face, rep) in [(p.rep, true), (p.inv, false)] {
                if face >= num_faces {
                    return Err(Error::InvalidPairing(format!("pair {} names an unknown face", pi + 1)));
                }
                if slot[face].is_some() {
                    return Err(Error::InvalidPairing(format!("face handle {face} is paired twice")));
                }
                slot[face] = Some((pi, rep));
            }
        }
        Ok(FacePairing { pairs, slot })
    }

    pub fn from_ids(ball: &FacetedBall, pairs: &[(&str, &str, usize)]) -> Result<Self> {
        let mut ps = Vec::new();
        for (f, g, k) in pairs {
            let rep = ball.face_index(f).ok_or_else(|| Error::Semantic(format!("undefined face {f}")))?;
            let inv = ball.face_index(g).ok_or_else(|| Error::Semantic(format!("undefined face {g}")))?;
            ps.push(PairSpec { rep, inv, offset: *k });
        }
        FacePairing::new(ball.num_faces(), ps)
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn slot(&self, face: usize) -> Option<(usize, bool)> {
        self.slot[face]
    }

    pub fn partner(&self, face: usize) -> Option<usize> {
        self.slot[face].map(|(p, rep)| if rep { self.pairs[p].inv } else { self.pairs[p].rep })
    }

    /// Offset of the corner map leaving `face`. The inverse map has the same offset.
    pub fn offset_from(&self, face: usize) -> Option<usize> {
        self.slot[face].map(|(p, _)| self.pairs[p].offset)
    }

    /// Image of a corner under the pairing map out of its face.
    pub fn map_corner(&self, ball: &FacetedBall, c: Side) -> Side {
        let g = self.partner(c.face).expect("unpaired face");
        let k = self.offset_from(c.face).unwrap() as i64;
        ball.side_at(g, k - c.pos as i64)
    }

    /// Image of a side: side i goes to side k - 1 - i, traversed backwards.
    pub fn map_side(&self, ball: &FacetedBall, s: Side) -> Side {
        let g = self.partner(s.face).expect("unpaired face");
        let k = self.offset_from(s.face).unwrap() as i64;
        ball.side_at(g, k - 1 - s.pos as i64)
    }

    /// The same pairing with the representative of pair `p` swapped.
    pub fn swap_representative(&self, p: usize) -> FacePairing {
        let mut pairs = self.pairs.clone();
        let s = pairs[p];
        pairs[p] = PairSpec { rep: s.inv, inv: s.rep, offset: s.offset };
        FacePairing::new(self.slot.len(), pairs).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStep {
    /// The side mapped out of at this step.
    pub side: Side,
    pub edge: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCycle {
    pub index: usize,
    pub steps: Vec<CycleStep>,
}

impl EdgeCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.edge)
    }
}

pub fn validate_pairing(ball: &FacetedBall, pairing: &FacePairing) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (fi, f) in ball.faces.iter().enumerate() {
        if pairing.slot.len() != ball.num_faces() {
            report.push("pairing: face count differs from the ball");
            return report;
        }
        if pairing.slot(fi).is_none() {
            report.push(format!("pairing: face {} is unpaired", f.id));
        }
    }
    for (pi, p) in pairing.pairs.iter().enumerate() {
        if p.rep == p.inv {
            report.push(format!("pairing: pair {} maps face {} to itself", pi + 1, ball.faces[p.rep].id));
        }
        let (n, m) = (ball.face_len(p.rep), ball.face_len(p.inv));
        if n != m {
            report.push(format!(
                "pairing: faces {} and {} have lengths {n} and {m}",
                ball.faces[p.rep].id, ball.faces[p.inv].id
            ));
        } else if p.offset >= n {
            report.push(format!("pairing: offset {} out of range for pair {}", p.offset, pi + 1));
        }
    }
    if !report.is_empty() {
        return report;
    }
    if let Err(e) = edge_cycles(ball, pairing) {
        report.push(format!("compatibility: {e}"));
    }
    report
}

/// Traverses edge cycles from the smallest uncovered edge handle.
pub fn edge_cycles(ball: &FacetedBall, pairing: &FacePairing) -> Result<Vec<EdgeCycle>> {
    let mut cycle_of = vec![usize::MAX; ball.num_edges()];
    let mut cycles = Vec::new();
    for e in 0..ball.num_edges() {
        if cycle_of[e] != usize::MAX {
            continue;
        }
        let start = *ball
            .occurrences(e)
            .first()
            .ok_or_else(|| Error::InvalidBall(format!("edge {} is not used", ball.edges[e].id)))?;
        let index = cycles.len();
        let mut steps = Vec::new();
        let mut cur = start;
        loop {
            let edge = ball.side(cur).edge;
            if cycle_of[edge] == index {
                return Err(Error::Compatibility { edge: ball.edges[edge].id.clone() });
            }
            cycle_of[edge] = index;
            steps.push(CycleStep { side: cur, edge, face: cur.face });
            let image = pairing.map_side(ball, cur);
            cur = ball.mate(image).ok_or_else(|| Error::InvalidBall("edge without two occurrences".into()))?;
            if cur == start {
                break;
            }
            if steps.len() > 2 * ball.num_edges() {
                return Err(Error::Compatibility { edge: ball.edges[e].id.clone() });
            }
        }
        cycles.push(EdgeCycle { index, steps });
    }
    Ok(cycles)
}

/// Cycle index of every edge.
pub fn cycle_of_edges(ball: &FacetedBall, cycles: &[EdgeCycle]) -> Vec<usize> {
    let mut out = vec![0; ball.num_edges()];
    for c in cycles {
        for e in c.edges() {
            out[e] = c.index;
        }
    }
    out
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Name of the map out of `face`, e.g. `ε₂` or `ε₂⁻¹`.
pub fn map_label(pairing: &FacePairing, face: usize) -> String {
    let (p, rep) = pairing.slot(face).expect("unpaired face");
    format!("ε{}{}", subscript(p + 1), if rep { "" } else { "⁻¹" })
}

/// Arrow notation, for example `BC -ε₁-> BD -ε₂⁻¹-> AD -ε₁⁻¹-> AC -ε₂-> BC`.
pub fn cycle_diagram(ball: &FacetedBall, pairing: &FacePairing, cycle: &EdgeCycle) -> String {
    let mut out = String::new();
    for st in &cycle.steps {
        out.push_str(&ball.edges[st.edge].id);
        out.push_str(&format!(" -{}-> ", map_label(pairing, st.face)));
    }
    if let Some(first) = cycle.steps.first() {
        out.push_str(&ball.edges[first.edge].id);
    }
    out
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} offset {}", self.rep, self.inv, self.offset)
    }
}
