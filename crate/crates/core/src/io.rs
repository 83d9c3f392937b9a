//! Line-oriented input documents.
//!
//! ```text
//! ball tetra
//! vertex A B C D
//! edge AB A B
//! face ABC +AB +BC -AC
//! pair ABC ABD offset 1
//! mul edge=BC 2
//! twist cw
//! ```

use std::collections::HashMap;

use crate::ball::{parse_signed, validate_ball, Edge, Face, FacetedBall, SignedEdge};
use crate::error::{Error, Result};
use crate::pairing::{cycle_of_edges, edge_cycles, validate_pairing, FacePairing, PairSpec};
use crate::twist::{Direction, MultiplierFunction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub ball: FacetedBall,
    pub pairing: FacePairing,
    /// `mul` anchors as (edge handle, value) in input order.
    pub mul_anchors: Vec<(usize, u32)>,
    pub direction: Direction,
}

impl InputDocument {
    /// Resolves anchors to a multiplier per edge cycle, defaulting to 1.
    pub fn multipliers(&self) -> Result<MultiplierFunction> {
        let cycles = edge_cycles(&self.ball, &self.pairing)?;
        let of = cycle_of_edges(&self.ball, &cycles);
        let mut vals: Vec<Option<u32>> = vec![None; cycles.len()];
        for &(e, m) in &self.mul_anchors {
            let c = of[e];
            match vals[c] {
                Some(old) if old != m => {
                    return Err(Error::Semantic(format!(
                        "conflicting multipliers {old} and {m} for the cycle of edge {}",
                        self.ball.edges[e].id
                    )))
                }
                _ => vals[c] = Some(m),
            }
        }
        MultiplierFunction::new(vals.into_iter().map(|v| v.unwrap_or(1)).collect())
    }
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String, usize)> = Vec::new();
    let mut faces: Vec<(String, Vec<String>, usize)> = Vec::new();
    let mut pairs: Vec<(String, String, usize, usize)> = Vec::new();
    let mut muls: Vec<(String, u32, usize)> = Vec::new();
    let mut direction: Option<Direction> = None;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "ball" => {
                if toks.len() != 2 {
                    return Err(perr(ln, "expected `ball <name>`"));
                }
                if name.is_some() {
                    return Err(perr(ln, "duplicate ball line"));
                }
                name = Some(toks[1].to_string());
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(perr(ln, "expected `vertex <id>`"));
                }
                vertices.extend(toks[1..].iter().map(|s| s.to_string()));
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(perr(ln, "expected `edge <id> <tail> <head>`"));
                }
                edges.push((toks[1].into(), toks[2].into(), toks[3].into(), ln));
            }
            "face" => {
                if toks.len() < 3 {
                    return Err(perr(ln, "expected `face <id> <±edge> ...`"));
                }
                for t in &toks[2..] {
                    if parse_signed(t).map_or(true, |(_, n)| n.is_empty()) {
                        return Err(perr(ln, format!("bad signed edge `{t}`")));
                    }
                }
                faces.push((toks[1].into(), toks[2..].iter().map(|s| s.to_string()).collect(), ln));
            }
            "pair" => {
                if toks.len() != 5 || toks[3] != "offset" {
                    return Err(perr(ln, "expected `pair <f> <g> offset <k>`"));
                }
                let k = toks[4].parse::<usize>().map_err(|_| perr(ln, "offset must be a nonnegative integer"))?;
                pairs.push((toks[1].into(), toks[2].into(), k, ln));
            }
            "mul" => {
                let anchor = toks.get(1).and_then(|t| t.strip_prefix("edge="));
                match (anchor, toks.len()) {
                    (Some(e), 3) if !e.is_empty() => {
                        let m = toks[2]
                            .parse::<u32>()
                            .ok()
                            .filter(|m| *m >= 1)
                            .ok_or_else(|| perr(ln, "multiplier must be a positive integer"))?;
                        muls.push((e.into(), m, ln));
                    }
                    _ => return Err(perr(ln, "expected `mul edge=<id> <int>`")),
                }
            }
            "twist" => {
                let d = match toks.get(1) {
                    Some(&"cw") if toks.len() == 2 => Direction::Cw,
                    Some(&"ccw") if toks.len() == 2 => Direction::Ccw,
                    _ => return Err(perr(ln, "expected `twist cw|ccw`")),
                };
                if direction.is_some() {
                    return Err(perr(ln, "duplicate twist line"));
                }
                direction = Some(d);
            }
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| perr(0, "missing `ball <name>` line"))?;
    let sem = |m: String| Error::Semantic(m);
    let mut vix = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if vix.insert(v.as_str(), i).is_some() {
            return Err(sem(format!("duplicate vertex {v}")));
        }
    }
    let mut eix = HashMap::new();
    let mut es = Vec::new();
    for (i, (id, t, h, _)) in edges.iter().enumerate() {
        if eix.insert(id.as_str(), i).is_some() {
            return Err(sem(format!("duplicate edge {id}")));
        }
        let tail = *vix.get(t.as_str()).ok_or_else(|| sem(format!("undefined vertex {t}")))?;
        let head = *vix.get(h.as_str()).ok_or_else(|| sem(format!("undefined vertex {h}")))?;
        es.push(Edge { id: id.clone(), tail, head });
    }
    let mut fix = HashMap::new();
    let mut fs = Vec::new();
    for (i, (id, word, _)) in faces.iter().enumerate() {
        if fix.insert(id.as_str(), i).is_some() {
            return Err(sem(format!("duplicate face {id}")));
        }
        let mut w = Vec::new();
        for t in word {
            let (fwd, e) = parse_signed(t).unwrap();
            let ei = *eix.get(e).ok_or_else(|| sem(format!("undefined edge {e}")))?;
            w.push(SignedEdge::new(ei, fwd));
        }
        fs.push(Face { id: id.clone(), word: w });
    }
    if fs.len() % 2 == 1 {
        return Err(sem(format!("odd face count {}", fs.len())));
    }
    let ball = FacetedBall::new(name, vertices, es, fs)?;
    let mut ps = Vec::new();
    for (f, g, k, _) in &pairs {
        let rep = *fix.get(f.as_str()).ok_or_else(|| sem(format!("undefined face {f}")))?;
        let inv = *fix.get(g.as_str()).ok_or_else(|| sem(format!("undefined face {g}")))?;
        ps.push(PairSpec { rep, inv, offset: *k });
    }
    let pairing = FacePairing::new(ball.num_faces(), ps).map_err(|e| sem(e.to_string()))?;
    let mut mul_anchors = Vec::new();
    for (e, m, _) in &muls {
        let ei = *eix.get(e.as_str()).ok_or_else(|| sem(format!("undefined edge {e}")))?;
        mul_anchors.push((ei, *m));
    }
    let doc = InputDocument { ball, pairing, mul_anchors, direction: direction.unwrap_or_default() };
    // conflicts can only be seen once the cycles are known
    if validate_ball(&doc.ball).is_empty() && validate_pairing(&doc.ball, &doc.pairing).is_empty() {
        doc.multipliers()?;
    } else {
        let mut seen: HashMap<usize, u32> = HashMap::new();
        for &(e, m) in &doc.mul_anchors {
            if let Some(old) = seen.insert(e, m) {
                if old != m {
                    return Err(sem(format!("conflicting multipliers for edge {}", doc.ball.edges[e].id)));
                }
            }
        }
    }
    Ok(doc)
}

/// Canonical text form. `parse_input(&emit_input(d))` reproduces `d`.
pub fn emit_input(doc: &InputDocument) -> String {
    let b = &doc.ball;
    let mut out = format!("ball {}\n", b.name);
    for v in &b.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in &b.edges {
        out.push_str(&format!("edge {} {} {}\n", e.id, b.vertices[e.tail], b.vertices[e.head]));
    }
    for f in &b.faces {
        let w: Vec<String> = f.word.iter().map(|s| b.signed_name(*s)).collect();
        out.push_str(&format!("face {} {}\n", f.id, w.join(" ")));
    }
    for p in &doc.pairing.pairs {
        out.push_str(&format!("pair {} {} offset {}\n", b.faces[p.rep].id, b.faces[p.inv].id, p.offset));
    }
    for (e, m) in &doc.mul_anchors {
        out.push_str(&format!("mul edge={} {m}\n", b.edges[*e].id));
    }
    out.push_str(&format!("twist {}\n", doc.direction));
    out
}

/// A document whose anchors are the first edge of every cycle.
pub fn document_with_multipliers(
    ball: FacetedBall,
    pairing: FacePairing,
    mul: &MultiplierFunction,
    direction: Direction,
) -> Result<InputDocument> {
    let cycles = edge_cycles(&ball, &pairing)?;
    let mul_anchors = cycles.iter().map(|c| (c.steps[0].edge, mul.get(c.index))).collect();
    Ok(InputDocument { ball, pairing, mul_anchors, direction })
}
