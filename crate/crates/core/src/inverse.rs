//! From a Heegaard diagram back to a faceted ball with face-pairing, and for integral
//! diagrams to the untwisted model with multipliers.

use std::collections::HashMap;

use crate::ball::{validate_ball, Edge, Face, FacetedBall, SignedEdge, UnionFind};
use crate::cylinders::{cylinder_decomposition, horizontal_structure, integrality, CylinderDecomposition};
use crate::error::{Error, Result};
use crate::heegaard::{crossing_of, dart, diagram_isomorphic, port_of, twisted_surface, HeegaardDiagram};
use crate::pairing::{edge_cycles, FacePairing, PairSpec};
use crate::twist::{quotient_counts, twist, Direction, MultiplierFunction};

#[derive(Debug, Clone)]
pub struct Model {
    pub ball: FacetedBall,
    pub pairing: FacePairing,
    pub multipliers: MultiplierFunction,
    pub direction: Direction,
    /// Whether twisting the model reproduces the input diagram.
    pub retwist_isomorphic: bool,
}

#[derive(Debug, Clone)]
pub struct RecoveredPairing {
    pub ball: FacetedBall,
    pub pairing: FacePairing,
    pub model: Option<Model>,
}

/// Faces of P are the two sides of every vertical curve, edges are dual to diagonal edges
/// and vertices are the faces of the diagram.
pub fn invert(d: &HeegaardDiagram) -> Result<RecoveredPairing> {
    let (face_of, nfaces) = d.face_of_darts();
    // face holding the sector between ports r and r + 1
    let sector = |c: usize, r: usize| face_of[dart(c, r + 1)];
    let vertices: Vec<String> = (0..nfaces).map(|f| format!("s{f}")).collect();
    let mut edges = Vec::new();
    let mut edge_of = vec![usize::MAX; d.num_darts()];
    for x in (0..d.num_darts()).filter(|x| port_of(*x) % 2 == 1) {
        let y = d.link(x);
        if x < y {
            let (c, r) = (crossing_of(x), port_of(x));
            edge_of[x] = edges.len();
            edge_of[y] = edges.len();
            edges.push(Edge { id: format!("k{}", edges.len()), tail: sector(c, r), head: sector(c, r + 3) });
        }
    }
    let occurrence = |x: usize| SignedEdge::new(edge_of[x], x < d.link(x));
    let mut faces = Vec::new();
    let mut pairs = Vec::new();
    for (i, cur) in d.vertical_curves().iter().enumerate() {
        let left: Vec<SignedEdge> = cur.iter().map(|v| occurrence(dart(v.crossing, v.exit + 1))).collect();
        let right: Vec<SignedEdge> = cur.iter().rev().map(|v| occurrence(dart(v.crossing, v.exit + 3))).collect();
        pairs.push(PairSpec { rep: faces.len(), inv: faces.len() + 1, offset: 0 });
        faces.push(Face { id: format!("L{i}"), word: left });
        faces.push(Face { id: format!("R{i}"), word: right });
    }
    let ball = FacetedBall::new(d.name.clone(), vertices, edges, faces)?;
    let report = validate_ball(&ball);
    if !report.is_empty() {
        return Err(Error::InversionInconsistent(report.to_string()));
    }
    let pairing = FacePairing::new(ball.num_faces(), pairs)?;
    let qc = quotient_counts(&ball, &pairing)?;
    if qc.vertices != 1 || qc.chi != 0 {
        return Err(Error::InversionInconsistent(format!("quotient has {} vertices and chi {}", qc.vertices, qc.chi)));
    }
    Ok(RecoveredPairing { ball, pairing, model: None })
}

/// Diagram faces that lie inside a Heegaard cylinder. One gluing of every cyclic cylinder
/// is kept as a boundary so that each cylinder contributes at least one vertex.
fn interior_faces(d: &HeegaardDiagram, dec: &CylinderDecomposition) -> Vec<bool> {
    let hs = horizontal_structure(d);
    let (face_of, nfaces) = d.face_of_darts();
    let mut simple_of_curve = vec![usize::MAX; hs.curves.len()];
    for (i, s) in dec.simple.iter().enumerate() {
        simple_of_curve[s.ends.0] = i;
        simple_of_curve[s.ends.1] = i;
    }
    let mut heegaard_of_simple = vec![usize::MAX; dec.simple.len()];
    for (h, hc) in dec.heegaard.iter().enumerate() {
        for &s in &hc.simple {
            heegaard_of_simple[s] = h;
        }
    }
    let mut glued = HashMap::new();
    let mut cut = vec![None; dec.heegaard.len()];
    for (gi, &(a, b)) in dec.gluings.iter().enumerate() {
        let h = heegaard_of_simple[simple_of_curve[a]];
        if dec.heegaard[h].cyclic && cut[h].is_none() {
            cut[h] = Some(gi);
            continue;
        }
        glued.insert((a.min(b), a.max(b)), ());
    }
    let mut segs: Vec<Vec<usize>> = vec![Vec::new(); nfaces];
    for (s, &x) in hs.segments.iter().enumerate() {
        segs[face_of[x]].push(s);
    }
    (0..nfaces)
        .map(|f| {
            if segs[f].len() != 2 || d.faces()[f].len() != 4 {
                return false;
            }
            let (a, b) = (hs.curve_of[segs[f][0]], hs.curve_of[segs[f][1]]);
            a != b && glued.contains_key(&(a.min(b), a.max(b)))
        })
        .collect()
}

pub fn recover_model(d: &HeegaardDiagram) -> Result<RecoveredPairing> {
    let dec = cylinder_decomposition(d);
    let integ = integrality(&dec);
    if !integ.integral {
        let bad: Vec<String> = dec
            .heegaard
            .iter()
            .filter(|h| h.height % h.circumference != 0)
            .map(|h| format!("({},{})", h.circumference, h.height))
            .collect();
        return Err(Error::NotIntegral(format!(
            "cylinders {} have height not a multiple of circumference",
            bad.join(" ")
        )));
    }
    let inv = invert(d)?;
    let p = &inv.ball;
    let interior = interior_faces(d, &dec);

    // K' edges are chains of K edges through interior vertices
    let mut uf = UnionFind::new(p.num_edges());
    for v in (0..p.num_vertices()).filter(|&v| interior[v]) {
        let inc: Vec<usize> = (0..p.num_edges()).filter(|&e| p.edges[e].tail == v || p.edges[e].head == v).collect();
        if inc.len() != 2 {
            return Err(Error::InversionInconsistent(format!("interior vertex s{v} has {} edges", inc.len())));
        }
        uf.union(inc[0], inc[1]);
    }
    let (class, _) = uf.classes();

    // split each face word into runs between K' corners
    let kept: Vec<usize> = (0..p.num_vertices()).filter(|&v| !interior[v]).collect();
    let vname: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut runs: Vec<Vec<Vec<usize>>> = Vec::new(); // per face, runs of Q-side positions
    let mut corner_q: Vec<Vec<usize>> = Vec::new(); // per face, Q-position of each K' corner
    for (fi, f) in p.faces.iter().enumerate() {
        let n = f.word.len();
        let starts: Vec<usize> =
            (0..n).filter(|&i| !interior[p.side_start(crate::ball::Side { face: fi, pos: i })]).collect();
        if starts.is_empty() {
            return Err(Error::InversionInconsistent(format!("face {} has no model corner", f.id)));
        }
        let mut fr = Vec::new();
        for (k, &s) in starts.iter().enumerate() {
            let e = starts[(k + 1) % starts.len()];
            let len = (e + n - s - 1) % n + 1;
            fr.push((0..len).map(|t| (s + t) % n).collect::<Vec<_>>());
        }
        runs.push(fr);
        corner_q.push(starts);
    }
    // canonical direction of each K' edge from its first run
    let mut canon: HashMap<usize, (usize, bool, usize, usize, usize)> = HashMap::new(); // class -> (edge, sign, tail, head, id)
    let mut new_edges: Vec<Edge> = Vec::new();
    let mut children: Vec<usize> = Vec::new();
    let mut new_faces = Vec::new();
    for (fi, f) in p.faces.iter().enumerate() {
        let mut word = Vec::new();
        for run in &runs[fi] {
            let sides: Vec<SignedEdge> = run.iter().map(|&q| f.word[q]).collect();
            let cls = class[sides[0].edge];
            if sides.iter().any(|s| class[s.edge] != cls) {
                return Err(Error::InversionInconsistent("a model edge mixes Heegaard cylinders".into()));
            }
            let start = p.side_start(crate::ball::Side { face: fi, pos: run[0] });
            let end = p.side_end(crate::ball::Side { face: fi, pos: *run.last().unwrap() });
            let entry = *canon.entry(cls).or_insert_with(|| {
                new_edges.push(Edge { id: format!("a{}", new_edges.len()), tail: vname[&start], head: vname[&end] });
                children.push(run.len());
                (sides[0].edge, sides[0].forward, start, end, new_edges.len() - 1)
            });
            let (e0, s0, _, _, id) = entry;
            let here = sides.iter().find(|s| s.edge == e0).map(|s| s.forward);
            let forward = match here {
                Some(sg) => sg == s0,
                None => return Err(Error::InversionInconsistent("model edge occurrences disagree".into())),
            };
            word.push(SignedEdge::new(id, forward));
        }
        new_faces.push(Face { id: f.id.clone(), word });
    }
    let vertices = kept.iter().map(|v| format!("s{v}")).collect();
    let model_ball = FacetedBall::new(format!("{}-model", d.name), vertices, new_edges, new_faces)?;
    let report = validate_ball(&model_ball);
    if !report.is_empty() {
        return Err(Error::InversionInconsistent(format!("model ball: {report}")));
    }

    // ε' is δ turned back by one corner, in whichever direction keeps model corners
    let mut found = None;
    for (shift, direction) in [(1i64, Direction::Cw), (-1, Direction::Ccw)] {
        let mut pairs = Vec::new();
        for spec in &inv.pairing.pairs {
            let n = p.face_len(spec.rep) as i64;
            let (cl, cr) = (&corner_q[spec.rep], &corner_q[spec.inv]);
            let mut offset = None;
            for (i, &a) in cl.iter().enumerate() {
                let b = (spec.offset as i64 + shift - a as i64).rem_euclid(n) as usize;
                let Some(j) = cr.iter().position(|&x| x == b) else {
                    offset = None;
                    break;
                };
                let k = (i + j) % cl.len();
                if offset.map_or(false, |o| o != k) {
                    offset = None;
                    break;
                }
                offset = Some(k);
            }
            match offset {
                Some(k) if cl.len() == cr.len() => pairs.push(PairSpec { rep: spec.rep, inv: spec.inv, offset: k }),
                _ => break,
            }
        }
        if pairs.len() == inv.pairing.num_pairs() {
            found = Some((FacePairing::new(model_ball.num_faces(), pairs)?, direction));
            break;
        }
    }
    let (model_pairing, direction) = found
        .ok_or_else(|| Error::InversionInconsistent("no one-corner turn maps model corners to model corners".into()))?;

    let cycles = edge_cycles(&model_ball, &model_pairing)?;
    let mut mul = Vec::new();
    for c in &cycles {
        let n = children[c.steps[0].edge];
        if c.edges().any(|e| children[e] != n) || n % c.len() != 0 {
            return Err(Error::NotIntegral(format!("model edge cycle {} has uneven subdivision", c.index)));
        }
        mul.push((n / c.len()) as u32);
    }
    let mut from_cycles: Vec<(usize, u32)> = cycles.iter().zip(&mul).map(|(c, &m)| (c.len(), m)).collect();
    let mut from_cyl: Vec<(usize, u32)> =
        dec.heegaard.iter().map(|h| (h.circumference, (h.height / h.circumference) as u32)).collect();
    from_cycles.sort_unstable();
    from_cyl.sort_unstable();
    if from_cycles != from_cyl {
        return Err(Error::InversionInconsistent(format!(
            "model cycles {from_cycles:?} do not match cylinders {from_cyl:?}"
        )));
    }
    let multipliers = MultiplierFunction::new(mul)?;
    let retwisted = twist(&model_ball, &model_pairing, &multipliers, direction).and_then(|t| twisted_surface(&t));
    let retwist_isomorphic = retwisted.map(|r| diagram_isomorphic(&r, d)).unwrap_or(false);
    Ok(RecoveredPairing {
        ball: inv.ball,
        pairing: inv.pairing,
        model: Some(Model { ball: model_ball, pairing: model_pairing, multipliers, direction, retwist_isomorphic }),
    })
}
