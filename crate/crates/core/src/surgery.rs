//! Corridor complexes and the framed surgery link they carry.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::ball::{FacetedBall, Side, UnionFind};
use crate::error::{Error, Result};
use crate::heegaard::{crossing_of, HeegaardDiagram};
use crate::homology::{cokernel, H1Invariant};
use crate::pairing::{edge_cycles, FacePairing};
use crate::twist::MultiplierFunction;

/// Where a side of a corridor complex face comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SideLabel {
    /// A side of a face of the ball.
    Face { face: usize, pos: usize },
    /// A side of the corridor of a pair. `top` sides run from v to v'; `index` counts along the path.
    Corridor { pair: usize, top: bool, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorridorFace {
    /// Signed edges of the complex, in the orientation of the ball's faces.
    pub word: Vec<(usize, bool)>,
    pub labels: Vec<SideLabel>,
    /// The face pair merged into this face, once its corridor is built.
    pub pair: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorridorComplex {
    /// Ball edge underlying every edge of the complex.
    pub parent: Vec<usize>,
    pub faces: Vec<CorridorFace>,
    pub num_vertices: usize,
    /// Per pair, the edge path from v to v' as ball edges with traversal direction.
    pub paths: Vec<Vec<(usize, bool)>>,
    /// Length of the representative face of every pair.
    pub rep_len: Vec<usize>,
}

impl CorridorComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.parent.len() as i64 + self.faces.len() as i64
    }

    /// Face and position of a labelled side.
    fn locate(&self) -> HashMap<SideLabel, (usize, usize)> {
        let mut at = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (p, l) in f.labels.iter().enumerate() {
                at.insert(*l, (fi, p));
            }
        }
        at
    }

    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.parent.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for (p, &(e, _)) in f.word.iter().enumerate() {
                occ[e].push((fi, p));
            }
        }
        occ
    }
}

/// Order in which edges are tried when several shortest corridor paths exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Ascending,
    Descending,
}

struct Builder {
    order: TieBreak,
    parent: Vec<usize>,
    alive: Vec<bool>,
    faces: Vec<Option<CorridorFace>>,
}

impl Builder {
    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.parent.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            if let Some(f) = f {
                for (p, &(e, _)) in f.word.iter().enumerate() {
                    occ[e].push((fi, p));
                }
            }
        }
        occ
    }

    /// Vertex of every corner, a corner being the start of a side.
    fn vertices(&self, occ: &[Vec<(usize, usize)>]) -> (HashMap<(usize, usize), usize>, usize) {
        let mut index = HashMap::new();
        let mut corners = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if let Some(f) = f {
                for p in 0..f.word.len() {
                    index.insert((fi, p), corners.len());
                    corners.push((fi, p));
                }
            }
        }
        let mut uf = UnionFind::new(corners.len());
        for (i, &(fi, p)) in corners.iter().enumerate() {
            let f = self.faces[fi].as_ref().unwrap();
            let prev = (p + f.word.len() - 1) % f.word.len();
            let e = f.word[prev].0;
            let mate = if occ[e][0] == (fi, prev) { occ[e][1] } else { occ[e][0] };
            uf.union(i, index[&mate]);
        }
        let (class, n) = uf.classes();
        (corners.iter().enumerate().map(|(i, &c)| (c, class[i])).collect(), n)
    }

    fn endpoints(
        &self,
        occ: &[Vec<(usize, usize)>],
        vertex: &HashMap<(usize, usize), usize>,
        e: usize,
    ) -> (usize, usize) {
        let (fi, p) = occ[e][0];
        let f = self.faces[fi].as_ref().unwrap();
        let start = vertex[&(fi, p)];
        let end = vertex[&(fi, (p + 1) % f.word.len())];
        if f.word[p].1 {
            (start, end)
        } else {
            (end, start)
        }
    }

    /// Breadth-first shortest edge path, ties broken by edge handle.
    fn path(&self, from: usize, to: usize) -> Result<Vec<(usize, bool)>> {
        let occ = self.occurrences();
        let (vertex, nv) = self.vertices(&occ);
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); nv];
        for e in (0..self.parent.len()).filter(|&e| self.alive[e]) {
            let (t, h) = self.endpoints(&occ, &vertex, e);
            adj[t].push((h, e, true));
            adj[h].push((t, e, false));
        }
        if self.order == TieBreak::Descending {
            for a in &mut adj {
                a.reverse();
            }
        }
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; nv];
        let mut seen = vec![false; nv];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(w, e, fwd) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, e, fwd));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return Err(Error::PathNotFound { from: format!("v{from}"), to: format!("v{to}") });
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((v, e, fwd)) = prev[cur] {
            path.push((e, fwd));
            cur = v;
        }
        path.reverse();
        Ok(path)
    }

    fn vertex_of(&self, face: usize, pos: usize) -> usize {
        let occ = self.occurrences();
        self.vertices(&occ).0[&(face, pos)]
    }
}

/// Builds corridors between paired faces, one pair at a time in pair order. The corridor of a
/// pair starts at corner 0 of its representative and ends at the image corner.
pub fn corridor_complex(ball: &FacetedBall, pairing: &FacePairing) -> Result<CorridorComplex> {
    corridor_complex_with(ball, pairing, TieBreak::Ascending)
}

pub fn corridor_complex_with(ball: &FacetedBall, pairing: &FacePairing, order: TieBreak) -> Result<CorridorComplex> {
    let mut b = Builder {
        order,
        parent: (0..ball.num_edges()).collect(),
        alive: vec![true; ball.num_edges()],
        faces: ball
            .faces
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                Some(CorridorFace {
                    word: f.word.iter().map(|s| (s.edge, s.forward)).collect(),
                    labels: (0..f.word.len()).map(|pos| SideLabel::Face { face: fi, pos }).collect(),
                    pair: None,
                })
            })
            .collect(),
    };
    let mut paths = Vec::new();
    let mut rep_len = Vec::new();
    for (x, spec) in pairing.pairs.iter().enumerate() {
        let (f, g) = (spec.rep, spec.inv);
        let image = pairing.map_corner(ball, Side { face: f, pos: 0 });
        let v = b.vertex_of(f, 0);
        let w = b.vertex_of(g, image.pos);
        let path = b.path(v, w)?;

        // split every path edge into a copy on either side
        let occ = b.occurrences();
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for &(e, fwd) in &path {
            let (right, left) = (b.parent.len(), b.parent.len() + 1);
            b.parent.extend([b.parent[e], b.parent[e]]);
            b.alive.extend([true, true]);
            b.alive[e] = false;
            for &(fi, p) in &occ[e] {
                let side = &mut b.faces[fi].as_mut().unwrap().word[p];
                // the face on the left of a forward side lies left of a forward path
                side.0 = if side.1 == fwd { left } else { right };
            }
            top.push((right, fwd));
            bottom.push((left, !fwd));
        }
        let fw = b.faces[f].take().unwrap();
        let gw = b.faces[g].take().unwrap();
        let mut word = fw.word.clone();
        let mut labels = fw.labels.clone();
        for (i, &s) in top.iter().enumerate() {
            word.push(s);
            labels.push(SideLabel::Corridor { pair: x, top: true, index: i });
        }
        let n = gw.word.len();
        for t in 0..n {
            word.push(gw.word[(image.pos + t) % n]);
            labels.push(gw.labels[(image.pos + t) % n]);
        }
        for (i, &s) in bottom.iter().enumerate().rev() {
            word.push(s);
            labels.push(SideLabel::Corridor { pair: x, top: false, index: i });
        }
        b.faces[f] = Some(CorridorFace { word, labels, pair: Some(x) });
        paths.push(path.iter().map(|&(e, fwd)| (b.parent[e], fwd)).collect());
        rep_len.push(ball.face_len(f));
    }

    // compact edge handles
    let mut renumber = vec![usize::MAX; b.parent.len()];
    let mut parent = Vec::new();
    for e in (0..b.parent.len()).filter(|&e| b.alive[e]) {
        renumber[e] = parent.len();
        parent.push(b.parent[e]);
    }
    let occ = b.occurrences();
    let (_, num_vertices) = b.vertices(&occ);
    let faces: Vec<CorridorFace> = b
        .faces
        .into_iter()
        .flatten()
        .map(|mut f| {
            for s in &mut f.word {
                s.0 = renumber[s.0];
            }
            f
        })
        .collect();
    let c = CorridorComplex { parent, faces, num_vertices, paths, rep_len };
    if c.euler_characteristic() != 2 {
        return Err(Error::InvalidBall(format!("corridor complex has chi {}", c.euler_characteristic())));
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Face { pair: usize },
    Edge { cycle: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLinkDiagram {
    pub kinds: Vec<ComponentKind>,
    pub crossings: Vec<Crossing>,
    /// Per component, the crossings met in order, with `true` when passing over.
    pub codes: Vec<Vec<(usize, bool)>>,
    pub writhes: Vec<i64>,
    pub framings: Vec<Ratio<i64>>,
}

/// Key of a crossing inside a merged face: the arc of the representative side `arc` meets
/// either the face component (`hit` = None, first or second pass) or the corridor chord `hit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Key {
    Alpha { pair: usize, arc: usize, second: bool },
    Chord { pair: usize, chord: usize, arc: usize },
}

enum Event {
    /// A β arc through the merged face of `pair`, from the representative side when `ahead`.
    Arc { pair: usize, arc: usize, ahead: bool },
    /// A corridor chord, crossed from top to bottom when `down`.
    Chord { pair: usize, chord: usize, down: bool },
}

/// The corridor complex link diagram with its surgery framings.
///
/// In each merged face the boundary reads: representative sides, top corridor, image sides,
/// bottom corridor. Arcs join representative and image sides, chords join the two corridor
/// copies of one path edge and pass under every arc. The face component is a small
/// counterclockwise circle in the corridor that every arc meets twice.
pub fn link_diagram(
    ball: &FacetedBall,
    pairing: &FacePairing,
    corridor: &CorridorComplex,
    mul: &MultiplierFunction,
) -> Result<FramedLinkDiagram> {
    let cycles = edge_cycles(ball, pairing)?;
    if mul.len() != cycles.len() {
        return Err(Error::MissingMultiplier(mul.len().min(cycles.len())));
    }
    let npairs = pairing.num_pairs();
    let at = corridor.locate();
    let occ = corridor.occurrences();

    let mut events: Vec<Vec<Event>> = Vec::new();
    for cyc in &cycles {
        let mut ev = Vec::new();
        for (j, step) in cyc.steps.iter().enumerate() {
            let (pair, rep) = pairing.slot(step.side.face).unwrap();
            let image = pairing.map_side(ball, step.side);
            let arc = if rep { step.side.pos } else { image.pos };
            ev.push(Event::Arc { pair, arc, ahead: rep });
            // across the image edge to the next step, through any corridors on the way
            let next = cyc.steps[(j + 1) % cyc.len()].side;
            let mut cur = at[&SideLabel::Face { face: image.face, pos: image.pos }];
            loop {
                let e = corridor.faces[cur.0].word[cur.1].0;
                let other = if occ[e][0] == cur { occ[e][1] } else { occ[e][0] };
                match corridor.faces[other.0].labels[other.1] {
                    SideLabel::Face { face, pos } => {
                        if (Side { face, pos }) != next {
                            return Err(Error::InvalidBall("edge component does not close up".into()));
                        }
                        break;
                    }
                    SideLabel::Corridor { pair, top, index } => {
                        ev.push(Event::Chord { pair, chord: index, down: top });
                        cur = at[&SideLabel::Corridor { pair, top: !top, index }];
                    }
                }
            }
        }
        events.push(ev);
    }

    // arcs and chords present in every merged face
    let mut arc_owner: HashMap<(usize, usize), (usize, bool)> = HashMap::new();
    let mut chord_owner: HashMap<(usize, usize), (usize, bool)> = HashMap::new();
    for (ci, ev) in events.iter().enumerate() {
        for e in ev {
            match *e {
                Event::Arc { pair, arc, ahead } => {
                    arc_owner.insert((pair, arc), (npairs + ci, ahead));
                }
                Event::Chord { pair, chord, down } => {
                    chord_owner.insert((pair, chord), (npairs + ci, down));
                }
            }
        }
    }
    let sgn = |b: bool| if b { 1i8 } else { -1 };
    let mut signs: BTreeMap<Key, Crossing> = BTreeMap::new();
    for (&(pair, arc), &(comp, ahead)) in &arc_owner {
        for second in [false, true] {
            let (over, under) = if second { (comp, pair) } else { (pair, comp) };
            signs.insert(Key::Alpha { pair, arc, second }, Crossing { over, under, sign: sgn(ahead) });
        }
        for chord in 0..corridor.paths[pair].len() {
            let (cc, down) = chord_owner[&(pair, chord)];
            signs.insert(
                Key::Chord { pair, chord, arc },
                Crossing { over: comp, under: cc, sign: sgn(ahead) * sgn(down) },
            );
        }
    }
    let ids: HashMap<Key, usize> = signs.keys().enumerate().map(|(i, k)| (*k, i)).collect();
    let crossings: Vec<Crossing> = signs.values().copied().collect();

    let mut codes: Vec<Vec<(usize, bool)>> = vec![Vec::new(); npairs + cycles.len()];
    for pair in 0..npairs {
        let n = corridor.rep_len[pair];
        // down the side facing the representative, then up the far side
        for arc in 0..n {
            codes[pair].push((ids[&Key::Alpha { pair, arc, second: false }], true));
        }
        for arc in (0..n).rev() {
            codes[pair].push((ids[&Key::Alpha { pair, arc, second: true }], false));
        }
    }
    for (ci, ev) in events.iter().enumerate() {
        let code = &mut codes[npairs + ci];
        for e in ev {
            match *e {
                Event::Arc { pair, arc, ahead } => {
                    let mut seq = vec![
                        (Key::Alpha { pair, arc, second: false }, false),
                        (Key::Alpha { pair, arc, second: true }, true),
                    ];
                    seq.extend((0..corridor.paths[pair].len()).map(|chord| (Key::Chord { pair, chord, arc }, true)));
                    if !ahead {
                        seq.reverse();
                    }
                    code.extend(seq.into_iter().map(|(k, o)| (ids[&k], o)));
                }
                Event::Chord { pair, chord, down } => {
                    let n = corridor.rep_len[pair];
                    let order: Vec<usize> = if down { (0..n).rev().collect() } else { (0..n).collect() };
                    code.extend(order.into_iter().map(|arc| (ids[&Key::Chord { pair, chord, arc }], false)));
                }
            }
        }
    }

    let ncomp = npairs + cycles.len();
    let mut writhes = vec![0i64; ncomp];
    for c in &crossings {
        if c.over == c.under {
            writhes[c.over] += c.sign as i64;
        }
    }
    let kinds: Vec<ComponentKind> = (0..npairs)
        .map(|pair| ComponentKind::Face { pair })
        .chain((0..cycles.len()).map(|cycle| ComponentKind::Edge { cycle }))
        .collect();
    let framings = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| match k {
            ComponentKind::Face { .. } => Ratio::from_integer(0),
            ComponentKind::Edge { cycle } => Ratio::new(1, mul.get(*cycle) as i64) + Ratio::from_integer(writhes[i]),
        })
        .collect();
    Ok(FramedLinkDiagram { kinds, crossings, codes, writhes, framings })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingData {
    pub lk: Vec<Vec<i64>>,
    pub writhes: Vec<i64>,
    /// Framings as (p, q) in lowest terms with q > 0.
    pub framings: Vec<(i64, i64)>,
    /// Row i is p_i at the diagonal and q_i * lk(i, j) elsewhere.
    pub matrix: Vec<Vec<i64>>,
}

pub fn linking_matrix(link: &FramedLinkDiagram) -> Result<LinkingData> {
    let n = link.kinds.len();
    let mut twice = vec![vec![0i64; n]; n];
    for c in &link.crossings {
        if c.over != c.under {
            twice[c.over][c.under] += c.sign as i64;
            twice[c.under][c.over] += c.sign as i64;
        }
    }
    let mut lk = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if twice[i][j] % 2 != 0 {
                return Err(Error::InvalidDiagram(format!("odd crossing sum between components {i} and {j}")));
            }
            lk[i][j] = twice[i][j] / 2;
        }
    }
    let framings: Vec<(i64, i64)> = link.framings.iter().map(|r| (*r.numer(), *r.denom())).collect();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { framings[i].0 } else { framings[i].1 * lk[i][j] }).collect())
        .collect();
    Ok(LinkingData { lk, writhes: link.writhes.clone(), framings, matrix })
}

pub fn h1_from_surgery(data: &LinkingData) -> H1Invariant {
    cokernel(data.matrix.len(), &data.matrix)
}

fn ratio_text(r: &Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn export_gauss(link: &FramedLinkDiagram) -> String {
    let mut out = String::new();
    for (i, code) in link.codes.iter().enumerate() {
        let kind = match link.kinds[i] {
            ComponentKind::Face { pair } => format!("face {pair}"),
            ComponentKind::Edge { cycle } => format!("edge {cycle}"),
        };
        let seq: Vec<String> = code
            .iter()
            .map(|&(c, over)| {
                let s = if link.crossings[c].sign > 0 { '+' } else { '-' };
                format!("{}{}{}", if over { 'O' } else { 'U' }, c, s)
            })
            .collect();
        let _ = writeln!(out, "component {i} {kind} : {}", seq.join(" "));
        let _ = writeln!(out, "framing {i} {}", ratio_text(&link.framings[i]));
    }
    out
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn svg_header(w: f64, h: f64) -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n")
}

/// Schematic drawing: crossings evenly spaced on a circle, each component a closed polyline
/// through its crossings, under-passes drawn with a gap.
pub fn render_link_svg(link: &FramedLinkDiagram) -> String {
    let (w, h) = (480.0, 480.0);
    let (cx, cy, r) = (w / 2.0, h / 2.0, 180.0);
    let n = link.crossings.len().max(1) as f64;
    let pos = |c: usize| {
        let t = std::f64::consts::TAU * c as f64 / n;
        (cx + r * t.cos(), cy + r * t.sin())
    };
    let mut out = svg_header(w, h);
    for (i, code) in link.codes.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = if code.is_empty() {
            let (ox, oy) = (40.0 + 30.0 * i as f64, 30.0);
            (0..12)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / 12.0;
                    (ox + 10.0 * t.cos(), oy + 10.0 * t.sin())
                })
                .collect()
        } else {
            code.iter().map(|&(c, _)| pos(c)).collect()
        };
        let d: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let _ = writeln!(
            out,
            "<polygon class=\"strand\" data-component=\"{i}\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
            d.join(" ")
        );
        for &(c, over) in code {
            if !over {
                let (x, y) = pos(c);
                let _ = writeln!(
                    out,
                    "<circle class=\"under\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"white\" stroke=\"{color}\"/>"
                );
            }
        }
        if let ComponentKind::Edge { .. } = link.kinds[i] {
            let (x, y) = pts[0];
            let _ = writeln!(
                out,
                "<text class=\"framing\" x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"{color}\">{}</text>",
                x + 6.0,
                y - 6.0,
                ratio_text(&link.framings[i])
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Schematic drawing of a Heegaard diagram: crossings on a circle, vertical curves in one
/// colour, diagonal curves in another.
pub fn render_diagram_svg(d: &HeegaardDiagram) -> String {
    let (w, h) = (480.0, 480.0);
    let (cx, cy, r) = (w / 2.0, h / 2.0, 180.0);
    let n = d.num_crossings().max(1) as f64;
    let pos = |c: usize| {
        let t = std::f64::consts::TAU * c as f64 / n;
        (cx + r * t.cos(), cy + r * t.sin())
    };
    let mut out = svg_header(w, h);
    for (class, color, curves) in
        [("vertical", "#1f77b4", d.vertical_curves()), ("diagonal", "#d62728", d.diagonal_curves())]
    {
        for (i, cur) in curves.iter().enumerate() {
            let pts: Vec<String> = cur
                .iter()
                .map(|v| {
                    let (x, y) = pos(v.crossing);
                    format!("{x:.1},{y:.1}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polygon class=\"{class}\" data-curve=\"{i}\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                pts.join(" ")
            );
        }
    }
    for c in 0..d.num_crossings() {
        let (x, y) = pos(crossing_of(4 * c));
        let _ = writeln!(out, "<circle class=\"crossing\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"black\"/>");
    }
    out.push_str("</svg>\n");
    out
}
