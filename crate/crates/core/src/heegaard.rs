//! Heegaard diagrams as 4-valent rotation systems.
//!
//! A crossing `c` has four darts `4c + r`. Ports are listed counterclockwise:
//! `0` vertical forward, `1` diagonal, `2` vertical back, `3` diagonal. `link` is the
//! involution gluing darts along edges of the crossing graph; even ports only meet even ports.
//! Faces are traced clockwise.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::ball::{FacetedBall, Side};
use crate::error::{Error, Result};
use crate::homology::{cokernel, H1Invariant};
use crate::pairing::FacePairing;
use crate::twist::{quotient_counts, Direction, Twisted};

pub type Dart = usize;

pub fn dart(c: usize, r: usize) -> Dart {
    4 * c + (r % 4)
}

pub fn crossing_of(d: Dart) -> usize {
    d / 4
}

pub fn port_of(d: Dart) -> usize {
    d % 4
}

/// Dart across the crossing.
pub fn opposite(d: Dart) -> Dart {
    d ^ 2
}

/// Next dart counterclockwise at the same crossing.
pub fn rotate(d: Dart, by: usize) -> Dart {
    dart(crossing_of(d), port_of(d) + by)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardDiagram {
    pub name: String,
    link: Vec<Dart>,
}

/// One pass of a curve through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Visit {
    pub crossing: usize,
    /// Port through which the curve leaves the crossing.
    pub exit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub genus: usize,
    pub num_vertical: usize,
    pub num_diagonal: usize,
    pub num_crossings: usize,
    pub face_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    /// Signed 1-based generator indices.
    pub relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn abelianized(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![0; self.generators];
                for &x in w {
                    row[x.unsigned_abs() as usize - 1] += x.signum();
                }
                row
            })
            .collect()
    }

    pub fn h1(&self) -> H1Invariant {
        cokernel(self.generators, &self.abelianized())
    }
}

impl HeegaardDiagram {
    pub fn from_link(name: impl Into<String>, link: Vec<Dart>) -> Result<Self> {
        let d = HeegaardDiagram { name: name.into(), link };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.link.len() % 4 != 0 {
            return Err(Error::InvalidDiagram("dart count is not a multiple of 4".into()));
        }
        for (x, &y) in self.link.iter().enumerate() {
            if y >= self.link.len() || self.link[y] != x || x == y {
                return Err(Error::InvalidDiagram(format!("link is not a fixed-point-free involution at dart {x}")));
            }
            if x % 2 != y % 2 {
                return Err(Error::InvalidDiagram(format!("dart {x} joins a vertical port to a diagonal one")));
            }
        }
        Ok(())
    }

    pub fn num_crossings(&self) -> usize {
        self.link.len() / 4
    }

    pub fn num_darts(&self) -> usize {
        self.link.len()
    }

    pub fn link(&self, d: Dart) -> Dart {
        self.link[d]
    }

    pub fn links(&self) -> &[Dart] {
        &self.link
    }

    fn curves(&self, parity: usize) -> Vec<Vec<Visit>> {
        let mut seen = vec![false; self.num_crossings()];
        let mut out = Vec::new();
        for c in 0..self.num_crossings() {
            if seen[c] {
                continue;
            }
            let start = dart(c, parity);
            let mut visits = Vec::new();
            let mut exit = start;
            loop {
                let cc = crossing_of(exit);
                seen[cc] = true;
                visits.push(Visit { crossing: cc, exit: port_of(exit) });
                exit = opposite(self.link[exit]);
                if exit == start {
                    break;
                }
            }
            out.push(visits);
        }
        out
    }

    /// Vertical curves, each starting at its smallest crossing, leaving through port 0.
    pub fn vertical_curves(&self) -> Vec<Vec<Visit>> {
        self.curves(0)
    }

    /// Diagonal curves, each starting at its smallest crossing, leaving through port 1.
    pub fn diagonal_curves(&self) -> Vec<Vec<Visit>> {
        self.curves(1)
    }

    /// Face orbits of (rotate ∘ link). `faces()[i]` lists darts `d` so that the sector
    /// between ports `d - 1` and `d` of its crossing lies in face `i`.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.num_darts()];
        let mut out = Vec::new();
        for s in 0..self.num_darts() {
            if seen[s] {
                continue;
            }
            let mut f = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                f.push(d);
                d = rotate(self.link[d], 1);
            }
            out.push(f);
        }
        out
    }

    /// Face of every dart, as in [`HeegaardDiagram::faces`].
    pub fn face_of_darts(&self) -> (Vec<usize>, usize) {
        let faces = self.faces();
        let mut of = vec![0; self.num_darts()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                of[d] = i;
            }
        }
        (of, faces.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let c = self.num_crossings() as i64;
        c - 2 * c + self.faces().len() as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn stats(&self) -> DiagramStats {
        let mut face_sizes: Vec<usize> = self.faces().iter().map(|f| f.len()).collect();
        face_sizes.sort_unstable();
        DiagramStats {
            genus: self.genus(),
            num_vertical: self.vertical_curves().len(),
            num_diagonal: self.diagonal_curves().len(),
            num_crossings: self.num_crossings(),
            face_sizes,
        }
    }

    /// Vertical curve index and position of every crossing.
    pub fn vertical_index(&self) -> Vec<(usize, usize)> {
        index_curves(self.num_crossings(), &self.vertical_curves())
    }

    pub fn diagonal_index(&self) -> Vec<(usize, usize)> {
        index_curves(self.num_crossings(), &self.diagonal_curves())
    }

    /// Local intersection sign: +1 when the diagonal leaves one port clockwise
    /// after the vertical.
    pub fn crossing_signs(&self) -> Vec<i64> {
        let mut vexit = vec![0; self.num_crossings()];
        for cur in self.vertical_curves() {
            for v in cur {
                vexit[v.crossing] = v.exit;
            }
        }
        let mut sign = vec![0; self.num_crossings()];
        for cur in self.diagonal_curves() {
            for v in cur {
                sign[v.crossing] = if v.exit == (vexit[v.crossing] + 3) % 4 { 1 } else { -1 };
            }
        }
        sign
    }

    pub fn presentation(&self) -> GroupPresentation {
        let vix = self.vertical_index();
        let sign = self.crossing_signs();
        let relators = self
            .diagonal_curves()
            .iter()
            .map(|cur| cur.iter().map(|v| sign[v.crossing] * (vix[v.crossing].0 as i64 + 1)).collect())
            .collect();
        GroupPresentation { generators: self.vertical_curves().len(), relators }
    }

    pub fn h1(&self) -> H1Invariant {
        self.presentation().h1()
    }

    /// Swaps the vertical and diagonal families; the rotation is kept.
    pub fn dualize(&self) -> HeegaardDiagram {
        // new port r is old port r + 1
        let to_new = |d: Dart| rotate(d, 3);
        let mut link = vec![0; self.num_darts()];
        for d in 0..self.num_darts() {
            link[to_new(d)] = to_new(self.link[d]);
        }
        HeegaardDiagram { name: self.name.clone(), link }
    }

    /// Reverses the rotation at every crossing, keeping port parities.
    pub fn mirror(&self) -> HeegaardDiagram {
        let flip = |d: Dart| dart(crossing_of(d), (4 - port_of(d)) % 4);
        let mut link = vec![0; self.num_darts()];
        for d in 0..self.num_darts() {
            link[flip(d)] = flip(self.link[d]);
        }
        HeegaardDiagram { name: self.name.clone(), link }
    }

    /// Relabels crossings by `perm` (old index to new index) and rotates each crossing's
    /// ports by an even amount.
    pub fn relabeled(&self, perm: &[usize], turn: &[usize]) -> HeegaardDiagram {
        let map = |d: Dart| dart(perm[crossing_of(d)], port_of(d) + 4 - turn[crossing_of(d)] % 4);
        let mut link = vec![0; self.num_darts()];
        for d in 0..self.num_darts() {
            link[map(d)] = map(self.link[d]);
        }
        HeegaardDiagram { name: self.name.clone(), link }
    }
}

fn index_curves(n: usize, curves: &[Vec<Visit>]) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); n];
    for (i, cur) in curves.iter().enumerate() {
        for (p, v) in cur.iter().enumerate() {
            out[v.crossing] = (i, p);
        }
    }
    out
}

/// Edge pairing surface of (ball, pairing): one crossing per side of every representative face.
pub fn edge_pairing_surface(ball: &FacetedBall, pairing: &FacePairing) -> Result<HeegaardDiagram> {
    let qc = quotient_counts(ball, pairing)?;
    if qc.vertices != 1 || qc.chi != 0 {
        return Err(Error::HypothesisViolated { chi: qc.chi, vertices: qc.vertices });
    }
    Ok(edge_pairing_surface_unchecked(ball, pairing).0)
}

/// Heegaard diagram of a twisted manifold. The surface is oriented so that the twist turns
/// the same way as the faces; a `ccw` twist therefore gets the mirrored surface.
pub fn twisted_surface(t: &Twisted) -> Result<HeegaardDiagram> {
    let d = edge_pairing_surface(&t.q.ball, &t.delta.pairing)?;
    Ok(match t.delta.direction {
        Direction::Cw => d,
        Direction::Ccw => d.mirror(),
    })
}

/// Builds the surface without the quotient check. Also returns the (pair, side) of each crossing.
///
/// Crossing (p, j) is the square over side j of the representative face: its bottom (port 1)
/// is that side, its top (port 3) the image side in the partner face.
pub fn edge_pairing_surface_unchecked(
    ball: &FacetedBall,
    pairing: &FacePairing,
) -> (HeegaardDiagram, Vec<(usize, usize)>) {
    let mut base = Vec::new();
    let mut origin = Vec::new();
    for (p, spec) in pairing.pairs.iter().enumerate() {
        base.push(origin.len());
        for j in 0..ball.face_len(spec.rep) {
            origin.push((p, j));
        }
    }
    let n = origin.len();
    let mut link = vec![usize::MAX; 4 * n];
    for (p, spec) in pairing.pairs.iter().enumerate() {
        let len = ball.face_len(spec.rep);
        for j in 0..len {
            let a = dart(base[p] + j, 0);
            let b = dart(base[p] + (j + 1) % len, 2);
            link[a] = b;
            link[b] = a;
        }
    }
    // the diagonal port where an occurrence of an edge sits
    let port_of_side = |s: Side| -> Dart {
        let (p, rep) = pairing.slot(s.face).unwrap();
        if rep {
            dart(base[p] + s.pos, 1)
        } else {
            let spec = pairing.pairs[p];
            let len = ball.face_len(spec.rep) as i64;
            let j = (spec.offset as i64 - 1 - s.pos as i64).rem_euclid(len) as usize;
            dart(base[p] + j, 3)
        }
    };
    for e in 0..ball.num_edges() {
        let occ = ball.occurrences(e);
        let (a, b) = (port_of_side(occ[0]), port_of_side(occ[1]));
        link[a] = b;
        link[b] = a;
    }
    (HeegaardDiagram { name: ball.name.clone(), link }, origin)
}

// ---------------------------------------------------------------------------
// serialization

/// Text form:
///
/// ```text
/// heegaard <name>
/// vcurve 0 : c0+ c1- ...
/// dcurve 0 : c0+ c4+ ...
/// crossing 0 : v0:0> d0:0> v0:0< d1:3<
/// ```
///
/// Curve tokens carry the crossing sign. Crossing ends run counterclockwise from port 0;
/// `>` marks the end where the curve leaves, `<` where it arrives.
pub fn serialize_diagram(d: &HeegaardDiagram) -> String {
    let vc = d.vertical_curves();
    let dc = d.diagonal_curves();
    let sign = d.crossing_signs();
    let mut out = format!("heegaard {}\n", d.name);
    for (tag, curves) in [("vcurve", &vc), ("dcurve", &dc)] {
        for (i, cur) in curves.iter().enumerate() {
            let toks: Vec<String> = cur
                .iter()
                .map(|v| format!("c{}{}", v.crossing, if sign[v.crossing] > 0 { '+' } else { '-' }))
                .collect();
            let _ = writeln!(out, "{tag} {i} : {}", toks.join(" "));
        }
    }
    let vix = index_curves(d.num_crossings(), &vc);
    let dix = index_curves(d.num_crossings(), &dc);
    let mut exit = vec![[false; 4]; d.num_crossings()];
    for cur in vc.iter().chain(dc.iter()) {
        for v in cur {
            exit[v.crossing][v.exit] = true;
        }
    }
    for c in 0..d.num_crossings() {
        let ends: Vec<String> = (0..4)
            .map(|r| {
                let (kind, (i, p)) = if r % 2 == 0 { ('v', vix[c]) } else { ('d', dix[c]) };
                format!("{kind}{i}:{p}{}", if exit[c][r] { '>' } else { '<' })
            })
            .collect();
        let _ = writeln!(out, "crossing {c} : {}", ends.join(" "));
    }
    out
}

fn derr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, reason: msg.into() }
}

pub fn parse_diagram(text: &str) -> Result<HeegaardDiagram> {
    let mut name = None;
    let mut curves: BTreeMap<(char, usize), (Vec<(usize, char)>, usize)> = BTreeMap::new();
    let mut crossings: BTreeMap<usize, (Vec<(char, usize, usize, bool)>, usize)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "heegaard" if toks.len() == 2 => name = Some(toks[1].to_string()),
            "vcurve" | "dcurve" => {
                if toks.len() < 4 || toks[2] != ":" {
                    return Err(derr(ln, "expected `vcurve <i> : c<id>± ...`"));
                }
                let idx: usize = toks[1].parse().map_err(|_| derr(ln, "bad curve index"))?;
                let mut seq = Vec::new();
                for t in &toks[3..] {
                    let body = t.strip_prefix('c').ok_or_else(|| derr(ln, format!("bad crossing token {t}")))?;
                    let (num, tag) = body.split_at(body.len().saturating_sub(1));
                    let tag = tag.chars().next().filter(|c| *c == '+' || *c == '-');
                    match (num.parse::<usize>(), tag) {
                        (Ok(c), Some(s)) => seq.push((c, s)),
                        _ => return Err(derr(ln, format!("bad crossing token {t}"))),
                    }
                }
                let kind = if toks[0] == "vcurve" { 'v' } else { 'd' };
                if curves.insert((kind, idx), (seq, ln)).is_some() {
                    return Err(derr(ln, "duplicate curve"));
                }
            }
            "crossing" => {
                if toks.len() != 7 || toks[2] != ":" {
                    return Err(derr(ln, "expected `crossing <id> : <end> <end> <end> <end>`"));
                }
                let c: usize = toks[1].parse().map_err(|_| derr(ln, "bad crossing id"))?;
                let mut ends = Vec::new();
                for (r, t) in toks[3..].iter().enumerate() {
                    let kind = t.chars().next().unwrap();
                    let want = if r % 2 == 0 { 'v' } else { 'd' };
                    if kind != want {
                        return Err(derr(ln, format!("end {t} breaks vertical/diagonal alternation")));
                    }
                    let body = &t[1..];
                    let (core, dir) = body.split_at(body.len().saturating_sub(1));
                    let out = match dir {
                        ">" => true,
                        "<" => false,
                        _ => return Err(derr(ln, format!("bad end {t}"))),
                    };
                    let (ci, pos) = core.split_once(':').ok_or_else(|| derr(ln, format!("bad end {t}")))?;
                    let ci = ci.parse().map_err(|_| derr(ln, format!("bad end {t}")))?;
                    let pos = pos.parse().map_err(|_| derr(ln, format!("bad end {t}")))?;
                    ends.push((kind, ci, pos, out));
                }
                if crossings.insert(c, (ends, ln)).is_some() {
                    return Err(derr(ln, "duplicate crossing"));
                }
            }
            other => return Err(derr(ln, format!("unknown key `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| derr(0, "missing `heegaard <name>` line"))?;
    let n = crossings.len();
    if crossings.keys().copied().ne(0..n) {
        return Err(Error::Semantic("crossing ids must be 0..n-1".into()));
    }
    // (kind, curve, pos, out) -> dart
    let mut at: BTreeMap<(char, usize, usize, bool), Dart> = BTreeMap::new();
    for (&c, (ends, ln)) in &crossings {
        for (r, &end) in ends.iter().enumerate() {
            if at.insert(end, dart(c, r)).is_some() {
                return Err(derr(*ln, "curve end listed twice"));
            }
        }
    }
    let mut link = vec![usize::MAX; 4 * n];
    for (&(kind, ci), (seq, ln)) in &curves {
        let len = seq.len();
        for (p, &(c, _)) in seq.iter().enumerate() {
            let here = at.get(&(kind, ci, p, true)).ok_or_else(|| derr(*ln, "curve end missing from crossings"))?;
            if crossing_of(*here) != c {
                return Err(derr(*ln, format!("curve visits c{c} but crossing lines disagree")));
            }
            let next = at
                .get(&(kind, ci, (p + 1) % len, false))
                .ok_or_else(|| derr(*ln, "curve end missing from crossings"))?;
            link[*here] = *next;
            link[*next] = *here;
        }
    }
    if link.contains(&usize::MAX) {
        return Err(Error::Semantic("some crossing ends belong to no curve".into()));
    }
    let d = HeegaardDiagram::from_link(name, link)?;
    // signs relative to the curve orientations written in the file
    for ((_, _), (seq, ln)) in &curves {
        for &(c, s) in seq {
            let ends = &crossings[&c].0;
            let vexit = if ends[0].3 { 0 } else { 2 };
            let dexit = if ends[1].3 { 1 } else { 3 };
            if (s == '+') != (dexit == (vexit + 3) % 4) {
                return Err(derr(*ln, format!("sign tag of c{c} disagrees with the rotation")));
            }
        }
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// isomorphism

/// Breadth-first code from `seed` with port offset `turn` (even). Returns None when the
/// traversal does not reach every crossing.
fn bfs_code(d: &HeegaardDiagram, seed: usize, turn: usize) -> Option<Vec<u32>> {
    let n = d.num_crossings();
    let mut label = vec![usize::MAX; n];
    let mut off = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    label[seed] = 0;
    off[seed] = turn;
    order.push(seed);
    queue.push_back(seed);
    let mut code = Vec::with_capacity(8 * n);
    while let Some(c) = queue.pop_front() {
        for r in 0..4 {
            let y = d.link(dart(c, r + off[c]));
            let c2 = crossing_of(y);
            if label[c2] == usize::MAX {
                label[c2] = order.len();
                order.push(c2);
                off[c2] = (port_of(y) + 4 - (r + 2) % 4) % 4;
                queue.push_back(c2);
            }
            let r2 = (port_of(y) + 4 - off[c2]) % 4;
            code.push(label[c2] as u32);
            code.push(r2 as u32);
        }
    }
    (order.len() == n).then_some(code)
}

/// Canonical code: the smallest BFS code over all seeds.
pub fn canonical_code(d: &HeegaardDiagram) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for c in 0..d.num_crossings() {
        for turn in [0, 2] {
            if let Some(code) = bfs_code(d, c, turn) {
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Isomorphism preserving rotation and curve families (orientation of the surface kept).
pub fn diagram_isomorphic(a: &HeegaardDiagram, b: &HeegaardDiagram) -> bool {
    if a.num_crossings() != b.num_crossings() {
        return false;
    }
    if a.num_crossings() == 0 {
        return true;
    }
    let Some(target) = bfs_code(a, 0, 0) else {
        return false;
    };
    (0..b.num_crossings()).any(|c| [0, 2].iter().any(|&t| bfs_code(b, c, t).as_ref() == Some(&target)))
}

/// Isomorphism allowing an orientation-reversing identification of the surfaces.
pub fn diagram_isomorphic_up_to_mirror(a: &HeegaardDiagram, b: &HeegaardDiagram) -> bool {
    diagram_isomorphic(a, b) || diagram_isomorphic(a, &b.mirror())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use crate::twist::{twist, Direction, MultiplierFunction};

    fn twisted(name: &str, mul: &[u32]) -> HeegaardDiagram {
        let ex = registry::load(name).unwrap();
        let t = twist(&ex.ball, &ex.pairing, &MultiplierFunction::new(mul.to_vec()).unwrap(), Direction::Cw).unwrap();
        twisted_surface(&t).unwrap()
    }

    #[test]
    fn tetra_surface_stats() {
        let s = twisted("tetra", &[1, 1, 1]).stats();
        assert_eq!((s.genus, s.num_vertical, s.num_diagonal, s.num_crossings), (2, 2, 2, 18));
        assert_eq!(s.face_sizes.iter().sum::<usize>(), 4 * 18);
    }

    #[test]
    fn lens_surface_stats() {
        let s = twisted("lens31", &[1]).stats();
        assert_eq!((s.genus, s.num_vertical, s.num_diagonal, s.num_crossings), (1, 1, 1, 9));
    }

    #[test]
    fn target_and_s2xs1_genus() {
        assert_eq!(twisted("target", &[4, 1, 1]).genus(), 2);
        for m in 1..=3 {
            let s = twisted("s2xs1", &[m]).stats();
            assert_eq!((s.genus, s.num_crossings), (1, 16 * m as usize));
        }
    }

    #[test]
    fn faces_alternate_and_are_even() {
        let d = twisted("target", &[2, 3, 1]);
        for f in d.faces() {
            assert_eq!(f.len() % 2, 0);
            for w in f.windows(2) {
                assert_ne!(port_of(w[0]) % 2, port_of(w[1]) % 2);
            }
        }
    }

    #[test]
    fn untwisted_pairing_of_the_lens_is_a_genus_one_diagram() {
        let ex = registry::load("lens31").unwrap();
        let d = edge_pairing_surface(&ex.ball, &ex.pairing).unwrap();
        assert_eq!((d.genus(), d.num_crossings()), (1, 3));
        assert_eq!(d.h1().to_string(), "Z/3");
    }

    #[test]
    fn hypothesis_violated_for_untwisted_tetra() {
        let ex = registry::load("tetra").unwrap();
        assert!(matches!(edge_pairing_surface(&ex.ball, &ex.pairing), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn serialization_round_trip() {
        for (name, mul) in [("tetra", vec![1, 2, 1]), ("lens31", vec![1]), ("target", vec![4, 1, 1])] {
            let d = twisted(name, &mul);
            let text = serialize_diagram(&d);
            let back = parse_diagram(&text).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn parse_rejects_bad_sign_tag() {
        let d = twisted("lens31", &[1]);
        let text = serialize_diagram(&d);
        let bad = if text.contains("c0+") { text.replacen("c0+", "c0-", 1) } else { text.replacen("c0-", "c0+", 1) };
        assert!(parse_diagram(&bad).is_err());
        assert!(parse_diagram("heegaard x\ncrossing 0 : d0:0> v0:0> d0:0< v0:0<\n").is_err());
    }

    #[test]
    fn relabeling_is_isomorphic_and_counts_matter() {
        let d = twisted("tetra", &[1, 1, 1]);
        let n = d.num_crossings();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let turn: Vec<usize> = (0..n).map(|i| 2 * (i % 2)).collect();
        let e = d.relabeled(&perm, &turn);
        assert_ne!(e, d);
        assert!(diagram_isomorphic(&d, &e));
        assert_eq!(canonical_code(&d), canonical_code(&e));
        assert!(!diagram_isomorphic(&d, &twisted("tetra", &[1, 2, 1])));
    }

    #[test]
    fn dualize_twice_is_isomorphic() {
        let d = twisted("target", &[4, 1, 1]);
        let dd = d.dualize().dualize();
        assert!(diagram_isomorphic(&d, &dd));
        assert_eq!(d.dualize().h1(), d.h1());
    }
}
