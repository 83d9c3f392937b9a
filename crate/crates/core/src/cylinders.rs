//! Horizontal curves, simple and Heegaard cylinders, integrality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::heegaard::{port_of, rotate, Dart, HeegaardDiagram};

/// Segments are the diagonal darts; `follows` is a permutation on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalStructure {
    pub segments: Vec<Dart>,
    /// Index into `segments` of the segment following each segment.
    pub follows: Vec<usize>,
    pub curves: Vec<Vec<usize>>,
    pub curve_of: Vec<usize>,
}

pub fn horizontal_structure(d: &HeegaardDiagram) -> HorizontalStructure {
    let segments: Vec<Dart> = (0..d.num_darts()).filter(|x| port_of(*x) % 2 == 1).collect();
    let index = |x: Dart| x / 2;
    let follows: Vec<usize> = segments
        .iter()
        .map(|&x| {
            // across the diagonal edge, one step on, across the vertical edge, one step back
            let y = rotate(d.link(rotate(d.link(x), 1)), 3);
            index(y)
        })
        .collect();
    let mut curve_of = vec![usize::MAX; segments.len()];
    let mut curves = Vec::new();
    for s in 0..segments.len() {
        if curve_of[s] != usize::MAX {
            continue;
        }
        let mut cur = Vec::new();
        let mut t = s;
        while curve_of[t] == usize::MAX {
            curve_of[t] = curves.len();
            cur.push(t);
            t = follows[t];
        }
        curves.push(cur);
    }
    HorizontalStructure { segments, follows, curves, curve_of }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleCylinder {
    /// The two horizontal curves bounding it.
    pub ends: (usize, usize),
    /// Diagonal edges, each named by its smaller dart.
    pub diagonal_edges: Vec<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeegaardCylinder {
    /// Simple cylinders in chain order.
    pub simple: Vec<usize>,
    pub circumference: usize,
    pub height: usize,
    pub cyclic: bool,
}

impl HeegaardCylinder {
    pub fn diagonal_edges<'a>(&'a self, dec: &'a CylinderDecomposition) -> impl Iterator<Item = Dart> + 'a {
        self.simple.iter().flat_map(move |&s| dec.simple[s].diagonal_edges.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CylinderDecomposition {
    pub simple: Vec<SimpleCylinder>,
    pub heegaard: Vec<HeegaardCylinder>,
    /// Pairs of horizontal curves identified across a gluing of two simple cylinders.
    pub gluings: Vec<(usize, usize)>,
    /// Simple cylinder of every diagonal edge, keyed by its smaller dart.
    pub cylinder_of_edge: BTreeMap<Dart, usize>,
}

impl CylinderDecomposition {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.heegaard.iter().map(|h| (h.circumference, h.height)).collect()
    }
}

pub fn cylinder_decomposition(d: &HeegaardDiagram) -> CylinderDecomposition {
    let hs = horizontal_structure(d);
    let (face_of, nfaces) = d.face_of_darts();
    let mut degree = vec![0; nfaces];
    for &f in &face_of {
        degree[f] += 1;
    }
    let ncurves = hs.curves.len();

    // simple cylinders: a curve and its image across the diagonal edges
    let mut cyl_of_curve = vec![usize::MAX; ncurves];
    let mut simple = Vec::new();
    for o in 0..ncurves {
        if cyl_of_curve[o] != usize::MAX {
            continue;
        }
        let other = hs.curve_of[d.link(hs.segments[hs.curves[o][0]]) / 2];
        let mut edges: Vec<Dart> = hs.curves[o]
            .iter()
            .map(|&s| {
                let x = hs.segments[s];
                x.min(d.link(x))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        cyl_of_curve[o] = simple.len();
        cyl_of_curve[other] = simple.len();
        simple.push(SimpleCylinder { ends: (o, other), diagonal_edges: edges });
    }
    let mut cylinder_of_edge = BTreeMap::new();
    for (i, s) in simple.iter().enumerate() {
        for &e in &s.diagonal_edges {
            cylinder_of_edge.insert(e, i);
        }
    }

    // a segment in a quadrilateral face coincides with the opposite one after homotopy
    let key = |s: usize| -> (bool, usize) {
        let x = hs.segments[s];
        let f = face_of[x];
        if degree[f] == 4 {
            (true, f)
        } else {
            (false, x)
        }
    };
    let mut by_keys: BTreeMap<Vec<(bool, usize)>, Vec<usize>> = BTreeMap::new();
    for (o, cur) in hs.curves.iter().enumerate() {
        let mut ks: Vec<_> = cur.iter().map(|&s| key(s)).collect();
        ks.sort_unstable();
        ks.dedup();
        by_keys.entry(ks).or_default().push(o);
    }
    let mut gluings = Vec::new();
    let mut glued_to = vec![usize::MAX; ncurves];
    for group in by_keys.values() {
        assert!(group.len() <= 2, "more than two horizontal curves share their segments");
        if let [a, b] = group[..] {
            gluings.push((a, b));
            glued_to[a] = b;
            glued_to[b] = a;
        }
    }

    // chains of simple cylinders
    let ns = simple.len();
    let mut used = vec![false; ns];
    let mut heegaard = Vec::new();
    let walk = |start: usize, from_end: usize, used: &mut Vec<bool>| -> (Vec<usize>, bool) {
        // leave `start` through the end opposite `from_end`
        let mut chain = vec![start];
        used[start] = true;
        let mut cur = start;
        let mut entered = from_end;
        loop {
            let s = &simple[cur];
            let out = if s.ends.0 == entered { s.ends.1 } else { s.ends.0 };
            let next_curve = glued_to[out];
            if next_curve == usize::MAX {
                return (chain, false);
            }
            let next = cyl_of_curve[next_curve];
            if next == start {
                return (chain, true);
            }
            if used[next] {
                return (chain, false);
            }
            used[next] = true;
            chain.push(next);
            cur = next;
            entered = next_curve;
        }
    };
    // open chains start at a cylinder with a free end
    for i in 0..ns {
        if used[i] {
            continue;
        }
        let s = &simple[i];
        let free = [s.ends.0, s.ends.1].into_iter().find(|&e| glued_to[e] == usize::MAX);
        if let Some(free_end) = free {
            let (chain, _) = walk(i, free_end, &mut used);
            heegaard.push(chain_cylinder(&simple, chain, false));
        }
    }
    for i in 0..ns {
        if used[i] {
            continue;
        }
        let (chain, cyclic) = walk(i, simple[i].ends.0, &mut used);
        heegaard.push(chain_cylinder(&simple, chain, cyclic));
    }
    heegaard.sort_by_key(|h| h.simple.iter().flat_map(|&s| simple[s].diagonal_edges.iter().copied()).min());
    CylinderDecomposition { simple, heegaard, gluings, cylinder_of_edge }
}

fn chain_cylinder(simple: &[SimpleCylinder], chain: Vec<usize>, cyclic: bool) -> HeegaardCylinder {
    let circumference = simple[chain[0]].diagonal_edges.len();
    assert!(
        chain.iter().all(|&s| simple[s].diagonal_edges.len() == circumference),
        "circumference varies along a Heegaard cylinder"
    );
    HeegaardCylinder { height: chain.len(), simple: chain, circumference, cyclic }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Integrality {
    pub integral: bool,
    /// Height / circumference per Heegaard cylinder, when integral.
    pub multipliers: Option<Vec<u32>>,
}

pub fn integrality(dec: &CylinderDecomposition) -> Integrality {
    let integral = dec.heegaard.iter().all(|h| h.height % h.circumference == 0);
    let multipliers = integral.then(|| dec.heegaard.iter().map(|h| (h.height / h.circumference) as u32).collect());
    Integrality { integral, multipliers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heegaard::twisted_surface;
    use crate::registry;
    use crate::twist::{twist, Direction, MultiplierFunction};

    fn diagram(name: &str, mul: &[u32]) -> HeegaardDiagram {
        let ex = registry::load(name).unwrap();
        let t = twist(&ex.ball, &ex.pairing, &MultiplierFunction::new(mul.to_vec()).unwrap(), Direction::Cw).unwrap();
        twisted_surface(&t).unwrap()
    }

    fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        v.sort_unstable();
        v
    }

    #[test]
    fn follows_is_a_permutation() {
        let d = diagram("lens31", &[1]);
        let hs = horizontal_structure(&d);
        let mut seen = vec![false; hs.follows.len()];
        for &f in &hs.follows {
            assert!(!seen[f]);
            seen[f] = true;
        }
        assert_eq!(hs.segments.len(), 2 * d.num_crossings());
    }

    #[test]
    fn target_cylinders() {
        let dec = cylinder_decomposition(&diagram("target", &[4, 1, 1]));
        assert_eq!(sorted(dec.pairs()), vec![(1, 4), (2, 2), (2, 2)]);
        let i = integrality(&dec);
        assert!(i.integral);
    }

    #[test]
    fn tetra_cylinders() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 3), (1, 2, 1)] {
            let dec = cylinder_decomposition(&diagram("tetra", &[a, b, c]));
            assert_eq!(sorted(dec.pairs()), sorted(vec![(1, a as usize), (4, 4 * b as usize), (1, c as usize)]));
        }
    }

    #[test]
    fn lens_cylinder() {
        let dec = cylinder_decomposition(&diagram("lens31", &[1]));
        assert_eq!(dec.pairs(), vec![(3, 3)]);
    }

    #[test]
    fn ccw_twist_is_integral_too() {
        let ex = registry::load("target").unwrap();
        let mul = MultiplierFunction::new(vec![4, 1, 1]).unwrap();
        let t = twist(&ex.ball, &ex.pairing, &mul, Direction::Ccw).unwrap();
        let dec = cylinder_decomposition(&twisted_surface(&t).unwrap());
        assert_eq!(sorted(dec.pairs()), vec![(1, 4), (2, 2), (2, 2)]);
    }

    #[test]
    fn partition_identity() {
        for name in registry::NAMES {
            let ex = registry::load(name).unwrap();
            let mul = vec![2; ex.cycle_lengths.len()];
            let d = diagram(name, &mul);
            let dec = cylinder_decomposition(&d);
            let total: usize = dec.heegaard.iter().map(|h| h.circumference * h.height).sum();
            assert_eq!(total, d.num_crossings(), "{name}");
            assert_eq!(dec.cylinder_of_edge.len(), d.num_crossings());
        }
    }
}
