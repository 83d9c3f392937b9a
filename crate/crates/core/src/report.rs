//! The whole pipeline for one (P, ε, mul, direction), as a serializable report.

use serde::Serialize;

use crate::ball::{validate_ball, FacetedBall, Side};
use crate::cylinders::{cylinder_decomposition, integrality, CylinderDecomposition};
use crate::error::{Error, Result};
use crate::heegaard::{crossing_of, edge_pairing_surface_unchecked, twisted_surface, DiagramStats, HeegaardDiagram};
use crate::homology::H1Invariant;
use crate::inverse::recover_model;
use crate::pairing::{cycle_diagram, cycle_of_edges, edge_cycles, validate_pairing, FacePairing};
use crate::surgery::{corridor_complex, h1_from_surgery, link_diagram, linking_matrix, ComponentKind, LinkingData};
use crate::twist::{twist, Direction, MultiplierFunction, Twisted};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub index: usize,
    pub length: usize,
    pub multiplier: u32,
    pub diagram: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CylinderReport {
    pub circumference: usize,
    pub height: usize,
    pub cyclic: bool,
    /// Edge cycle of the model the cylinder comes from.
    pub cycle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub kind: String,
    pub framing: String,
    pub writhe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub components: Vec<ComponentReport>,
    pub crossings: usize,
    pub lk: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub name: String,
    pub direction: String,
    pub cycles: Vec<CycleReport>,
    pub q_vertices: usize,
    pub q_edges: usize,
    pub q_faces: usize,
    pub diagram: DiagramStats,
    pub h1_heegaard: String,
    pub cylinders: Vec<CylinderReport>,
    pub integral: bool,
    pub recovered_multipliers: Option<Vec<u32>>,
    pub retwist_isomorphic: Option<bool>,
    pub link: LinkReport,
    pub h1_surgery: String,
    pub routes_agree: bool,
}

/// Everything computed along the way, for callers that need more than the report.
pub struct Pipeline {
    pub twisted: Twisted,
    pub diagram: HeegaardDiagram,
    pub cylinders: CylinderDecomposition,
    pub linking: LinkingData,
    pub h1_heegaard: H1Invariant,
    pub h1_surgery: H1Invariant,
    pub report: PipelineReport,
}

/// Validation of a ball and pairing; errors carry the report text.
pub fn check(ball: &FacetedBall, pairing: &FacePairing) -> Result<()> {
    let r = validate_ball(ball);
    if !r.is_empty() {
        return Err(Error::InvalidBall(r.to_string()));
    }
    let r = validate_pairing(ball, pairing);
    if !r.is_empty() {
        return Err(Error::InvalidPairing(r.to_string()));
    }
    Ok(())
}

/// Model edge cycle of every Heegaard cylinder, read off the crossings of its diagonal edges.
pub fn cylinder_cycles(
    ball: &FacetedBall,
    pairing: &FacePairing,
    t: &Twisted,
    dec: &CylinderDecomposition,
) -> Result<Vec<Option<usize>>> {
    let cycles = edge_cycles(ball, pairing)?;
    let cycle_of = cycle_of_edges(ball, &cycles);
    let (_, origin) = edge_pairing_surface_unchecked(&t.q.ball, &t.delta.pairing);
    let cycle_of_crossing = |c: usize| {
        let (p, j) = origin[c];
        let rep = t.delta.pairing.pairs[p].rep;
        let qe = t.q.ball.side(Side { face: rep, pos: j }).edge;
        cycle_of[t.q.parent_edge[qe]]
    };
    Ok(dec
        .heegaard
        .iter()
        .map(|h| {
            let mut votes = std::collections::BTreeMap::new();
            for x in h.diagonal_edges(dec) {
                *votes.entry(cycle_of_crossing(crossing_of(x))).or_insert(0usize) += 1;
            }
            // the cycle most crossings belong to; boundary edges reach into neighbours
            let best = votes.values().copied().max()?;
            let top: Vec<usize> = votes.iter().filter(|(_, &n)| n == best).map(|(&c, _)| c).collect();
            (top.len() == 1).then(|| top[0])
        })
        .collect())
}

pub fn run(
    ball: &FacetedBall,
    pairing: &FacePairing,
    mul: &MultiplierFunction,
    direction: Direction,
) -> Result<Pipeline> {
    check(ball, pairing)?;
    let cycles = edge_cycles(ball, pairing)?;
    if mul.len() != cycles.len() {
        return Err(Error::MissingMultiplier(mul.len().min(cycles.len())));
    }
    let twisted = twist(ball, pairing, mul, direction)?;
    let diagram = twisted_surface(&twisted)?;
    let cylinders = cylinder_decomposition(&diagram);
    let owner = cylinder_cycles(ball, pairing, &twisted, &cylinders)?;
    let integ = integrality(&cylinders);
    let recovered = recover_model(&diagram).ok().and_then(|r| r.model);

    let corridor = corridor_complex(ball, pairing)?;
    let link = link_diagram(ball, pairing, &corridor, mul)?;
    let linking = linking_matrix(&link)?;
    let h1_heegaard = diagram.h1();
    let h1_surgery = h1_from_surgery(&linking);

    let mut cyl: Vec<CylinderReport> = cylinders
        .heegaard
        .iter()
        .zip(&owner)
        .map(|(h, &cycle)| CylinderReport { circumference: h.circumference, height: h.height, cyclic: h.cyclic, cycle })
        .collect();
    cyl.sort_by_key(|c| c.cycle.unwrap_or(usize::MAX));
    let report = PipelineReport {
        name: ball.name.clone(),
        direction: direction.to_string(),
        cycles: cycles
            .iter()
            .map(|c| CycleReport {
                index: c.index,
                length: c.len(),
                multiplier: mul.get(c.index),
                diagram: cycle_diagram(ball, pairing, c),
            })
            .collect(),
        q_vertices: twisted.q.ball.num_vertices(),
        q_edges: twisted.q.ball.num_edges(),
        q_faces: twisted.q.ball.num_faces(),
        diagram: diagram.stats(),
        h1_heegaard: h1_heegaard.to_string(),
        cylinders: cyl,
        integral: integ.integral,
        recovered_multipliers: recovered.as_ref().map(|m| m.multipliers.values().to_vec()),
        retwist_isomorphic: recovered.as_ref().map(|m| m.retwist_isomorphic),
        link: LinkReport {
            components: link
                .kinds
                .iter()
                .enumerate()
                .map(|(i, k)| ComponentReport {
                    kind: match k {
                        ComponentKind::Face { pair } => format!("face {pair}"),
                        ComponentKind::Edge { cycle } => format!("edge {cycle}"),
                    },
                    framing: {
                        let (p, q) = linking.framings[i];
                        if q == 1 {
                            p.to_string()
                        } else {
                            format!("{p}/{q}")
                        }
                    },
                    writhe: link.writhes[i],
                })
                .collect(),
            crossings: link.crossings.len(),
            lk: linking.lk.clone(),
        },
        h1_surgery: h1_surgery.to_string(),
        routes_agree: h1_heegaard == h1_surgery,
    };
    Ok(Pipeline { twisted, diagram, cylinders, linking, h1_heegaard, h1_surgery, report })
}

pub fn report_text(r: &PipelineReport) -> String {
    let mut out = format!("{} ({})\n", r.name, r.direction);
    for c in &r.cycles {
        out.push_str(&format!("cycle {} length {} mul {}: {}\n", c.index, c.length, c.multiplier, c.diagram));
    }
    out.push_str(&format!("Q: {} vertices, {} edges, {} faces\n", r.q_vertices, r.q_edges, r.q_faces));
    let d = &r.diagram;
    out.push_str(&format!(
        "diagram: genus {}, {} vertical, {} diagonal, {} crossings\n",
        d.genus, d.num_vertical, d.num_diagonal, d.num_crossings
    ));
    let cyl: Vec<String> = r.cylinders.iter().map(|c| format!("({},{})", c.circumference, c.height)).collect();
    out.push_str(&format!("cylinders: {} {}\n", cyl.join(" "), if r.integral { "integral" } else { "not integral" }));
    let comps: Vec<String> = r.link.components.iter().map(|c| format!("{} [{}]", c.kind, c.framing)).collect();
    out.push_str(&format!("link: {} crossings, {}\n", r.link.crossings, comps.join(", ")));
    out.push_str(&format!("H1 heegaard: {}\nH1 surgery: {}\n", r.h1_heegaard, r.h1_surgery));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn cylinders_follow_their_cycles() {
        let ex = registry::load("tetra").unwrap();
        let mul = MultiplierFunction::new(vec![2, 1, 3]).unwrap();
        let p = run(&ex.ball, &ex.pairing, &mul, Direction::Cw).unwrap();
        let got: Vec<(usize, usize, Option<usize>)> =
            p.report.cylinders.iter().map(|c| (c.circumference, c.height, c.cycle)).collect();
        assert_eq!(got, vec![(1, 2, Some(0)), (4, 4, Some(1)), (1, 3, Some(2))]);
        assert!(p.report.routes_agree);
    }

    #[test]
    fn every_registry_entry_runs() {
        for name in registry::NAMES {
            let ex = registry::load(name).unwrap();
            let mul = MultiplierFunction::ones(ex.cycle_lengths.len());
            let p = run(&ex.ball, &ex.pairing, &mul, ex.direction).unwrap();
            assert!(p.report.cylinders.iter().all(|c| c.cycle.is_some()), "{name}");
            assert_eq!(p.report.h1_heegaard, ex.expected_h1(mul.values()).to_string(), "{name}");
            assert!(!report_text(&p.report).is_empty());
        }
    }
}
