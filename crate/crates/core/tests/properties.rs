use proptest::prelude::*;

use twistfp::ball::{Edge, Face, FacetedBall, SignedEdge};
use twistfp::cylinders::{cylinder_decomposition, integrality};
use twistfp::heegaard::{
    canonical_code, diagram_isomorphic, parse_diagram, serialize_diagram, twisted_surface, HeegaardDiagram,
};
use twistfp::inverse::recover_model;
use twistfp::io::{document_with_multipliers, emit_input, parse_input};
use twistfp::pairing::edge_cycles;
use twistfp::registry::{self, Example};
use twistfp::report::run;
use twistfp::surgery::{
    corridor_complex, corridor_complex_with, h1_from_surgery, link_diagram, linking_matrix, TieBreak,
};
use twistfp::twist::{twist, Direction, MultiplierFunction};

fn case() -> impl Strategy<Value = (Example, Vec<u32>, Direction)> {
    (0..registry::NAMES.len(), any::<bool>()).prop_flat_map(|(i, ccw)| {
        let ex = registry::load(registry::NAMES[i]).unwrap();
        let n = ex.cycle_lengths.len();
        let dir = if ccw { Direction::Ccw } else { Direction::Cw };
        (Just(ex), prop::collection::vec(1u32..=3, n), Just(dir))
    })
}

fn diagram(ex: &Example, mul: &[u32], dir: Direction) -> HeegaardDiagram {
    let m = MultiplierFunction::new(mul.to_vec()).unwrap();
    twisted_surface(&twist(&ex.ball, &ex.pairing, &m, dir).unwrap()).unwrap()
}

/// Same ball with some edges turned around; nothing about the manifold changes.
fn flip_edges(ball: &FacetedBall, flip: &[bool]) -> FacetedBall {
    let edges = ball
        .edges
        .iter()
        .zip(flip)
        .map(|(e, &f)| if f { Edge { id: e.id.clone(), tail: e.head, head: e.tail } } else { e.clone() })
        .collect();
    let faces = ball
        .faces
        .iter()
        .map(|f| Face {
            id: f.id.clone(),
            word: f.word.iter().map(|s| SignedEdge::new(s.edge, s.forward != flip[s.edge])).collect(),
        })
        .collect();
    FacetedBall::new(ball.name.clone(), ball.vertices.clone(), edges, faces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn diagrams_are_four_valent_alternating_with_even_faces((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(d.num_darts(), 4 * d.num_crossings());
        // ports alternate vertical and diagonal, so every face has even length
        for f in d.faces() {
            prop_assert_eq!(f.len() % 2, 0);
        }
        let curves = d.vertical_curves().len() + d.diagonal_curves().len();
        prop_assert_eq!(d.vertical_curves().len(), d.genus());
        prop_assert_eq!(curves, 2 * d.genus());
    }

    #[test]
    fn twisted_quotients_have_one_vertex((ex, mul, dir) in case()) {
        let m = MultiplierFunction::new(mul).unwrap();
        let t = twist(&ex.ball, &ex.pairing, &m, dir).unwrap();
        prop_assert_eq!(t.quotient.vertices, 1);
        prop_assert_eq!(t.quotient.chi, 0);
    }

    #[test]
    fn cylinders_partition_the_crossings((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        let dec = cylinder_decomposition(&d);
        let total: usize = dec.heegaard.iter().map(|h| h.circumference * h.height).sum();
        prop_assert_eq!(total, d.num_crossings());
    }

    #[test]
    fn twisted_diagrams_are_integral((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        let integ = integrality(&cylinder_decomposition(&d));
        prop_assert!(integ.integral);
        let mut got = integ.multipliers.unwrap();
        let mut want = mul.clone();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn dualizing_keeps_h1((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        prop_assert_eq!(d.dualize().h1(), d.h1());
        prop_assert!(diagram_isomorphic(&d.dualize().dualize(), &d));
    }

    #[test]
    fn relabeling_is_an_isomorphism((ex, mul, dir) in case(), seed in any::<u64>()) {
        let d = diagram(&ex, &mul, dir);
        let n = d.num_crossings();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let turn: Vec<usize> = (0..n).map(|i| 2 * ((seed >> (i % 64)) as usize & 1)).collect();
        let r = d.relabeled(&perm, &turn);
        prop_assert!(diagram_isomorphic(&r, &d));
        prop_assert_eq!(canonical_code(&r), canonical_code(&d));
        prop_assert_eq!(r.h1(), d.h1());
    }

    #[test]
    fn linking_matrices_are_symmetric((ex, mul, _dir) in case()) {
        let m = MultiplierFunction::new(mul).unwrap();
        let corridor = corridor_complex(&ex.ball, &ex.pairing).unwrap();
        let link = link_diagram(&ex.ball, &ex.pairing, &corridor, &m).unwrap();
        let data = linking_matrix(&link).unwrap();
        let n = data.lk.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(data.lk[i][j], data.lk[j][i]);
            }
        }
        prop_assert_eq!(data.matrix.len(), n);
    }

    #[test]
    fn surgery_route_ignores_the_tie_break((ex, mul, _dir) in case()) {
        let m = MultiplierFunction::new(mul).unwrap();
        let h = |order| {
            let c = corridor_complex_with(&ex.ball, &ex.pairing, order).unwrap();
            h1_from_surgery(&linking_matrix(&link_diagram(&ex.ball, &ex.pairing, &c, &m).unwrap()).unwrap())
        };
        prop_assert_eq!(h(TieBreak::Ascending), h(TieBreak::Descending));
    }

    #[test]
    fn both_routes_agree((ex, mul, dir) in case()) {
        let m = MultiplierFunction::new(mul.clone()).unwrap();
        let p = run(&ex.ball, &ex.pairing, &m, dir).unwrap();
        prop_assert_eq!(&p.h1_heegaard, &p.h1_surgery);
        prop_assert_eq!(p.h1_heegaard, ex.expected_h1(&mul));
    }

    #[test]
    fn edge_orientation_does_not_matter((ex, mul, dir) in case(), bits in any::<u64>()) {
        let flip: Vec<bool> = (0..ex.ball.num_edges()).map(|i| bits >> (i % 64) & 1 == 1).collect();
        let b = flip_edges(&ex.ball, &flip);
        let m = MultiplierFunction::new(mul.clone()).unwrap();
        let before: Vec<usize> = edge_cycles(&ex.ball, &ex.pairing).unwrap().iter().map(|c| c.len()).collect();
        let after: Vec<usize> = edge_cycles(&b, &ex.pairing).unwrap().iter().map(|c| c.len()).collect();
        prop_assert_eq!(before, after);
        let p = run(&b, &ex.pairing, &m, dir).unwrap();
        prop_assert_eq!(&p.h1_heegaard, &p.h1_surgery);
        prop_assert_eq!(p.h1_heegaard, ex.expected_h1(&mul));
    }

    #[test]
    fn input_documents_round_trip((ex, mul, dir) in case()) {
        let m = MultiplierFunction::new(mul).unwrap();
        let doc = document_with_multipliers(ex.ball.clone(), ex.pairing.clone(), &m, dir).unwrap();
        let back = parse_input(&emit_input(&doc)).unwrap();
        prop_assert_eq!(back.multipliers().unwrap(), m);
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn diagrams_round_trip_through_text((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        let back = parse_diagram(&serialize_diagram(&d)).unwrap();
        prop_assert_eq!(back.links(), d.links());
    }

    #[test]
    fn recovery_returns_the_multipliers((ex, mul, dir) in case()) {
        let d = diagram(&ex, &mul, dir);
        let model = recover_model(&d).unwrap().model.unwrap();
        prop_assert!(model.retwist_isomorphic);
        let cycles = edge_cycles(&model.ball, &model.pairing).unwrap();
        let mut got: Vec<(usize, u32)> = cycles.iter().map(|c| (c.len(), model.multipliers.get(c.index))).collect();
        let mut want: Vec<(usize, u32)> = ex.cycle_lengths.iter().copied().zip(mul.iter().copied()).collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}
