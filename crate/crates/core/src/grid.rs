//! Batch evaluation of the pipeline over a grid of multipliers.
//!
//! With the `parallel` feature the points are spread over rayon's pool; without it, or
//! through [`evaluate_sequential`], they run one after another. Both return points in grid order.

use serde::Serialize;

use crate::ball::FacetedBall;
use crate::error::Result;
use crate::pairing::FacePairing;
use crate::report::run;
use crate::twist::{Direction, MultiplierFunction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub mul: Vec<u32>,
    pub h1_heegaard: String,
    pub h1_surgery: String,
    pub crossings: usize,
    pub cylinders: Vec<(usize, usize)>,
    pub integral: bool,
}

impl GridPoint {
    pub fn agree(&self) -> bool {
        self.h1_heegaard == self.h1_surgery
    }
}

/// All assignments with every multiplier in `lo..=hi`, last cycle varying fastest.
pub fn multiplier_grid(ncycles: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..ncycles {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |m| {
                    let mut q = p.clone();
                    q.push(m);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn evaluate_point(
    ball: &FacetedBall,
    pairing: &FacePairing,
    mul: &[u32],
    direction: Direction,
) -> Result<GridPoint> {
    let m = MultiplierFunction::new(mul.to_vec())?;
    let p = run(ball, pairing, &m, direction)?;
    Ok(GridPoint {
        mul: mul.to_vec(),
        h1_heegaard: p.report.h1_heegaard,
        h1_surgery: p.report.h1_surgery,
        crossings: p.diagram.num_crossings(),
        cylinders: p.cylinders.pairs(),
        integral: p.report.integral,
    })
}

pub fn evaluate_sequential(
    ball: &FacetedBall,
    pairing: &FacePairing,
    points: &[Vec<u32>],
    direction: Direction,
) -> Result<Vec<GridPoint>> {
    points.iter().map(|m| evaluate_point(ball, pairing, m, direction)).collect()
}

#[cfg(feature = "parallel")]
pub fn evaluate(
    ball: &FacetedBall,
    pairing: &FacePairing,
    points: &[Vec<u32>],
    direction: Direction,
) -> Result<Vec<GridPoint>> {
    use rayon::prelude::*;
    points.par_iter().map(|m| evaluate_point(ball, pairing, m, direction)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn evaluate(
    ball: &FacetedBall,
    pairing: &FacePairing,
    points: &[Vec<u32>],
    direction: Direction,
) -> Result<Vec<GridPoint>> {
    evaluate_sequential(ball, pairing, points, direction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn grid_shape() {
        let g = multiplier_grid(2, 1, 3);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], vec![1, 1]);
        assert_eq!(g[1], vec![1, 2]);
        assert_eq!(multiplier_grid(0, 1, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn both_paths_agree() {
        let ex = registry::load("target").unwrap();
        let pts = multiplier_grid(3, 1, 2);
        let a = evaluate(&ex.ball, &ex.pairing, &pts, Direction::Cw).unwrap();
        let b = evaluate_sequential(&ex.ball, &ex.pairing, &pts, Direction::Cw).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(GridPoint::agree));
    }
}
