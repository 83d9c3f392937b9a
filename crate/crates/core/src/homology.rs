//! Abelian group invariants via Smith normal form over the integers.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct H1Invariant {
    pub free_rank: usize,
    /// Elementary divisors, each at least 2, each dividing the next.
    pub torsion: Vec<u64>,
}

impl H1Invariant {
    pub fn free(rank: usize) -> Self {
        H1Invariant { free_rank: rank, torsion: Vec::new() }
    }

    /// Group Z^rank ⊕ Z/o₁ ⊕ ... in any order; zero orders count as free summands.
    pub fn from_orders(rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, &o) in orders.iter().enumerate() {
            rows[i][i] = o as i64;
        }
        let mut h = cokernel(n, &rows);
        h.free_rank += rank;
        h
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for H1Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form (nonzero entries only, in divisibility order).
pub fn smith_diagonal(rows: &[Vec<i128>], ncols: usize) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.clone()).collect();
    let m = a.len();
    let n = ncols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero pivot in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for i in t..m {
                        a[i][j] -= q * a[i][t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the rest by the pivot
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Cokernel of the relation matrix (one row per relation) on `ngens` generators.
pub fn cokernel(ngens: usize, rows: &[Vec<i64>]) -> H1Invariant {
    let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    cokernel_wide(ngens, &wide)
}

pub fn cokernel_wide(ngens: usize, rows: &[Vec<i128>]) -> H1Invariant {
    let d = smith_diagonal(rows, ngens);
    let torsion = d.iter().filter(|&&x| x > 1).map(|&x| x as u64).collect();
    H1Invariant { free_rank: ngens - d.len(), torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_relators_abelianized() {
        // x₁x₂⁻¹ and x₂⁵x₁⁻¹
        let h = cokernel(2, &[vec![1, -1], vec![-1, 5]]);
        assert_eq!(h, H1Invariant { free_rank: 0, torsion: vec![4] });
        assert_eq!(h.to_string(), "Z/4");
    }

    #[test]
    fn empty_relators() {
        assert_eq!(cokernel(1, &[]), H1Invariant::free(1));
        assert_eq!(cokernel(0, &[]).to_string(), "0");
    }

    #[test]
    fn divisibility_chain() {
        let h = H1Invariant::from_orders(0, &[4, 6]);
        assert_eq!(h.torsion, vec![2, 12]);
        assert_eq!(H1Invariant::from_orders(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(H1Invariant::from_orders(0, &[1, 1]), H1Invariant::free(0));
        assert_eq!(H1Invariant::from_orders(1, &[0, 5]).to_string(), "Z^2 + Z/5");
    }

    #[test]
    fn needs_divisibility_repair() {
        // diag(2, 3) already diagonal but not in Smith form
        let d = smith_diagonal(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(d, vec![1, 6]);
    }
}
