use nalgebra::DMatrix;
use serde::Serialize;

use super::{DENSE_LIMIT, MATTHEWS_LIMIT};
use crate::error::{Error, Result};
use crate::walk::WeightedGraph;

/// Pseudo-inverse data for all-pairs effective resistance: the inverse of the
/// Laplacian grounded at vertex 0, padded with a zero row and column.
#[derive(Clone, Debug)]
pub struct ResistanceMatrix {
    green: DMatrix<f64>,
    total_weight: f64,
}

impl ResistanceMatrix {
    pub fn new(g: &WeightedGraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > DENSE_LIMIT {
            return Err(Error::SizeLimit {
                what: "resistance solve vertices",
                limit: DENSE_LIMIT,
                got: n,
            });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut green = DMatrix::zeros(n, n);
        if n > 1 {
            let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
            for &(u, v, k) in g.edges() {
                if u == v {
                    continue;
                }
                if u > 0 {
                    lap[(u - 1, u - 1)] += k;
                }
                if v > 0 {
                    lap[(v - 1, v - 1)] += k;
                }
                if u > 0 && v > 0 {
                    lap[(u - 1, v - 1)] -= k;
                    lap[(v - 1, u - 1)] -= k;
                }
            }
            let inv = lap.cholesky().ok_or(Error::Disconnected)?.inverse();
            green.view_mut((1, 1), (n - 1, n - 1)).copy_from(&inv);
        }
        Ok(ResistanceMatrix {
            green,
            total_weight: g.total_weight(),
        })
    }

    pub fn len(&self) -> usize {
        self.green.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.green.nrows() == 0
    }

    pub fn resistance(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        let g = &self.green;
        (g[(u, u)] + g[(v, v)] - 2.0 * g[(u, v)]).max(0.0)
    }

    /// K(u, v) = 2 κ(E) R(u, v).
    pub fn commute_time(&self, u: usize, v: usize) -> f64 {
        2.0 * self.total_weight * self.resistance(u, v)
    }

    /// ½ (min pairwise commute time in `set`) ln |set|.
    pub fn matthews(&self, set: &[usize]) -> f64 {
        let mut min = f64::INFINITY;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                min = min.min(self.commute_time(a, b));
            }
        }
        0.5 * min * (set.len() as f64).ln()
    }
}

fn check_pair(g: &WeightedGraph, u: usize, v: usize) -> Result<()> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::invalid(format!(
            "vertex pair ({u}, {v}) out of range"
        )));
    }
    Ok(())
}

pub fn effective_resistance(g: &WeightedGraph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    if u == v {
        return Ok(0.0);
    }
    Ok(ResistanceMatrix::new(g)?.resistance(u, v))
}

pub fn commute_time(g: &WeightedGraph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(ResistanceMatrix::new(g)?.commute_time(u, v))
}

/// Matthews lower bound on the vertex cover time from the set `set`.
pub fn matthews_lower_bound(g: &WeightedGraph, set: &[usize]) -> Result<f64> {
    if set.len() < 2 {
        return Err(Error::invalid("Matthews set needs at least two vertices"));
    }
    for &v in set {
        check_pair(g, v, v)?;
    }
    Ok(ResistanceMatrix::new(g)?.matthews(set))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatthewsBound {
    pub bound: f64,
    pub set: Vec<usize>,
}

/// Best Matthews bound over every vertex subset of size at least two.
pub fn best_matthews_bound(g: &WeightedGraph) -> Result<MatthewsBound> {
    let n = g.vertex_count();
    if n > MATTHEWS_LIMIT {
        return Err(Error::SizeLimit {
            what: "Matthews subset search vertices",
            limit: MATTHEWS_LIMIT,
            got: n,
        });
    }
    if n < 2 {
        return Err(Error::invalid("Matthews set needs at least two vertices"));
    }
    let r = ResistanceMatrix::new(g)?;
    let size = 1usize << n;
    // min_pair[mask]: least commute time over pairs inside mask
    let mut min_pair = vec![f64::INFINITY; size];
    let mut best = (f64::NEG_INFINITY, 0usize);
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut m = min_pair[rest];
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            m = m.min(r.commute_time(low, j));
            bits &= bits - 1;
        }
        min_pair[mask] = m;
        let k = mask.count_ones();
        if k >= 2 {
            let bound = 0.5 * m * (k as f64).ln();
            if bound > best.0 {
                best = (bound, mask);
            }
        }
    }
    Ok(MatthewsBound {
        bound: best.0,
        set: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(),
    })
}
