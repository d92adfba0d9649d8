use nalgebra::{DMatrix, DVector};

use super::DENSE_LIMIT;
use crate::error::{Error, Result};
use crate::walk::WeightedGraph;

fn transient_system(g: &WeightedGraph, targets: &[usize]) -> Result<(Vec<usize>, DMatrix<f64>)> {
    let n = g.vertex_count();
    if n > DENSE_LIMIT {
        return Err(Error::SizeLimit {
            what: "absorbing solve vertices",
            limit: DENSE_LIMIT,
            got: n,
        });
    }
    if targets.is_empty() || targets.iter().any(|&t| t >= n) {
        return Err(Error::invalid(
            "targets must be a non-empty set of vertices",
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut is_target = vec![false; n];
    for &t in targets {
        is_target[t] = true;
    }
    let transient: Vec<usize> = (0..n).filter(|&v| !is_target[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in transient.iter().enumerate() {
        index[v] = i;
    }
    // I − Q over the transient vertices
    let m = transient.len();
    let mut a = DMatrix::identity(m, m);
    for (i, &v) in transient.iter().enumerate() {
        let kv = g.vertex_weight(v);
        for &(w, e) in g.neighbours(v) {
            if !is_target[w] {
                a[(i, index[w])] -= g.edges()[e].2 / kv;
            }
        }
    }
    Ok((transient, a))
}

/// Expected steps to first reach `targets` from each vertex (0 on targets).
pub fn expected_absorption_times(g: &WeightedGraph, targets: &[usize]) -> Result<Vec<f64>> {
    let (transient, a) = transient_system(g, targets)?;
    let mut out = vec![0.0; g.vertex_count()];
    if transient.is_empty() {
        return Ok(out);
    }
    let ones = DVector::from_element(transient.len(), 1.0);
    let h = a.lu().solve(&ones).ok_or(Error::Disconnected)?;
    for (i, &v) in transient.iter().enumerate() {
        out[v] = h[i];
    }
    Ok(out)
}

/// `probs[v][j]`: probability that the walk from `v` first meets the targets
/// at `targets[j]`. A target start is absorbed immediately.
pub fn absorption_probabilities(g: &WeightedGraph, targets: &[usize]) -> Result<Vec<Vec<f64>>> {
    let (transient, a) = transient_system(g, targets)?;
    let n = g.vertex_count();
    let mut out = vec![vec![0.0; targets.len()]; n];
    for (j, &t) in targets.iter().enumerate() {
        out[t][j] = 1.0;
    }
    if transient.is_empty() {
        return Ok(out);
    }
    let lu = a.lu();
    for (j, &t) in targets.iter().enumerate() {
        let b = DVector::from_iterator(
            transient.len(),
            transient.iter().map(|&v| {
                g.neighbours(v)
                    .iter()
                    .filter(|&&(w, _)| w == t)
                    .map(|&(_, e)| g.edges()[e].2)
                    .sum::<f64>()
                    / g.vertex_weight(v)
            }),
        );
        let x = lu.solve(&b).ok_or(Error::Disconnected)?;
        for (i, &v) in transient.iter().enumerate() {
            out[v][j] = x[i];
        }
    }
    Ok(out)
}
