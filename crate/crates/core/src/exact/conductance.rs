use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::{transition_matrix, EXACT_CONDUCTANCE_LIMIT};
use crate::error::{Error, Result};
use crate::walk::WeightedGraph;

/// Minimum of `κ(∂S)/κ(S)` over non-empty `S` with `κ(S) ≤ κ(V)/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conductance {
    pub phi: f64,
    pub set: Vec<usize>,
}

/// Two-sided estimate for graphs too large to enumerate. The lower value is
/// the Cheeger bound `gap/2`; the upper value is the best spectral sweep cut.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConductanceBounds {
    pub cheeger_lower: f64,
    pub sweep_upper: f64,
    pub sweep_set: Vec<usize>,
}

fn cut_ratio(g: &WeightedGraph, inside: &[bool]) -> (f64, f64) {
    let mut boundary = 0.0;
    for &(u, v, k) in g.edges() {
        if inside[u] != inside[v] {
            boundary += k;
        }
    }
    let vol: f64 = (0..g.vertex_count())
        .filter(|&v| inside[v])
        .map(|v| g.vertex_weight(v))
        .sum();
    (boundary, vol)
}

/// Exact conductance by Gray-code enumeration of all vertex subsets.
pub fn conductance_exact(g: &WeightedGraph) -> Result<Conductance> {
    let n = g.vertex_count();
    if n > EXACT_CONDUCTANCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact conductance vertices",
            limit: EXACT_CONDUCTANCE_LIMIT,
            got: n,
        });
    }
    if n < 2 {
        return Err(Error::invalid("conductance needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let half = 0.5 * (0..n).map(|v| g.vertex_weight(v)).sum::<f64>();
    let slack = 1e-12 * half;
    let mut inside = vec![false; n];
    let (mut boundary, mut vol) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0u64);
    let mut mask = 0u64;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let adding = !inside[v];
        inside[v] = adding;
        mask ^= 1 << v;
        let sign = if adding { 1.0 } else { -1.0 };
        vol += sign * g.vertex_weight(v);
        for &(w, e) in g.neighbours(v) {
            if w == v {
                continue;
            }
            let k = g.edges()[e].2;
            boundary += if inside[w] { -sign * k } else { sign * k };
        }
        if vol <= half + slack && vol > 0.0 {
            let phi = boundary / vol;
            if phi < best.0 - 1e-12 {
                best = (phi, mask);
            }
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
    let mut flags = vec![false; n];
    for &v in &set {
        flags[v] = true;
    }
    let (b, s) = cut_ratio(g, &flags);
    Ok(Conductance { phi: b / s, set })
}

/// Cheeger lower bound and sweep-cut upper bound from the second eigenvector.
pub fn conductance_bounds(g: &WeightedGraph) -> Result<ConductanceBounds> {
    let p = transition_matrix(g, false)?;
    let n = p.len();
    if n < 2 {
        return Err(Error::invalid("conductance needs at least two vertices"));
    }
    let dense = p.to_dense()?;
    let sq: Vec<f64> = p.pi().iter().map(|x| x.sqrt()).collect();
    let s = DMatrix::from_fn(n, n, |x, y| {
        0.5 * (sq[x] / sq[y] * dense[(x, y)] + sq[y] / sq[x] * dense[(y, x)])
    });
    let eig = SymmetricEigen::new(s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let lambda2 = eig.eigenvalues[order[1]];
    let vec2 = eig.eigenvectors.column(order[1]);
    let mut sweep: Vec<usize> = (0..n).collect();
    sweep.sort_by(|&a, &b| (vec2[a] / sq[a]).total_cmp(&(vec2[b] / sq[b])));

    let total: f64 = (0..n).map(|v| g.vertex_weight(v)).sum();
    let mut inside = vec![false; n];
    let mut best = (f64::INFINITY, 0usize);
    for (i, &v) in sweep[..n - 1].iter().enumerate() {
        inside[v] = true;
        let (b, vol) = cut_ratio(g, &inside);
        let phi = b / vol.min(total - vol);
        if phi < best.0 {
            best = (phi, i + 1);
        }
    }
    let mut set: Vec<usize> = sweep[..best.1].to_vec();
    let vol: f64 = set.iter().map(|&v| g.vertex_weight(v)).sum();
    if vol > total / 2.0 {
        set = sweep[best.1..].to_vec();
    }
    set.sort_unstable();
    Ok(ConductanceBounds {
        cheeger_lower: (1.0 - lambda2) / 2.0,
        sweep_upper: best.0,
        sweep_set: set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn unit(g: &Multigraph) -> WeightedGraph {
        WeightedGraph::from_multigraph(g)
    }

    #[test]
    fn small_examples() {
        let k4 = conductance_exact(&unit(&Multigraph::complete(4))).unwrap();
        assert!((k4.phi - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(k4.set.len(), 2);
        let c6 = conductance_exact(&unit(&Multigraph::cycle(6))).unwrap();
        assert!((c6.phi - 1.0 / 3.0).abs() < 1e-12);
        let e = conductance_exact(&unit(&Multigraph::path(2))).unwrap();
        assert_eq!(e.phi, 1.0);
    }

    #[test]
    fn weighted_edge_counts_conductance() {
        // weights 1, 5, 1 on a path: the middle cut has 5 / 7
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (1, 2, 5.0), (2, 3, 1.0)]).unwrap();
        let c = conductance_exact(&g).unwrap();
        assert!((c.phi - 5.0 / 7.0).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn size_guard() {
        let g = unit(&Multigraph::cycle(EXACT_CONDUCTANCE_LIMIT + 1));
        assert!(matches!(
            conductance_exact(&g),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn bounds_bracket_exact() {
        for g in [
            Multigraph::cycle(10),
            Multigraph::petersen(),
            Multigraph::complete(6),
        ] {
            let g = unit(&g);
            let exact = conductance_exact(&g).unwrap().phi;
            let b = conductance_bounds(&g).unwrap();
            assert!(b.cheeger_lower <= exact + 1e-12);
            assert!(b.sweep_upper >= exact - 1e-12);
        }
        let b = conductance_bounds(&unit(&Multigraph::cycle(10))).unwrap();
        assert!((b.sweep_upper - 0.2).abs() < 1e-12);
    }
}
