//! Weighted surrogate of a subdivided graph: long induced paths are cut into
//! sub-paths of length about `ℓ*`, each contracted to one edge of conductance
//! `ℓ*/ℓ_Q`.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SubdividedGraph};
use crate::rng::trial_rng;
use crate::walk::{cover_stats_random_start, CoverMode, CoverStats, WalkOptions, WeightedGraph};

/// One edge of the surrogate: the kernel edge it came from and the length of
/// the sub-path it replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub kernel_edge: usize,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct SurrogateGraph {
    graph: WeightedGraph,
    pieces: Vec<Piece>,
    ell_star: usize,
    /// surrogate vertex -> vertex of the expanded graph
    to_expanded: Vec<usize>,
}

impl SurrogateGraph {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn ell_star(&self) -> usize {
        self.ell_star
    }

    pub fn to_expanded(&self) -> &[usize] {
        &self.to_expanded
    }

    /// Lines `f_id e_id ell_Q`, one per surrogate edge.
    pub fn mapping_text(&self) -> String {
        self.pieces
            .iter()
            .enumerate()
            .map(|(f, p)| format!("{f} {} {}\n", p.kernel_edge, p.length))
            .collect()
    }
}

/// Sub-path lengths for a path of length `len`: `len` itself when it is
/// shorter than `ell_star`, otherwise `p − 1` copies of `ell_star` and one of
/// `ell_star + q` where `len = p·ell_star + q`. The long piece comes last.
pub fn split_lengths(len: usize, ell_star: usize) -> Vec<usize> {
    if len < ell_star {
        return vec![len];
    }
    let (p, q) = (len / ell_star, len % ell_star);
    let mut out = vec![ell_star; p];
    out[p - 1] += q;
    out
}

/// Total conductance contributed by one kernel edge of length `len`.
pub fn kernel_edge_weight(len: usize, ell_star: usize) -> f64 {
    split_lengths(len, ell_star)
        .iter()
        .map(|&l| ell_star as f64 / l as f64)
        .sum()
}

/// Default `ℓ* = max(1, ⌊1/(ξω)⌋)`.
pub fn default_ell_star(xi: f64, omega: f64) -> usize {
    let v = (1.0 / (xi * omega)).floor();
    if v.is_finite() && v >= 1.0 {
        v as usize
    } else {
        1
    }
}

pub fn build_g0(sub: &SubdividedGraph, ell_star: usize) -> Result<SurrogateGraph> {
    if ell_star == 0 {
        return Err(Error::invalid("ell_star must be at least 1"));
    }
    let kernel = sub.kernel();
    let mut to_expanded: Vec<usize> = (0..kernel.vertex_count()).collect();
    let mut edges = Vec::new();
    let mut pieces = Vec::new();
    for (e, (&(a, b), &len)) in kernel.edges().iter().zip(sub.lengths()).enumerate() {
        let mut parts = split_lengths(len, ell_star);
        if b < a {
            parts.reverse();
        }
        let path = sub.path_vertices(e);
        let mut prev = a;
        let mut pos = 0;
        for (i, &l) in parts.iter().enumerate() {
            pos += l;
            let next = if i + 1 == parts.len() {
                b
            } else {
                to_expanded.push(path[pos]);
                to_expanded.len() - 1
            };
            edges.push((prev, next, ell_star as f64 / l as f64));
            pieces.push(Piece {
                kernel_edge: e,
                length: l,
            });
            prev = next;
        }
    }
    Ok(SurrogateGraph {
        graph: WeightedGraph::new(to_expanded.len(), edges)?,
        pieces,
        ell_star,
        to_expanded,
    })
}

/// Replaces edge `f` by two edges of conductance `min(κ(f), 1)` through a new
/// vertex, returned alongside the graph. The first half keeps id `f`, the
/// second is appended.
pub fn split_edge(g: &WeightedGraph, f: usize) -> Result<(WeightedGraph, usize)> {
    let Some(&(u, v, k)) = g.edges().get(f) else {
        return Err(Error::invalid(format!("edge {f} out of range")));
    };
    let alpha = k.min(1.0);
    let mid = g.vertex_count();
    let mut edges = g.edges().to_vec();
    edges[f] = (u, mid, alpha);
    edges.push((mid, v, alpha));
    Ok((WeightedGraph::new(mid + 1, edges)?, mid))
}

/// Vertices reached from the endpoints of light edges by repeatedly adding
/// any vertex with at least two distinct neighbours already in the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VSigma {
    pub sigma: Vec<usize>,
    pub ell: Vec<usize>,
}

fn distinct_neighbours(kernel: &Multigraph) -> Vec<Vec<usize>> {
    let mut nb: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); kernel.vertex_count()];
    for &(a, b) in kernel.edges() {
        if a != b {
            nb[a].insert(b);
            nb[b].insert(a);
        }
    }
    nb.into_iter().map(|s| s.into_iter().collect()).collect()
}

fn light_seed(
    kernel: &Multigraph,
    lengths: &[usize],
    min_light: usize,
    ell_star: usize,
) -> Result<Vec<bool>> {
    if lengths.len() != kernel.edge_count() {
        return Err(Error::LengthMismatch(format!(
            "{} lengths for {} kernel edges",
            lengths.len(),
            kernel.edge_count()
        )));
    }
    let mut inside = vec![false; kernel.vertex_count()];
    for (&(a, b), &l) in kernel.edges().iter().zip(lengths) {
        if l >= min_light && l <= ell_star {
            inside[a] = true;
            inside[b] = true;
        }
    }
    Ok(inside)
}

fn finish(inside: Vec<bool>) -> VSigma {
    let (mut sigma, mut ell) = (Vec::new(), Vec::new());
    for (v, f) in inside.into_iter().enumerate() {
        if f {
            sigma.push(v)
        } else {
            ell.push(v)
        }
    }
    VSigma { sigma, ell }
}

/// Light edges are those with `min_light ≤ ℓ_e ≤ ell_star`.
pub fn build_v_sigma(
    kernel: &Multigraph,
    lengths: &[usize],
    ell_star: usize,
    min_light: usize,
) -> Result<VSigma> {
    let mut inside = light_seed(kernel, lengths, min_light, ell_star)?;
    let nb = distinct_neighbours(kernel);
    let mut queue: Vec<usize> = (0..inside.len()).filter(|&v| inside[v]).collect();
    while let Some(v) = queue.pop() {
        for &w in &nb[v] {
            if !inside[w] && nb[w].iter().filter(|&&x| inside[x]).count() >= 2 {
                inside[w] = true;
                queue.push(w);
            }
        }
    }
    Ok(finish(inside))
}

/// Same closure, scanning vertices in `order` repeatedly until nothing
/// changes. Exists to check that the result does not depend on the order.
pub fn build_v_sigma_ordered(
    kernel: &Multigraph,
    lengths: &[usize],
    ell_star: usize,
    min_light: usize,
    order: &[usize],
) -> Result<VSigma> {
    let mut inside = light_seed(kernel, lengths, min_light, ell_star)?;
    let nb = distinct_neighbours(kernel);
    loop {
        let mut changed = false;
        for &v in order {
            if !inside[v] && nb[v].iter().filter(|&&w| inside[w]).count() >= 2 {
                inside[v] = true;
                changed = true;
            }
        }
        if !changed {
            return Ok(finish(inside));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub ell_star: usize,
    pub expanded_vertex_cover: CoverStats,
    pub surrogate_edge_cover: CoverStats,
    /// expanded vertex cover ÷ [ℓ*² (surrogate edge cover + 1)]
    pub ratio: f64,
}

/// Compares the vertex cover time of the expanded graph with `ℓ*²` times the
/// edge cover time of the surrogate. Trial `j` starts both walks at the same
/// surrogate vertex.
pub fn scaling_check(
    sub: &SubdividedGraph,
    ell_star: usize,
    trials: usize,
    opts: WalkOptions,
    seed: u64,
) -> Result<ScalingReport> {
    let sg = build_g0(sub, ell_star)?;
    if !sg.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let expanded = WeightedGraph::from_multigraph(&sub.expand());
    let g0_starts: Vec<usize> = (0..sg.graph.vertex_count()).collect();
    let vc = cover_stats_random_start(
        &expanded,
        &sg.to_expanded,
        trials,
        CoverMode::Vertex,
        opts,
        seed,
        false,
    )?;
    let ec = cover_stats_random_start(
        &sg.graph,
        &g0_starts,
        trials,
        CoverMode::Edge,
        opts,
        seed,
        false,
    )?;
    let scale = (ell_star * ell_star) as f64;
    Ok(ScalingReport {
        ell_star,
        ratio: vc.mean / (scale * (ec.mean + 1.0)),
        expanded_vertex_cover: vc,
        surrogate_edge_cover: ec,
    })
}

/// One-step law of the surrogate walk from `x`, conditioned on moving to a
/// different vertex.
pub fn surrogate_exit_law(sg: &SurrogateGraph, x: usize) -> Vec<f64> {
    let g = &sg.graph;
    let mut law = vec![0.0; g.vertex_count()];
    for &(w, e) in g.neighbours(x) {
        if w != x {
            law[w] += g.edges()[e].2;
        }
    }
    let total: f64 = law.iter().sum();
    if total > 0.0 {
        law.iter_mut().for_each(|p| *p /= total);
    }
    law
}

/// Empirical law of the first surrogate vertex other than `x` reached by the
/// walk on the expanded graph started at `x`.
pub fn simulate_exit_law(
    sub: &SubdividedGraph,
    sg: &SurrogateGraph,
    x: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    if x >= sg.to_expanded.len() {
        return Err(Error::invalid(format!("vertex {x} out of range")));
    }
    let expanded = WeightedGraph::from_multigraph(&sub.expand());
    let mut back = vec![usize::MAX; expanded.vertex_count()];
    for (i, &v) in sg.to_expanded.iter().enumerate() {
        back[v] = i;
    }
    if surrogate_exit_law(sg, x).iter().all(|&p| p == 0.0) {
        return Err(Error::invalid("vertex has no neighbour other than itself"));
    }
    let start = sg.to_expanded[x];
    let hits: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut cur = start;
            loop {
                cur = expanded.step(cur, false, &mut rng);
                let b = back[cur];
                if b != usize::MAX && b != x {
                    return b;
                }
            }
        })
        .collect();
    let mut counts = vec![0u64; sg.to_expanded.len()];
    for h in hits {
        counts[h] += 1;
    }
    Ok(counts)
}

/// Random order of `0..n`, for order-independence checks.
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(kernel: Multigraph, lengths: Vec<usize>) -> SubdividedGraph {
        SubdividedGraph::new(kernel, lengths).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(split_lengths(10, 3), vec![3, 3, 4]);
        assert_eq!(split_lengths(2, 3), vec![2]);
        assert_eq!(split_lengths(3, 3), vec![3]);
        let s = build_g0(&sub(Multigraph::path(2), vec![10]), 3).unwrap();
        let w: Vec<f64> = s.graph().edges().iter().map(|e| e.2).collect();
        assert_eq!(w, vec![1.0, 1.0, 0.75]);
        let s = build_g0(&sub(Multigraph::path(2), vec![2]), 3).unwrap();
        assert_eq!(s.graph().edges(), &[(0, 1, 1.5)]);
        let s = build_g0(&sub(Multigraph::path(2), vec![3]), 3).unwrap();
        assert_eq!(s.graph().edges(), &[(0, 1, 1.0)]);
    }

    #[test]
    fn heavy_edge_resistance_and_placement() {
        // edge stored as (1, 0): the long piece sits next to vertex 1
        let k = Multigraph::from_edges(2, vec![(1, 0)]).unwrap();
        let s = build_g0(&sub(k, vec![10]), 3).unwrap();
        let lens: Vec<usize> = s.pieces().iter().map(|p| p.length).collect();
        assert_eq!(lens, vec![4, 3, 3]);
        let r: f64 = s.graph().edges().iter().map(|e| 1.0 / e.2).sum();
        assert!((r - 10.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.mapping_text(), "0 0 4\n1 0 3\n2 0 3\n");
        // breakpoints map to the right expanded vertices
        let sd = sub(Multigraph::from_edges(2, vec![(1, 0)]).unwrap(), vec![10]);
        assert_eq!(s.to_expanded()[2], sd.path_vertices(0)[4]);
        assert_eq!(s.to_expanded()[3], sd.path_vertices(0)[7]);
    }

    #[test]
    fn weight_accounting() {
        let lengths = vec![1, 2, 5, 7, 9, 13];
        let s = build_g0(&sub(Multigraph::complete(4), lengths.clone()), 3).unwrap();
        let want: f64 = lengths.iter().map(|&l| kernel_edge_weight(l, 3)).sum();
        assert!((s.graph().total_weight() - want).abs() < 1e-12);
    }

    #[test]
    fn unit_ell_star_is_expansion() {
        let sd = sub(Multigraph::complete(4), vec![1, 2, 3, 1, 2, 4]);
        let s = build_g0(&sd, 1).unwrap();
        assert_eq!(s.graph().vertex_count(), sd.expand().vertex_count());
        assert_eq!(s.graph().edge_count(), sd.total_length());
        assert!(s.graph().is_unit());
    }

    #[test]
    fn splitting() {
        let g = WeightedGraph::new(2, vec![(0, 1, 1.5)]).unwrap();
        let (h, mid) = split_edge(&g, 0).unwrap();
        assert_eq!(mid, 2);
        assert_eq!(h.edges(), &[(0, 2, 1.0), (2, 1, 1.0)]);
        let g = WeightedGraph::new(2, vec![(0, 1, 0.75)]).unwrap();
        let (h, _) = split_edge(&g, 0).unwrap();
        assert_eq!(h.edges(), &[(0, 2, 0.75), (2, 1, 0.75)]);
        assert!(split_edge(&g, 3).is_err());
    }

    #[test]
    fn v_sigma_examples() {
        let k = Multigraph::complete(3);
        let v = build_v_sigma(&k, &[10, 10, 10], 3, 1).unwrap();
        assert!(v.sigma.is_empty());
        assert_eq!(v.ell, vec![0, 1, 2]);
        // edges (0,1), (0,2), (1,2): the first two light seed {0, 1, 2}
        let v = build_v_sigma(&k, &[2, 2, 10], 3, 1).unwrap();
        assert_eq!(v.sigma, vec![0, 1, 2]);
        // a path: light edge 0-1 alone, vertex 2 sees only one member
        let p = Multigraph::path(4);
        let v = build_v_sigma(&p, &[1, 9, 9], 3, 1).unwrap();
        assert_eq!(v.sigma, vec![0, 1]);
        // the lower end of the light range matters
        let v = build_v_sigma(&p, &[1, 9, 9], 3, 2).unwrap();
        assert!(v.sigma.is_empty());
    }

    #[test]
    fn v_sigma_closure_grows() {
        // square 0-1-2-3 with diagonal 1-3; light edge 0-1 and 0-3 pull in
        // 1, 3, then 2 has neighbours 1 and 3
        let k = Multigraph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let v = build_v_sigma(&k, &[1, 9, 9, 1, 9], 3, 1).unwrap();
        assert_eq!(v.sigma, vec![0, 1, 2, 3]);
        let o = build_v_sigma_ordered(&k, &[1, 9, 9, 1, 9], 3, 1, &[3, 2, 1, 0]).unwrap();
        assert_eq!(o, v);
    }

    #[test]
    fn exit_law_on_star() {
        let sd = sub(Multigraph::star(3), vec![1, 2, 4]);
        let sg = build_g0(&sd, 1).unwrap();
        let law = surrogate_exit_law(&sg, 0);
        assert!((law[1] - 1.0 / 3.0).abs() < 1e-12);
        let counts = simulate_exit_law(&sd, &sg, 0, 30_000, 3).unwrap();
        for (v, &c) in counts.iter().enumerate() {
            let p = c as f64 / 30_000.0;
            assert!((p - law[v]).abs() < 0.02, "{v}: {p} vs {}", law[v]);
        }
    }

    #[test]
    fn ell_star_default() {
        assert_eq!(default_ell_star(0.1, 2.0), 5);
        assert_eq!(default_ell_star(0.9, 5.0), 1);
    }
}
