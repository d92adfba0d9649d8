use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Undirected multigraph with a positive conductance `κ(e)` per edge. The walk
/// leaves a vertex along an incident half-edge chosen with probability
/// proportional to its conductance; a loop offers two half-edges.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    offsets: Vec<usize>,
    /// `(neighbour, edge id)` per half-edge
    half: Vec<(usize, usize)>,
    /// cumulative half-edge conductance within each vertex's segment
    cum: Vec<f64>,
    vertex_weight: Vec<f64>,
    /// cumulative vertex weight, for stationary draws
    vertex_cum: Vec<f64>,
    unit: bool,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(u, v, k) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::invalid(format!(
                    "conductance {k} of edge ({u}, {v}) must be positive"
                )));
            }
        }
        let mut deg = vec![0usize; n];
        for &(u, v, _) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let total = offsets[n];
        let mut half = vec![(0, 0); total];
        let mut weight = vec![0.0; total];
        for (id, &(u, v, k)) in edges.iter().enumerate() {
            half[fill[u]] = (v, id);
            weight[fill[u]] = k;
            fill[u] += 1;
            half[fill[v]] = (u, id);
            weight[fill[v]] = k;
            fill[v] += 1;
        }
        let mut cum = vec![0.0; total];
        let mut vertex_weight = vec![0.0; n];
        for v in 0..n {
            let mut acc = 0.0;
            for i in offsets[v]..offsets[v + 1] {
                acc += weight[i];
                cum[i] = acc;
            }
            vertex_weight[v] = acc;
        }
        let mut vertex_cum = Vec::with_capacity(n);
        let mut acc = 0.0;
        for &w in &vertex_weight {
            acc += w;
            vertex_cum.push(acc);
        }
        let unit = edges.iter().all(|e| e.2 == 1.0);
        Ok(Self {
            n,
            edges,
            offsets,
            half,
            cum,
            vertex_weight,
            vertex_cum,
            unit,
        })
    }

    pub fn from_multigraph(g: &Multigraph) -> Self {
        Self::new(
            g.vertex_count(),
            g.edges().iter().map(|&(u, v)| (u, v, 1.0)).collect(),
        )
        .expect("multigraph edges are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    /// `(neighbour, edge id)` per half-edge at `v`.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.half[self.offsets[v]..self.offsets[v + 1]]
    }

    /// κ(v), with loops counted twice.
    pub fn vertex_weight(&self, v: usize) -> f64 {
        self.vertex_weight[v]
    }

    /// κ(E), the total edge conductance.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// π_v = κ(v) / κ(V).
    pub fn stationary(&self) -> Vec<f64> {
        let total: f64 = self.vertex_weight.iter().sum();
        self.vertex_weight.iter().map(|w| w / total).collect()
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::from_edges(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)).collect())
            .expect("edges are in range")
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Takes one step along a half-edge and returns `(next, edge id)`.
    /// A vertex without edges stays put and reports no edge.
    #[inline]
    pub fn step_edge<R: Rng + ?Sized>(
        &self,
        current: usize,
        rng: &mut R,
    ) -> (usize, Option<usize>) {
        let lo = self.offsets[current];
        let hi = self.offsets[current + 1];
        if lo == hi {
            return (current, None);
        }
        let i = if self.unit {
            lo + rng.random_range(0..hi - lo)
        } else {
            let target = rng.random::<f64>() * self.vertex_weight[current];
            let seg = &self.cum[lo..hi];
            lo + seg.partition_point(|&c| c <= target).min(hi - lo - 1)
        };
        let (next, e) = self.half[i];
        (next, Some(e))
    }

    /// One step of the walk; with `lazy` the walk first stays put with
    /// probability ½.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, current: usize, lazy: bool, rng: &mut R) -> usize {
        if lazy && rng.random::<bool>() {
            return current;
        }
        self.step_edge(current, rng).0
    }

    /// Draws a vertex from the stationary distribution.
    pub fn sample_stationary<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.vertex_cum.last().expect("nonempty graph");
        let target = rng.random::<f64>() * total;
        self.vertex_cum
            .partition_point(|&c| c <= target)
            .min(self.n - 1)
    }
}
