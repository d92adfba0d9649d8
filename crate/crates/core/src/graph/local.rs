use std::collections::VecDeque;

use serde::Serialize;

use super::Multigraph;

/// Classification of depth-`L0` neighbourhoods by their number of
/// independent cycles (edges minus vertices plus one in the ball).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocalStructure {
    pub depth: usize,
    pub tree_like: usize,
    pub one_cycle: usize,
    pub multi_cycle: usize,
}

/// Default neighbourhood depth `⌈0.25 ln N⌉` (at least 1).
pub fn default_depth(kernel_vertices: usize) -> usize {
    ((0.25 * (kernel_vertices.max(1) as f64).ln()).ceil() as usize).max(1)
}

/// Breadth-first search to depth `depth` from every vertex, counting the
/// cycles of the ball's induced subgraph. Loops and parallel edges count.
pub fn count_locally_tree_like(g: &Multigraph, depth: usize) -> LocalStructure {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut out = LocalStructure {
        depth,
        ..Default::default()
    };
    for s in 0..n {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if dist[v] == depth {
                continue;
            }
            for &(w, _) in adj.neighbours(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        // half-edges between ball vertices, counted twice except loops' pairs
        let mut half_edges = 0usize;
        for &v in &touched {
            half_edges += adj
                .neighbours(v)
                .iter()
                .filter(|&&(w, _)| dist[w] != usize::MAX)
                .count();
        }
        let edges = half_edges / 2;
        let cycles = edges + 1 - touched.len();
        match cycles {
            0 => out.tree_like += 1,
            1 => out.one_cycle += 1,
            _ => out.multi_cycle += 1,
        }
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
    }
    out
}
