use std::collections::HashSet;

use crate::error::{Error, Result};

/// An undirected multigraph on vertices `0..n`. Loops and parallel edges are
/// allowed; a loop contributes two to the degree of its vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Compressed incidence lists: for every vertex, `(neighbour, edge id)` per
/// half-edge. A loop appears twice at its vertex.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    entries: Vec<(usize, usize)>,
}

impl Adjacency {
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        Ok(Self { n, edges })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Degrees in ascending order.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn adjacency(&self) -> Adjacency {
        let deg = self.degrees();
        let mut offsets = Vec::with_capacity(self.n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..self.n].to_vec();
        let mut entries = vec![(0, 0); offsets[self.n]];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            entries[fill[u]] = (v, id);
            fill[u] += 1;
            entries[fill[v]] = (u, id);
            fill[v] += 1;
        }
        Adjacency { offsets, entries }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// True iff the graph has no loops and no repeated edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert(if u < v { (u, v) } else { (v, u) }))
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in adj.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// The subgraph induced by `vertices`, relabelled to `0..vertices.len()`
    /// in the given order. Returns the subgraph and the old-to-new map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Multigraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = Some(i);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        (
            Multigraph {
                n: vertices.len(),
                edges,
            },
            map,
        )
    }

    /// Edge multiset with endpoints ordered and the list sorted; two graphs on
    /// the same labels are equal iff their canonical edge lists are.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        e.sort_unstable();
        e
    }

    // named constructors used throughout tests and the CLI

    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self { n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Self { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self { n, edges }
    }

    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|i| (0, i)).collect();
        Self {
            n: leaves + 1,
            edges,
        }
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self { n: 10, edges }
    }
}
