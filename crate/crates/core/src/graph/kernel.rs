use rand::Rng;

use super::lengths::sample_path_lengths_uniform;
use super::{DegreeSequence, Multigraph, Pairing};
use crate::error::{Error, Result};

/// A kernel multigraph with a path length `ℓ_e ≥ 1` per kernel edge.
///
/// The expansion keeps kernel vertex `i` as vertex `i` and appends the
/// `ℓ_e − 1` internal vertices of each edge, edge by edge, in path order from
/// the edge's first endpoint to its second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedGraph {
    kernel: Multigraph,
    lengths: Vec<usize>,
}

impl SubdividedGraph {
    pub fn new(kernel: Multigraph, lengths: Vec<usize>) -> Result<Self> {
        if lengths.len() != kernel.edge_count() {
            return Err(Error::LengthMismatch(format!(
                "{} lengths for {} kernel edges",
                lengths.len(),
                kernel.edge_count()
            )));
        }
        if lengths.contains(&0) {
            return Err(Error::LengthMismatch(
                "path lengths must be at least 1".into(),
            ));
        }
        Ok(Self { kernel, lengths })
    }

    pub fn kernel(&self) -> &Multigraph {
        &self.kernel
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Σ ℓ_e, the edge count of the expansion.
    pub fn total_length(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Number of inserted degree-two vertices, Σ (ℓ_e − 1).
    pub fn subdivision_vertices(&self) -> usize {
        self.total_length() - self.lengths.len()
    }

    /// Vertex id of the `j`-th internal vertex (1-based, `1 ≤ j < ℓ_e`) on
    /// kernel edge `e` in the expansion.
    pub fn internal_vertex(&self, e: usize, j: usize) -> usize {
        debug_assert!(j >= 1 && j < self.lengths[e]);
        let before: usize = self.lengths[..e].iter().map(|l| l - 1).sum();
        self.kernel.vertex_count() + before + j - 1
    }

    /// The vertex sequence of the path replacing kernel edge `e`, endpoints
    /// included.
    pub fn path_vertices(&self, e: usize) -> Vec<usize> {
        let (a, b) = self.kernel.edges()[e];
        let mut out = Vec::with_capacity(self.lengths[e] + 1);
        out.push(a);
        if self.lengths[e] > 1 {
            let first = self.internal_vertex(e, 1);
            out.extend(first..first + self.lengths[e] - 1);
        }
        out.push(b);
        out
    }

    pub fn expand(&self) -> Multigraph {
        let n = self.kernel.vertex_count() + self.subdivision_vertices();
        let mut g = Multigraph::new(n);
        let mut next = self.kernel.vertex_count();
        for (&(a, b), &len) in self.kernel.edges().iter().zip(&self.lengths) {
            let mut prev = a;
            for _ in 1..len {
                g.add_edge(prev, next);
                prev = next;
                next += 1;
            }
            g.add_edge(prev, b);
        }
        g
    }
}

/// Replaces kernel edge `e` by a path of `lengths[e]` edges.
pub fn subdivide(kernel: &Multigraph, lengths: &[usize]) -> Result<Multigraph> {
    Ok(SubdividedGraph::new(kernel.clone(), lengths.to_vec())?.expand())
}

/// Result of suppressing the degree-two vertices of a graph.
#[derive(Clone, Debug)]
pub struct KernelExtraction {
    pub graph: SubdividedGraph,
    /// Kernel vertex `i` is vertex `kernel_vertices[i]` of the input.
    pub kernel_vertices: Vec<usize>,
    /// Input vertices on each kernel edge's path, in order, excluding endpoints.
    pub internal: Vec<Vec<usize>>,
    /// Components consisting only of degree-two vertices (pure cycles). These
    /// have no kernel representation and are reported rather than dropped.
    pub cycle_components: Vec<Vec<usize>>,
}

impl KernelExtraction {
    /// Maps vertices of `graph.expand()` back to vertices of the input graph.
    pub fn expansion_to_input(&self) -> Vec<usize> {
        let mut map = self.kernel_vertices.clone();
        for path in &self.internal {
            map.extend_from_slice(path);
        }
        map
    }
}

/// Contracts every maximal path through degree-two vertices into one kernel
/// edge whose length is the number of edges on the path.
pub fn extract_kernel(g: &Multigraph) -> Result<KernelExtraction> {
    let deg = g.degrees();
    if let Some((vertex, &degree)) = deg.iter().enumerate().find(|(_, &d)| d < 2) {
        return Err(Error::DegreeTooSmall { vertex, degree });
    }
    let adj = g.adjacency();
    let mut kernel_index = vec![usize::MAX; g.vertex_count()];
    let mut kernel_vertices = Vec::new();
    for (v, &d) in deg.iter().enumerate() {
        if d >= 3 {
            kernel_index[v] = kernel_vertices.len();
            kernel_vertices.push(v);
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut kernel = Multigraph::new(kernel_vertices.len());
    let mut lengths = Vec::new();
    let mut internal = Vec::new();

    for &start in &kernel_vertices {
        for &(first, eid) in adj.neighbours(start) {
            if used[eid] {
                continue;
            }
            used[eid] = true;
            let mut path = Vec::new();
            let mut len = 1;
            let mut cur = first;
            let mut via = eid;
            while kernel_index[cur] == usize::MAX {
                path.push(cur);
                // a degree-two vertex has exactly one other incident edge
                let &(nxt, e2) = adj
                    .neighbours(cur)
                    .iter()
                    .find(|&&(_, e)| e != via)
                    .expect("degree-two vertex has a second edge");
                used[e2] = true;
                via = e2;
                cur = nxt;
                len += 1;
            }
            kernel.add_edge(kernel_index[start], kernel_index[cur]);
            lengths.push(len);
            internal.push(path);
        }
    }

    let mut cycle_components = Vec::new();
    if used.iter().any(|u| !u) {
        for comp in g.components() {
            if comp.iter().all(|&v| deg[v] == 2) {
                cycle_components.push(comp);
            }
        }
    }

    Ok(KernelExtraction {
        graph: SubdividedGraph::new(kernel, lengths)?,
        kernel_vertices,
        internal,
        cycle_components,
    })
}

/// Samples the kernel from the configuration model on the degrees `≥ 3` and
/// subdivides its edges with a uniform composition of `ν₂ + M`.
pub fn sample_g_d<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> Result<SubdividedGraph> {
    let kd = seq.kernel_degrees();
    if kd.is_empty() {
        return Err(Error::NoKernel);
    }
    let kernel = Pairing::sample(kd, rng)?.to_multigraph(kd.len());
    let lengths = sample_path_lengths_uniform(kernel.edge_count(), seq.nu2(), rng);
    SubdividedGraph::new(kernel, lengths)
}
