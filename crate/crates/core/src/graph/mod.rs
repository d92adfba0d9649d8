//! Degree sequences and graph generation.

mod degree;
mod gnp;
pub mod io;
mod kernel;
mod lengths;
mod local;
mod multigraph;
mod pairing;

pub use degree::{validate_nice, Check, DegreeSequence, NicenessReport, Verdict};
pub use gnp::{giant_component, sample_gnp, solve_x, two_core, two_core_vertices};
pub use kernel::{extract_kernel, sample_g_d, subdivide, KernelExtraction, SubdividedGraph};
pub use lengths::{
    count_bound_violations, first_length_pmf, first_length_pmf_exact, path_length_tail_bounds,
    sample_path_lengths_geometric, sample_path_lengths_uniform, PathLengthBounds,
};
pub use local::{count_locally_tree_like, default_depth, LocalStructure};
pub use multigraph::{Adjacency, Multigraph};
pub use pairing::{sample_pairing, Pairing};
