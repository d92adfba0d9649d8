//! Monte Carlo random walks on weighted multigraphs.
//!
//! All simulations are driven by a master seed; trial `i` uses stream `i` of
//! the seeded generator (see [`crate::rng`]), so results are identical for any
//! number of worker threads.

mod cover;
mod returns;
mod star;
mod weighted;

pub use cover::{
    cover_stats_from, cover_stats_random_start, cover_times_both, edge_cover_time,
    estimate_cover_time, vertex_cover_time, CoverEstimate, CoverMode, CoverStats, WalkOptions,
    DEFAULT_STEP_CAP,
};
pub use returns::{
    empirical_returns, empirical_unvisit_prob, empirical_visit_tail, Estimate, StartMode,
};
pub use star::{
    star_exit_distribution, star_exit_law, star_leaf_hitting_formula, star_leaf_hitting_time,
};
pub use weighted::WeightedGraph;
