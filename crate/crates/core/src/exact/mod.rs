//! Exact linear-algebra quantities on small weighted graphs.
//!
//! Dense routines are limited to [`DENSE_LIMIT`] vertices and subset
//! enumeration to [`EXACT_CONDUCTANCE_LIMIT`]; larger inputs are refused with
//! [`crate::Error::SizeLimit`] rather than approximated silently.

mod absorbing;
mod bounds;
mod conductance;
mod markov;
mod record;
mod resistance;

pub use absorbing::{absorption_probabilities, expected_absorption_times};
pub use bounds::{
    check_js_bound, gillman_bound, js_mixing_bound, point_mass_norm, start_distribution_norm,
    JsCheck,
};
pub use conductance::{conductance_bounds, conductance_exact, Conductance, ConductanceBounds};
pub use markov::{
    evaluate_rt, first_visit_prediction, min_modulus_on_circle, mixing_window_warning,
    return_series, spectral_gap, transition_matrix, transition_matrix_with_limit, tv_mixing_time,
    MixingOutcome, ReturnSeries, Spectrum, TransitionMatrix,
};
pub use record::Record;
pub use resistance::{
    best_matthews_bound, commute_time, effective_resistance, matthews_lower_bound, MatthewsBound,
    ResistanceMatrix,
};

/// Largest vertex count for dense matrix routines.
pub const DENSE_LIMIT: usize = 3000;
/// Largest vertex count for exact conductance by subset enumeration.
pub const EXACT_CONDUCTANCE_LIMIT: usize = 22;
/// Largest vertex count for exhaustive Matthews-set search.
pub const MATTHEWS_LIMIT: usize = 16;
