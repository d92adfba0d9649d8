use clap::{Args, ValueEnum};
use covertime::exact::{
    best_matthews_bound, check_js_bound, conductance_bounds, conductance_exact, gillman_bound,
    point_mass_norm, return_series, spectral_gap, transition_matrix, tv_mixing_time,
    ResistanceMatrix, EXACT_CONDUCTANCE_LIMIT,
};
use covertime::walk::{
    empirical_visit_tail, estimate_cover_time, CoverMode, StartMode, WalkOptions,
};
use serde_json::{json, Value};

use super::{load_graph, num, parse_list, Ctx};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConductanceMode {
    /// Exact up to the enumeration limit, bounds above it.
    Auto,
    Exact,
    /// Cheeger lower bound and sweep-cut upper bound.
    Bounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundCheck {
    Js,
    Matthews,
    Gillman,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Graph file or built-in name (C8, K4, P3, S3, petersen).
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value_t = ConductanceMode::Auto)]
    pub conductance: ConductanceMode,
    /// Use the lazy chain for the gap, mixing time and return series.
    #[arg(long)]
    pub lazy: bool,
    /// Distance threshold for the mixing time.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100_000)]
    pub mix_cap: u64,
    /// Bound checks to run: js, matthews, gillman (comma-separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub check: Vec<BoundCheck>,
    /// Horizon for the mixing-bound check.
    #[arg(long, default_value_t = 200)]
    pub t_max: u64,
    /// Vertex for the return series and the visit-count check.
    #[arg(long, default_value_t = 0)]
    pub vertex: usize,
    /// Return-series horizon.
    #[arg(long, default_value_t = 100)]
    pub horizon: usize,
    /// Walk length for the visit-count check.
    #[arg(long, default_value_t = 1000)]
    pub gillman_t: u64,
    /// `u,v`: also report effective resistance and commute time.
    #[arg(long)]
    pub resistance: Option<String>,
}

struct Records(Vec<(String, Value)>);

impl Records {
    fn push(&mut self, name: &str, v: Value) {
        self.0.push((name.to_string(), v));
    }
}

pub fn run(ctx: &Ctx, a: &ExactArgs) -> CliResult<()> {
    let g = load_graph(&a.graph)?.graph;
    let n = g.vertex_count();
    if a.vertex >= n {
        return Err(CliError::usage(format!(
            "--vertex {} out of range",
            a.vertex
        )));
    }
    let mut r = Records(Vec::new());
    r.push("vertices", json!(n));
    r.push("edges", json!(g.edge_count()));
    r.push("total_weight", num(g.total_weight()));

    let p = transition_matrix(&g, a.lazy)?;
    let spectrum = spectral_gap(&p)?;
    r.push("spectral_gap", json!({"gap": num(spectrum.gap), "lambda2": num(spectrum.lambda2), "lambda_min": num(spectrum.lambda_min), "lazy": a.lazy}));
    r.push(
        "mixing_time",
        json!(tv_mixing_time(&p, a.epsilon, a.mix_cap)),
    );
    let series = return_series(&p, a.vertex, a.horizon)?;
    r.push(
        "returns",
        json!({"vertex": a.vertex, "horizon": a.horizon, "total": num(series.total())}),
    );

    let exact = match a.conductance {
        ConductanceMode::Exact => true,
        ConductanceMode::Bounds => false,
        ConductanceMode::Auto => n <= EXACT_CONDUCTANCE_LIMIT,
    };
    // conductance of the graph; the lazy chain's is half of it
    let phi = if exact {
        let c = conductance_exact(&g)?;
        r.push(
            "conductance",
            json!({"method": "exact", "phi": num(c.phi), "set": c.set}),
        );
        Some(c.phi)
    } else {
        let b = conductance_bounds(&g)?;
        r.push(
            "conductance",
            json!({"method": "bounds", "cheeger_lower": num(b.cheeger_lower), "sweep_upper": num(b.sweep_upper), "set": b.sweep_set}),
        );
        None
    };

    if let Some(pair) = &a.resistance {
        let uv: Vec<usize> = parse_list(pair, "--resistance")?;
        let [u, v] = uv[..] else {
            return Err(CliError::usage("--resistance expects `u,v`"));
        };
        if u >= n || v >= n {
            return Err(CliError::usage("--resistance vertex out of range"));
        }
        let rm = ResistanceMatrix::new(&g)?;
        r.push(
            "resistance",
            json!({"u": u, "v": v, "effective": num(rm.resistance(u, v)), "commute": num(rm.commute_time(u, v))}),
        );
    }

    for check in &a.check {
        match check {
            BoundCheck::Js => {
                let phi = phi.ok_or_else(|| {
                    CliError::usage("the mixing-bound check needs exact conductance")
                })?;
                let lazy = transition_matrix(&g, true)?;
                let c = check_js_bound(&lazy, phi / 2.0, a.t_max)?;
                r.push(
                    "check_js",
                    json!({"summary": if c.holds() { "all hold" } else { "violated" }, "checked": c.checked, "violations": c.violations, "worst_ratio": num(c.worst_ratio), "t_max": a.t_max}),
                );
            }
            BoundCheck::Matthews => {
                let m = best_matthews_bound(&g)?;
                let mut rec = json!({"bound": num(m.bound), "set": m.set});
                if let Some(seed) = ctx.seed {
                    let trials = ctx.trials_or(2000)?;
                    let est = estimate_cover_time(
                        &g,
                        trials,
                        CoverMode::Vertex,
                        WalkOptions::default(),
                        seed,
                    )?;
                    let s = est.max_stats();
                    let slack = 3.0 * s.std_err.unwrap_or(0.0);
                    rec["simulated_max_mean"] = num(s.mean);
                    rec["summary"] = json!(if m.bound <= s.mean + slack {
                        "holds"
                    } else {
                        "violated"
                    });
                }
                r.push("check_matthews", rec);
            }
            BoundCheck::Gillman => {
                let seed = ctx.require_seed()?;
                let trials = ctx.trials_or(10_000)?;
                let lazy = transition_matrix(&g, true)?;
                let theta = spectral_gap(&lazy)?.gap;
                let pi_a = lazy.pi()[a.vertex];
                let nq = point_mass_norm(pi_a);
                let t = a.gillman_t as f64;
                // smallest gamma where the bound drops to 1, then a 10-point grid
                let mut g0 = 1.0;
                while gillman_bound(theta, nq, t, g0) > 1.0 {
                    g0 *= 1.05;
                }
                let gammas: Vec<f64> = (0..10).map(|i| g0 * (1.0 + 0.1 * i as f64)).collect();
                let tails = empirical_visit_tail(
                    &g,
                    &[a.vertex],
                    a.gillman_t,
                    &gammas,
                    trials,
                    StartMode::Vertex(a.vertex),
                    WalkOptions::lazy(),
                    seed,
                )?;
                let points: Vec<Value> = gammas
                    .iter()
                    .zip(&tails)
                    .map(|(&gm, &e)| json!({"gamma": num(gm), "empirical": num(e), "bound": num(gillman_bound(theta, nq, t, gm))}))
                    .collect();
                let ok = gammas
                    .iter()
                    .zip(&tails)
                    .all(|(&gm, &e)| e <= gillman_bound(theta, nq, t, gm));
                r.push(
                    "check_gillman",
                    json!({"summary": if ok { "all hold" } else { "violated" }, "theta": num(theta), "t": a.gillman_t, "points": points}),
                );
            }
        }
    }

    let rows: Vec<Vec<Value>> = r.0.into_iter().map(|(q, v)| vec![json!(q), v]).collect();
    ctx.emit(&["quantity", "value"], &rows)
}
