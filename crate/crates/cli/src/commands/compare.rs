use std::path::PathBuf;

use clap::Args;
use covertime::graph::io::parse_degrees;
use covertime::graph::{sample_g_d, DegreeSequence};
use covertime::predict::{predict_cover_time, Prediction, RegimeThresholds};
use covertime::rng::{derive_seed, trial_rng};
use covertime::walk::{cover_stats_random_start, vertex_cover_time, CoverStats, WalkOptions};
use covertime::WeightedGraph;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::predict::regime_label;
use super::{load_graph, num, parse_list, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::read_file;

/// Resampling budget for drawing a connected graph.
const CONNECT_ATTEMPTS: usize = 1000;

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Kernel degree for a sweep over kernel sizes.
    #[arg(long, requires = "kernel_edges", conflicts_with_all = ["degrees", "graph"])]
    pub regular: Option<usize>,
    /// Kernel edge counts M, comma-separated.
    #[arg(long, requires = "regular")]
    pub kernel_edges: Option<String>,
    /// Degree-two counts, one per M or a single value for all.
    #[arg(long, default_value = "0")]
    pub nu2: String,
    /// Degree file; a fresh graph is drawn per trial.
    #[arg(long, conflicts_with = "graph")]
    pub degrees: Option<PathBuf>,
    /// A fixed graph file; walks start at uniform random vertices.
    #[arg(long)]
    pub graph: Option<String>,
    /// Only print predictions.
    #[arg(long)]
    pub predict_only: bool,
    #[arg(long, default_value_t = 0.05)]
    pub alpha_lo: f64,
    #[arg(long, default_value_t = 0.95)]
    pub alpha_hi: f64,
}

/// Mean vertex cover time over fresh connected draws of `G_d`, each walked
/// once from a uniform start. Trial `j` uses stream `j`.
pub fn simulate_g_d(seq: &DegreeSequence, trials: usize, seed: u64) -> CliResult<CoverStats> {
    let values: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j as u64);
            for _ in 0..CONNECT_ATTEMPTS {
                let g = sample_g_d(seq, &mut rng)?.expand();
                if g.is_connected() {
                    let w = WeightedGraph::from_multigraph(&g);
                    let start = rng.random_range(0..w.vertex_count());
                    return vertex_cover_time(&w, start, WalkOptions::default(), &mut rng);
                }
            }
            Err(covertime::Error::Disconnected)
        })
        .collect::<covertime::Result<_>>()?;
    Ok(CoverStats::from_values(values, false))
}

struct Row {
    n: usize,
    nu2: usize,
    prediction: Prediction,
    simulated: Option<CoverStats>,
}

fn cells(r: &Row) -> Vec<Value> {
    let p = &r.prediction;
    let mut row = vec![
        num(p.inputs.kernel_edges),
        json!(r.n),
        json!(r.nu2),
        json!(regime_label(p.regime)),
        num(p.inputs.alpha_hat),
        num(p.value),
    ];
    match &r.simulated {
        Some(s) => {
            let ratio = s.mean / p.value;
            row.extend([
                num(s.mean),
                s.std_err.map_or(Value::Null, num),
                num(ratio),
                num(ratio - 1.0),
            ]);
        }
        None => row.extend(vec![Value::Null; 4]),
    }
    row
}

pub fn run(ctx: &Ctx, a: &CompareArgs) -> CliResult<()> {
    let th = RegimeThresholds {
        lo: a.alpha_lo,
        hi: a.alpha_hi,
    };
    let simulate = !a.predict_only;
    let seed = if simulate {
        Some(ctx.require_seed()?)
    } else {
        ctx.seed
    };
    let trials = ctx.trials_or(100)?;
    let mut rows = Vec::new();

    if let Some(d) = a.regular {
        if d < 3 {
            return Err(CliError::usage("--regular needs kernel degree at least 3"));
        }
        let ms: Vec<usize> = parse_list(
            a.kernel_edges.as_deref().unwrap_or_default(),
            "--kernel-edges",
        )?;
        let nu2s: Vec<usize> = parse_list(&a.nu2, "--nu2")?;
        let nu2s = match nu2s.len() {
            1 => vec![nu2s[0]; ms.len()],
            l if l == ms.len() => nu2s,
            _ => {
                return Err(CliError::usage(
                    "--nu2 needs one value or one per --kernel-edges entry",
                ))
            }
        };
        for (i, (&m, &nu2)) in ms.iter().zip(&nu2s).enumerate() {
            if (2 * m) % d != 0 {
                return Err(CliError::usage(format!(
                    "2M = {} is not divisible by d = {d}",
                    2 * m
                )));
            }
            let n = 2 * m / d;
            let seq = DegreeSequence::from_counts(&[(d, n), (2, nu2)])?;
            let prediction = predict_cover_time(&seq, th)?;
            let simulated = match seed {
                Some(s) if simulate => Some(simulate_g_d(&seq, trials, derive_seed(s, i as u64))?),
                _ => None,
            };
            rows.push(Row {
                n,
                nu2,
                prediction,
                simulated,
            });
        }
    } else if let Some(path) = &a.degrees {
        let seq = parse_degrees(&read_file(path)?)?;
        let prediction = predict_cover_time(&seq, th)?;
        let simulated = match seed {
            Some(s) if simulate => Some(simulate_g_d(&seq, trials, derive_seed(s, 0))?),
            _ => None,
        };
        rows.push(Row {
            n: seq.kernel_vertices(),
            nu2: seq.nu2(),
            prediction,
            simulated,
        });
    } else if let Some(arg) = &a.graph {
        let loaded = load_graph(arg)?;
        if let (Some(file), Some(s)) = (&loaded.file, ctx.seed) {
            if let Some(rec) = file.comment_value("seed") {
                if rec != s.to_string() {
                    return Err(CliError::usage(format!(
                        "graph was generated with seed {rec} but --seed is {s}"
                    )));
                }
            }
        }
        let g = loaded.graph;
        let seq = DegreeSequence::new(g.to_multigraph().degrees())?;
        let prediction = predict_cover_time(&seq, th)?;
        let simulated = match seed {
            Some(s) if simulate => {
                let starts: Vec<usize> = (0..g.vertex_count()).collect();
                Some(cover_stats_random_start(
                    &g,
                    &starts,
                    trials,
                    covertime::walk::CoverMode::Vertex,
                    WalkOptions::default(),
                    derive_seed(s, 0),
                    false,
                )?)
            }
            _ => None,
        };
        rows.push(Row {
            n: seq.kernel_vertices(),
            nu2: seq.nu2(),
            prediction,
            simulated,
        });
    } else {
        return Err(CliError::usage(
            "one of --regular, --degrees or --graph is required",
        ));
    }

    let table: Vec<Vec<Value>> = rows.iter().map(cells).collect();
    ctx.emit(
        &[
            "M",
            "N",
            "nu2",
            "regime",
            "alpha_hat",
            "predicted",
            "simulated_mean",
            "std_err",
            "ratio",
            "deviation",
        ],
        &table,
    )
}
