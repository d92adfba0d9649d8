use clap::{Args, ValueEnum};
use covertime::rng::trial_rng;
use covertime::walk::{
    cover_stats_from, cover_stats_random_start, empirical_unvisit_prob, CoverMode, CoverStats,
    StartMode, WalkOptions, DEFAULT_STEP_CAP,
};
use rand::Rng;
use serde_json::{json, Value};

use super::{load_graph, num, parse_list, Ctx};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    VertexCover,
    EdgeCover,
    Both,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Graph file or built-in name (C8, K4, P3, S3, petersen).
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value_t = Mode::VertexCover)]
    pub mode: Mode,
    #[arg(long)]
    pub lazy: bool,
    /// `all`, `random`, or a vertex id.
    #[arg(long, default_value = "all")]
    pub start: String,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    pub step_cap: u64,
    /// One row per trial instead of per-start aggregates.
    #[arg(long)]
    pub per_trial: bool,
    /// Estimate the probability of not visiting this vertex instead of cover
    /// times.
    #[arg(long)]
    pub unvisit: Option<usize>,
    /// Window start T for --unvisit.
    #[arg(long, default_value_t = 0)]
    pub window: u64,
    /// Comma-separated times t for --unvisit.
    #[arg(long)]
    pub times: Option<String>,
}

enum Starts {
    All,
    Random,
    One(usize),
}

fn stats_cells(s: &CoverStats) -> Vec<Value> {
    vec![
        json!(s.trials),
        num(s.mean),
        s.std_err.map_or(Value::Null, num),
        json!(s.min),
        json!(s.max),
    ]
}

pub fn run(ctx: &Ctx, a: &WalkArgs) -> CliResult<()> {
    let seed = ctx.require_seed()?;
    let trials = ctx.trials_or(1000)?;
    let g = load_graph(&a.graph)?.graph;
    let opts = WalkOptions {
        lazy: a.lazy,
        step_cap: a.step_cap,
    };
    if let Some(v) = a.unvisit {
        let times: Vec<u64> = match &a.times {
            Some(t) => parse_list(t, "--times")?,
            None => return Err(CliError::usage("--unvisit needs --times")),
        };
        let probs = empirical_unvisit_prob(
            &g,
            v,
            a.window,
            &times,
            trials,
            StartMode::Stationary,
            opts,
            seed,
        )?;
        let rows: Vec<Vec<Value>> = times
            .iter()
            .zip(&probs)
            .map(|(&t, &p)| vec![json!(v), json!(a.window), json!(t), num(p)])
            .collect();
        return ctx.emit(&["vertex", "window", "t", "probability"], &rows);
    }

    let starts = match a.start.as_str() {
        "all" => Starts::All,
        "random" => Starts::Random,
        s => Starts::One(s.parse().map_err(|_| {
            CliError::usage(format!("--start: `{s}` is not all, random or a vertex"))
        })?),
    };
    let modes: Vec<CoverMode> = match a.mode {
        Mode::VertexCover => vec![CoverMode::Vertex],
        Mode::EdgeCover => vec![CoverMode::Edge],
        Mode::Both => vec![CoverMode::Vertex, CoverMode::Edge],
    };
    let retain = a.per_trial;
    // each mode reuses the same streams, so "both" compares the same walks
    let mut per_mode: Vec<Vec<(String, CoverStats)>> = Vec::new();
    for &mode in &modes {
        let stats = match starts {
            Starts::Random => {
                let all: Vec<usize> = (0..g.vertex_count()).collect();
                vec![(
                    "random".to_string(),
                    cover_stats_random_start(&g, &all, trials, mode, opts, seed, retain)?,
                )]
            }
            Starts::All | Starts::One(_) => {
                let list: Vec<usize> = match starts {
                    Starts::One(v) => vec![v],
                    _ => (0..g.vertex_count()).collect(),
                };
                let stats = cover_stats_from(&g, &list, trials, mode, opts, seed, retain)?;
                list.iter().map(|v| v.to_string()).zip(stats).collect()
            }
        };
        per_mode.push(stats);
    }
    let mode_name = |m: CoverMode| match m {
        CoverMode::Vertex => "vertex",
        CoverMode::Edge => "edge",
    };

    if a.per_trial {
        let mut rows = Vec::new();
        for (i, (start, _)) in per_mode[0].iter().enumerate() {
            for j in 0..trials {
                let mut row = vec![json!(start)];
                if let Starts::Random = starts {
                    // the start drawn for trial j is the stream's first draw
                    let mut rng = trial_rng(seed, j as u64);
                    row[0] = json!(rng.random_range(0..g.vertex_count()));
                }
                row.push(json!(j));
                for stats in &per_mode {
                    row.push(json!(stats[i].1.values.as_ref().expect("retained")[j]));
                }
                rows.push(row);
            }
        }
        let mut columns = vec!["start", "trial"];
        columns.extend(modes.iter().map(|&m| mode_name(m)));
        return ctx.emit(&columns, &rows);
    }

    let mut rows = Vec::new();
    for (stats, &mode) in per_mode.iter().zip(&modes) {
        for (start, s) in stats {
            let mut row = vec![json!(mode_name(mode)), json!(start)];
            row.extend(stats_cells(s));
            rows.push(row);
        }
    }
    ctx.emit(
        &["mode", "start", "trials", "mean", "std_err", "min", "max"],
        &rows,
    )
}
