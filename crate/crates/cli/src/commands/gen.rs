use std::path::PathBuf;

use clap::Args;
use covertime::graph::io::{parse_degrees, GraphFile};
use covertime::graph::{
    extract_kernel, giant_component, sample_g_d, sample_gnp, two_core, validate_nice,
    DegreeSequence, Multigraph, Verdict,
};
use covertime::rng::trial_rng;
use serde_json::json;

use super::{num, parse_list, parse_pairs, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::{read_file, write_output};

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Degree file, one degree per line.
    #[arg(long, conflicts_with_all = ["regular", "gnp"])]
    pub degrees: Option<PathBuf>,
    /// `d,n`: n vertices of degree d.
    #[arg(long, conflicts_with = "gnp")]
    pub regular: Option<String>,
    /// `n=<vertices>,c=<mean degree>`: sample G(n, c/n) and emit its giant
    /// component, 2-core and kernel (written to `<out>.giant`, `<out>.core`,
    /// `<out>.kernel` when --out is given).
    #[arg(long)]
    pub gnp: Option<String>,
    /// Third-moment constant for the niceness report.
    #[arg(long, default_value_t = 18.0)]
    pub a0: f64,
    /// Minimum-degree fraction for the niceness report.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Reported => "reported",
    }
}

fn header(ctx: &Ctx) -> Vec<String> {
    ctx.meta().header_lines()
}

pub fn run(ctx: &Ctx, a: &GenArgs) -> CliResult<()> {
    let seed = ctx.require_seed()?;
    if let Some(arg) = &a.gnp {
        return run_gnp(ctx, arg, seed);
    }
    let seq = if let Some(path) = &a.degrees {
        parse_degrees(&read_file(path)?)?
    } else if let Some(arg) = &a.regular {
        let v: Vec<usize> = parse_list(arg, "--regular")?;
        let [d, n] = v[..] else {
            return Err(CliError::usage("--regular expects `d,n`"));
        };
        DegreeSequence::regular(d, n)?
    } else {
        return Err(CliError::usage(
            "one of --degrees, --regular or --gnp is required",
        ));
    };
    let sub = sample_g_d(&seq, &mut trial_rng(seed, 0))?;
    let nice = validate_nice(&seq, a.a0, a.alpha);
    let mut file = GraphFile::from_multigraph(&sub.expand());
    file.comments = header(ctx);
    file.comments.push(format!(
        "seed={seed} N={} M={} nu2={} m={} xi={}",
        seq.kernel_vertices(),
        seq.kernel_edges(),
        seq.nu2(),
        seq.total_edges(),
        seq.xi()
    ));
    for (name, c) in [
        ("diverging_kernel", &nice.diverging_kernel),
        ("sub_poly_degrees", &nice.sub_poly_degrees),
        ("third_moment", &nice.third_moment),
        ("min_kernel_degree", &nice.min_kernel_degree),
    ] {
        let threshold = c.threshold.map_or("-".to_string(), |t| t.to_string());
        file.comments.push(format!(
            "nice.{name}={} measured={} threshold={threshold}",
            verdict(c.verdict),
            c.measured
        ));
    }
    write_output(ctx.out.as_deref(), &file.render())
}

fn run_gnp(ctx: &Ctx, arg: &str, seed: u64) -> CliResult<()> {
    let v = parse_pairs(arg, &["n", "c"], "--gnp")?;
    let (n, c) = (v[0], v[1]);
    if n < 1.0 || n.fract() != 0.0 {
        return Err(CliError::usage("--gnp: n must be a positive integer"));
    }
    let n = n as usize;
    let g = sample_gnp(n, c / n as f64, &mut trial_rng(seed, 0))?;
    let giant = giant_component(&g);
    let core = two_core(&giant);
    let kernel = if core.edge_count() == 0 {
        Multigraph::new(0)
    } else {
        let ext = extract_kernel(&core)?;
        ext.graph.kernel().clone()
    };
    let parts = [("giant", &giant), ("core", &core), ("kernel", &kernel)];
    if let Some(out) = &ctx.out {
        for (name, graph) in parts {
            let mut file = GraphFile::from_multigraph(graph);
            file.comments = header(ctx);
            file.comments.push(format!("seed={seed} part={name}"));
            let mut path = out.clone().into_os_string();
            path.push(format!(".{name}"));
            write_output(Some(PathBuf::from(path).as_path()), &file.render())?;
        }
    }
    let rows: Vec<_> = parts
        .iter()
        .map(|(name, graph)| {
            vec![
                json!(name),
                json!(graph.vertex_count()),
                json!(graph.edge_count()),
                num(graph.vertex_count() as f64 / n as f64),
            ]
        })
        .collect();
    let text = crate::output::render_table(
        &ctx.meta(),
        &["part", "vertices", "edges", "fraction_of_n"],
        &rows,
        ctx.format,
    );
    write_output(None, &text)
}
