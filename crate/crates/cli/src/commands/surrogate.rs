use std::path::PathBuf;

use clap::Args;
use covertime::graph::io::GraphFile;
use covertime::graph::{extract_kernel, path_length_tail_bounds, DegreeSequence};
use covertime::surrogate::{build_g0, build_v_sigma, default_ell_star, scaling_check};
use covertime::walk::WalkOptions;
use serde_json::{json, Value};

use super::{load_graph, num, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::write_output;

#[derive(Debug, Args)]
pub struct SurrogateArgs {
    /// Graph file or built-in name; degree-two paths are contracted first.
    #[arg(long)]
    pub graph: String,
    /// Sub-path length. Defaults to ⌊1/(ξω)⌋.
    #[arg(long, conflicts_with = "omega")]
    pub ell_star: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Shortest path length counted as light. Defaults to the lower tail
    /// bound of the path lengths.
    #[arg(long)]
    pub min_light: Option<usize>,
    /// Write the weighted surrogate here and the edge mapping to PATH.map.
    #[arg(long)]
    pub g0_out: Option<PathBuf>,
    /// Compare expanded vertex cover with ℓ*² × surrogate edge cover.
    #[arg(long)]
    pub scaling: bool,
}

pub fn run(ctx: &Ctx, a: &SurrogateArgs) -> CliResult<()> {
    let g = load_graph(&a.graph)?.graph.to_multigraph();
    let ext = extract_kernel(&g)?;
    if !ext.cycle_components.is_empty() {
        return Err(CliError::usage(format!(
            "{} component(s) are bare cycles with no kernel",
            ext.cycle_components.len()
        )));
    }
    let sub = &ext.graph;
    let seq = DegreeSequence::new(g.degrees())?;
    let m_kernel = sub.kernel().edge_count();
    let total = sub.total_length();
    let xi = m_kernel as f64 / total as f64;
    let ell_star = match a.ell_star {
        Some(0) => return Err(CliError::usage("--ell-star must be positive")),
        Some(l) => l,
        None => default_ell_star(xi, a.omega),
    };
    let min_light = match a.min_light {
        Some(l) => l,
        None => path_length_tail_bounds(&seq).map_or(1, |b| b.lower.max(1)),
    };
    let sg = build_g0(sub, ell_star)?;
    let vs = build_v_sigma(sub.kernel(), sub.lengths(), ell_star, min_light)?;

    if let Some(path) = &a.g0_out {
        let mut file = GraphFile::from_weighted(sg.graph());
        file.comments = ctx.meta().header_lines();
        file.comments.push(format!("ell_star={ell_star}"));
        write_output(Some(path), &file.render())?;
        let mut map = path.clone().into_os_string();
        map.push(".map");
        write_output(Some(&PathBuf::from(map)), &sg.mapping_text())?;
    }

    let mut rows: Vec<Vec<Value>> = vec![
        vec![json!("kernel_vertices"), json!(sub.kernel().vertex_count())],
        vec![json!("kernel_edges"), json!(m_kernel)],
        vec![json!("total_length"), json!(total)],
        vec![json!("xi"), num(xi)],
        vec![json!("ell_star"), json!(ell_star)],
        vec![json!("min_light"), json!(min_light)],
        vec![json!("g0_vertices"), json!(sg.graph().vertex_count())],
        vec![json!("g0_edges"), json!(sg.graph().edge_count())],
        vec![json!("g0_total_weight"), num(sg.graph().total_weight())],
        vec![json!("v_sigma_size"), json!(vs.sigma.len())],
        vec![json!("v_ell_size"), json!(vs.ell.len())],
    ];
    if a.scaling {
        let seed = ctx.require_seed()?;
        let trials = ctx.trials_or(200)?;
        let r = scaling_check(sub, ell_star, trials, WalkOptions::default(), seed)?;
        rows.push(vec![
            json!("expanded_vertex_cover"),
            num(r.expanded_vertex_cover.mean),
        ]);
        rows.push(vec![
            json!("surrogate_edge_cover"),
            num(r.surrogate_edge_cover.mean),
        ]);
        rows.push(vec![json!("scaling_ratio"), num(r.ratio)]);
    }
    ctx.emit(&["key", "value"], &rows)
}
