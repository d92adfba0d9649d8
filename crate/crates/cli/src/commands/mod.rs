pub mod compare;
pub mod exact;
pub mod gen;
pub mod predict;
pub mod surrogate;
pub mod walk;

use std::path::{Path, PathBuf};
use std::time::Instant;

use covertime::graph::io::GraphFile;
use covertime::graph::Multigraph;
use covertime::WeightedGraph;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::{read_file, render_table, write_output, Format, Meta};

pub struct Ctx {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub command: String,
    pub config: Vec<(String, String)>,
    pub timing: bool,
    pub start: Instant,
}

impl Ctx {
    pub fn meta(&self) -> Meta {
        Meta {
            command: self.command.clone(),
            config: self.config.clone(),
            runtime_ms: self.timing.then(|| self.start.elapsed().as_millis()),
        }
    }

    pub fn require_seed(&self) -> CliResult<u64> {
        self.seed.ok_or_else(|| {
            CliError::usage(format!("`{}` is stochastic and needs --seed", self.command))
        })
    }

    pub fn trials_or(&self, default: usize) -> CliResult<usize> {
        match self.trials {
            Some(0) => Err(CliError::usage("--trials must be positive")),
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }

    pub fn emit(&self, columns: &[&str], rows: &[Vec<Value>]) -> CliResult<()> {
        let text = render_table(&self.meta(), columns, rows, self.format);
        write_output(self.out.as_deref(), &text)
    }
}

pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub file: Option<GraphFile>,
}

/// Built-in graphs: `C8` (cycle), `K4` (complete), `P3` (path on 3
/// vertices), `S3` (star with 3 leaves), `petersen`.
pub fn named_graph(arg: &str) -> Option<Multigraph> {
    if arg.eq_ignore_ascii_case("petersen") {
        return Some(Multigraph::petersen());
    }
    let mut chars = arg.chars();
    let kind = chars.next()?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().ok()?;
    match (kind, n) {
        ('C', n) if n >= 1 => Some(Multigraph::cycle(n)),
        ('K', n) if n >= 1 => Some(Multigraph::complete(n)),
        ('P', n) if n >= 1 => Some(Multigraph::path(n)),
        ('S', n) if n >= 1 => Some(Multigraph::star(n)),
        _ => None,
    }
}

pub fn load_graph(arg: &str) -> CliResult<LoadedGraph> {
    let path = Path::new(arg);
    if path.exists() {
        let file = GraphFile::parse(&read_file(path)?)?;
        return Ok(LoadedGraph {
            graph: file.to_weighted()?,
            file: Some(file),
        });
    }
    named_graph(arg)
        .map(|g| LoadedGraph {
            graph: WeightedGraph::from_multigraph(&g),
            file: None,
        })
        .ok_or_else(|| CliError::usage(format!("`{arg}` is neither a file nor a built-in graph")))
}

/// Parses `a,b,c` into numbers.
pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("{what}: cannot parse `{x}`")))
        })
        .collect()
}

/// Parses `k1=v1,k2=v2` and returns the values for the given keys.
pub fn parse_pairs(s: &str, keys: &[&str], what: &str) -> CliResult<Vec<f64>> {
    let mut found = vec![None; keys.len()];
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("{what}: expected key=value, got `{part}`")))?;
        let i = keys
            .iter()
            .position(|&x| x == k.trim())
            .ok_or_else(|| CliError::usage(format!("{what}: unknown key `{k}`")))?;
        found[i] = Some(
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("{what}: cannot parse `{v}`")))?,
        );
    }
    found
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| CliError::usage(format!("{what}: missing `{k}`"))))
        .collect()
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
