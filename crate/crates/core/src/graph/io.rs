//! Plain-text graph and degree-sequence files.
//!
//! Graph files start with `vertices <n>` followed by one `u v [kappa]` line
//! per edge (0-indexed, `kappa` defaults to 1). Degree files hold one integer
//! per line. In both, blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{DegreeSequence, Multigraph};
use crate::error::{Error, Result};
use crate::walk::WeightedGraph;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, f64)>,
    /// Comment lines, without the leading `#`.
    pub comments: Vec<String>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = GraphFile::default();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                out.comments.push(c.trim_start().to_string());
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !header {
                match fields.as_slice() {
                    ["vertices", n] => {
                        out.vertices = parse_num(n, lineno)?;
                        header = true;
                        continue;
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "expected `vertices <n>`".into(),
                        })
                    }
                }
            }
            let (u, v, k) = match fields.as_slice() {
                [u, v] => (parse_num(u, lineno)?, parse_num(v, lineno)?, 1.0),
                [u, v, k] => (
                    parse_num(u, lineno)?,
                    parse_num(v, lineno)?,
                    k.parse::<f64>().map_err(|e| Error::Parse {
                        line: lineno,
                        msg: e.to_string(),
                    })?,
                ),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `u v [kappa]`".into(),
                    })
                }
            };
            if u >= out.vertices || v >= out.vertices {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("vertex out of range for {} vertices", out.vertices),
                });
            }
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("conductance {k} must be positive"),
                });
            }
            out.edges.push((u, v, k));
        }
        if !header {
            return Err(Error::Parse {
                line: 0,
                msg: "missing `vertices <n>` header".into(),
            });
        }
        Ok(out)
    }

    pub fn from_multigraph(g: &Multigraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| (u, v, 1.0)).collect(),
            comments: Vec::new(),
        }
    }

    pub fn from_weighted(g: &WeightedGraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            comments: Vec::new(),
        }
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::from_edges(
            self.vertices,
            self.edges.iter().map(|&(u, v, _)| (u, v)).collect(),
        )
        .expect("validated on parse")
    }

    pub fn to_weighted(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(self.vertices, self.edges.clone())
    }

    /// Looks up `key=value` in the comment lines.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            c.split_whitespace()
                .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            writeln!(s, "# {c}").unwrap();
        }
        writeln!(s, "vertices {}", self.vertices).unwrap();
        let unit = self.edges.iter().all(|e| e.2 == 1.0);
        for &(u, v, k) in &self.edges {
            if unit {
                writeln!(s, "{u} {v}").unwrap();
            } else {
                writeln!(s, "{u} {v} {k}").unwrap();
            }
        }
        s
    }
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|e: std::num::ParseIntError| Error::Parse {
            line,
            msg: format!("`{s}`: {e}"),
        })
}

/// Parses a degree file and validates the sequence.
pub fn parse_degrees(text: &str) -> Result<DegreeSequence> {
    let mut degrees = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        degrees.push(parse_num(line, i + 1)?);
    }
    DegreeSequence::new(degrees)
}

pub fn render_degrees(seq: &DegreeSequence) -> String {
    seq.degrees().iter().map(|d| format!("{d}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "# seed=7 kind=test\nvertices 3\n0 1\n1 2 2.5\n2 2\n";
        let f = GraphFile::parse(text).unwrap();
        assert_eq!(f.vertices, 3);
        assert_eq!(f.edges, vec![(0, 1, 1.0), (1, 2, 2.5), (2, 2, 1.0)]);
        assert_eq!(f.comment_value("seed"), Some("7"));
        assert_eq!(GraphFile::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!(GraphFile::parse("0 1\n").is_err());
        assert!(GraphFile::parse("vertices 2\n0 2\n").is_err());
        assert!(GraphFile::parse("vertices 2\n0 1 -1\n").is_err());
        assert!(GraphFile::parse("vertices 2\n0 1 1 1\n").is_err());
    }

    #[test]
    fn degrees_file() {
        assert!(parse_degrees("# comment\n3\n3\n\n3\n").is_err());
        let seq = parse_degrees("3\n3\n2\n2\n").unwrap();
        assert_eq!(seq.degrees(), &[2, 2, 3, 3]);
        assert_eq!(parse_degrees(&render_degrees(&seq)).unwrap(), seq);
        assert!(parse_degrees("1\n1\n").is_err());
    }
}
