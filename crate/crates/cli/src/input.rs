//! Input files: graphs, vertex weights, vector configurations, targets,
//! margins and point lists, all JSON.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use polyflow_core::{OrientedGraph, Rational, VectorConfig, VertexWeighting};
use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Reads files and hashes their contents in the order they were read.
#[derive(Default)]
pub struct Reader {
    digest: Sha256,
}

impl Reader {
    pub fn read<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.digest.update(&bytes);
        serde_json::from_slice(&bytes).map_err(|source| CliError::Json {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn digest(self) -> String {
        hex::encode(self.digest.finalize())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Index(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(Endpoint, Endpoint)>,
    order: Option<Vec<usize>>,
}

impl GraphFile {
    pub fn build(self) -> Result<(OrientedGraph, Option<Vec<usize>>), CliError> {
        let find = |e: &Endpoint| -> Result<usize, CliError> {
            match e {
                Endpoint::Index(i) if *i < self.vertices.len() => Ok(*i),
                Endpoint::Index(i) => Err(CliError::Format(format!(
                    "edge endpoint {i} is out of range"
                ))),
                Endpoint::Label(l) => self.vertices.iter().position(|v| v == l).ok_or_else(|| {
                    CliError::Format(format!("edge endpoint {l:?} is not a vertex"))
                }),
            }
        };
        let edges = self
            .edges
            .iter()
            .map(|(t, h)| Ok((find(t)?, find(h)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok((OrientedGraph::new(self.vertices, edges)?, self.order))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: std::collections::BTreeMap<String, i64>,
}

impl WeightsFile {
    pub fn target(self, g: &OrientedGraph) -> Result<Vec<i64>, CliError> {
        Ok(VertexWeighting(self.weights).to_target(g)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    dim: usize,
    vectors: Vec<Vec<i64>>,
    order: Option<Vec<usize>>,
}

impl ConfigFile {
    pub fn build(self) -> Result<(VectorConfig, Option<Vec<usize>>), CliError> {
        Ok((VectorConfig::new(self.dim, self.vectors)?, self.order))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetFile {
    pub target: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginsFile {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    points: Vec<Vec<Value>>,
}

impl PointsFile {
    /// Coordinates are JSON integers or strings such as `"3/4"`.
    pub fn build(self, dim: usize) -> Result<Vec<Vec<Rational>>, CliError> {
        self.points
            .iter()
            .map(|p| {
                if p.len() != dim {
                    return Err(CliError::Format(format!(
                        "point has {} coordinates, expected {dim}",
                        p.len()
                    )));
                }
                p.iter().map(parse_rational).collect()
            })
            .collect()
    }
}

fn parse_rational(v: &Value) -> Result<Rational, CliError> {
    let bad = || CliError::Format(format!("not a rational number: {v}"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(bad),
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(bad()),
    }
}

/// `file`, `lex`, or a comma-separated permutation of input positions.
pub fn resolve_order(
    spec: &str,
    from_file: Option<Vec<usize>>,
    len: usize,
    lex: impl FnOnce() -> Vec<usize>,
) -> Result<Vec<usize>, CliError> {
    match spec {
        "file" => Ok(from_file.unwrap_or_else(|| (0..len).collect())),
        "lex" => Ok(lex()),
        perm => perm
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Format(format!("bad --order entry {x:?}")))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational(&Value::from("-3/4")).unwrap(),
            Rational::new((-3).into(), 4.into())
        );
        assert_eq!(
            parse_rational(&Value::from(5)).unwrap(),
            Rational::from_integer(5.into())
        );
        assert!(parse_rational(&Value::from("1/0")).is_err());
        assert!(parse_rational(&Value::from(0.5)).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(
            resolve_order("file", None, 3, Vec::new).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(
            resolve_order("file", Some(vec![2, 0, 1]), 3, Vec::new).unwrap(),
            vec![2, 0, 1]
        );
        assert_eq!(
            resolve_order("lex", None, 2, || vec![1, 0]).unwrap(),
            vec![1, 0]
        );
        assert_eq!(
            resolve_order("1, 0", None, 2, Vec::new).unwrap(),
            vec![1, 0]
        );
        assert!(resolve_order("1,x", None, 2, Vec::new).is_err());
    }

    #[test]
    fn graph_file_with_labels_and_indices() {
        let f: GraphFile =
            serde_json::from_str(r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], [1, 2]]}"#)
                .unwrap();
        let (g, order) = f.build().unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(order.is_none());
        let f: GraphFile =
            serde_json::from_str(r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#).unwrap();
        assert!(f.build().is_err());
    }
}
