//! Graph and matrix specifications (`NAME:ARGS` strings) and experiment configs.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{a_gamma_circulant, a_gamma_path, random_band, shift};
use crate::graph::{circulant, lattice_box, path, random_connected, Graph};
use crate::io::{read_graph, read_matrix};
use crate::matrix::GraphMatrix;
use crate::norms::BeurlingParams;
use crate::powers::lazy_walk;

/// `path:M`, `circulant:N`, `lattice:D:SIDE`, `random:N:P` (seeded
/// separately) or `file:PATH`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    Path { m: usize },
    Circulant { n: usize },
    Lattice { dim: usize, side: usize },
    Random { n: usize, p: f64 },
    File { path: PathBuf },
}

/// `a_gamma_path:G`, `a_gamma_circulant:G`, `shift`, `identity`,
/// `lazy_walk:L`, `random_band:WIDTH[:SEED]` or `file:PATH`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixSpec {
    AGammaPath { gamma: f64 },
    AGammaCirculant { gamma: f64 },
    Shift,
    Identity,
    LazyWalk { laziness: f64 },
    RandomBand { width: usize, seed: Option<u64> },
    File { path: PathBuf },
}

fn split_spec(s: &str) -> (&str, Vec<&str>) {
    let mut it = s.splitn(2, ':');
    let name = it.next().unwrap_or("");
    let rest = it.next();
    (name, rest.map(|r| r.split(':').collect()).unwrap_or_default())
}

fn arg<T: FromStr>(args: &[&str], k: usize, spec: &str) -> Result<T> {
    args.get(k)
        .ok_or_else(|| Error::Parse(format!("{spec}: missing argument {}", k + 1)))?
        .parse()
        .map_err(|_| Error::Parse(format!("{spec}: cannot parse argument {:?}", args[k])))
}

fn arity(args: &[&str], allowed: &[usize], spec: &str) -> Result<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(Error::Parse(format!("{spec}: wrong number of arguments")))
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(GraphSpec::File { path: p.into() });
        }
        let (name, args) = split_spec(s);
        match name {
            "path" => {
                arity(&args, &[1], s)?;
                Ok(GraphSpec::Path { m: arg(&args, 0, s)? })
            }
            "circulant" | "cycle" => {
                arity(&args, &[1], s)?;
                Ok(GraphSpec::Circulant { n: arg(&args, 0, s)? })
            }
            "lattice" | "lattice_box" => {
                arity(&args, &[2], s)?;
                Ok(GraphSpec::Lattice { dim: arg(&args, 0, s)?, side: arg(&args, 1, s)? })
            }
            "random" => {
                arity(&args, &[2], s)?;
                Ok(GraphSpec::Random { n: arg(&args, 0, s)?, p: arg(&args, 1, s)? })
            }
            _ => Err(Error::Parse(format!("unknown graph generator {name:?}"))),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path { m } => write!(f, "path:{m}"),
            GraphSpec::Circulant { n } => write!(f, "circulant:{n}"),
            GraphSpec::Lattice { dim, side } => write!(f, "lattice:{dim}:{side}"),
            GraphSpec::Random { n, p } => write!(f, "random:{n}:{p}"),
            GraphSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl GraphSpec {
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match self {
            GraphSpec::Path { m } => path(*m),
            GraphSpec::Circulant { n } => circulant(*n),
            GraphSpec::Lattice { dim, side } => lattice_box(*dim, *side),
            GraphSpec::Random { n, p } => random_connected(*n, *p, seed),
            GraphSpec::File { path } => read_graph(path),
        }
    }
}

impl FromStr for MatrixSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(MatrixSpec::File { path: p.into() });
        }
        let (name, args) = split_spec(s);
        match name {
            "a_gamma_path" | "agamma" => {
                arity(&args, &[1], s)?;
                Ok(MatrixSpec::AGammaPath { gamma: arg(&args, 0, s)? })
            }
            "a_gamma_circulant" => {
                arity(&args, &[1], s)?;
                Ok(MatrixSpec::AGammaCirculant { gamma: arg(&args, 0, s)? })
            }
            "shift" => {
                arity(&args, &[0], s)?;
                Ok(MatrixSpec::Shift)
            }
            "identity" => {
                arity(&args, &[0], s)?;
                Ok(MatrixSpec::Identity)
            }
            "lazy_walk" => {
                arity(&args, &[0, 1], s)?;
                let laziness = if args.is_empty() { 0.5 } else { arg(&args, 0, s)? };
                Ok(MatrixSpec::LazyWalk { laziness })
            }
            "random_band" => {
                arity(&args, &[1, 2], s)?;
                let seed = if args.len() == 2 { Some(arg(&args, 1, s)?) } else { None };
                Ok(MatrixSpec::RandomBand { width: arg(&args, 0, s)?, seed })
            }
            _ => Err(Error::Parse(format!("unknown matrix generator {name:?}"))),
        }
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpec::AGammaPath { gamma } => write!(f, "a_gamma_path:{gamma}"),
            MatrixSpec::AGammaCirculant { gamma } => write!(f, "a_gamma_circulant:{gamma}"),
            MatrixSpec::Shift => write!(f, "shift"),
            MatrixSpec::Identity => write!(f, "identity"),
            MatrixSpec::LazyWalk { laziness } => write!(f, "lazy_walk:{laziness}"),
            MatrixSpec::RandomBand { width, seed: Some(s) } => write!(f, "random_band:{width}:{s}"),
            MatrixSpec::RandomBand { width, seed: None } => write!(f, "random_band:{width}"),
            MatrixSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl MatrixSpec {
    /// `seed` is used when the spec does not carry its own.
    pub fn build(&self, graph: &Arc<Graph>, seed: u64) -> Result<GraphMatrix> {
        Ok(match self {
            MatrixSpec::AGammaPath { gamma } => a_gamma_path(graph, *gamma),
            MatrixSpec::AGammaCirculant { gamma } => {
                if graph.num_vertices() < 3 {
                    return Err(Error::SizeTooSmall("circulant A_gamma needs at least 3 vertices".into()));
                }
                a_gamma_circulant(graph, *gamma)
            }
            MatrixSpec::Shift => shift(graph),
            MatrixSpec::Identity => GraphMatrix::identity(graph),
            MatrixSpec::LazyWalk { laziness } => lazy_walk(graph, *laziness)?.matrix().clone(),
            MatrixSpec::RandomBand { width, seed: s } => random_band(graph, *width, s.unwrap_or(seed)),
            MatrixSpec::File { path } => read_matrix(graph, path)?,
        })
    }
}

/// Everything needed to rerun one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub graph: GraphSpec,
    pub matrix: Option<MatrixSpec>,
    pub params: BeurlingParams,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Checks the regime each experiment relies on.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        match self.experiment.as_str() {
            "stability" | "invert" | "power" => p.require_regime(),
            "markov" if !(p.alpha > p.d + 1.0) => Err(Error::RegimeViolation(format!(
                "need alpha > d + 1 = {}, got {}",
                p.d + 1.0,
                p.alpha
            ))),
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs() {
        for s in ["path:101", "circulant:8", "lattice:2:11", "random:40:0.1", "file:/tmp/g.txt"] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("path".parse::<GraphSpec>().is_err());
        assert!("path:x".parse::<GraphSpec>().is_err());
        assert!("torus:3".parse::<GraphSpec>().is_err());
        let g = "circulant:8".parse::<GraphSpec>().unwrap().build(0).unwrap();
        assert_eq!(g.num_vertices(), 8);
    }

    #[test]
    fn matrix_specs() {
        for s in ["a_gamma_path:0.1", "a_gamma_circulant:0.5", "shift", "identity", "lazy_walk:0.5", "random_band:3:9", "random_band:2"] {
            let spec: MatrixSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("shift:1".parse::<MatrixSpec>().is_err());
        let g = Arc::new(path(10).unwrap());
        let a = "random_band:2".parse::<MatrixSpec>().unwrap().build(&g, 5).unwrap();
        assert_eq!(a, random_band(&g, 2, 5));
    }

    #[test]
    fn config_round_trip() {
        let c = ExperimentConfig {
            experiment: "power".into(),
            graph: GraphSpec::Random { n: 30, p: 0.125 },
            matrix: Some(MatrixSpec::RandomBand { width: 2, seed: Some(u64::MAX) }),
            params: BeurlingParams::new(f64::INFINITY, 2.0, 1.0).unwrap(),
            seed: u64::MAX - 1,
            output: Some("out.json".into()),
        };
        let back = ExperimentConfig::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(c.validate().is_ok());
        let bad = ExperimentConfig { experiment: "markov".into(), ..c };
        assert!(matches!(bad.validate(), Err(Error::RegimeViolation(_))));
    }
}
