//! Plain-text graph, matrix and sequence files.
//!
//! * graph: `M E`, then `E` lines `u v` with `0 ≤ u < v < M`;
//! * matrix: `M NNZ`, then `NNZ` lines `i j re im`, unlisted entries zero;
//! * sequence: lines `k re im`, unlisted indices zero.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::GraphMatrix;
use crate::powers::ConvSequence;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (k + 1, l.split_whitespace().collect()))
    })
}

fn field<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse(format!("line {line}: cannot parse {tok:?}")))
}

fn expect_len(toks: &[&str], n: usize, line: usize) -> Result<()> {
    if toks.len() == n {
        Ok(())
    } else {
        Err(Error::Parse(format!("line {line}: expected {n} fields, found {}", toks.len())))
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    expect_len(&header, 2, l0)?;
    let m: usize = field(header[0], l0)?;
    let e: usize = field(header[1], l0)?;
    let mut edges = Vec::with_capacity(e);
    for (l, toks) in lines {
        expect_len(&toks, 2, l)?;
        let (u, v): (usize, usize) = (field(toks[0], l)?, field(toks[1], l)?);
        if u == v {
            return Err(Error::NotSimple(format!("line {l}: loop at vertex {u}")));
        }
        if u > v {
            return Err(Error::Parse(format!("line {l}: edges must be listed as u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != e {
        return Err(Error::Parse(format!("header announces {e} edges, found {}", edges.len())));
    }
    Ok(Graph::from_edges(m, &edges)?.with_meta("file", None))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let p = path.as_ref();
    let g = parse_graph(&std::fs::read_to_string(p)?)?;
    Ok(g.with_meta(format!("file:{}", p.display()), None))
}

pub fn format_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.num_vertices(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses a coordinate-form matrix over `graph`; repeated coordinates are rejected.
pub fn parse_matrix(graph: &Arc<Graph>, text: &str) -> Result<GraphMatrix> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    expect_len(&header, 2, l0)?;
    let m: usize = field(header[0], l0)?;
    let nnz: usize = field(header[1], l0)?;
    if m != graph.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "matrix file has M = {m}, graph has {} vertices",
            graph.num_vertices()
        )));
    }
    let mut data = vec![Complex64::new(0.0, 0.0); m * m];
    let mut seen = vec![false; m * m];
    let mut count = 0;
    for (l, toks) in lines {
        expect_len(&toks, 4, l)?;
        let (i, j): (usize, usize) = (field(toks[0], l)?, field(toks[1], l)?);
        graph.check_vertex(i)?;
        graph.check_vertex(j)?;
        if std::mem::replace(&mut seen[i * m + j], true) {
            return Err(Error::Parse(format!("line {l}: entry ({i}, {j}) listed twice")));
        }
        data[i * m + j] = Complex64::new(field(toks[2], l)?, field(toks[3], l)?);
        count += 1;
    }
    if count != nnz {
        return Err(Error::Parse(format!("header announces {nnz} entries, found {count}")));
    }
    GraphMatrix::from_entries(graph, data)
}

pub fn read_matrix(graph: &Arc<Graph>, path: impl AsRef<Path>) -> Result<GraphMatrix> {
    parse_matrix(graph, &std::fs::read_to_string(path)?)
}

/// Nonzero entries in row-major order, values with 17 significant digits.
pub fn format_matrix(a: &GraphMatrix) -> String {
    let n = a.n();
    let mut s = format!("{n} {}\n", a.nnz());
    for i in 0..n {
        for (j, z) in a.row(i).iter().enumerate() {
            if z.re != 0.0 || z.im != 0.0 {
                let _ = writeln!(s, "{i} {j} {:.16e} {:.16e}", z.re, z.im);
            }
        }
    }
    s
}

pub fn parse_sequence(text: &str) -> Result<ConvSequence> {
    let mut pts: Vec<(i64, Complex64)> = Vec::new();
    for (l, toks) in content_lines(text) {
        expect_len(&toks, 3, l)?;
        let k: i64 = field(toks[0], l)?;
        let z = Complex64::new(field(toks[1], l)?, field(toks[2], l)?);
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Parse(format!("line {l}: non-finite coefficient")));
        }
        pts.push((k, z));
    }
    let start = pts.iter().map(|p| p.0).min().ok_or(Error::EmptySequence)?;
    let end = pts.iter().map(|p| p.0).max().expect("nonempty");
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (end - start + 1) as usize];
    let mut seen = vec![false; coeffs.len()];
    for (k, z) in pts {
        let i = (k - start) as usize;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Parse(format!("index {k} listed twice")));
        }
        coeffs[i] = z;
    }
    ConvSequence::new(start, coeffs)
}

pub fn read_sequence(path: impl AsRef<Path>) -> Result<ConvSequence> {
    parse_sequence(&std::fs::read_to_string(path)?)
}

pub fn format_sequence(a: &ConvSequence) -> String {
    let mut s = String::new();
    for (k, z) in a.indices().zip(&a.coeffs) {
        let _ = writeln!(s, "{k} {:.16e} {:.16e}", z.re, z.im);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::random_decaying;
    use crate::graph::{path, random_connected};

    #[test]
    fn graph_round_trip() {
        let g = random_connected(30, 0.1, 4).unwrap();
        let text = format_graph(&g);
        let h = parse_graph(&text).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert_eq!(parse_graph("# triangle\n3 3\n0 1\n1 2\n0 2\n").unwrap().diameter(), 1);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("2 1\n1 1\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_graph("3 2\n0 1\n0 1\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_graph("2 1\n1 0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("3 1\n0 1\n"), Err(Error::NotConnected { .. })));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let g = Arc::new(path(12).unwrap());
        let a = random_decaying(&g, 3, 8);
        let b = parse_matrix(&g, &format_matrix(&a)).unwrap();
        assert_eq!(a, b);
        assert!(parse_matrix(&g, "11 0\n").is_err());
        assert!(parse_matrix(&g, "12 2\n0 0 1 0\n0 0 2 0\n").is_err());
        assert!(parse_matrix(&g, "12 1\n0 12 1 0\n").is_err());
    }

    #[test]
    fn sequence_round_trip() {
        let a = parse_sequence("1 0 0.5\n0 0.5 0\n").unwrap();
        assert_eq!(a.start, 0);
        assert_eq!(a.coeffs[1], Complex64::new(0.0, 0.5));
        assert_eq!(parse_sequence(&format_sequence(&a)).unwrap(), a);
        assert_eq!(parse_sequence("# nothing\n"), Err(Error::EmptySequence));
        let gap = parse_sequence("-1 1 0\n2 1 0\n").unwrap();
        assert_eq!(gap.coeffs.len(), 4);
    }
}
