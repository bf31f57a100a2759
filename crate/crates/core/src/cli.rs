//! Command-line front end. Exit codes: 0 when every asserted inequality
//! holds, 1 when one fails, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::config::{GraphSpec, MatrixSpec};
use crate::covering::{covering_multiplicity, counting_bound, maximal_disjoint_set};
use crate::error::{Error, Result};
use crate::graph::{estimate_dimension, Graph, GraphMetrics};
use crate::inversion::{agamma_scaling_study, inversion_verify, AgammaStudy};
use crate::io::{format_graph, read_sequence};
use crate::matrix::{size_cap, GraphMatrix};
use crate::norms::{beurling_norm, beurling_star_norm, op_norm, parse_exponent, schur_norm, BeurlingParams, Lp};
use crate::powers::{conv_power_growth, markov_hop_report, power_trajectory, ConvSequence, PowerTrajectory, TransitionMatrix};
use crate::report::{emit, to_csv, to_json, NormRow};
use crate::stability::stability_transfer_report;
use crate::verify::{verify_all_with, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "decaynet", version, about = "Polynomial off-diagonal decay on graphs: norms, stability, inversion, powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Graph generator, e.g. path:101, circulant:8, lattice:2:11, random:40:0.1, file:PATH
    #[arg(long = "gen")]
    graph: Option<String>,
    /// Matrix generator, e.g. a_gamma_path:0.1, shift, lazy_walk:0.5, random_band:3, file:PATH
    #[arg(long)]
    matrix: Option<String>,
    /// Summability exponent r in [1, inf]
    #[arg(long, default_value = "inf")]
    r: String,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Declared dimension; defaults to the generator's dimension
    #[arg(long)]
    dim: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph in the edge-list file format
    Gen(Common),
    /// Doubling, density and normality constants of a graph
    Stats(Common),
    /// Beurling, starred, Schur and operator norms of a matrix
    Norm(Common),
    /// Maximal N-disjoint fusion set (N from --n) with its covering counts
    Cover(Common),
    /// Lower stability bounds and their transfer between exponents
    Stability(Common),
    /// Inversion report, or the A_gamma scaling study with --gammas
    Invert {
        #[command(flatten)]
        common: Common,
        /// Comma-separated gamma grid for the scaling study
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        /// CSV table for the study
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Power trajectory up to --n
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Hop probabilities of a Markov chain up to --n steps
    Markov(Common),
    /// Convolution powers of a sequence up to --n
    Convpow {
        #[command(flatten)]
        common: Common,
        /// Sequence file with "k re im" lines
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Built-in symbol when no file is given: binomial or rotated
        #[arg(long, default_value = "binomial")]
        symbol: String,
    },
    /// Run the full inequality suite on the standard battery
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Random matrix instances per battery graph
        #[arg(long, default_value_t = 12)]
        instances: usize,
        /// Self-test: shrink the algebra constant so its check must fail
        #[arg(long)]
        tamper_algebra_constant: bool,
    },
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_ASSERTION,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn fail(what: &str) {
    eprintln!("assertion failed: {what}");
}

impl Common {
    fn graph(&self) -> Result<Arc<Graph>> {
        let spec: GraphSpec = self
            .graph
            .as_deref()
            .ok_or_else(|| Error::Parse("--gen is required".into()))?
            .parse()?;
        Ok(Arc::new(spec.build(self.seed)?))
    }

    fn metrics(&self, g: &Graph) -> Result<GraphMetrics> {
        match self.dim {
            Some(d) => GraphMetrics::new(g, d),
            None => Ok(GraphMetrics::natural(g)),
        }
    }

    fn matrix(&self, g: &Arc<Graph>) -> Result<GraphMatrix> {
        let spec: MatrixSpec = match (&self.matrix, self.gamma) {
            (Some(s), _) => s.parse()?,
            (None, Some(gamma)) => MatrixSpec::AGammaPath { gamma },
            (None, None) => return Err(Error::Parse("--matrix is required".into())),
        };
        spec.build(g, self.seed)
    }

    fn params(&self, d: f64) -> Result<BeurlingParams> {
        BeurlingParams::new(parse_exponent(&self.r)?, self.alpha, d)
    }

    fn n(&self, default: u32) -> u32 {
        self.n.unwrap_or(default)
    }

    fn write<T: Serialize + ?Sized>(&self, value: &T) -> Result<()> {
        emit(self.out.as_deref(), &to_json(value)?)
    }
}

fn write_csv(path: Option<&Path>, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, to_csv(header, rows))?;
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Gen(c) => {
            let g = c.graph()?;
            emit(c.out.as_deref(), &format_graph(&g))?;
            Ok(true)
        }
        Command::Stats(c) => {
            let g = c.graph()?;
            let m = c.metrics(&g)?;
            let est = estimate_dimension(&g).ok();
            c.write(&json!({"graph": g.label(), "edges": g.num_edges(), "metrics": m, "estimated_dimension": est}))?;
            Ok(true)
        }
        Command::Norm(c) => cmd_norm(&c),
        Command::Cover(c) => cmd_cover(&c),
        Command::Stability(c) => {
            let g = c.graph()?;
            let m = c.metrics(&g)?;
            let a = c.matrix(&g)?;
            let p = c.params(m.d)?;
            let id = c.matrix.clone().unwrap_or_else(|| "a_gamma_path".into());
            let rep = stability_transfer_report(&id, &a, &p, &Lp::ALL)?;
            c.write(&rep)?;
            if !rep.pass() {
                fail("finite-size stability bracket M^{-|1/p-1/q|} <= A_q/A_p <= M^{|1/p-1/q|}");
            }
            Ok(rep.pass())
        }
        Command::Invert { common: c, gammas, csv } => cmd_invert(&c, gammas, csv.as_deref()),
        Command::Power { common: c, csv } => {
            let g = c.graph()?;
            let m = c.metrics(&g)?;
            let a = c.matrix(&g)?;
            let p = c.params(m.d)?;
            let t = power_trajectory(&a, &p, &m, c.n(32))?;
            write_csv(csv.as_deref(), &PowerTrajectory::CSV_HEADER, &t.csv_rows())?;
            c.write(&t)?;
            if !t.implied_c_stable {
                fail("implied power constant at most doubles over the upper half of the n-range");
            }
            Ok(t.implied_c_stable)
        }
        Command::Markov(c) => {
            let g = c.graph()?;
            let m = c.metrics(&g)?;
            let spec = c.matrix.clone().unwrap_or_else(|| "lazy_walk:0.5".into());
            let p = TransitionMatrix::new(spec.parse::<MatrixSpec>()?.build(&g, c.seed)?)?;
            let rep = markov_hop_report(&p, c.alpha, m.d, c.n(32))?;
            c.write(&rep)?;
            if !rep.pass() {
                fail("hop probabilities: entries <= 1, rows sum to 1, no mass beyond n, stable implied constant");
            }
            Ok(rep.pass())
        }
        Command::Convpow { common: c, seq, symbol } => {
            let a = match seq {
                Some(p) => read_sequence(p)?,
                None => builtin_symbol(&symbol)?,
            };
            let g = conv_power_growth(&a, c.alpha, c.n(256))?;
            c.write(&g)?;
            if !g.pass() {
                fail("weighted sup grows at most like n^{alpha+1} and Wiener norms like n^{1+eps}");
            }
            Ok(g.pass())
        }
        Command::VerifyAll { common: c, instances, tamper_algebra_constant } => {
            let s = verify_all_with(&VerifyOptions {
                seed: c.seed,
                instances_per_graph: instances,
                tamper_algebra_constant,
            })?;
            c.write(&s)?;
            for row in &s.failures {
                fail(&format!("{} [{}]: {} vs {:?}", row.op, row.anchor, row.exact, row.bounds));
            }
            Ok(s.pass())
        }
    }
}

fn builtin_symbol(name: &str) -> Result<ConvSequence> {
    let half = num_complex::Complex64::new(0.5, 0.0);
    match name {
        "binomial" => ConvSequence::new(0, vec![half, half]),
        "rotated" => ConvSequence::new(0, vec![half, num_complex::Complex64::new(0.0, 0.5)]),
        _ => Err(Error::Parse(format!("unknown symbol {name:?}; use binomial, rotated or --seq"))),
    }
}

fn cmd_norm(c: &Common) -> Result<bool> {
    let g = c.graph()?;
    let m = c.metrics(&g)?;
    let a = c.matrix(&g)?;
    let p = c.params(m.d)?;
    let params = json!({"r": c.r, "alpha": p.alpha, "d": p.d});
    let mut rows = vec![
        NormRow { op: "beurling_norm".into(), params: params.clone(), value: beurling_norm(&a, &p) },
        NormRow { op: "beurling_star_norm".into(), params: params.clone(), value: beurling_star_norm(&a, &p) },
        NormRow { op: "schur_norm".into(), params: json!({}), value: schur_norm(&a) },
    ];
    for q in Lp::ALL {
        if q == Lp::Two && a.n() > size_cap() {
            continue;
        }
        rows.push(NormRow { op: "op_norm".into(), params: json!({"p": q.to_string()}), value: op_norm(&a, q)? });
    }
    c.write(&rows)?;
    Ok(true)
}

fn cmd_cover(c: &Common) -> Result<bool> {
    let g = c.graph()?;
    let m = c.metrics(&g)?;
    let radius = c.n(1) as usize;
    let f = maximal_disjoint_set(&g, radius)?;
    let chk = f.verify();
    let n_prime = 2 * radius;
    let (lo, hi) = covering_multiplicity(&f, n_prime)?;
    let bound = counting_bound(m.d0, radius, n_prime);
    let ok = chk.pass() && lo >= 1 && crate::approx_le(hi as f64, bound);
    c.write(&json!({
        "fusion_set": f,
        "structure": chk,
        "N_prime": n_prime,
        "multiplicity": [lo, hi],
        "counting_bound": bound,
        "pass": ok,
    }))?;
    if !ok {
        fail("fusion set is disjoint, maximal, 2N-covering and within the counting bound");
    }
    Ok(ok)
}

fn cmd_invert(c: &Common, gammas: Option<Vec<f64>>, csv: Option<&Path>) -> Result<bool> {
    let g = c.graph()?;
    let m = c.metrics(&g)?;
    let p = c.params(m.d)?;
    if let Some(gs) = gammas {
        let s = agamma_scaling_study(&gs, &p, g.num_vertices())?;
        write_csv(csv, &AgammaStudy::CSV_HEADER, &s.csv_rows())?;
        c.write(&s)?;
        if !s.implied_c_stable {
            fail("implied inversion constant at most doubles from large to small gamma");
        }
        return Ok(s.implied_c_stable);
    }
    let a = c.matrix(&g)?;
    let rep = inversion_verify(&a, &p)?;
    c.write(&rep)?;
    if !rep.finite() {
        fail("Beurling norm of the inverse is finite and positive");
    }
    Ok(rep.finite())
}
