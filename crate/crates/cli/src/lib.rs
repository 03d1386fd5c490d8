//! Command implementations behind the `miqp` binary.
//!
//! Every command writes its report to `out`, diagnostics to `err`, and
//! returns the process exit code: 0 feasible/valid, 1 infeasible/invalid,
//! 2 input or internal error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use miqp_core::format::{parse_certificate, parse_instance, write_certificate, write_instance};
use miqp_core::maxcut::{maxcut_instance, Graph};
use miqp_core::milp::decompose_mixed_integer_set;
use miqp_core::{brute_force_feasibility, find_certificate, verify_certificate, MiqpInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "miqp", version, about = "Exact feasibility certificates for single-quadratic mixed-integer programs")]
pub struct Cli {
    /// Worker threads for the parallel search (0: one per core).
    #[arg(long, env = "MIQP_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a certificate.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Brute-force feasibility over integer parts in `[-box, box]^p`.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "box")]
        box_radius: u64,
    },
    /// Emit the instance "graph has a cut of size >= k".
    GenMaxcut {
        /// Edge list such as `0-1,1-2,0-2`.
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Minimum vertex count, for graphs with isolated vertices.
        #[arg(long, default_value_t = 0)]
        vertices: usize,
    },
    /// Print the fiber and ray-family decomposition of the feasible region.
    Decompose {
        #[arg(long)]
        instance: PathBuf,
    },
}

fn read_instance(path: &Path) -> Result<MiqpInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("{}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => out.write_all(text.as_bytes()).context("cannot write output"),
    }
}

fn report_error(err: &mut dyn Write, e: anyhow::Error) -> i32 {
    let _ = writeln!(err, "error: {e:#}");
    EXIT_ERROR
}

pub fn cmd_solve(instance: &Path, out_path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let inst = read_instance(instance)?;
        match find_certificate(&inst)? {
            Some(cert) => {
                emit(out, out_path, &write_certificate(&cert))?;
                Ok(EXIT_OK)
            }
            None => {
                writeln!(out, "INFEASIBLE")?;
                Ok(EXIT_NO)
            }
        }
    };
    run().unwrap_or_else(|e| report_error(err, e))
}

pub fn cmd_verify(instance: &Path, cert: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let inst = read_instance(instance)?;
        let text = fs::read_to_string(cert).with_context(|| format!("cannot read {}", cert.display()))?;
        let cert = parse_certificate(&text).with_context(|| format!("{}", cert.display()))?;
        let report = verify_certificate(&inst, &cert.x)?;
        writeln!(out, "{report}")?;
        if report.size != cert.size {
            writeln!(out, "note: recorded size {} differs from computed size {}", cert.size, report.size)?;
        }
        Ok(if report.accepted() { EXIT_OK } else { EXIT_NO })
    };
    run().unwrap_or_else(|e| report_error(err, e))
}

pub fn cmd_oracle(instance: &Path, box_radius: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let inst = read_instance(instance)?;
        let verdict = brute_force_feasibility(&inst, box_radius)?;
        match &verdict.witness {
            Some(x) => {
                writeln!(out, "FEASIBLE box={}", verdict.box_radius)?;
                writeln!(out, "witness {}", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))?;
                Ok(EXIT_OK)
            }
            None => {
                writeln!(out, "INFEASIBLE box={}", verdict.box_radius)?;
                Ok(EXIT_NO)
            }
        }
    };
    run().unwrap_or_else(|e| report_error(err, e))
}

pub fn cmd_gen_maxcut(
    edges: &str,
    k: u64,
    vertices: usize,
    out_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut run = || -> Result<i32> {
        let graph = Graph::parse(edges, vertices)?;
        let text = format!(
            "# cut of size >= {k} in a graph on {} vertices with edges {edges}\n{}",
            graph.n,
            write_instance(&maxcut_instance(&graph, k))
        );
        emit(out, out_path, &text)?;
        Ok(EXIT_OK)
    };
    run().unwrap_or_else(|e| report_error(err, e))
}

pub fn cmd_decompose(instance: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let inst = read_instance(instance)?;
        let dec = decompose_mixed_integer_set(&inst.mixed_integer_set())?;
        write!(out, "{}", dec.dump())?;
        Ok(EXIT_OK)
    };
    run().unwrap_or_else(|e| report_error(err, e))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Solve { instance, out: path } => cmd_solve(instance, path.as_deref(), out, err),
        Command::Verify { instance, cert } => cmd_verify(instance, cert, out, err),
        Command::Oracle { instance, box_radius } => cmd_oracle(instance, *box_radius, out, err),
        Command::GenMaxcut {
            edges,
            k,
            out: path,
            vertices,
        } => cmd_gen_maxcut(edges, *k, *vertices, path.as_deref(), out, err),
        Command::Decompose { instance } => cmd_decompose(instance, out, err),
    }
}
