//! The `singer` command line.
//!
//! Every subcommand prints a short text report, or with `--json` one JSON
//! object `{command, inputs, result, timing}`.

pub mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use singer_core::action::{induced_action, Group};
use singer_core::dual::{coinvariants, primitives};
use singer_core::hit::kameko_matrix;
use singer_core::lambda::{differential, homology, normalize, LambdaElement};
use singer_core::transfer::transfer_matrix;
use singer_core::{cache, limits, qp_basis, set_limits, BitMatrix, BitVec, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_ARGUMENTS: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "singer", version, about = "Hit problem, lambda algebra and algebraic transfer over F_2")]
pub struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for cached hit-space echelon forms.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Largest polynomial degree accepted.
    #[arg(long, global = true, value_name = "N")]
    pub max_degree: Option<u32>,
    /// Worker threads for degree-independent work.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of (QP_k)_d.
    Qp {
        #[command(flatten)]
        at: Degree,
        /// List representative monomials.
        #[arg(long)]
        basis: bool,
    },
    /// GL_k- or symmetric-group invariants in (QP_k)_d.
    Invariants {
        #[command(flatten)]
        at: Degree,
        #[arg(long, value_enum, default_value_t = GroupArg::Gl)]
        group: GroupArg,
        /// List representative polynomials.
        #[arg(long)]
        basis: bool,
    },
    /// Basis of the primitives in degree d of the divided power algebra.
    Primitives {
        #[command(flatten)]
        at: Degree,
    },
    /// GL_k-coinvariants of the primitives.
    Coinvariants {
        #[command(flatten)]
        at: Degree,
    },
    /// Kameko's map (QP_k)_{2m+k} -> (QP_k)_m.
    Kameko {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
    /// Lambda algebra computations.
    Lambda {
        #[command(subcommand)]
        op: LambdaOp,
    },
    /// Matrix of the transfer into H^{k,d} of the lambda algebra.
    Transfer {
        #[command(flatten)]
        at: Degree,
    },
    /// Regenerates a bundled table and compares it with the expected values.
    Table {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(tables::NAMES), required_unless_present = "file", conflicts_with = "file")]
        name: Option<String>,
        /// A table in the bundled JSON format, read from disk instead.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct Degree {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: u32,
}

#[derive(Subcommand, Debug)]
pub enum LambdaOp {
    /// Admissible normal form.
    Normalize {
        #[arg(long)]
        expr: String,
    },
    /// Boundary, in normal form.
    Diff {
        #[arg(long)]
        expr: String,
    },
    /// H^{s,w} with named classes.
    Homology {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        w: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GroupArg {
    Gl,
    Sym,
}

enum Failure {
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// What a subcommand produced: machine-readable inputs and result plus the
/// text report.
struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
    mismatch: bool,
}

fn bits(v: &BitVec) -> String {
    (0..v.len()).map(|i| if v.get(i) { '1' } else { '0' }).collect()
}

fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    (0..m.rows()).map(|r| bits(&m.row(r))).collect()
}

fn list(items: &[String]) -> String {
    items.iter().map(|s| format!("  {s}\n")).collect()
}

fn qp(k: usize, d: u32, with_basis: bool) -> Result<Outcome, Failure> {
    let b = qp_basis(k, d)?;
    let reps: Vec<String> = b.representatives().iter().map(|m| m.to_string()).collect();
    let mut text = format!("dim (QP_{k})_{d} = {}\n", b.dim());
    let mut result = json!({ "dim": b.dim(), "monomials": b.ambient_dim() });
    if with_basis {
        text += &list(&reps);
        result["basis"] = json!(reps);
    }
    Ok(Outcome {
        command: "qp",
        inputs: json!({ "k": k, "d": d, "basis": with_basis }),
        result,
        text,
        mismatch: false,
    })
}

fn invariants_cmd(k: usize, d: u32, group: GroupArg, with_basis: bool) -> Result<Outcome, Failure> {
    let b = qp_basis(k, d)?;
    let (g, gname) = match group {
        GroupArg::Gl => (Group::Gl, "gl"),
        GroupArg::Sym => (Group::Sym, "sym"),
    };
    let inv = induced_action(&b)?.invariants(g);
    let polys: Vec<String> = inv.iter().map(|v| b.polynomial_of(v).to_string()).collect();
    let mut text = format!("dim (QP_{k})_{d}^{gname} = {} (of {})\n", inv.len(), b.dim());
    let mut result = json!({ "dim": inv.len(), "qp_dim": b.dim() });
    if with_basis {
        text += &list(&polys);
        result["basis"] = json!(polys);
    }
    Ok(Outcome {
        command: "invariants",
        inputs: json!({ "k": k, "d": d, "group": gname, "basis": with_basis }),
        result,
        text,
        mismatch: false,
    })
}

fn primitives_cmd(k: usize, d: u32) -> Result<Outcome, Failure> {
    let basis: Vec<String> = primitives(k, d)?.iter().map(|q| q.to_string()).collect();
    Ok(Outcome {
        command: "primitives",
        inputs: json!({ "k": k, "d": d }),
        text: format!("{} primitives in degree {d}, k = {k}\n{}", basis.len(), list(&basis)),
        result: json!({ "dim": basis.len(), "basis": basis }),
        mismatch: false,
    })
}

fn coinvariants_cmd(k: usize, d: u32) -> Result<Outcome, Failure> {
    let c = coinvariants(k, d)?;
    let reps: Vec<String> = c.representatives()?.iter().map(|q| q.to_string()).collect();
    Ok(Outcome {
        command: "coinvariants",
        inputs: json!({ "k": k, "d": d }),
        text: format!(
            "coinvariants: dim {} (primitives {})\n{}",
            c.dim(),
            c.primitives.len(),
            list(&reps)
        ),
        result: json!({ "dim": c.dim(), "primitives_dim": c.primitives.len(), "representatives": reps }),
        mismatch: false,
    })
}

fn kameko_cmd(k: usize, m: u32) -> Result<Outcome, Failure> {
    let km = kameko_matrix(k, m)?;
    let rank = km.rank();
    let rows = matrix_rows(&km.matrix);
    let iso = km.is_isomorphism();
    let source = km.source.d();
    Ok(Outcome {
        command: "kameko",
        inputs: json!({ "k": k, "m": m }),
        text: format!(
            "(QP_{k})_{source} -> (QP_{k})_{m}: {} x {}, rank {rank}, kernel {}, iso {iso}\n{}",
            km.matrix.rows(),
            km.matrix.cols(),
            km.matrix.cols() - rank,
            list(&rows)
        ),
        result: json!({
            "source_degree": source,
            "target_degree": m,
            "rows": km.matrix.rows(),
            "cols": km.matrix.cols(),
            "rank": rank,
            "kernel_dim": km.matrix.cols() - rank,
            "iso": iso,
            "matrix": rows,
        }),
        mismatch: false,
    })
}

fn lambda_cmd(op: &LambdaOp) -> Result<Outcome, Failure> {
    match op {
        LambdaOp::Normalize { expr } => {
            let out = normalize(&LambdaElement::parse(expr)?).to_string();
            Ok(Outcome {
                command: "lambda normalize",
                inputs: json!({ "expr": expr }),
                text: format!("{out}\n"),
                result: json!({ "normal_form": out }),
                mismatch: false,
            })
        }
        LambdaOp::Diff { expr } => {
            let out = differential(&LambdaElement::parse(expr)?).to_string();
            Ok(Outcome {
                command: "lambda diff",
                inputs: json!({ "expr": expr }),
                text: format!("{out}\n"),
                result: json!({ "boundary": out }),
                mismatch: false,
            })
        }
        LambdaOp::Homology { s, w } => {
            let h = homology(*s, *w)?;
            let basis: Vec<String> = h.basis.iter().map(|e| e.to_string()).collect();
            let mut text = format!(
                "H^({s},{w}): dim {} (chains {}, cycles {}, boundaries {})\n",
                h.homology_dim,
                h.chain_dim,
                h.cycle_basis.len(),
                h.boundary_rank
            );
            for (e, n) in basis.iter().zip(&h.names) {
                text += &format!("  [{}] {e}\n", n.as_deref().unwrap_or("?"));
            }
            for (n, c) in &h.identified {
                text += &format!("  {n} = {}\n", bits(c));
            }
            let identified: Vec<Value> = h
                .identified
                .iter()
                .map(|(n, c)| json!({ "name": n, "coordinates": bits(c) }))
                .collect();
            Ok(Outcome {
                command: "lambda homology",
                inputs: json!({ "s": s, "w": w }),
                text,
                result: json!({
                    "dim": h.homology_dim,
                    "chain_dim": h.chain_dim,
                    "cycles_dim": h.cycle_basis.len(),
                    "boundary_rank": h.boundary_rank,
                    "basis": basis,
                    "names": h.names,
                    "identified": identified,
                }),
                mismatch: false,
            })
        }
    }
}

fn transfer_cmd(k: usize, d: u32) -> Result<Outcome, Failure> {
    let t = transfer_matrix(k, d)?;
    let images: Vec<Value> = t
        .domain
        .iter()
        .zip(&t.images)
        .map(|(q, c)| {
            json!({
                "representative": q.to_string(),
                "cycle": c.cycle.to_string(),
                "coordinates": bits(&c.coordinates),
                "names": c.names,
            })
        })
        .collect();
    let mut text = format!(
        "Tr_{k} in degree {d}: {} -> {}, rank {}, {}\n",
        t.domain_dim, t.codomain_dim, t.rank, t.verdict
    );
    for (q, c) in t.domain.iter().zip(&t.images) {
        let name = if c.names.is_empty() {
            bits(&c.coordinates)
        } else {
            c.names.join(" = ")
        };
        text += &format!("  [{q}] -> {name}\n");
    }
    Ok(Outcome {
        command: "transfer",
        inputs: json!({ "k": k, "d": d }),
        text,
        result: json!({
            "domain_dim": t.domain_dim,
            "codomain_dim": t.codomain_dim,
            "rank": t.rank,
            "verdict": t.verdict.as_str(),
            "matrix": matrix_rows(&t.matrix),
            "images": images,
        }),
        mismatch: false,
    })
}

fn table_cmd(table: &tables::Table, threads: usize) -> Result<Outcome, Failure> {
    let rows = tables::regenerate(table, threads)?;
    let mismatch = rows.iter().any(|r| !r.ok);
    let mut text = format!("{}: {}\n", table.name, table.title);
    for r in &rows {
        text += &format!(
            "  {:<7} {:<32} k={} n={:<3} expected {:<3} computed {:<3} {}\n",
            r.entry.label,
            r.entry.quantity,
            r.entry.k,
            r.entry.degree,
            r.entry.expected,
            r.computed,
            if r.ok { "ok" } else { "MISMATCH" }
        );
    }
    Ok(Outcome {
        command: "table",
        inputs: json!({ "name": table.name }),
        result: json!({ "title": table.title, "rows": rows, "all_ok": !mismatch }),
        text,
        mismatch,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Qp { at, basis } => qp(at.k, at.d, *basis),
        Command::Invariants { at, group, basis } => invariants_cmd(at.k, at.d, *group, *basis),
        Command::Primitives { at } => primitives_cmd(at.k, at.d),
        Command::Coinvariants { at } => coinvariants_cmd(at.k, at.d),
        Command::Kameko { k, m } => kameko_cmd(*k, *m),
        Command::Lambda { op } => lambda_cmd(op),
        Command::Transfer { at } => transfer_cmd(at.k, at.d),
        Command::Table { name, file } => {
            let table = match (name, file) {
                (Some(name), _) => tables::load(name).ok_or_else(|| {
                    Failure::Core(Error::InvalidArgument(format!("unknown table {name:?}")))
                })?,
                (None, Some(path)) => tables::read(path)?,
                (None, None) => unreachable!("clap requires one of --name, --file"),
            };
            table_cmd(&table, cli.threads)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Cache(_) => EXIT_FAILURE,
        _ => EXIT_ARGUMENTS,
    }
}

/// Runs the command line `argv` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGUMENTS } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(d) = cli.max_degree {
        let mut l = limits();
        l.max_degree = d;
        if let Err(e) = set_limits(l) {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ARGUMENTS;
        }
    }
    cache::set_cache_dir(cli.cache.clone());

    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed_us = start.elapsed().as_micros() as u64;
    let outcome = match outcome {
        Ok(o) => o,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if cli.json {
        let doc = json!({
            "command": outcome.command,
            "inputs": outcome.inputs,
            "result": outcome.result,
            "timing": { "elapsed_us": elapsed_us },
        });
        let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("JSON values serialize"));
    } else {
        let _ = write!(out, "{}", outcome.text);
    }
    if outcome.mismatch {
        let _ = writeln!(err, "expected values were not reproduced");
        return EXIT_MISMATCH;
    }
    EXIT_OK
}
