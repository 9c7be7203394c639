//! Command-line front end for the symmetric-tensor classification engine.
//!
//! Five subcommands: `stratify` computes the symmetric-rank distribution of
//! an entire code space and can persist it as a rank-table file, `orbits`
//! decomposes each rank layer under GL_n(F_p) and prints canonical forms,
//! `canonical` answers the same questions for a single tensor literal,
//! `verify` recomputes every embedded reference table and diffs against it,
//! and `group-order` prints |GL_n(F_p)|.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or data errors,
//! 3 resource refusal (memory budget exceeded, group too large).

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::Report;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use symrank_core::text::parse_dots;
use symrank_core::{
    classify, expected, group_order, load_table, orbit_scan_with_witness, parse_canonical,
    parse_literal, render_canonical, stratify, stratify_with_progress, verify_shape, write_table,
    ActionTables, Error, FieldSpec, Layout, RankTable, Shape, StratifyLimits, SymTensor,
};

#[derive(Parser)]
#[command(name = "symrank", version, about = "Symmetric tensors over prime fields: rank strata, orbits, canonical forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the symmetric rank of every tensor of the shape.
    Stratify(StratifyArgs),
    /// Decompose each rank layer into GL_n(F_p)-orbits with canonical forms.
    Orbits(OrbitsArgs),
    /// Rank, orbit size, and canonical form of a single tensor.
    Canonical(CanonicalArgs),
    /// Recompute the embedded reference shapes and diff against them.
    Verify(VerifyArgs),
    /// Print the order of GL_n(F_p).
    GroupOrder(GroupOrderArgs),
}

#[derive(Args)]
struct ShapeArgs {
    /// Field modulus (a prime).
    #[arg(long)]
    p: u64,
    /// Dimension of every mode.
    #[arg(long, default_value_t = 3)]
    n: u64,
    /// Tensor order.
    #[arg(long)]
    k: u64,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Memory budget in bytes, or with a K/M/G suffix. Falls back to the
    /// SYMRANK_MEM_LIMIT environment variable, then to 1G.
    #[arg(long, value_parser = parse_byte_size)]
    memory_limit: Option<u64>,
    /// Stop expanding past this rank and mark the table truncated.
    #[arg(long, default_value_t = 32)]
    max_rank: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct StratifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Persist the finished rank table to this file.
    #[arg(long)]
    layers: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitsArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse a stratification from this rank-table file if it exists.
    #[arg(long)]
    layers: Option<PathBuf>,
}

#[derive(Args)]
struct CanonicalArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Tensor literal: comma-separated residues (free entries or the full
    /// flattened list), a bracketed matrix, or a dotted entry list.
    literal: String,
    /// Also print a group element carrying the tensor to its canonical form.
    #[arg(long)]
    witness: bool,
    /// Reuse a stratification from this rank-table file if it exists.
    #[arg(long)]
    layers: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one embedded shape, given as `p,n,k`.
    #[arg(long, value_name = "P,N,K")]
    only: Option<String>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Memory budget in bytes, or with a K/M/G suffix. Falls back to the
    /// SYMRANK_MEM_LIMIT environment variable, then to 1G.
    #[arg(long, value_parser = parse_byte_size)]
    memory_limit: Option<u64>,
    /// Stop expanding past this rank and mark the table truncated.
    #[arg(long, default_value_t = 32)]
    max_rank: u8,
}

#[derive(Args)]
struct GroupOrderArgs {
    /// Field modulus (a prime).
    #[arg(long)]
    p: u64,
    /// Matrix dimension.
    #[arg(long, default_value_t = 3)]
    n: u64,
}

/// Anything a subcommand can fail with: an engine error (exit 2, or 3 for
/// resource refusals) or a usage problem of the CLI's own (exit 2).
enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Usage(msg) => msg.fmt(f),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::MemoryBudget { .. } | Error::GroupTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Stratify(args) => cmd_stratify(args),
        Command::Orbits(args) => cmd_orbits(args),
        Command::Canonical(args) => cmd_canonical(args),
        Command::Verify(args) => cmd_verify(args),
        Command::GroupOrder(args) => cmd_group_order(args),
    }
}

fn cmd_stratify(args: StratifyArgs) -> Result<u8, Failure> {
    let layout = layout_of(&args.run.shape)?;
    let shape = *layout.shape();
    let limits = limits_of(&args.run)?;
    configure_threads(args.run.threads);

    eprintln!(
        "stratifying p={} n={} k={}: {} tensors",
        shape.p(),
        shape.n(),
        shape.k(),
        shape.code_space()
    );
    let started = Instant::now();
    let table = stratify_with_progress(&layout, &limits, |rank, added| {
        eprintln!("  rank {rank}: {added} tensors");
    })?;
    eprintln!(
        "done in {:.2}s: max rank {}, {} without decomposition",
        started.elapsed().as_secs_f64(),
        table.max_rank(),
        table.sentinel_count()
    );
    if table.truncated() {
        eprintln!(
            "warning: stopped at rank {}; tensors beyond the cutoff stay unresolved",
            table.max_rank()
        );
    }
    if let Some(path) = &args.layers {
        write_table(&table, path)?;
        eprintln!("rank table written to {}", path.display());
    }

    let report = Report {
        p: shape.p(),
        n: shape.n(),
        k: shape.k(),
        group_order: group_order(shape.n(), shape.p())?,
        layer_counts: table.layer_counts().to_vec(),
        sentinel_count: table.sentinel_count(),
        orbits: None,
    };
    emit(&report, args.format, args.out.as_deref())?;
    Ok(0)
}

fn cmd_orbits(args: OrbitsArgs) -> Result<u8, Failure> {
    let layout = layout_of(&args.run.shape)?;
    let limits = limits_of(&args.run)?;
    configure_threads(args.run.threads);

    let table = obtain_table(&layout, &limits, args.layers.as_deref())?;
    eprintln!(
        "classifying p={} n={} k={} under a group of order {}",
        layout.shape().p(),
        layout.shape().n(),
        layout.shape().k(),
        group_order(layout.shape().n(), layout.shape().p())?
    );
    let started = Instant::now();
    let tables = ActionTables::build(&layout, limits.memory_budget_bytes)?;
    let cls = classify(&table, &layout, &tables)?;
    eprintln!(
        "done in {:.2}s: {} orbits",
        started.elapsed().as_secs_f64(),
        cls.records.len()
    );

    let report = Report::from_classification(&layout, &cls);
    emit(&report, args.format, args.out.as_deref())?;
    Ok(0)
}

fn cmd_canonical(args: CanonicalArgs) -> Result<u8, Failure> {
    let layout = layout_of(&args.run.shape)?;
    let limits = limits_of(&args.run)?;
    configure_threads(args.run.threads);

    let t = parse_tensor(&layout, &args.literal)?;
    let table = obtain_table(&layout, &limits, args.layers.as_deref())?;
    match table.rank_of(t.code()) {
        Some(rank) => println!("rank: {rank}"),
        None if table.truncated() => {
            println!("rank: not determined (truncated at rank {})", table.max_rank())
        }
        None => println!("rank: no symmetric decomposition"),
    }

    let (orbit, witness) = orbit_scan_with_witness(&layout, &t)?;
    let canonical = SymTensor::new(*layout.shape(), orbit[0]);
    println!("orbit size: {}", orbit.len());
    println!("canonical: {}", render_canonical(&layout, &canonical));
    if args.witness {
        println!("witness: {}", witness.render());
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    configure_threads(args.threads);
    let limits = StratifyLimits {
        memory_budget_bytes: resolve_memory(args.memory_limit)?,
        max_rank: args.max_rank,
    };

    let shapes: Vec<&expected::ExpectedShape> = match &args.only {
        Some(raw) => {
            let (p, n, k) = parse_only(raw)?;
            match expected::find(p, n, k) {
                Some(exp) => vec![exp],
                None => {
                    return Err(Failure::Usage(format!(
                        "no embedded reference data for p={p} n={n} k={k}; available: {}",
                        available_shapes()
                    )))
                }
            }
        }
        None => expected::all().iter().collect(),
    };

    let mut failed = false;
    for exp in shapes {
        match verify_shape(exp, &limits)? {
            None => println!("shape p={} n={} k={}: PASS", exp.p, exp.n, exp.k),
            Some(diff) => {
                println!("shape p={} n={} k={}: FAIL — {diff}", exp.p, exp.n, exp.k);
                failed = true;
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_group_order(args: GroupOrderArgs) -> Result<u8, Failure> {
    FieldSpec::new(args.p)?;
    let n = u8::try_from(args.n)
        .map_err(|_| Failure::Usage(format!("dimension {} out of range", args.n)))?;
    println!("{}", group_order(n, args.p as u8)?);
    Ok(0)
}

fn layout_of(shape: &ShapeArgs) -> Result<Layout, Failure> {
    Ok(Layout::new(&Shape::new(shape.n, shape.k, shape.p)?))
}

fn limits_of(run: &RunArgs) -> Result<StratifyLimits, Failure> {
    Ok(StratifyLimits {
        memory_budget_bytes: resolve_memory(run.memory_limit)?,
        max_rank: run.max_rank,
    })
}

/// Flag value, then SYMRANK_MEM_LIMIT, then 1G.
fn resolve_memory(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(bytes) = flag {
        return Ok(bytes);
    }
    match std::env::var("SYMRANK_MEM_LIMIT") {
        Ok(raw) => {
            parse_byte_size(&raw).map_err(|e| Failure::Usage(format!("SYMRANK_MEM_LIMIT: {e}")))
        }
        Err(_) => Ok(1 << 30),
    }
}

fn parse_byte_size(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, unit) = match s.chars().last() {
        Some('k' | 'K') => (&s[..s.len() - 1], 1u64 << 10),
        Some('m' | 'M') => (&s[..s.len() - 1], 1 << 20),
        Some('g' | 'G') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    let value: u64 = digits
        .trim()
        .parse()
        .map_err(|_| format!("bad byte size {s:?} (plain bytes or a K/M/G suffix)"))?;
    value
        .checked_mul(unit)
        .ok_or_else(|| format!("byte size {s:?} overflows"))
}

fn configure_threads(threads: usize) {
    if threads > 0 {
        // failure means a global pool already exists; the run proceeds on it
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

/// Load the rank table from `layers` when the file exists (its shape must
/// match the requested one); otherwise stratify from scratch.
fn obtain_table(
    layout: &Layout,
    limits: &StratifyLimits,
    layers: Option<&Path>,
) -> Result<RankTable, Failure> {
    if let Some(path) = layers {
        if path.exists() {
            let table = load_table(path)?;
            if table.shape() != layout.shape() {
                let have = *table.shape();
                let want = *layout.shape();
                return Err(Failure::Usage(format!(
                    "layers file {} holds p={} n={} k={}, the run asked for p={} n={} k={}",
                    path.display(),
                    have.p(),
                    have.n(),
                    have.k(),
                    want.p(),
                    want.n(),
                    want.k()
                )));
            }
            return Ok(table);
        }
    }
    Ok(stratify(layout, limits)?)
}

/// Accept any of the three textual conventions: bracketed matrices and
/// dotted entry lists as displayed, comma-separated residue lists as typed.
fn parse_tensor(layout: &Layout, literal: &str) -> Result<SymTensor, Error> {
    let trimmed = literal.trim();
    if trimmed.starts_with('[') || trimmed.contains('·') {
        parse_canonical(layout, trimmed)
    } else if trimmed.contains(',') {
        parse_literal(layout, trimmed)
    } else {
        parse_dots(layout, trimmed)
    }
}

fn parse_only(raw: &str) -> Result<(u8, u8, u8), Failure> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!(
            "--only takes `p,n,k`, got {raw:?}"
        )));
    }
    let mut nums = [0u8; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| Failure::Usage(format!("--only takes `p,n,k`, got {raw:?}")))?;
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn available_shapes() -> String {
    let triples: Vec<String> = expected::all()
        .iter()
        .map(|e| format!("{},{},{}", e.p, e.n, e.k))
        .collect();
    triples.join(" ")
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let text = match format {
        Format::Plain => report::render_plain(report),
        Format::Json => report::render_json(report),
        Format::Csv => report::render_csv(report),
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Core(e.into()))?,
        None => print!("{text}"),
    }
    Ok(())
}
