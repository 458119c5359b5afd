//! `cwcodes`: bounds, coset sweeps, extraction, verification and table
//! reproduction for constant-weight codes built from translates of codes.
//!
//! Exit status: 0 success, 1 mismatch or refuted claim, 2 usage or input
//! error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use cwcodes::codebook::{
    bch_code, load_explicit, load_generator_matrix, reed_muller_1, render_explicit, save_explicit,
    Code,
};
use cwcodes::propagate::{
    avg_bound, avg_bound_extended, extract, sweep, target_distance, BoundResult, Mode, Strategy,
    SweepReport, BOUND_CSV_HEADER, SWEEP_CSV_HEADER,
};
use cwcodes::tables::{
    registry, run_example, write_artifacts, Class, Column, Example, RunConfig, TableId,
};
use cwcodes::verify::{verify_claim_with_budget, CLAIM_CSV_HEADER};
use cwcodes::words::Word;
use cwcodes::Error;

#[derive(Parser, Debug)]
#[command(
    name = "cwcodes",
    version,
    about = "Constant-weight codes from cosets of q-ary codes"
)]
struct Cli {
    /// Worker threads (default: all cores). Never changes results.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Representatives drawn by a sampled sweep.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    budget: u64,
    /// Largest code (in words) whose pairwise distances are checked.
    #[arg(long, global = true, default_value_t = cwcodes::verify::DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
    /// Cap on cosets x codewords for an exhaustive sweep.
    #[arg(long, global = true, default_value_t = cwcodes::propagate::DEFAULT_MAX_WORK)]
    max_work: u128,
    /// Directory for reports and extracted codes.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File or directory searched for generator-matrix files (repeatable).
    #[arg(long = "matrix-path", global = true)]
    matrix_paths: Vec<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact averaging lower bounds on A(n, d', w).
    Bound(BoundArgs),
    /// Best translate per weight, exhaustively or by sampling.
    Sweep(SweepArgs),
    /// Writes the constant-weight code cut out of one translate.
    Extract(ExtractArgs),
    /// Checks a code file against claimed (n, d, w, size).
    Verify(VerifyArgs),
    /// Recomputes a published example and diffs it against the registry.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fixed,
    Extend,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Fixed => vec![Mode::Fixed],
            ModeArg::Extend => vec![Mode::Extend],
            ModeArg::Both => vec![Mode::Fixed, Mode::Extend],
        }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u16,
    /// Code size as a power of two.
    #[arg(
        long = "log2M",
        conflicts_with = "size",
        required_unless_present = "size"
    )]
    log2_size: Option<u32>,
    /// Code size as a decimal integer.
    #[arg(long = "M")]
    size: Option<BigUint>,
    /// Minimum distance of the code; only reported (as d').
    #[arg(long)]
    d: Option<usize>,
    /// Weights: `7`, `7..14` (inclusive) or `7,9,11`.
    #[arg(long, value_parser = parse_weights)]
    w: Weights,
    #[arg(long, value_enum, default_value_t = ModeArg::Fixed)]
    mode: ModeArg,
    /// Compare against a registry table (I, II, III or ineq).
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// Narrow-sense binary BCH code `m,delta` of length 2^m - 1.
    #[arg(long, group = "source")]
    bch: Option<String>,
    /// First-order Reed-Muller code of length 2^m.
    #[arg(long, group = "source")]
    rm1: Option<u32>,
    /// Generator-matrix file (`n k q d` header).
    #[arg(long, group = "source")]
    matrix: Option<PathBuf>,
    /// Explicit code file (`n M q d` header), any alphabet.
    #[arg(long, group = "source")]
    explicit: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Puncture the last i positions.
    #[arg(long, default_value_t = 0)]
    puncture: usize,
    /// Shorten at the last i positions (after puncturing).
    #[arg(long, default_value_t = 0)]
    shorten: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_parser = parse_weights)]
    w: Weights,
    #[arg(long, value_enum, default_value_t = ModeArg::Fixed)]
    mode: ModeArg,
    /// Draw --budget representatives with --seed instead of visiting all.
    #[arg(long)]
    sample: bool,
    /// Write each best code to --out (default: current directory) and verify it.
    #[arg(long)]
    extract: bool,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Translate representative, one digit per position.
    #[arg(long)]
    u: String,
    #[arg(long)]
    w: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Fixed)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Explicit code file.
    file: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    w: usize,
    #[arg(long)]
    size: usize,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// ex1..ex6, or `all`.
    example: String,
}

#[derive(Clone, Debug)]
struct Weights(Vec<usize>);

fn parse_weights(text: &str) -> std::result::Result<Weights, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad weight {s:?}"))
        };
        if let Some((lo, hi)) = part.split_once("..") {
            let (lo, hi) = (number(lo)?, number(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty weight range {part}"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(number(part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Weights(out))
}

fn run_config(cli: &Cli) -> RunConfig {
    let defaults = RunConfig::default();
    RunConfig {
        threads: cli.threads.unwrap_or(defaults.threads).max(1),
        sample_budget: cli.budget,
        seed: cli.seed,
        pair_budget: cli.pair_budget,
        max_work: cli.max_work,
        out_dir: cli.out.clone(),
        matrix_paths: if cli.matrix_paths.is_empty() {
            defaults.matrix_paths
        } else {
            cli.matrix_paths.clone()
        },
    }
}

/// A failure that maps to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = run_config(&cli);
    let result = match &cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Sweep(args) => cmd_sweep(args, &config),
        Command::Extract(args) => cmd_extract(args, &config),
        Command::Verify(args) => cmd_verify(args, &config),
        Command::Table(args) => cmd_table(args, &config),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn bound_row(b: &BoundResult, d_known: bool) -> String {
    let d_prime = if d_known {
        b.d_prime.to_string()
    } else {
        "-".into()
    };
    format!(
        "{},{},{},{},{},{}",
        b.kind, b.target_n, b.q, b.w, d_prime, b.value
    )
}

fn cmd_bound(args: &BoundArgs) -> Result<u8> {
    let size = match (&args.size, args.log2_size) {
        (Some(m), _) => m.clone(),
        (None, Some(e)) => BigUint::from(1u8) << e,
        (None, None) => unreachable!("clap requires one of --M / --log2M"),
    };
    let expect = match &args.expect {
        None => None,
        Some(t) => Some(match t.as_str() {
            "I" => TableId::I,
            "II" => TableId::II,
            "III" => TableId::III,
            "ineq" => TableId::Ineq,
            other => {
                return Err(
                    Usage(format!("--expect takes I, II, III or ineq, not {other:?}")).into(),
                )
            }
        }),
    };
    let d = args.d.unwrap_or(1);
    let mut out = format!(
        "# bound: n={} q={} M={size}\n{BOUND_CSV_HEADER}\n",
        args.n, args.q
    );
    let mut notes = String::new();
    let mut mismatches = 0;
    for mode in args.mode.modes() {
        for &w in &args.w.0 {
            let b = match mode {
                Mode::Fixed => avg_bound(args.n, args.q, &size, d, w),
                Mode::Extend => avg_bound_extended(args.n, args.q, &size, d, w),
            }
            .map_err(|e| Usage(e.to_string()))?;
            writeln!(out, "{}", bound_row(&b, args.d.is_some()))?;
            if let Some(table) = expect {
                let entry = registry().iter().find(|e| {
                    e.table == table
                        && e.column == Column::Avg
                        && e.n == b.target_n
                        && e.w == w
                        && args.d.is_none_or(|d| target_distance(d) == e.d)
                });
                match entry {
                    Some(e) if BigUint::from(e.value) == b.value => {
                        writeln!(notes, "{} {}: {} PASS", e.provenance, e.label(), b.value)?
                    }
                    Some(e) => {
                        mismatches += 1;
                        writeln!(
                            notes,
                            "{} {}: expected {} computed {} MISMATCH",
                            e.provenance,
                            e.label(),
                            e.value,
                            b.value
                        )?
                    }
                    None => writeln!(notes, "table {table}: no entry for n={} w={w}", b.target_n)?,
                }
            }
        }
    }
    print!("{out}");
    eprint!("{notes}");
    Ok(if mismatches > 0 { 1 } else { 0 })
}

fn build_code(args: &CodeArgs) -> Result<Code> {
    let s = &args.source;
    let base: Code = if let Some(spec) = &s.bch {
        let parts: Vec<&str> = spec.split(',').collect();
        let [m, delta] = parts[..] else {
            return Err(Usage(format!("--bch takes m,delta, got {spec:?}")).into());
        };
        let m = m
            .trim()
            .parse()
            .map_err(|_| Usage(format!("bad m in --bch {spec:?}")))?;
        let delta = delta
            .trim()
            .parse()
            .map_err(|_| Usage(format!("bad delta in --bch {spec:?}")))?;
        bch_code(m, delta).map_err(|e| Usage(e.to_string()))?.into()
    } else if let Some(m) = s.rm1 {
        reed_muller_1(m).map_err(|e| Usage(e.to_string()))?.into()
    } else if let Some(path) = &s.matrix {
        load_generator_matrix(path)
            .map_err(|e| Usage(e.to_string()))?
            .into()
    } else if let Some(path) = &s.explicit {
        load_explicit(path)
            .map_err(|e| Usage(e.to_string()))?
            .into()
    } else {
        unreachable!("clap requires one code source")
    };
    let mut code = base;
    if args.puncture > 0 {
        code = code
            .puncture(args.puncture)
            .map_err(|e| Usage(e.to_string()))?;
    }
    if args.shorten > 0 {
        code = code
            .shorten(args.shorten)
            .map_err(|e| Usage(e.to_string()))?;
    }
    Ok(code)
}

fn code_header(code: &Code) -> String {
    let spec = code.spec();
    format!(
        "# code: {} n={} q={} size={} d={}",
        spec.code_id(),
        spec.n,
        spec.q,
        spec.size,
        spec.design_distance
    )
}

/// Distance used for claims about extracted codes: exact when computable.
fn source_distance(code: &Code) -> usize {
    match code.true_distance() {
        Ok(Some(d)) => d,
        _ => {
            eprintln!("note: exact distance not computable, using the design distance");
            code.spec().design_distance
        }
    }
}

fn sweep_csv(report: &SweepReport, code: &Code, strategy: Strategy, config: &RunConfig) -> String {
    let mut out = code_header(code) + "\n";
    match strategy {
        Strategy::Exhaustive => out.push_str("# strategy: exhaustive\n"),
        Strategy::Sample { budget, seed } => {
            writeln!(out, "# strategy: sample budget={budget} seed={seed}").unwrap()
        }
    }
    for line in config.header_lines() {
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "{SWEEP_CSV_HEADER}").unwrap();
    for row in report.csv_rows() {
        writeln!(out, "{row}").unwrap();
    }
    out
}

fn cmd_sweep(args: &SweepArgs, config: &RunConfig) -> Result<u8> {
    let code = build_code(&args.code)?;
    let strategy = if args.sample {
        Strategy::Sample {
            budget: config.sample_budget,
            seed: config.seed,
        }
    } else {
        Strategy::Exhaustive
    };
    let started = Instant::now();
    let report = match sweep(
        &code,
        &args.w.0,
        &args.mode.modes(),
        strategy,
        &config.sweep_config(),
    ) {
        Ok(r) => r,
        Err(e @ Error::Budget { .. }) => {
            return Err(Usage(format!(
                "{e}; use --sample (with --budget/--seed) or raise --max-work"
            ))
            .into())
        }
        Err(e) => return Err(Usage(e.to_string()).into()),
    };
    eprintln!(
        "sweep {}: {} cosets, threads={}, {:.2?}",
        report.code_id,
        report.cosets_examined,
        config.threads,
        started.elapsed()
    );
    let csv = sweep_csv(&report, &code, strategy, config);
    print!("{csv}");
    if let Some(dir) = &config.out_dir {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}_sweep.csv", report.code_id));
        fs::write(&path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }

    if !args.extract {
        return Ok(0);
    }
    let dir = config.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let d = target_distance(source_distance(&code));
    let mut refuted = 0;
    eprintln!("file,{CLAIM_CSV_HEADER}");
    for entry in &report.entries {
        let extracted = extract(&code, &entry.representative, entry.w, entry.mode)?;
        let path = dir.join(format!(
            "{}_{}_w{}.code",
            report.code_id, entry.mode, entry.w
        ));
        save_explicit(&extracted, &path).with_context(|| format!("writing {}", path.display()))?;
        let n = entry.mode.target_length(code.n());
        let check = verify_claim_with_budget(
            &extracted,
            n,
            d,
            entry.w,
            entry.count as usize,
            config.pair_budget,
        );
        if !check.is_verified() {
            refuted += 1;
        }
        eprintln!("{},{}", path.display(), check.csv_row());
    }
    Ok(if refuted > 0 { 1 } else { 0 })
}

fn cmd_extract(args: &ExtractArgs, config: &RunConfig) -> Result<u8> {
    let code = build_code(&args.code)?;
    let u = Word::parse(&args.u, code.q()).map_err(|e| Usage(e.to_string()))?;
    let mode = match args.mode {
        ModeArg::Fixed => Mode::Fixed,
        ModeArg::Extend => Mode::Extend,
        ModeArg::Both => return Err(Usage("extract takes --mode fixed or extend".into()).into()),
    };
    let extracted = extract(&code, &u, args.w, mode).map_err(|e| Usage(e.to_string()))?;
    let text = render_explicit(&extracted);
    match &config.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!(
                "{}_{}_w{}.code",
                code.spec().code_id(),
                mode,
                args.w
            ));
            fs::write(&path, text)?;
            eprintln!("wrote {} words to {}", extracted.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, config: &RunConfig) -> Result<u8> {
    let code = load_explicit(&args.file).map_err(|e| Usage(e.to_string()))?;
    let check =
        verify_claim_with_budget(&code, args.n, args.d, args.w, args.size, config.pair_budget);
    println!("{CLAIM_CSV_HEADER}");
    println!("{}", check.csv_row());
    Ok(if check.is_verified() { 0 } else { 1 })
}

fn cmd_table(args: &TableArgs, config: &RunConfig) -> Result<u8> {
    let examples: Vec<Example> = match args.example.as_str() {
        "all" => Example::ALL.to_vec(),
        other => vec![other.parse().map_err(|e: Error| Usage(e.to_string()))?],
    };
    let mut failed = false;
    for ex in examples {
        let started = Instant::now();
        let run = run_example(ex, config)?;
        print!("{}", run.render(config));
        eprintln!(
            "table {ex}: threads={}, {:.2?}",
            config.threads,
            started.elapsed()
        );
        failed |= !run.passed();
        if let Some(dir) = &config.out_dir {
            for path in write_artifacts(&run, config, Path::new(dir))? {
                eprintln!("wrote {}", path.display());
            }
        }
        let conditional_skips = run
            .rows
            .iter()
            .filter(|r| r.entry.class == Class::ConditionalOnMatrix && r.computed.is_none())
            .count();
        if conditional_skips > 0 {
            eprintln!("note: {conditional_skips} rows need matrix files; pass --matrix-path");
        }
    }
    Ok(if failed { 1 } else { 0 })
}
