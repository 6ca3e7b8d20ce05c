use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use scd_core::chains::{verify_problem1, ChainError};
use scd_core::closed_form;
use scd_core::crystal::{bench, verify_axioms, verify_problem2, verify_problem3, verify_shift, Crystal};
use scd_core::plethysm::{coefficient_csv, coefficients, constituents_of, scd_with, verify_claims};
use scd_core::qchar::{check_recursion, recursion_csv};
use scd_core::report::Report;
use scd_core::seedlang::parse_seed;
use scd_core::tableaux::enumerate;

/// Crystals on column tableaux and symmetric chain decompositions of L(n, m).
#[derive(Parser)]
#[command(name = "scd", version, about)]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "SCD_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
    Csv,
}

#[derive(Args)]
struct SeedArgs {
    /// Column length.
    #[arg(long)]
    n: usize,
    /// Seed file used instead of the builtin seed for this n.
    #[arg(long)]
    seed_file: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    /// A single value of r.
    #[arg(long, conflicts_with_all = ["r_min", "r_max"])]
    r: Option<u32>,
    /// Smallest r of a range (default n).
    #[arg(long)]
    r_min: Option<u32>,
    /// Largest r of a range.
    #[arg(long)]
    r_max: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the crystal on B_r(n) and print it.
    Crystal {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Draw each component as its own cluster (dot only).
        #[arg(long)]
        group: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric chain decomposition of L(n, m).
    Scd {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character of the crystal as a sum of q-integers.
    Character {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Multiplicities of Sym^k in the crystal on B_r(n).
    Coeff {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Number of components, with the closed forms and oracle counts.
    Constituents {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 20)]
        r_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build, check and time the crystal on B_r(n).
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Axioms,
    Seed,
    Recursions,
    PaperClaims,
}

enum CliError {
    Usage(String),
    Failed(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failed(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failed(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Failed(e.into())
}

fn load_crystal(args: &SeedArgs) -> CliResult<Crystal> {
    match &args.seed_file {
        None => Crystal::new(args.n).map_err(|e| match e {
            ChainError::NoBuiltinSeed(n) => usage(format!("no builtin seed for n = {n}; pass --seed-file")),
            other => failed(other),
        }),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read seed file {}: {e}", path.display())))?;
            let spec = parse_seed(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if spec.n() != args.n {
                return Err(usage(format!("seed file is for n = {}, not n = {}", spec.n(), args.n)));
            }
            Crystal::with_seed(spec).map_err(|e| match e {
                ChainError::NoBuiltinSeed(n) => usage(format!("no builtin seed for the lower level n = {n}")),
                other => failed(other),
            })
        }
    }
}

fn r_values(n: usize, range: &RangeArgs) -> CliResult<Vec<u32>> {
    if let Some(r) = range.r {
        return Ok(vec![r]);
    }
    let hi = range.r_max.ok_or_else(|| usage("give --r or --r-max"))?;
    let lo = range.r_min.unwrap_or(n as u32);
    if lo > hi {
        return Err(usage(format!("empty range {lo}..={hi}")));
    }
    Ok((lo..=hi).collect())
}

fn check_format(format: Format, allowed: &[Format]) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("format {format:?} is not available here")))
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialise");
    s.push('\n');
    s
}

fn cmd_crystal(seed: &SeedArgs, r: u32, format: Format, group: bool, out: Option<&Path>) -> CliResult<bool> {
    check_format(format, &[Format::Dot, Format::Json, Format::Text])?;
    let g = load_crystal(seed)?.build(r).map_err(failed)?;
    let text = match format {
        Format::Dot => g.to_dot(group),
        Format::Json => json_text(&g.to_json()),
        _ => {
            let mut s = format!("n={} r={} nodes={} arcs={} components={}\n", g.n(), g.r(), g.len(), g.arc_count(), g.hw_nodes().len());
            for path in g.components() {
                let line: Vec<String> = path.iter().map(|&i| g.node(i).to_string()).collect();
                s.push_str(&line.join(" -> "));
                s.push('\n');
            }
            s
        }
    };
    emit(&text, out)?;
    Ok(true)
}

fn cmd_scd(seed: &SeedArgs, m: u32, format: Format, out: Option<&Path>) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Json, Format::Csv])?;
    let crystal = load_crystal(seed)?;
    let fam = scd_with(&crystal, m).map_err(failed)?;
    let text = match format {
        Format::Json => json_text(&fam.to_json()),
        Format::Csv => fam.to_csv(),
        _ => fam.to_text(),
    };
    emit(&text, out)?;
    Ok(true)
}

fn cmd_character(seed: &SeedArgs, range: &RangeArgs, format: Format) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Json, Format::Csv])?;
    let crystal = load_crystal(seed)?;
    let rs = r_values(seed.n, range)?;
    let chars = rs
        .par_iter()
        .map(|&r| crystal.build(r).map(|g| (r, g.character())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(failed)?;
    let text = match format {
        Format::Json => json_text(&json!(chars
            .iter()
            .map(|(r, c)| json!({ "n": seed.n, "r": r, "character": c.to_string(),
                "parts": c.parts().rev().map(|(len, mult)| json!([len, mult])).collect::<Vec<_>>() }))
            .collect::<Vec<_>>())),
        Format::Csv => {
            let mut s = String::from("n,r,character\n");
            for (r, c) in &chars {
                s.push_str(&format!("{},{r},\"{c}\"\n", seed.n));
            }
            s
        }
        _ if chars.len() == 1 => format!("{}\n", chars[0].1),
        _ => chars.iter().map(|(r, c)| format!("r={r}: {c}\n")).collect(),
    };
    emit(&text, None)?;
    Ok(true)
}

fn cmd_coeff(seed: &SeedArgs, r: u32, k: Option<u64>, format: Format) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Csv])?;
    let g = load_crystal(seed)?.build(r).map_err(failed)?;
    let text = match (k, format) {
        (Some(k), Format::Text) => format!("{}\n", coefficients(&g).get(&k).copied().unwrap_or(0)),
        (Some(k), _) => format!("n,r,k,coefficient\n{},{r},{k},{}\n", g.n(), coefficients(&g).get(&k).copied().unwrap_or(0)),
        (None, Format::Csv) => coefficient_csv(std::slice::from_ref(&g)),
        (None, _) => coefficients(&g).iter().map(|(k, c)| format!("k={k}: {c}\n")).collect(),
    };
    emit(&text, None)?;
    Ok(true)
}

fn cmd_constituents(n: usize, range: &RangeArgs, format: Format) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Json, Format::Csv])?;
    let crystal = load_crystal(&SeedArgs { n, seed_file: None })?;
    let rs = r_values(n, range)?;
    let reports = rs
        .par_iter()
        .map(|&r| -> anyhow::Result<_> { Ok(constituents_of(&crystal.build(r)?)?) })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let opt = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
    let text = match format {
        Format::Json => json_text(&serde_json::to_value(&reports).expect("serialisable")),
        Format::Csv => {
            let mut s = String::from("n,r,count,middle_rank,exact_formula,floor_formula,recursion_sum,recursion_closed\n");
            for c in &reports {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    c.n,
                    c.r,
                    c.count,
                    c.middle_rank,
                    opt(c.exact_formula),
                    opt(c.floor_formula),
                    opt(c.recursion_sum),
                    opt(c.recursion_closed)
                ));
            }
            s
        }
        _ => {
            let mut s = String::new();
            for c in &reports {
                s.push_str(&format!("r={}: {} constituents (middle rank {})\n", c.r, c.count, c.middle_rank));
                for f in c.failures() {
                    s.push_str(&format!("  mismatch: {f}\n"));
                }
                if let Some(w) = c.floor_mismatch() {
                    s.push_str(&format!("  warning: {w}\n"));
                }
            }
            s
        }
    };
    emit(&text, None)?;
    Ok(reports.iter().all(|c| c.failures().is_empty()))
}

fn gauge_closed_form_report(crystal: &Crystal, r_max: u32) -> CliResult<Report> {
    let n = crystal.n();
    let mut rep = Report::new(format!("gauge closed form n={n} r_max={r_max}"));
    for t in enumerate(n, r_max) {
        rep.checked += 1;
        let ours = crystal.gauge(&t).map_err(failed)?;
        if closed_form::gauge(&t) != Some(ours) {
            rep.fail(format!("A({t}) = {ours} but the closed form gives {:?}", closed_form::gauge(&t)));
        }
    }
    Ok(rep)
}

fn cmd_verify(target: Target, seed: &SeedArgs, r_max: u32, format: Format) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Json, Format::Csv])?;
    let n = seed.n;
    let mut reports = Vec::new();
    let mut csv = None;
    match target {
        Target::Axioms => {
            let crystal = load_crystal(seed)?;
            let graphs: Vec<Report> = (n as u32..=r_max)
                .into_par_iter()
                .map(|r| crystal.build(r).map(|g| verify_axioms(&g)))
                .collect::<Result<_, _>>()
                .map_err(failed)?;
            let mut rep = Report::new(format!("axioms n={n} r={n}..={r_max}"));
            for g in graphs {
                rep.merge(g);
            }
            reports.push(rep);
        }
        Target::Seed => {
            let crystal = load_crystal(seed)?;
            let spec = crystal.seed().ok_or_else(|| usage("seeds exist only for n >= 2"))?;
            let p1 = verify_problem1(spec, r_max);
            let p1_ok = p1.passed();
            reports.push(p1);
            if p1_ok {
                reports.push(verify_problem2(&crystal, r_max));
                reports.push(verify_problem3(&crystal, r_max));
            }
        }
        Target::Recursions => {
            let rows = (n as u64..=r_max as u64)
                .into_par_iter()
                .map(|r| check_recursion(n as u32, r))
                .collect::<Option<Result<Vec<_>, _>>>()
                .ok_or_else(|| usage(format!("no character recursion for n = {n}")))?
                .map_err(failed)?;
            let mut rep = Report::new(format!("recursion n={n} r={n}..={r_max}"));
            rep.checked = rows.len() as u64;
            for row in rows.iter().filter(|row| !row.equal) {
                rep.fail(format!("r={}: {} vs {}", row.r, row.lhs_peel, row.rhs_peel));
            }
            csv = Some(recursion_csv(&rows));
            reports.push(rep);
        }
        Target::PaperClaims => {
            if seed.seed_file.is_some() {
                return Err(usage("paper-claims checks the builtin seeds only"));
            }
            let crystal = load_crystal(seed)?;
            reports.push(verify_claims(n, r_max).map_err(failed)?);
            if (2..=4).contains(&n) {
                reports.push(gauge_closed_form_report(&crystal, r_max)?);
            }
            let shifts: &[&[u32]] = match n {
                3 => &[&[1, 1, 4]],
                4 => &[&[1, 1, 1, 3], &[0, 0, 2, 2]],
                _ => &[],
            };
            for s in shifts {
                reports.push(verify_shift(&crystal, s, r_max));
            }
        }
    }
    let ok = reports.iter().all(Report::passed);
    let text = match (format, csv) {
        (Format::Json, _) => json_text(&serde_json::to_value(&reports).expect("serialisable")),
        (Format::Csv, Some(csv)) => csv,
        (Format::Csv, None) => return Err(usage("csv output exists only for recursions")),
        _ => {
            let mut s: String = reports.iter().map(Report::render_text).collect();
            let warnings: usize = reports.iter().map(|r| r.warnings.len()).sum();
            s.push_str(&format!(
                "{} ({} warning(s))\n",
                if ok { "pass" } else { "fail" },
                warnings
            ));
            s
        }
    };
    emit(&text, None)?;
    Ok(ok)
}

fn cmd_bench(n: usize, r: u32, format: Format) -> CliResult<bool> {
    check_format(format, &[Format::Text, Format::Json])?;
    load_crystal(&SeedArgs { n, seed_file: None })?;
    let rep = bench(n, r).map_err(failed)?;
    let text = match format {
        Format::Json => json_text(&serde_json::to_value(&rep).expect("serialisable")),
        _ => format!(
            "n={} r={} nodes={} components={}\nbuild {:.3}s, axioms {:.3}s, character {:.3}s, total {:.3}s on {} thread(s)\naxioms: {}\ncharacter matches q-binomial: {}\n",
            rep.n,
            rep.r,
            rep.nodes,
            rep.components,
            rep.build_secs,
            rep.verify_secs,
            rep.character_secs,
            rep.total_secs(),
            rayon::current_num_threads(),
            rep.axioms.summary(),
            rep.character_matches
        ),
    };
    emit(&text, None)?;
    Ok(rep.passed())
}

fn run(cli: Cli) -> CliResult<bool> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Crystal { seed, r, format, group, out } => cmd_crystal(seed, *r, *format, *group, out.as_deref()),
        Command::Scd { seed, m, format, out } => cmd_scd(seed, *m, *format, out.as_deref()),
        Command::Character { seed, range, format } => cmd_character(seed, range, *format),
        Command::Coeff { seed, r, k, format } => cmd_coeff(seed, *r, *k, *format),
        Command::Constituents { n, range, format } => cmd_constituents(*n, range, *format),
        Command::Verify { target, seed, r_max, format } => cmd_verify(*target, seed, *r_max, *format),
        Command::Bench { n, r, format } => cmd_bench(*n, *r, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
