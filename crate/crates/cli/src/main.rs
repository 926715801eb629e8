use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use polyret::triangle::DEFAULT_CAP;
use polyret::workload::Distribution;
use polyret_cli::bench::{doubling_table, BenchConfig};
use polyret_cli::dataset::{self, Dataset, Format};
use polyret_cli::persist;
use polyret_cli::query::{self, Kind};
use polyret_cli::{run_queries, BuildOptions, EngineChoice, Index, RunOptions};

/// Output-sensitive range reporting over planar point sets.
#[derive(Parser)]
#[command(name = "polyret", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded point file or query file.
    #[command(subcommand)]
    Generate(Generate),
    /// Validate a point file and print its size and checksum.
    Ingest {
        path: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        /// Also write the canonical form here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        out_format: Format,
    },
    /// Build the engines, print build statistics and optionally save an index.
    Build {
        path: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[command(flatten)]
        build: BuildArgs,
        /// Index file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a query file and emit a JSONL report.
    Query(QueryArgs),
    /// Run a query file against every engine and a linear scan; exit 1 on
    /// any mismatch.
    Verify(QueryArgs),
    /// Doubling experiment over n = 2^min..2^max.
    Bench {
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 14)]
        max_exp: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "uniform")]
        distribution: Distribution,
        /// Queries per kind at each size; 0 skips the query pass.
        #[arg(long, default_value_t = 100)]
        queries: usize,
        /// Sizes for the quadratic two-layer engine.
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
        two_layer_sizes: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generate {
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "uniform")]
        distribution: Distribution,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Queries {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "halfplane,quadrant,rect,triangle,polygon"
        )]
        kinds: Vec<Kind>,
        /// Queries per kind.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct BuildArgs {
    /// Triangle engines: 3layer, 2layer or all.
    #[arg(long, default_value = "3layer")]
    engine: EngineChoice,
    /// Largest input the two-layer engine accepts.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct QueryArgs {
    /// Point file.
    #[arg(long, conflicts_with = "index", required_unless_present = "index")]
    data: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Saved index; its engine and cap apply unless overridden.
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    queries: PathBuf,
    #[arg(long)]
    engine: Option<EngineChoice>,
    #[arg(long)]
    cap: Option<usize>,
    /// Compare every answer with a linear scan.
    #[arg(long)]
    verify: bool,
    /// Answer non-canonical polygons by scanning instead of failing.
    #[arg(long)]
    fallback_scan: bool,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_index(args: &QueryArgs, default_engine: EngineChoice) -> anyhow::Result<Index> {
    let (dataset, mut options): (Dataset, BuildOptions) = match (&args.index, &args.data) {
        (Some(p), _) => persist::load(p)?,
        (None, Some(p)) => (
            dataset::ingest(p, args.format)?,
            BuildOptions {
                engine: default_engine,
                cap: DEFAULT_CAP,
            },
        ),
        (None, None) => bail!("one of --data or --index is required"),
    };
    if let Some(e) = args.engine {
        options.engine = e;
    }
    if let Some(c) = args.cap {
        options.cap = c;
    }
    Ok(Index::build(dataset, options)?)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Generate(Generate::Points {
            n,
            seed,
            distribution,
            format,
            out,
        }) => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let d = dataset::generate(n, seed, distribution);
            emit(out.as_deref(), &d.serialize(format))?;
        }
        Command::Generate(Generate::Queries {
            kinds,
            count,
            seed,
            out,
        }) => {
            let specs = query::generate_queries(&kinds, count, seed);
            emit(out.as_deref(), &query::to_jsonl(&specs))?;
        }
        Command::Ingest {
            path,
            format,
            out,
            out_format,
        } => {
            let d = dataset::ingest(&path, format)?;
            if let Some(out) = out {
                dataset::write(&d, &out, out_format)?;
            }
            println!(
                "{}",
                serde_json::json!({"name": d.name, "n": d.len(), "checksum": d.checksum})
            );
        }
        Command::Build {
            path,
            format,
            build,
            out,
        } => {
            let d = dataset::ingest(&path, format)?;
            let options = BuildOptions {
                engine: build.engine,
                cap: build.cap,
            };
            let index = Index::build(d, options)?;
            for b in &index.builds {
                println!("{}", serde_json::to_string(b)?);
            }
            if let Some(out) = out {
                persist::save(&out, &index.dataset, options)?;
            }
        }
        Command::Query(args) => {
            let index = load_index(&args, EngineChoice::ThreeLayer)?;
            let specs = query::read_queries(&args.queries)?;
            let opts = RunOptions {
                verify: args.verify,
                fallback_scan: args.fallback_scan,
                threads: args.threads,
            };
            let report = run_queries(&index, &specs, &opts)?;
            emit(args.out.as_deref(), &report.to_jsonl())?;
            let s = &report.summary;
            eprintln!(
                "{} queries, {} records, {} bound violations, {} oracle mismatches, checksum {}",
                s.queries, s.records, s.bound_violations, s.oracle_mismatches, s.checksum
            );
            if args.verify && s.oracle_mismatches + s.engine_disagreements > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify(args) => {
            let index = load_index(&args, EngineChoice::All)?;
            let specs = query::read_queries(&args.queries)?;
            let opts = RunOptions {
                verify: true,
                fallback_scan: args.fallback_scan,
                threads: args.threads,
            };
            let report = run_queries(&index, &specs, &opts)?;
            if let Some(out) = &args.out {
                emit(Some(out), &report.to_jsonl())?;
            }
            let s = &report.summary;
            println!("{}", serde_json::to_string(s)?);
            if s.oracle_mismatches + s.engine_disagreements + s.expected_mismatches > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            min_exp,
            max_exp,
            seed,
            distribution,
            queries,
            two_layer_sizes,
            out,
        } => {
            if min_exp > max_exp || max_exp > 20 {
                bail!("need min-exp <= max-exp <= 20");
            }
            let table = doubling_table(&BenchConfig {
                min_exp,
                max_exp,
                seed,
                distribution,
                queries,
                two_layer_sizes,
            })?;
            emit(out.as_deref(), &table.to_jsonl())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
