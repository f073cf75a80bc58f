//! `brauerlift`: blocks, Brauer trees, Burnside rings, idempotent lifting and
//! tilting complexes from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use brauerlift::{run, Command, Format, RunConfig, DEFAULT_PRECISION};
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "brauerlift", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Fixture name (psl27, borel21, a4, s3, c7, trivial) or path to a group file.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Character table CSV; defaults to the fixture table or `<group>.csv`.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// The prime p.
    #[arg(long, visible_alias = "prime", global = true)]
    p: Option<u32>,
    /// Working precision N of GR(q, N).
    #[arg(long, visible_alias = "precision", global = true, default_value_t = DEFAULT_PRECISION)]
    prec: u32,
    /// Size of the residue field instead of the automatic choice.
    #[arg(long, global = true)]
    q_override: Option<u64>,
    /// Seed of every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Cache directory; BRAUERLIFT_CACHE is used when absent.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        group: cli.group,
        table: cli.table,
        p: cli.p,
        precision: cli.prec,
        q: cli.q_override,
        seed: cli.seed,
        cache_dir: cli.cache_dir,
        format: if cli.json { Format::Json } else { cli.format },
    };
    match run(&cli.command, &cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
