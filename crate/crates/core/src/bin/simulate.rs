use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use entforce::runner::{emit, parse_config, run_scenario, Format, Scenario};
use entforce::Error;

/// Run a named scenario from a TOML configuration and write the result table.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
struct Cli {
    /// Configuration file (TOML).
    #[arg(long)]
    config: PathBuf,

    /// Output path; stdout when neither this nor `output.path` is set.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format; defaults to `output.format`, then the file extension, then csv.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Worker threads for sweeps.
    #[arg(long, env = "SIMULATE_JOBS")]
    jobs: Option<usize>,

    /// Scenario name, overriding the one in the file.
    #[arg(long)]
    scenario: Option<String>,
}

fn run(cli: Cli) -> Result<(), Error> {
    let text = std::fs::read_to_string(&cli.config).map_err(|source| Error::Io { path: cli.config.clone(), source })?;
    let scenario = cli.scenario.as_deref().map(str::parse::<Scenario>).transpose()?;
    let config = parse_config(&text, scenario)?;

    let out = cli.out.or_else(|| config.output.path.as_ref().map(PathBuf::from));
    let from_ext = out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()).and_then(|e| e.parse().ok());
    let format = match cli.format {
        Some(f) => f.parse()?,
        None => config.output.format.or(from_ext).unwrap_or(Format::Csv),
    };

    let threads = match cli.jobs {
        Some(0) => return Err(Error::Config("--jobs must be at least 1".into())),
        Some(n) => n,
        None => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    log::info!("running {} on {} worker(s)", config.scenario, pool.current_num_threads());
    let table = pool.install(|| run_scenario(&config))?;
    emit(&table, format, out.as_deref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
