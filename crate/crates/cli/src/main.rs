use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use zakharov_cli::commands::{self, Overrides};
use zakharov_cli::config::parse_alphas;
use zakharov_cli::verify::{run_verify, Fault};

/// Pseudospectral simulations of the vectorial Zakharov system and its
/// electrostatic limit.
#[derive(Parser)]
#[command(name = "zak", version = concat!(env!("CARGO_PKG_VERSION"), " (", env!("ZAK_GIT_DESCRIBE"), ")"))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// `key = value` config file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `output.dir`).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Data seed (overrides `data.seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated α list (overrides `sweep.alphas`).
    #[arg(long, value_parser = |s: &str| parse_alphas(s).map(AlphaList))]
    alphas: Option<AlphaList>,
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Clone, Debug)]
struct AlphaList(Vec<f64>);

#[derive(Subcommand)]
enum Command {
    /// Single run at `solver.alpha`.
    Simulate(Common),
    /// Full system at each α against the limit system.
    Sweep(Common),
    /// Fast-group Strichartz norms against α.
    Strichartz(Common),
    /// Initial-layer demonstration with ill-prepared data.
    Layer(Common),
    /// Invariant checks on small grids.
    Verify {
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<Fault>,
    },
    /// Log-log SVG of err_total against α from a sweep CSV.
    Plot {
        csv: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ZAK_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("ZAK_THREADS must be a positive integer, got {v:?}"))?;
        anyhow::ensure!(n > 0, "ZAK_THREADS must be positive");
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32> {
    configure_threads()?;
    let load = |c: &Common| {
        let ov = Overrides {
            output: c.output.clone(),
            seed: c.seed,
            alphas: c.alphas.clone().map(|a| a.0),
        };
        commands::load_config(c.config.as_deref(), &ov)
    };
    match cli.command {
        Command::Simulate(c) => commands::cmd_simulate(&load(&c)?, c.quiet),
        Command::Sweep(c) => commands::cmd_sweep(&load(&c)?, c.quiet),
        Command::Strichartz(c) => commands::cmd_strichartz(&load(&c)?, c.quiet),
        Command::Layer(c) => commands::cmd_layer(&load(&c)?, c.quiet),
        Command::Verify { inject_fault } => {
            let ok = run_verify(inject_fault, &mut std::io::stdout().lock())?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Plot { csv, out } => {
            let p = commands::cmd_plot(&csv, out.as_deref())?;
            println!("{}", p.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
