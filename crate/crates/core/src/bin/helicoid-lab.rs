use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use helicoid::experiments::{run, Command, ExperimentConfig};

#[derive(Parser)]
#[command(name = "helicoid-lab", version, about = "Helicoid-in-a-cylinder experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Areas of the helicoid and competitor surfaces.
    AreaCompare(Common),
    /// Slicing inequality over coaxial cylinders.
    Slice(Common),
    /// Constrained area minimization.
    Minimize(Common),
    /// Positivity region of the barrier mean curvature.
    PhaseDiagram(Common),
    /// Leaves of the rotated-helicoid foliation.
    Foliation(Common),
    /// Monotone projection of the boundary loop.
    ProjectionCheck(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent corpus entries.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Perturbation seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::AreaCompare(c) => (Command::AreaCompare, c),
        Cmd::Slice(c) => (Command::Slice, c),
        Cmd::Minimize(c) => (Command::Minimize, c),
        Cmd::PhaseDiagram(c) => (Command::PhaseDiagram, c),
        Cmd::Foliation(c) => (Command::Foliation, c),
        Cmd::ProjectionCheck(c) => (Command::ProjectionCheck, c),
    };
    let result = (|| {
        let mut cfg = match &common.config {
            Some(path) => ExperimentConfig::from_path(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = common.seed {
            cfg.seed = seed;
        }
        let out =
            common.out.or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("runs").join(command.name()));
        run(command, &cfg, &out, common.jobs).map(|s| (s, out))
    })();
    match result {
        Ok((summary, out)) => {
            for c in &summary.checks {
                let tag = match (c.passed, c.expected_fail) {
                    (true, false) => "PASS",
                    (false, true) => "XFAIL",
                    (true, true) => "XPASS",
                    (false, false) => "FAIL",
                };
                println!("{tag:5} {}  {}", c.name, c.detail);
            }
            println!("wrote {} files to {}", summary.files.len(), out.display());
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
