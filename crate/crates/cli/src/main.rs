use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use transmute_lab_cli::config::{ScanConfig, Settings};
use transmute_lab_cli::{execute, CliError};

#[derive(Parser)]
#[command(
    name = "transmute-lab",
    version,
    about = "Scattering and bound states of the 2D contact interaction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slide tau along a ray from an anchor (z0, tau0).
    Flow(Common),
    /// Bound-state energies per coupling and regulator.
    Bind(Common),
    /// Sharp-cutoff amplitude as the cutoff grows.
    Theorem(Common),
    /// Coupling and cutoff sent to their limits at fixed E_B.
    Transmute(Common),
    /// Continuum observables on an energy grid.
    Scatter(Common),
}

#[derive(Args)]
struct Common {
    /// key=value file; flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// pure-delta, sharp-cutoff, gaussian, circular-well (scatter also: renormalized); comma list for bind.
    #[arg(long)]
    regulator: Option<String>,
    /// v or v1:v2:n
    #[arg(long)]
    epsilon: Option<String>,
    /// v or lo:hi:n,log
    #[arg(long)]
    lambda: Option<String>,
    /// lo:hi:n,log
    #[arg(long, allow_hyphen_values = true)]
    energy: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// name=value, repeatable
    #[arg(long = "tol-override")]
    tol_override: Vec<String>,
    /// Gaussian range a.
    #[arg(long)]
    range: Option<String>,
    /// Circular-well radius a.
    #[arg(long)]
    radius: Option<String>,
    /// Flow anchor z0 as re,im or E+i0.
    #[arg(long, allow_hyphen_values = true)]
    anchor: Option<String>,
    /// Flow anchor amplitude re,im.
    #[arg(long, allow_hyphen_values = true)]
    tau0: Option<String>,
    /// Evaluation energy as re,im or E+i0.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long = "binding-energy")]
    binding_energy: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// hbar^2/2mu in the energy and length units used.
    #[arg(long = "kinetic-constant")]
    kinetic_constant: Option<String>,
}

impl Common {
    fn settings(&self) -> Result<Settings, CliError> {
        let mut s = match &self.config {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        let out = self.out.as_ref().map(|p| p.to_string_lossy().into_owned());
        let flags = [
            ("regulator", &self.regulator),
            ("epsilon", &self.epsilon),
            ("lambda", &self.lambda),
            ("energy", &self.energy),
            ("out", &out),
            ("format", &self.format),
            ("range", &self.range),
            ("radius", &self.radius),
            ("anchor", &self.anchor),
            ("tau0", &self.tau0),
            ("z", &self.z),
            ("binding-energy", &self.binding_energy),
            ("steps", &self.steps),
            ("kinetic-constant", &self.kinetic_constant),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.set(k, v)?;
            }
        }
        for o in &self.tol_override {
            s.set("tol-override", o)?;
        }
        Ok(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Flow(c) => ("flow", c),
        Command::Bind(c) => ("bind", c),
        Command::Theorem(c) => ("theorem", c),
        Command::Transmute(c) => ("transmute", c),
        Command::Scatter(c) => ("scatter", c),
    };
    let result = common
        .settings()
        .and_then(|s| ScanConfig::new(name, s))
        .and_then(|cfg| execute(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("transmute-lab {name}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
