use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hexwalk::cli_io::{
    execute, parse_state_shorthand, CliError, Command, OutputFormat, Preset, RawConfig, RunConfig,
};

/// Three-state quantum walk on a hexagonal lattice.
#[derive(Parser)]
#[command(name = "hexwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probability distribution at time t-max (rows px,py,prob)
    Simulate(RunArgs),
    /// Return probability at even times with its long-time limit (rows t,p_origin,limit)
    ReturnSeries(RunArgs),
    /// Long-time limits for the given coin and initial state
    Limit(RunArgs),
    /// Simulated origin probability and amplitude against the long-time limits
    Compare(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Grover,
}

#[derive(Args)]
struct RunArgs {
    /// Coin angle in radians
    #[arg(long, conflicts_with = "preset", allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Named coin
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Real initial amplitudes "alpha,beta,gamma"
    #[arg(long, allow_hyphen_values = true)]
    state: Option<String>,
    /// JSON configuration file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "t-max")]
    t_max: Option<u64>,
    /// Output file (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Pass threshold for `compare`
    #[arg(long)]
    tolerance: Option<f64>,
    /// Number of trailing even steps averaged by `compare`
    #[arg(long)]
    window: Option<usize>,
    /// Include sublattice and integer indices in `simulate` output
    #[arg(long)]
    indices: bool,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => RawConfig::from_json_file(path)?,
            None => RawConfig::default(),
        };
        let state = self.state.as_deref().map(parse_state_shorthand).transpose()?;
        let flags = RawConfig {
            theta: self.theta,
            preset: self.preset.map(|PresetArg::Grover| Preset::Grover),
            state,
            t_max: self.t_max,
            out: self.out,
            format: self.format.map(|f| match f {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            }),
            tolerance: self.tolerance,
            window: self.window,
            indices: self.indices.then_some(true),
        };
        RunConfig::try_from(file.merge(flags))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, args) = match cli.command {
        Cmd::Simulate(a) => (Command::Simulate, a),
        Cmd::ReturnSeries(a) => (Command::ReturnSeries, a),
        Cmd::Limit(a) => (Command::Limit, a),
        Cmd::Compare(a) => (Command::Compare, a),
    };
    let result = args.resolve().and_then(|cfg| execute(command, &cfg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("hexwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
