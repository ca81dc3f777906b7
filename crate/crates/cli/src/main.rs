use std::process::ExitCode;

use clap::{Parser, Subcommand};
use shintani::Exec;
use shintani_cli::{read_input, render, run, Command, Failure, JobSpec, EXIT_SCHEMA};

/// Exact Shintani cocycle computations. Every command prints one JSON
/// document on stdout.
#[derive(Parser)]
#[command(name = "shintani", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Input document: a path, inline JSON, or `-` for stdin.
    #[arg(long, global = true)]
    input: Option<String>,
    /// RNG seed (required by verify-cocycle).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation degree of the series.
    #[arg(long, global = true)]
    dmax: Option<u32>,
    /// Number of random trials.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Dimension n.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// sigma(alpha_1, ..., alpha_n)(w).
    EvalSigma,
    /// Signed cone combination equal to sigma.
    Decompose,
    /// Pairing of a cone combination with a periodic function.
    Pair,
    /// Random check of the cocycle relation.
    VerifyCocycle,
    /// Dirichlet L-value L(chi, 1 - r).
    LvalueQ,
    /// Real quadratic L-value L(phi, -r).
    LvalueQuad,
    /// Taylor coefficients S(m1, m2) of the quadratic pairing.
    SCoeffs,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::EvalSigma => Command::EvalSigma,
            Cmd::Decompose => Command::Decompose,
            Cmd::Pair => Command::Pair,
            Cmd::VerifyCocycle => Command::VerifyCocycle,
            Cmd::LvalueQ => Command::LvalueQ,
            Cmd::LvalueQuad => Command::LvalueQuad,
            Cmd::SCoeffs => Command::SCoeffs,
        }
    }
}

fn emit(body: &serde_json::Value, pretty: bool, code: i32) -> ExitCode {
    println!("{}", render(body, pretty));
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::schema(e.kind().to_string());
            eprintln!("{e}");
            return emit(&f.to_json(), false, EXIT_SCHEMA);
        }
    };
    let input = match cli.input.as_deref().map(read_input).transpose() {
        Ok(v) => v,
        Err(f) => return emit(&f.to_json(), cli.pretty, f.exit_code),
    };
    let job = JobSpec {
        command: cli.command.into(),
        input,
        seed: cli.seed,
        dmax: cli.dmax,
        trials: cli.trials,
        dim: cli.dim,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let out = run(&job);
    emit(&out.body, cli.pretty, out.exit_code)
}
