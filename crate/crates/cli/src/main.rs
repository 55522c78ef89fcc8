use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tccli::report::write_json;
use tccli::{
    cmd_chern2, cmd_decompose, cmd_normalform, cmd_powermap, cmd_verify, Chern2Args, CliError, Context, DecomposeArgs,
    JobReport, NormalFormArgs, PowerMapArgs, VerifyArgs,
};

/// Characteristic classes of transitionally commutative bundles.
///
/// Exit status is 0 when the job's results are certified, 1 when a
/// certification or verification fails and 2 on invalid input.
/// Set TC_CACHE_DIR to reuse Gröbner bases across runs.
#[derive(Parser)]
#[command(name = "tcclass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Where to write the result JSON; - is standard output.
    #[arg(long, default_value = "-")]
    out: String,
    /// Where to write the job report JSON.
    #[arg(long)]
    report: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Write P_{a,b}(n) in the power-map generators and certify it.
    Decompose {
        #[command(flatten)]
        args: DecomposeArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Run the property suites for one group and rank.
    Verify {
        #[command(flatten)]
        args: VerifyArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Second Chern number of a registered clutching function.
    Chern2 {
        #[command(flatten)]
        args: Chern2Args,
        #[command(flatten)]
        output: Output,
    },
    /// Apply Φ^k (or ψ^k with --torus) to a polynomial JSON file.
    Powermap {
        #[command(flatten)]
        args: PowerMapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Reduce a polynomial JSON file modulo a group ideal.
    Normalform {
        #[command(flatten)]
        args: NormalFormArgs,
        #[command(flatten)]
        output: Output,
    },
}

fn run(command: Command) -> Result<(JobReport, Output), CliError> {
    let ctx = Context::from_env();
    Ok(match command {
        Command::Decompose { args, output } => (cmd_decompose(&args, &ctx)?, output),
        Command::Verify { args, output } => (cmd_verify(&args, &ctx)?, output),
        Command::Chern2 { args, output } => (cmd_chern2(&args, &ctx)?, output),
        Command::Powermap { args, output } => (cmd_powermap(&args, &ctx)?, output),
        Command::Normalform { args, output } => (cmd_normalform(&args, &ctx)?, output),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let written = run(cli.command).and_then(|(report, output)| {
        write_json(&output.out, &report.outputs)?;
        if let Some(path) = &output.report {
            write_json(path, &report)?;
        }
        Ok(report)
    });
    match written {
        Ok(report) => {
            if !report.certified {
                eprintln!("tcclass: result not certified");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("tcclass: {e}");
            ExitCode::from(2)
        }
    }
}
