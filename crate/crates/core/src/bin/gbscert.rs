use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gbscert::cli::{run, run_text, Command, RunFlags, RunReport};
use gbscert::problem::{NuSpec, ProblemFile};

#[derive(Parser)]
#[command(name = "gbscert", version, about = "Exact operator calculus, graph values and generation certificates")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Problem file (JSON, schema_version 1).
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Random seed; overrides options.seed in the file.
    #[arg(long)]
    seed: Option<u64>,
    /// Longest operator product tried by certificate searches.
    #[arg(long)]
    m_max: Option<usize>,
    /// Highest degree scanned by Macaulay certification.
    #[arg(long)]
    n_max: Option<usize>,
    /// Worker threads.
    #[arg(long, short)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Compare word traces with their graph expansions.
    TraceVerify(Common),
    /// Print the vertex bound nu(r, d) in full and factored.
    Nu {
        r: Option<usize>,
        d: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Certify that generator systems have no common zero besides the origin.
    Macaulay(Common),
    /// Search for a nonzero decorated graph for a pairing.
    Certificate(Common),
    /// Run the certificate search at points of a fibre model.
    Gbs(Common),
    /// Evaluate a decorated graph or re-validate a certificate.
    GraphEval(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, nu_args) = match cli.command {
        Sub::TraceVerify(c) => (Command::TraceVerify, c, None),
        Sub::Nu { r, d, common } => (Command::Nu, common, r.zip(d)),
        Sub::Macaulay(c) => (Command::Macaulay, c, None),
        Sub::Certificate(c) => (Command::Certificate, c, None),
        Sub::Gbs(c) => (Command::Gbs, c, None),
        Sub::GraphEval(c) => (Command::GraphEval, c, None),
    };
    let flags = RunFlags {
        seed: common.seed,
        m_max: common.m_max,
        n_max: common.n_max,
        jobs: common.jobs,
    };
    let report = match (&common.input, nu_args) {
        (_, Some((r, d))) => {
            let mut p = ProblemFile::empty();
            p.nu = Some(NuSpec { r, d });
            run(command, &p, &flags)
        }
        (Some(path), None) => match fs::read_to_string(path) {
            Ok(text) => run_text(command, &text, &flags),
            Err(e) => {
                eprintln!("gbscert: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, None) => {
            eprintln!("gbscert: {command} needs --input <path>{}", if command == Command::Nu { " or positional r d" } else { "" });
            return ExitCode::from(2);
        }
    };
    emit(&report, common.output.as_ref())
}

fn emit(report: &RunReport, output: Option<&PathBuf>) -> ExitCode {
    let text = report.render();
    match output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("gbscert: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(msg) = report.body.get("error").and_then(|e| e.get("message")) {
        eprintln!("gbscert: {}", msg.as_str().unwrap_or_default());
    }
    ExitCode::from(report.exit_code as u8)
}
