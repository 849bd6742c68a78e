use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tanner_cycles::analysis::{
    fixture_by_name, parse_verify_legs, render_human, render_json, run_analyze, run_girth, run_spectrum,
    AnalysisError, AnalysisRequest, InputFormat, MethodSelector,
};
use tanner_cycles::formats::{write_alist, write_expmat, write_polyjson};
use tanner_cycles::matrix::expand_qc;

const THREADS_ENV: &str = "TANNER_CYCLES_THREADS";

/// Exact short-cycle counts of bi-regular Tanner graphs.
#[derive(Parser)]
#[command(name = "tanner-cycles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file.
    file: String,
    /// Input format; guessed from the extension when omitted (.alist, .json, otherwise expmat).
    #[arg(long)]
    format: Option<InputFormat>,
    /// Reject expmat exponents outside [0, N) instead of reducing them.
    #[arg(long)]
    strict: bool,
}

impl InputArgs {
    fn read(&self) -> Result<(String, InputFormat), AnalysisError> {
        let text = fs::read_to_string(&self.file)
            .map_err(|e| AnalysisError::Request(format!("cannot read {}: {e}", self.file)))?;
        Ok((text, self.format.unwrap_or_else(|| InputFormat::from_path(&self.file))))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count cycles of length 4 to 2*kmax.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "auto")]
        method: MethodSelector,
        #[arg(long, default_value_t = 7)]
        kmax: u32,
        /// Oracle legs to run: any of dfs,edge,predict (or all); thm2 is an alias for predict.
        #[arg(long)]
        verify: Option<String>,
        #[arg(long)]
        json: bool,
        /// Analyse each connected component and sum the counts.
        #[arg(long)]
        allow_disconnected: bool,
        /// Recompute quasi-cyclic traces on the expanded matrix and compare.
        #[arg(long)]
        paranoid: bool,
    },
    /// Characteristic polynomials and eigenvalues of the root-of-unity blocks.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Girth by breadth-first search and by the trace certificate.
    Girth {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print a built-in matrix.
    Fixtures {
        /// `tanner` or `monomial:n=<odd>`.
        #[arg(long)]
        example: String,
        #[arg(long, default_value = "expmat")]
        format: InputFormat,
    },
}

fn run(cli: Cli) -> Result<u8, AnalysisError> {
    match cli.command {
        Command::Analyze {
            input,
            method,
            kmax,
            verify,
            json,
            allow_disconnected,
            paranoid,
        } => {
            let (text, format) = input.read()?;
            let mut req = AnalysisRequest::new(text, format);
            req.method = method;
            req.max_k = kmax;
            req.verify = verify.as_deref().map(parse_verify_legs).transpose()?.unwrap_or_default();
            req.json = json;
            req.allow_disconnected = allow_disconnected;
            req.paranoid = paranoid;
            req.strict = input.strict;
            let outcome = run_analyze(&req)?;
            if json {
                print!("{}", render_json(&outcome.report));
            } else {
                print!("{}", render_human(&outcome.report));
            }
            Ok(outcome.exit_code() as u8)
        }
        Command::Spectrum { input } => {
            let (text, format) = input.read()?;
            print!("{}", run_spectrum(&text, format, input.strict)?.render());
            Ok(0)
        }
        Command::Girth { input } => {
            let (text, format) = input.read()?;
            print!("{}", run_girth(&text, format, input.strict)?.render());
            Ok(0)
        }
        Command::Fixtures { example, format } => {
            let pm = fixture_by_name(&example)?;
            let text = match format {
                InputFormat::Expmat => write_expmat(&pm),
                InputFormat::Polyjson => write_polyjson(&pm),
                InputFormat::Alist => write_alist(&expand_qc(&pm)),
            };
            print!("{text}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors are input errors; exit status 2 is reserved for disagreements.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .expect("thread pool is configured once");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
