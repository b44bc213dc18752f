use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rdpd_cli::render;
use rdpd_cli::{OracleInput, Settings, EXIT_USAGE};
use rdpd_core::{EngineConfig, Error, Exec};

#[derive(Parser)]
#[command(
    name = "rdpd",
    version,
    about = "Descent criteria for rational double points over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every criterion on one equation.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "x,y,z")]
        vars: String,
        #[arg(long)]
        poly: String,
        /// Stop at the first failing necessary criterion.
        #[arg(long)]
        short_circuit: bool,
    },
    /// Recompute the E-type table of a characteristic and diff it against the catalog.
    Tables {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate every catalog record up to --max-n.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the engine's local length with the truncation oracle.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "x,y,z")]
        vars: String,
        /// Comma-separated generators.
        #[arg(
            long,
            conflicts_with = "jacobian_of",
            required_unless_present = "jacobian_of"
        )]
        gens: Option<String>,
        /// Use the jacobian ideal of this equation.
        #[arg(long)]
        jacobian_of: Option<String>,
        /// With --jacobian-of, use the bracket power J^[p] instead.
        #[arg(long, requires = "jacobian_of")]
        bracket: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long = "char", value_name = "P")]
    char: u32,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 12)]
    max_n: u32,
    /// Truncation degree cap for the oracle [default: the larger of 64 and
    /// twice the top generator degree].
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Reduction step cap for one standard-basis computation.
    #[arg(long, default_value_t = 1_000_000)]
    step_cap: u64,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
    /// Evaluate records one at a time.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn settings(&self, short_circuit: bool) -> Settings {
        Settings {
            engine: EngineConfig {
                step_cap: self.step_cap,
                ..EngineConfig::default()
            },
            short_circuit,
            degree_cap: self.degree_cap,
            max_n: self.max_n,
            exec: if self.sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            },
            timings: self.timings,
        }
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    position: Option<usize>,
}

fn report_error(err: &Error, json: bool) -> ExitCode {
    let code = rdpd_cli::exit_code_for(err);
    let kind = match code {
        EXIT_USAGE => "usage",
        _ => "engine",
    };
    let position = match err {
        Error::Parse(p) => Some(p.position),
        _ => None,
    };
    if json {
        let body = ErrorReport {
            error: ErrorBody {
                kind,
                message: err.to_string(),
                position,
            },
        };
        eprint!("{}", render::json(&body));
    } else {
        eprintln!("error: {err}");
    }
    ExitCode::from(code as u8)
}

fn emit<T: Serialize>(value: &T, json: bool, text: impl Fn(&T) -> String, code: i32) -> ExitCode {
    if json {
        print!("{}", render::json(value));
    } else {
        print!("{}", text(value));
    }
    if code != 0 {
        let reason = match code {
            1 => "blocked or differs from the catalog",
            _ => "a criterion hit an engine limit",
        };
        if json {
            eprintln!("{{\"exit_code\": {code}, \"reason\": \"{reason}\"}}");
        } else {
            eprintln!("exit status {code}: {reason}");
        }
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            common,
            vars,
            poly,
            short_circuit,
        } => match rdpd_cli::analyze(common.char, &vars, &poly, &common.settings(short_circuit)) {
            Ok(out) => emit(&out, common.json, render::analysis_text, out.exit_code()),
            Err(e) => report_error(&e, common.json),
        },
        Command::Tables { common } => {
            match rdpd_cli::tables(common.char, &common.settings(false)) {
                Ok(out) => emit(&out, common.json, render::tables_text, out.exit_code()),
                Err(e) => report_error(&e, common.json),
            }
        }
        Command::Classify { common } => {
            match rdpd_cli::classify(common.char, &common.settings(false)) {
                Ok(out) => emit(&out, common.json, render::classify_text, out.exit_code()),
                Err(e) => report_error(&e, common.json),
            }
        }
        Command::Oracle {
            common,
            vars,
            gens,
            jacobian_of,
            bracket,
        } => {
            let input = match (gens, jacobian_of) {
                (Some(g), _) => OracleInput::Generators(g),
                (None, Some(poly)) => OracleInput::Jacobian { poly, bracket },
                (None, None) => unreachable!("clap requires one of --gens, --jacobian-of"),
            };
            match rdpd_cli::oracle(common.char, &vars, &input, &common.settings(false)) {
                Ok(out) => emit(&out, common.json, render::oracle_text, out.exit_code()),
                Err(e) => report_error(&e, common.json),
            }
        }
    }
}
