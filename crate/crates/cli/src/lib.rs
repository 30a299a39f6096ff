//! Command surface shared by the `ncpoly` binary and its tests.

use std::fmt::Write as _;

use clap::{Args, Parser};
use ncpoly::equiv::Budget;
use ncpoly::eval::RefuteConfig;
use ncpoly::parse::{default_var_names, parse_field, parse_var_list, parse_with_preamble};
use ncpoly::{Context, Field, NcPoly};
use serde_json::{json, Value};

mod commands;
mod verify;

pub use commands::{run, Command, Side};
pub use verify::verify_report;

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certificate = 0,
    Refuted = 1,
    Undecided = 2,
    Usage = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Certificate => "certificate",
            Outcome::Refuted => "refuted",
            Outcome::Undecided => "undecided",
            Outcome::Usage => "usage-error",
        }
    }
}

/// Flags accepted by every command.
#[derive(Args, Clone, Debug)]
pub struct GlobalArgs {
    /// Coefficient field, e.g. `Q`, `Q(i)` or `Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Comma-separated variable names (default `x,y,z`).
    #[arg(long, global = true)]
    pub vars: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest matrix size tried by the refuters.
    #[arg(long, global = true, default_value_t = 5)]
    pub max_size: usize,
    /// Random tuples per matrix size.
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
    /// Largest degree searched for intertwiners.
    #[arg(long, global = true, default_value_t = 9)]
    pub max_deg: usize,
    /// Relative tolerance for floating-point norm comparisons.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Parser, Clone, Debug)]
#[command(name = "ncpoly", version, about = "Decide equivalences of noncommutative polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub vars: Vec<String>,
    pub seed: u64,
    pub max_size: usize,
    pub samples: usize,
    pub max_deg: usize,
    pub tol: f64,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: Field::rationals(),
            vars: default_var_names(3),
            seed: 0,
            max_size: 5,
            samples: 50,
            max_deg: 9,
            tol: 1e-8,
            json: false,
        }
    }
}

impl RunConfig {
    /// Builds a config from the global flags, rejecting empty budgets.
    pub fn from_args(a: &GlobalArgs) -> Result<RunConfig, String> {
        let field = match &a.field {
            Some(s) => parse_field(s).map_err(|e| format!("--field: {e}"))?,
            None => Field::rationals(),
        };
        let vars = match &a.vars {
            Some(s) => parse_var_list(s).map_err(|e| format!("--vars: {e}"))?,
            None => default_var_names(3),
        };
        if a.max_size == 0 || a.samples == 0 || a.max_deg == 0 {
            return Err("--max-size, --samples and --max-deg must be positive".into());
        }
        if !(a.tol > 0.0 && a.tol.is_finite()) {
            return Err("--tol must be a positive number".into());
        }
        Ok(RunConfig {
            field,
            vars,
            seed: a.seed,
            max_size: a.max_size,
            samples: a.samples,
            max_deg: a.max_deg,
            tol: a.tol,
            json: a.json,
        })
    }

    pub fn context(&self) -> Context {
        Context::new(self.vars.clone(), self.field.clone())
    }

    pub fn refute_config(&self) -> RefuteConfig {
        RefuteConfig {
            max_size: self.max_size,
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            ..RefuteConfig::default()
        }
    }

    pub fn budget(&self) -> Budget {
        Budget { max_deg: self.max_deg, seed: self.seed, refute: self.refute_config(), ..Budget::default() }
    }

    /// Parses a polynomial argument, naming it in diagnostics.
    pub fn poly(&self, name: &str, src: &str) -> Result<NcPoly, String> {
        let (ctx, p) = parse_with_preamble(src, &self.context()).map_err(|e| format!("argument {name}: {e}"))?;
        if ctx.field != self.field {
            return Err(format!("argument {name}: declare the field with --field instead of a preamble"));
        }
        Ok(p)
    }

    pub fn print(&self, f: &NcPoly) -> String {
        self.context().print(f)
    }
}

/// Result of one command: exit status, a text rendering and a JSON rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub text: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn new(command: &str, outcome: Outcome, cfg: &RunConfig) -> Report {
        let json = json!({
            "command": command,
            "outcome": outcome.name(),
            "exit_code": outcome.code(),
            "field": cfg.field.describe(),
            "vars": cfg.vars,
        });
        Report { command: command.to_string(), outcome, text: vec![format!("{command}: {}", outcome.name())], json }
    }

    pub fn set_outcome(&mut self, outcome: Outcome) -> &mut Report {
        self.outcome = outcome;
        self.json["outcome"] = json!(outcome.name());
        self.json["exit_code"] = json!(outcome.code());
        self.text[0] = format!("{}: {}", self.command, outcome.name());
        self
    }

    pub fn usage(command: &str, msg: impl Into<String>, cfg: &RunConfig) -> Report {
        let msg = msg.into();
        let mut r = Report::new(command, Outcome::Usage, cfg);
        r.json["error"] = json!(msg);
        r.line(format!("error: {msg}"));
        r
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Report {
        self.text.push(s.into());
        self
    }

    pub fn set(&mut self, key: &str, v: Value) -> &mut Report {
        self.json[key] = v;
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.code()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for l in &self.text {
                let _ = writeln!(s, "{l}");
            }
            s
        }
    }
}
