use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use extensia_core::engine::KappaChoice;

#[derive(Debug, Parser)]
#[command(
    name = "extensia",
    version,
    about = "Minimum infinite-valued models of higher-order logic programs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, compile and type-check a program.
    Check(Common),
    /// Compute the minimum model.
    Solve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Evaluate a closed core-syntax expression against the minimum model.
    Query {
        #[command(flatten)]
        common: Common,
        /// The expression, in core syntax, e.g. `q b` or `exists X:i. p X`.
        expr: String,
        #[command(flatten)]
        solve: SolveFlags,
        /// Print predicate-typed results as tables.
        #[arg(long)]
        table: bool,
    },
    /// Compute the well-founded model of a first-order normal program.
    Wfs(Common),
    /// Compute the minimum model by exhaustive enumeration.
    OracleMin {
        #[command(flatten)]
        common: Common,
        /// Truncation level of the truth domain.
        #[arg(long, default_value = "auto")]
        kappa: KappaArg,
        /// Collapse to True/False/Undef.
        #[arg(long)]
        collapse: bool,
        /// Maximum number of interpretations to enumerate.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Program file; core syntax is detected by `<-`.
    pub input: PathBuf,
    /// Rewrite predicate constants in clause heads through `equal`.
    #[arg(long)]
    pub wadge: bool,
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveFlags {
    /// Truncation level of the truth domain: a positive integer or `auto`.
    #[arg(long, default_value = "auto")]
    pub kappa: KappaArg,
    /// Collapse to True/False/Undef.
    #[arg(long)]
    pub collapse: bool,
    /// Print one line per iterate on standard error.
    #[arg(long)]
    pub trace: bool,
    /// Fail instead of assigning 0 when κ runs out before the model settles.
    #[arg(long)]
    pub strict_kappa: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct KappaArg(pub KappaChoice);

impl FromStr for KappaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(KappaArg(KappaChoice::Auto));
        }
        match s.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(KappaArg(KappaChoice::Explicit(n))),
            _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
        }
    }
}
