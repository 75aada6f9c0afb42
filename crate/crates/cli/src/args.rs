use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "unaware",
    version,
    about = "Model checker for knowledge and unawareness on finite state spaces"
)]
pub struct Cli {
    /// Model file, text or JSON.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub model: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// State-count cap for enumeration and for operations over every event.
    #[arg(long, global = true, value_name = "N")]
    pub max_n: Option<usize>,

    /// Worker threads for `enumerate`. Output does not depend on it.
    #[arg(long, global = true, value_name = "J")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorChoice {
    K,
    Kprime,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingleOperator {
    K,
    Kprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a set expression or predicate against the model.
    Eval { formula: String },
    /// Check knowledge and unawareness properties.
    #[command(group(ArgGroup::new("which").required(true).args(["property", "all"])))]
    Check {
        /// Property id, repeatable.
        #[arg(short, long, value_name = "ID")]
        property: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = OperatorChoice::Both)]
        operator: OperatorChoice,
    },
    /// Verify a claim step by step.
    #[command(group(ArgGroup::new("which").required(true).args(["claim", "all"])))]
    Verify {
        #[arg(long, value_name = "ID")]
        claim: Option<String>,
        #[arg(long)]
        all: bool,
        /// Starting event for event-driven claims, as a set expression.
        #[arg(long, value_name = "EXPR")]
        event: Option<String>,
    },
    /// Enumerate every correspondence on n states.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["count", "first", "all", "sweep"])))]
pub struct EnumerateArgs {
    #[arg(short, value_name = "N")]
    pub n: usize,

    #[arg(long)]
    pub serial: bool,
    #[arg(long)]
    pub reflexive: bool,
    #[arg(long)]
    pub transitive: bool,
    #[arg(long)]
    pub euclidean: bool,
    #[arg(long)]
    pub partitional: bool,
    #[arg(long)]
    pub non_partitional: bool,

    /// Count models matching TARGET.
    #[arg(long, value_name = "TARGET")]
    pub count: Option<String>,
    /// Report the lowest-index model matching TARGET.
    #[arg(long, value_name = "TARGET")]
    pub first: Option<String>,
    /// Report every model matching TARGET.
    #[arg(long, value_name = "TARGET")]
    pub all: Option<String>,
    /// Run the invariant suite on every model.
    #[arg(long)]
    pub sweep: bool,

    /// Operator for property targets.
    #[arg(long, value_enum, default_value_t = SingleOperator::K)]
    pub operator: SingleOperator,
    /// Outcome a property target must have.
    #[arg(long, value_enum, default_value_t = Expect::Holds)]
    pub expect: Expect,
    /// Verdict a claim target must have.
    #[arg(long, default_value = "refuted-step", value_name = "VERDICT")]
    pub verdict: String,
}
