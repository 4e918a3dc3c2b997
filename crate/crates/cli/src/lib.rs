//! Command-line front end: parses JSON problem files, runs the library
//! operations, and emits human-readable or JSON reports plus DOT
//! renderings. Exit codes: 0 all checks pass, 1 some check failed,
//! 2 only unknown outcomes, 3 invalid input.

pub mod commands;
pub mod dot;
pub mod report;
pub mod schema;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "catfrac", version, about = "Localizations and dilatations of finite categories")]
pub struct Cli {
    /// Problem description (JSON).
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Longest word enumerated or searched.
    #[arg(long, default_value_t = 12, global = true)]
    pub budget_len: usize,
    /// Most states visited by a search or enumeration.
    #[arg(long, default_value_t = 200_000, global = true)]
    pub budget_states: usize,
    /// Equality backend.
    #[arg(long, value_enum, default_value_t = BackendChoice::Auto, global = true)]
    pub backend: BackendChoice,
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write DOT output to this file (export-dot prints to stdout
    /// otherwise).
    #[arg(long, global = true)]
    pub dot: Option<String>,
    /// Include wall-clock timings in the report (off by default so
    /// reports are byte-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Auto,
    Poset,
    Commutative,
    Search,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the category and/or semiring tables and echo them back.
    Validate,
    /// Enumerate the localization at sigma.
    Localize,
    /// Enumerate the dilatation at the configured center.
    Dilate,
    /// Show one hom-set of the dilatation (or localization when no
    /// center is given).
    Hom { source: String, target: String },
    /// Run a proposition checker.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Compute the affine blowup of the semiring at its center.
    Blowup,
    /// Compare the blowup with the dilatation of the multiplicative
    /// monoid.
    MaCompare,
    /// Emit DOT for the localization graph or the dilated category.
    ExportDot {
        #[command(subcommand)]
        what: ExportWhat,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Fraction existence and uniqueness for every numerator.
    Propdil,
    /// Every inverted morphism cancels on both sides.
    Bimorphism,
    /// The generated-sieve identity.
    Exc,
    /// Maximal-center dilatation recovers the localization.
    Locasdil,
    /// The inclusion functor of the gamma subcategory.
    Inclusion,
    /// Iterated dilatation against the combined center.
    Iterate,
    /// The universal factorization for the canonical targets.
    Universal,
    /// Representability of the dilatation among regular targets.
    Representability,
}

#[derive(Debug, Subcommand)]
pub enum ExportWhat {
    /// The localization graph: forward lines solid, backward dashed.
    Graph,
    /// The dilated category as a diagram.
    Result,
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match commands::execute(&cli) {
        Ok(report) => {
            let code = report.exit_code();
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            3
        }
    }
}
