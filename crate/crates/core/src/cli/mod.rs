//! The `relift` command line.
//!
//! Every subcommand produces a [`Report`] that renders either as plain text
//! or, with `--json`, as a versioned JSON document with sorted keys. Exit
//! status is 0 on success, 1 when the computation rejects its input, and 2
//! on usage errors.

mod commands;
mod input;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use input::{parse_chain, parse_element, parse_element_list, parse_pattern, parse_ring_element, GroupSpec};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "relift", version, about = "Relation modules, Fox calculus and Magnus hierarchies for presented groups")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run bulk computations on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PresentationArgs {
    /// Presentation file (`gens:`, `rels:`, optional `partition:`, `quotient:`, `abelianize`).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Inline generators, comma separated.
    #[arg(long, conflicts_with = "file")]
    pub gens: Option<String>,
    /// Inline relators, `;` separated.
    #[arg(long, requires = "gens")]
    pub rels: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct QuotientArgs {
    /// Permutation images, e.g. `a -> (1 2), b -> (1 2 3)`.
    #[arg(long)]
    pub quotient: Option<String>,
    /// Map onto the free part of the abelianization.
    #[arg(long, conflicts_with = "quotient")]
    pub abelianize: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct DomainArgs {
    /// Coefficients in the prime field F_p.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Coefficients in the rationals.
    #[arg(long, conflicts_with = "prime")]
    pub rationals: bool,
    /// Coefficients in the integers.
    #[arg(long, conflicts_with_all = ["prime", "rationals"])]
    pub integers: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fox derivative of a word.
    Fox {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[arg(long)]
        word: String,
        /// Generator to differentiate by.
        #[arg(long)]
        gen: String,
    },
    /// Jacobi matrix over the group ring of a quotient.
    Jacobian {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Chain complex of a finite cover, its homology and a generation test.
    Complex {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[command(flatten)]
        domain: DomainArgs,
        /// 1-based relator indices whose lifts should generate `ker d1`.
        #[arg(long)]
        relators: Option<String>,
        /// Print both boundary matrices as sparse triplets.
        #[arg(long)]
        triplets: bool,
    },
    /// Search for row and column orders making a matrix lower trapezoidal.
    Trapezoid {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        quotient: QuotientArgs,
        #[command(flatten)]
        domain: DomainArgs,
        /// A 0/1 pattern such as `110;011` instead of a Jacobi matrix.
        #[arg(long)]
        pattern: Option<String>,
        /// Keep the given row order.
        #[arg(long)]
        fixed_rows: bool,
        /// Largest column count searched exhaustively.
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Fall back to a greedy pass above the cap.
        #[arg(long)]
        heuristic: bool,
        /// Certify the diagonal entries as non-engulfing.
        #[arg(long)]
        certify: bool,
    },
    /// Iterated Magnus splittings of a one-relator group.
    Hierarchy {
        #[command(flatten)]
        presentation: PresentationArgs,
        /// The relator is taken to this power.
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 32)]
        max_depth: usize,
    },
    /// Prefix sequences and the coprime sequence lemma.
    Seqcheck {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        /// Comma separated sequence to classify.
        #[arg(long)]
        seq: Option<String>,
        /// Enumerate every admissible sequence up to this length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Unique products of two finite subsets of a group.
    Upcheck {
        #[arg(long)]
        group: String,
        /// `;` separated elements.
        #[arg(long = "set-a")]
        set_a: String,
        #[arg(long = "set-b")]
        set_b: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Ignore the left/right distinctness requirement.
        #[arg(long)]
        plain: bool,
    },
    /// Decide whether a group-ring element is engulfing.
    Engulf {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Certify proper subwords of a relator nontrivial in a finite quotient.
    Weinbaum {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        quotient: QuotientArgs,
        /// Relator to scan (default: the first).
        #[arg(long)]
        word: Option<String>,
    },
    /// Lift a cycle on a graph to an embedded cycle through designated edges.
    Lift {
        /// Edge list, one `source target [label]` per line.
        #[arg(long)]
        graph: PathBuf,
        /// Comma separated designated edge labels.
        #[arg(long)]
        designated: String,
        /// `label:coefficient` pairs.
        #[arg(long)]
        chain: String,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Check the commutator identity in `⟨a, t | [t a t^-1, a] a^-n⟩`.
    VerifyExample {
        #[arg(long)]
        n: u32,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Left,
    Right,
}

/// The outcome of one subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub subcommand: String,
    pub inputs: Value,
    pub results: Value,
    /// False when a heuristic was involved.
    pub exact: bool,
    pub text: String,
}

impl Report {
    pub fn to_json(&self, elapsed_ms: Option<f64>) -> Value {
        let mut doc = json!({
            "schema": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "results": self.results,
            "exact": self.exact,
        });
        if let Some(ms) = elapsed_ms {
            doc["timing_ms"] = json!(ms);
        }
        doc
    }
}

/// Captured result of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the subcommand without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let start = Instant::now();
    match commands::dispatch(&cli) {
        Ok(report) => {
            let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.to_json(elapsed)).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                let mut s = report.text.clone();
                if let Some(ms) = elapsed {
                    s.push_str(&format!("time: {ms:.3} ms\n"));
                }
                s
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if cli.json {
                let doc = json!({ "schema": SCHEMA_VERSION, "error": e.to_string() });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON values serialize"))
            } else {
                String::new()
            };
            Outcome { code: 1, stdout, stderr: format!("error: {e}\n") }
        }
    }
}
