use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use persilat::commands::{self, CommandError, HasseView};
use persilat::io::{parse_file, LoadOptions};
use persilat::lattice::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "persilat", version, about = "Persistence lattices of commutative diagrams over GF(p)")]
struct Cli {
    /// Diagram file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Reject matrix entries outside 0..p instead of reducing them.
    #[arg(long, global = true)]
    field_check: bool,
    /// Print JSON (the default for every command except `hasse`).
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    /// Print DOT (`hasse` only).
    #[arg(long, global = true)]
    dot: bool,
    /// Cap on enumerated lattice elements.
    #[arg(long, global = true, env = "PERSILAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate the diagram.
    Validate,
    /// Rank of the map from A ∧ B to A ∨ B.
    Rank { a: String, b: String },
    /// Meet of a node set: formal normal form and realized dimension.
    Meet {
        #[arg(required = true)]
        nodes: Vec<String>,
    },
    /// Join of a node set: formal normal form and realized dimension.
    Join {
        #[arg(required = true)]
        nodes: Vec<String>,
    },
    /// Heyting implication A ⇒ B.
    Implies { a: String, b: String },
    /// A complement of A in the free lattice, if any.
    Complement { a: String },
    /// Rank from the meet of all sources to the join of all targets.
    LargestInjective,
    /// Hasse diagram.
    Hasse {
        #[arg(long, value_enum, default_value_t = View::Free)]
        view: View,
    },
    /// Barcode of a filtration-tagged diagram.
    Barcode,
    /// Zig-zag rank table of a zigzag-tagged diagram.
    ZigzagRanks {
        #[arg(long)]
        csv: bool,
    },
    /// Corner rank against realized rank for two grid cells.
    Sections { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Free,
    Poset,
}

fn json_text(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("json values serialize");
    text.push('\n');
    text
}

/// Write to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn run(cli: &Cli) -> Result<String, CommandError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CommandError::Usage("--input FILE is required".into()))?;
    let loaded = parse_file(path, LoadOptions { field_check: cli.field_check })?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let d = &loaded.diagram;
    let v = match &cli.command {
        Command::Validate => commands::cmd_validate(&loaded),
        Command::Rank { a, b } => commands::cmd_rank(d, a, b)?,
        Command::Meet { nodes } => commands::cmd_meet(d, nodes)?,
        Command::Join { nodes } => commands::cmd_join(d, nodes)?,
        Command::Implies { a, b } => commands::cmd_implies(d, a, b)?,
        Command::Complement { a } => commands::cmd_complement(d, a, cli.budget)?,
        Command::LargestInjective => commands::cmd_largest_injective(d)?,
        Command::Hasse { view } => {
            let view = match view {
                View::Free => HasseView::Free,
                View::Poset => HasseView::Poset,
            };
            let (v, dot) = commands::cmd_hasse(d, view, cli.budget)?;
            if cli.json {
                v
            } else {
                return Ok(dot);
            }
        }
        Command::Barcode => commands::cmd_barcode(d)?,
        Command::ZigzagRanks { csv } => {
            let (v, text) = commands::cmd_zigzag_ranks(d)?;
            if *csv {
                return Ok(text);
            }
            v
        }
        Command::Sections { a, b } => commands::cmd_sections(d, a, b)?,
    };
    if cli.dot {
        return Err(CommandError::Usage("--dot applies to `hasse` only".into()));
    }
    Ok(json_text(&v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&json_text(&e.to_json()));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
