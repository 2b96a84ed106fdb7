use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use synchro_cli::analyze::{analyze_csv, analyze_json, AnalyzeOptions};
use synchro_cli::dot::{lattice_graph, state_graph};
use synchro_cli::format::{automaton_to_json, read_automaton};
use synchro_cli::report::{render_table, report_json};
use synchro_cli::sweep::{run_sweep, SweepMode, SweepOptions};
use synchro_cli::verify::{run_suite, VerifyOptions};

use synchro_core::generators::{cerny, general_gadget, random_automaton, triple_gadget};
use synchro_core::EngineCaps;

#[derive(Parser)]
#[command(
    name = "synchro",
    version,
    about = "Synchronizing-automata toolkit: generate, analyze, survey, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Resource limits shared by the heavier subcommands. All defaults match
/// the library's; every run embeds the effective values in its report.
#[derive(Args)]
struct CapArgs {
    /// Largest n the full-lattice engine accepts (its table is 2^n entries)
    #[arg(long = "cap-lattice", default_value_t = EngineCaps::default().full_lattice_max_n)]
    cap_lattice: usize,
    /// Largest subset count the size-bounded engine may materialize
    #[arg(long = "cap-nodes", default_value_t = EngineCaps::default().bounded_node_budget)]
    cap_nodes: u64,
    /// Largest number of letter applications an image search may perform
    #[arg(long = "cap-expansions", default_value_t = EngineCaps::default().word_bfs_budget)]
    cap_expansions: u64,
}

impl CapArgs {
    fn caps(&self) -> EngineCaps {
        EngineCaps {
            full_lattice_max_n: self.cap_lattice,
            bounded_node_budget: self.cap_nodes,
            word_bfs_budget: self.cap_expansions,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Cycle with one merging letter
    Cerny,
    /// One gadget plus a ring; not synchronizing, well-placed triples collapse
    Triple,
    /// Coprime gadgets plus a ring; collapsible k-sets must span every gadget
    General,
    /// Uniform random transitions from a seed
    Random,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum AnalyzeFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum VerifyFormat {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated automaton as JSON
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Number of states
        n: usize,
        /// Family parameter: collapse size for general, alphabet size for
        /// random (default 2)
        #[arg(long)]
        k: Option<usize>,
        /// Random family only
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze an automaton file: verdict, reset word, profile, layers
    Analyze {
        file: PathBuf,
        /// Subset sizes to report, comma-separated
        #[arg(long = "k", value_delimiter = ',', default_values_t = [2usize, 3, 4, 5])]
        ks: Vec<usize>,
        /// Rank-profile horizon (defaults to the reset length, or 2n)
        #[arg(long)]
        profile_len: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: AnalyzeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run a named verification suite; exits 1 if any claim fails
    Verify {
        /// cerny, cerny-word, pairs, ksets, triple, general, constructions,
        /// sweep-n4, random, bounds, or all
        suite: String,
        /// Largest cycle automaton the cerny suite checks
        #[arg(long, default_value_t = 11)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: VerifyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Render Graphviz DOT: the state digraph, or the subset graph with
    /// --lattice
    ExportDot {
        file: PathBuf,
        /// Render subsets up to this size instead of the state digraph
        #[arg(long)]
        lattice: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Survey a family of automata and emit per-row CSV plus aggregates
    Sweep {
        #[command(subcommand)]
        mode: SweepCmd,
    },
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Every two-letter automaton on n states (n <= 4)
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// count automata drawn at seeds seed..seed+count
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
}

/// Writes to the file when given, stdout otherwise.
fn emit(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_gen(
    family: Family,
    n: usize,
    k: Option<usize>,
    seed: Option<u64>,
    out: Option<&PathBuf>,
) -> Result<()> {
    if k.is_some() && !matches!(family, Family::General | Family::Random) {
        bail!("--k applies to the general and random families only");
    }
    if seed.is_some() && family != Family::Random {
        bail!("--seed applies to the random family only");
    }
    let aut = match family {
        Family::Cerny => cerny(n)?,
        Family::Triple => triple_gadget(n)?,
        Family::General => match k {
            Some(k) => general_gadget(n, k)?,
            None => bail!("the general family needs --k (the collapse size, at least 3)"),
        },
        Family::Random => random_automaton(n, k.unwrap_or(2), seed.unwrap_or(0))?,
    };
    emit(out, &automaton_to_json(&aut))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            n,
            k,
            seed,
            out,
        } => {
            cmd_gen(family, n, k, seed, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            file,
            ks,
            profile_len,
            format,
            out,
            caps,
        } => {
            let aut = read_automaton(&file)?;
            let opts = AnalyzeOptions {
                ks,
                profile_len,
                caps: caps.caps(),
            };
            let rendered = match format {
                AnalyzeFormat::Json => {
                    let report = analyze_json(&aut, &opts);
                    serde_json::to_string_pretty(&report)? + "\n"
                }
                AnalyzeFormat::Csv => analyze_csv(&aut, &opts)?,
            };
            emit(out.as_ref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n_max,
            format,
            out,
            caps,
        } => {
            let opts = VerifyOptions {
                n_max,
                caps: caps.caps(),
            };
            let results = run_suite(&suite, &opts)?;
            let rendered = match format {
                VerifyFormat::Table => render_table(&results),
                VerifyFormat::Json => {
                    serde_json::to_string_pretty(&report_json(&results, &opts.caps, None))?
                        + "\n"
                }
            };
            emit(out.as_ref(), &rendered)?;
            if results.iter().any(|c| c.failed()) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::ExportDot { file, lattice, out } => {
            let aut = read_automaton(&file)?;
            let rendered = match lattice {
                Some(k) => lattice_graph(&aut, k),
                None => state_graph(&aut),
            };
            emit(out.as_ref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { mode } => {
            let (opts, out) = match mode {
                SweepCmd::Exhaustive { n, out, caps } => (
                    SweepOptions {
                        mode: SweepMode::Exhaustive { n },
                        caps: caps.caps(),
                    },
                    out,
                ),
                SweepCmd::Random {
                    n,
                    count,
                    seed,
                    alphabet,
                    out,
                    caps,
                } => (
                    SweepOptions {
                        mode: SweepMode::Random {
                            n,
                            alphabet,
                            seed,
                            count,
                        },
                        caps: caps.caps(),
                    },
                    out,
                ),
            };
            let rendered = run_sweep(&opts)?;
            emit(out.as_ref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
