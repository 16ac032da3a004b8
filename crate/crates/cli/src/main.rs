//! `altsc`: evaluate automata, profile reachable states, count quotients,
//! build query tables and run the experiment registry.
//!
//! Exit codes: 0 on success or pass, 1 on a failed check or a rejected
//! word, 2 on usage errors (bad arguments, unknown references, malformed
//! words, exhausted budgets).

mod refs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use altsc_core::experiments::{self, ExperimentReport, Params, REGISTRY};
use altsc_core::prob::separate_quotients;
use altsc_core::profiler::{check_bound, profile, Growth, DEFAULT_STATE_CAP};
use altsc_core::quotient::{count_quotients, query_table, RowSpec, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use refs::{Resolved, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "altsc", version, about = "State-complexity workbench for alternating and probabilistic automata")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of membership queries.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cut-point for probabilistic automata loaded from files.
    #[arg(long, global = true, default_value = "1/2")]
    threshold: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide membership of a word.
    Eval { target: String, word: String },
    /// Count reachable states up to a depth and check a growth bound.
    Profile {
        target: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Growth class: 1, n, n^2, n^k or 2^n. Defaults to the declared class.
        #[arg(long)]
        class: Option<Growth>,
        #[arg(long)]
        constant: Option<u64>,
    },
    /// Lower-bound the number of left quotients of a given order.
    Quotients {
        target: String,
        #[arg(long)]
        order: usize,
        /// Witness suffixes range over all words up to this length.
        #[arg(long)]
        witness: usize,
    },
    /// Count distinct rows of a query table.
    QueryTable {
        target: String,
        #[arg(long)]
        order: usize,
        /// Use every word up to this length as a row.
        #[arg(long, conflicts_with = "row")]
        rows_up_to: Option<usize>,
        /// An explicit row word; repeatable.
        #[arg(long)]
        row: Vec<String>,
        /// Include every row profile in the output.
        #[arg(long)]
        dump: bool,
    },
    /// Probabilistic automata.
    Prob {
        #[command(subcommand)]
        command: ProbCommand,
    },
    /// Run a registered experiment, or `all`.
    Experiment {
        id: String,
        #[arg(long)]
        n: Option<usize>,
        /// Run the experiments of `all` in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// List gallery languages and experiment ids.
    List,
}

#[derive(Debug, Subcommand)]
enum ProbCommand {
    /// Exact acceptance probability of a word.
    Eval { target: String, word: String },
    /// Suffix separating the quotients of `u1` and `v1` in Rabin's cut-point language.
    Separate { u: String, v: String },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Rendered output and whether the command's check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) if outcome.ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn line(s: impl Into<String>) -> String {
    let mut s = s.into();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn pretty(value: &impl serde::Serialize) -> String {
    line(serde_json::to_string_pretty(value).expect("plain data"))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Eval { target, word } => {
            let resolved = refs::resolve(target, &g.threshold)?;
            let accepted = resolved.member(word)?;
            let verdict = if accepted { "accept" } else { "reject" };
            let text = match g.format {
                Format::Text => line(verdict),
                Format::Json => pretty(&json!({ "target": target, "word": word, "accepted": accepted })),
                Format::Csv => format!("word,accepted\n{word},{accepted}\n"),
            };
            Ok(Outcome { text, ok: accepted })
        }
        Command::Profile {
            target,
            n_max,
            class,
            constant,
        } => {
            let resolved = refs::resolve(target, &g.threshold)?;
            let Target::Automaton(aut) = &resolved.target else {
                return Err(Failure(format!("{target} has no alternating automaton to profile")));
            };
            let prof = profile(&resolved.name, aut.as_ref(), *n_max, DEFAULT_STATE_CAP)?;
            let declared = resolved.class;
            let class = class.or(declared.map(|d| d.growth));
            let constant = constant.or(declared.map(|d| d.constant));
            let check = match (class, constant) {
                (Some(c), Some(k)) => Some(check_bound(&prof, c, k)),
                (None, None) => None,
                _ => return Err(Failure("--class and --constant go together".into())),
            };
            let ok = check.as_ref().is_none_or(|c| c.pass);
            let text = match g.format {
                Format::Json => pretty(&json!({ "profile": prof, "check": check })),
                Format::Csv => prof.to_csv(),
                Format::Text => {
                    let mut out = prof.to_columns();
                    if let Some(c) = &check {
                        let verdict = if c.pass { "pass" } else { "fail" };
                        out.push_str(&format!(
                            "# bound {}·{}: {verdict} (max ratio {:.3})\n",
                            c.constant, c.class, c.max_ratio
                        ));
                    }
                    out
                }
            };
            Ok(Outcome { text, ok })
        }
        Command::Quotients { target, order, witness } => {
            let resolved = refs::resolve(target, &g.threshold)?;
            let lang = resolved.language()?;
            let report = count_quotients(lang.as_ref(), *order, *witness, g.budget)?;
            let text = match g.format {
                Format::Json => pretty(&report),
                Format::Csv => report.to_csv(),
                Format::Text => {
                    let mut out = format!(
                        "{}: at least {} quotient classes of order {} ({} prefixes, {} witnesses up to length {})\n",
                        report.language,
                        report.class_count_lower_bound,
                        report.order,
                        report.prefixes,
                        report.witnesses,
                        report.witness_bound,
                    );
                    for (rep, size) in report.representatives.iter().zip(&report.class_sizes) {
                        out.push_str(&format!("  {:<12} {size}\n", display_word(rep)));
                    }
                    out
                }
            };
            Ok(Outcome::pass(text))
        }
        Command::QueryTable {
            target,
            order,
            rows_up_to,
            row,
            dump,
        } => {
            let resolved = refs::resolve(target, &g.threshold)?;
            let lang = resolved.language()?;
            let rows = match rows_up_to {
                Some(m) => RowSpec::Exhaustive(*m),
                None if !row.is_empty() => RowSpec::Explicit(row.clone()),
                None => return Err(Failure("give --rows-up-to or at least one --row".into())),
            };
            let report = query_table(lang.as_ref(), *order, &rows, g.budget, *dump)?;
            let text = match g.format {
                Format::Json => pretty(&report),
                Format::Csv => report.to_csv(),
                Format::Text => {
                    let mut out = format!(
                        "{}: at least {} distinct rows in the query table of order {} ({} rows, {} columns)\n",
                        report.language, report.distinct_row_count, report.order, report.rows, report.columns,
                    );
                    if let Some(profiles) = &report.profiles {
                        for (w, bits) in profiles {
                            out.push_str(&format!("  {:<12} {bits}\n", display_word(w)));
                        }
                    }
                    out
                }
            };
            Ok(Outcome::pass(text))
        }
        Command::Prob { command } => prob(command, g),
        Command::Experiment { id, n, parallel } => {
            let params = Params {
                n: *n,
                seed: g.seed,
                budget: g.budget,
            };
            let ids: Vec<&str> = if id == "all" { REGISTRY.to_vec() } else { vec![id.as_str()] };
            let reports: Vec<ExperimentReport> = if *parallel {
                ids.par_iter().map(|id| experiments::run(id, &params)).collect::<Result<_, _>>()?
            } else {
                ids.iter().map(|id| experiments::run(id, &params)).collect::<Result<_, _>>()?
            };
            let ok = reports.iter().all(ExperimentReport::passed);
            let text = match g.format {
                Format::Json if reports.len() == 1 => line(reports[0].to_json()),
                Format::Json => pretty(&reports),
                Format::Csv => {
                    let mut out = String::new();
                    for (i, r) in reports.iter().enumerate() {
                        let csv = r.to_csv();
                        // one header for the whole table
                        out.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |p| p.1) });
                    }
                    out
                }
                Format::Text => reports.iter().map(ExperimentReport::to_text).collect(),
            };
            Ok(Outcome { text, ok })
        }
        Command::List => {
            let names = altsc_core::gallery::NAMES;
            let text = match g.format {
                Format::Json => pretty(&json!({ "languages": names, "experiments": REGISTRY })),
                _ => {
                    let mut out = String::from("languages:\n");
                    for n in names {
                        out.push_str(&format!("  {n}\n"));
                    }
                    out.push_str("experiments:\n");
                    for id in REGISTRY {
                        out.push_str(&format!("  {id}\n"));
                    }
                    out
                }
            };
            Ok(Outcome::pass(text))
        }
    }
}

fn prob(command: &ProbCommand, g: &Global) -> Result<Outcome, Failure> {
    match command {
        ProbCommand::Eval { target, word } => {
            let resolved: Resolved = refs::resolve(target, &g.threshold)?;
            let Target::Threshold(lang) = &resolved.target else {
                return Err(Failure(format!("{target} is not a probabilistic automaton")));
            };
            let p = lang.automaton().acceptance_probability(word)?;
            let member = p > *lang.threshold();
            let text = match g.format {
                Format::Text => line(p.to_string()),
                Format::Json => pretty(&json!({
                    "word": word,
                    "probability": p.to_string(),
                    "threshold": lang.threshold().to_string(),
                    "member": member,
                })),
                Format::Csv => format!("word,probability,member\n{word},{p},{member}\n"),
            };
            Ok(Outcome::pass(text))
        }
        ProbCommand::Separate { u, v } => {
            let suffix = separate_quotients(u, v)?;
            let text = match g.format {
                Format::Text => line(suffix.clone()),
                Format::Json => pretty(&json!({ "u": u, "v": v, "suffix": suffix })),
                Format::Csv => format!("u,v,suffix\n{u},{v},{suffix}\n"),
            };
            Ok(Outcome::pass(text))
        }
    }
}

fn display_word(w: &str) -> &str {
    if w.is_empty() {
        "ε"
    } else {
        w
    }
}
