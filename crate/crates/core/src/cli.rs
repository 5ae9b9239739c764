//! The `visync` command line.
//!
//! Exit codes: 0 for a positive answer or success, 1 for a negative answer,
//! 2 for usage and input errors, 3 when a search budget is exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::automata::{classify, Dvpda, LetterId, PartitionedAlphabet};
use crate::emptiness::{check_emptiness, AcceptanceMode, Explicit};
use crate::format::{parse_dfa, parse_dvpda, parse_vst, sniff, write_dvpda};
use crate::oracle::{oracle_search, Outcome, DEFAULT_BUDGET, DEFAULT_LIMIT};
use crate::reductions::{self, DfaSubsetInstance};
use crate::semantics::{check_witness, SyncModel};
use crate::sync::{decide_sync, Decision, Options};
use crate::transducer::{classify_vst, trace_sync_vst, trace_sync_vvst};
use crate::Error;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "visync", version, about = "Synchronizing words for visibly push-down automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Also print search statistics.
    #[arg(long, global = true)]
    verbose: bool,
    /// Cap on explored states (or configurations, for `oracle`).
    #[arg(long, env = "VISYNC_BUDGET", global = true)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    FinalState,
    FinalStateEmptyStack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Reduction {
    /// Into-subset to same-stack synchronization.
    #[value(alias = "thm2")]
    IntoSame,
    /// From-subset to arbitrary-stack synchronization.
    #[value(alias = "thm3")]
    FromArbitrary,
    /// Into-subset to n-turn synchronization of a counter automaton.
    #[value(alias = "thm8")]
    IntoTurns,
    /// From-subset to 0-turn synchronization of a counter automaton.
    #[value(alias = "thm10")]
    FromZeroTurn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide synchronizability.
    Check {
        /// Stack model: empty, same or arbitrary.
        #[arg(long)]
        model: SyncModel,
        /// Maximal number of turns of the stack height.
        #[arg(long)]
        turns: Option<usize>,
        /// DVPDA file.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print a synchronizing word, or verify the given word.
    Witness {
        /// Stack model: empty, same or arbitrary.
        #[arg(long)]
        model: SyncModel,
        /// Maximal number of turns of the stack height.
        #[arg(long)]
        turns: Option<usize>,
        /// DVPDA file.
        file: PathBuf,
        /// Letters of a word to verify instead of searching.
        word: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Report sub-class membership of an automaton or transducer.
    Classify {
        /// DVPDA or transducer file.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Emptiness of the automaton's language (declared initial and final states).
    Empty {
        /// Whether acceptance also requires an empty stack.
        #[arg(long, value_enum, default_value_t = Mode::FinalState)]
        mode: Mode,
        /// DVPDA file.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force search for a shortest synchronizing word.
    Oracle {
        /// Stack model: empty, same or arbitrary.
        #[arg(long)]
        model: SyncModel,
        /// Maximal number of turns of the stack height.
        #[arg(long)]
        turns: Option<usize>,
        /// Longest word length to search.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        max_len: usize,
        /// DVPDA file.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build a DVPDA from a DFA-with-subset file.
    Generate {
        #[arg(long, value_enum)]
        reduction: Reduction,
        /// Turn bound for the n-turn construction.
        #[arg(long, default_value_t = 1)]
        turns: usize,
        /// DFA file with a `subset` line.
        input: PathBuf,
        /// Where to write the DVPDA.
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide trace synchronization of a transducer.
    TraceSync {
        /// Transducer file.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Everything a command prints: ordered key/value lines.
struct Report {
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn new() -> Self {
        Self { fields: Vec::new() }
    }

    fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.fields.push((key, value.into()));
    }

    fn yes_no(&mut self, key: &'static str, b: bool) {
        self.push(key, if b { "yes" } else { "no" });
    }

    fn write(&self, out: &mut dyn Write, format: OutputFormat) -> std::io::Result<()> {
        match format {
            OutputFormat::Text => {
                for (k, v) in &self.fields {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        Value::Array(xs) => {
                            xs.iter().map(|x| x.as_str().unwrap_or_default()).collect::<Vec<_>>().join(" ")
                        }
                        other => other.to_string(),
                    };
                    if text.is_empty() {
                        writeln!(out, "{k}")?;
                    } else {
                        writeln!(out, "{k} {text}")?;
                    }
                }
                Ok(())
            }
            OutputFormat::Json => {
                let map: Map<String, Value> =
                    self.fields.iter().map(|(k, v)| (k.replace('-', "_"), v.clone())).collect();
                writeln!(out, "{}", Value::Object(map))
            }
        }
    }
}

fn letters(a: &PartitionedAlphabet, w: &[LetterId]) -> Value {
    Value::Array(w.iter().map(|&l| json!(a.name(l))).collect())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Failure {
    Usage(String),
    Budget(String),
}

fn fail(path: &Path, e: Error) -> Failure {
    match e {
        Error::Budget(b) => Failure::Budget(b.to_string()),
        Error::Parse(p) => Failure::Usage(format!("{}:{}: {}", path.display(), p.line, p.message)),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    }
}

fn load_dvpda(path: &Path) -> Result<Dvpda, Failure> {
    parse_dvpda(&read(path)?).map_err(|e| fail(path, e))
}

fn decision_report(r: &mut Report, a: &PartitionedAlphabet, d: &Decision, verbose: bool) {
    r.yes_no("answer", d.answer);
    r.push("procedure", d.procedure.name());
    match (&d.witness, d.witness_len) {
        (Some(w), _) => r.push("witness", letters(a, w)),
        (None, Some(len)) => r.push("witness-length", len),
        (None, None) => {}
    }
    if verbose {
        r.push("explored", d.stats.explored);
        r.push("rounds", d.stats.rounds);
        r.push("elapsed-ms", d.stats.elapsed.as_millis() as u64);
    }
}

fn options(common: &Common) -> Options {
    let mut opts = Options::default();
    if let Some(b) = common.budget {
        opts.budget = b;
    }
    opts
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut r = Report::new();
    let (common, code) = match command {
        Command::Check { model, turns, file, common } => {
            let m = load_dvpda(file)?;
            let d = decide_sync(&m, *model, *turns, &options(common)).map_err(|e| fail(file, e))?;
            decision_report(&mut r, m.alphabet(), &d, common.verbose);
            (common, if d.answer { EXIT_YES } else { EXIT_NO })
        }
        Command::Witness { model, turns, file, word, common } => {
            let m = load_dvpda(file)?;
            if word.is_empty() {
                let d = decide_sync(&m, *model, *turns, &options(common)).map_err(|e| fail(file, e))?;
                decision_report(&mut r, m.alphabet(), &d, common.verbose);
                if let Some(len) = d.witness_len {
                    if d.witness.is_some() {
                        r.push("witness-length", len);
                    }
                }
                (common, if d.answer { EXIT_YES } else { EXIT_NO })
            } else {
                let w = m.alphabet().parse_word(&word.join(" ")).map_err(|e| fail(file, e.into()))?;
                let ok = check_witness(&m, &w, *model, *turns).map_err(|e| fail(file, e))?;
                r.yes_no("valid", ok);
                (common, if ok { EXIT_YES } else { EXIT_NO })
            }
        }
        Command::Classify { file, common } => {
            let text = read(file)?;
            if sniff(&text) == Some("vst") {
                let t = parse_vst(&text).map_err(|e| fail(file, e))?;
                let c = classify_vst(&t);
                r.yes_no("visibly", c.is_visibly);
                r.yes_no("very-visibly", c.is_very_visibly);
            } else {
                let m = parse_dvpda(&text).map_err(|e| fail(file, e))?;
                let c = classify(&m);
                r.yes_no("very-visibly", c.is_very_visibly);
                r.yes_no("counter", c.is_counter);
                r.yes_no("has-call", c.has_call);
                r.yes_no("has-return", c.has_return);
            }
            (common, EXIT_YES)
        }
        Command::Empty { mode, file, common } => {
            let m = load_dvpda(file)?;
            let mode = match mode {
                Mode::FinalState => AcceptanceMode::FinalState,
                Mode::FinalStateEmptyStack => AcceptanceMode::FinalStateEmptyStack,
            };
            let budget = options(common).budget;
            let res = check_emptiness(&Explicit::from_declared(&m), mode, budget).map_err(|e| fail(file, e.into()))?;
            r.yes_no("empty", res.is_empty());
            if let Some(w) = &res.witness {
                match w.expand(options(common).witness_cap) {
                    Ok(word) => r.push("witness", letters(m.alphabet(), &word)),
                    Err(e) => r.push("witness-length", e.len),
                }
            }
            if common.verbose {
                r.push("explored", res.explored);
                r.push("summaries", res.summaries);
            }
            (common, if res.is_empty() { EXIT_NO } else { EXIT_YES })
        }
        Command::Oracle { model, turns, max_len, file, common } => {
            let m = load_dvpda(file)?;
            let res = oracle_search(&m, *model, *turns, *max_len, common.budget.unwrap_or(DEFAULT_BUDGET));
            let code = match &res.outcome {
                Outcome::Found(w) => {
                    r.push("outcome", "found");
                    r.push("witness", letters(m.alphabet(), w));
                    r.push("witness-length", w.len());
                    EXIT_YES
                }
                Outcome::NoneWithin(l) => {
                    r.push("outcome", "none-within");
                    r.push("max-len", *l);
                    EXIT_NO
                }
                Outcome::BudgetExceeded => {
                    r.push("outcome", "budget-exceeded");
                    EXIT_BUDGET
                }
            };
            if common.verbose {
                r.push("explored", res.explored);
            }
            (common, code)
        }
        Command::Generate { reduction, turns, input, output, common } => {
            let (dfa, subset) = parse_dfa(&read(input)?).map_err(|e| fail(input, e))?;
            let subset = subset.ok_or_else(|| Failure::Usage(format!("{}: missing `subset` line", input.display())))?;
            let inst = DfaSubsetInstance::new(dfa, subset).map_err(|e| fail(input, e))?;
            let m = match reduction {
                Reduction::IntoSame => reductions::reduce_into_subset_to_same(&inst),
                Reduction::FromArbitrary => reductions::reduce_from_subset_to_arb(&inst),
                Reduction::IntoTurns => reductions::reduce_into_subset_to_nturn_dvca(&inst, *turns),
                Reduction::FromZeroTurn => reductions::reduce_from_subset_to_zero_turn(&inst),
            }
            .map_err(|e| fail(input, e))?;
            std::fs::write(output, write_dvpda(&m))
                .map_err(|e| Failure::Usage(format!("{}: {e}", output.display())))?;
            r.push("wrote", output.display().to_string());
            r.push("states", m.num_states());
            (common, EXIT_YES)
        }
        Command::TraceSync { file, common } => {
            let t = parse_vst(&read(file)?).map_err(|e| fail(file, e))?;
            let d = if classify_vst(&t).is_very_visibly {
                trace_sync_vvst(&t)
            } else {
                trace_sync_vst(&t, &options(common))
            }
            .map_err(|e| fail(file, e))?;
            let alphabet = PartitionedAlphabet::from_letters(
                t.inputs().iter().map(|l| (l.clone(), crate::automata::LetterKind::Internal)),
            );
            decision_report(&mut r, &alphabet, &d, common.verbose);
            (common, if d.answer { EXIT_YES } else { EXIT_NO })
        }
    };
    r.write(out, common.format).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(code)
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BUDGET
        }
    }
}
