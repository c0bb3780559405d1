//! The command-line surface. [`run_command`] never touches the process
//! environment beyond reading the named input files.

use std::fmt::Display;

use clap::{Parser, Subcommand};

use crate::acit::{
    acit_test, equivalence, equivalence_mwa, exact_test, lower, reduce_minimisation_to_acit,
    reduce_minimisation_to_acit_mwa, zeroness, zeroness_mwa, Confidence, Outcome, DEFAULT_TRIALS,
};
use crate::automaton::{format_word, parse_word};
use crate::consistency::{
    build_figure_automaton, encode_sample, excluded_words, hankel_from_sample, learn_from_hankel, verify_sample,
};
use crate::constructions::{difference, difference_mwa, product, product_mwa};
use crate::hankel::{hankel_rank, DEFAULT_CAP};
use crate::io::{
    parse_automaton, parse_circuit, parse_sample, parse_sentence, write_circuit, write_mta, write_mwa, write_sample,
    AnyAutomaton, ParseError,
};
use crate::minimise::{forward_basis, minimise, minimise_mwa, Method};
use crate::scalar::{parse_scalar, Exact};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { status: 0, stdout, stderr: String::new() }
    }

    fn domain(message: impl Display) -> Self {
        CommandResult { status: 1, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "multiplicity", version, about = "Exact tools for multiplicity word and tree automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight of a word (mwa, space-separated letters) or tree (mta, `f(a,b)` form)
    Eval { automaton: String, input: String },
    /// Minimal equivalent automaton
    Minimize {
        automaton: String,
        #[arg(long, default_value = "saturation")]
        method: Method,
    },
    /// Whether two automata recognise the same series
    Equiv { first: String, second: String },
    /// Whether an automaton recognises the zero series
    Zeroness { automaton: String },
    /// Product automaton, recognising the pointwise product
    Product { first: String, second: String },
    /// Difference automaton, recognising the pointwise difference
    Diff { first: String, second: String },
    /// Rank of a finite Hankel fragment (brute force)
    HankelRank {
        automaton: String,
        /// Trees of height below this bound (default: the dimension)
        #[arg(long)]
        height: Option<usize>,
        /// Contexts of hole depth below this bound (default: the dimension)
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Circuit that vanishes iff the minimal dimension is at most d
    ToAcit {
        automaton: String,
        d: usize,
        /// Keep rational constants and division instead of the integer form
        #[arg(long)]
        rational: bool,
    },
    /// Identity test for a circuit
    Acit {
        circuit: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact rational evaluation (variable-free circuits only)
        #[arg(long)]
        exact: bool,
    },
    /// Weighted sample encoding a sentence, with dimension bound 3
    EncodeSentence { sentence: String },
    /// Three-state automaton built from a sentence and a witness
    FigureAutomaton {
        sentence: String,
        /// Comma-separated rationals a1,…,an
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
    },
    /// Whether an automaton gives every word of a sample its weight
    VerifySample { automaton: String, sample: String },
    /// Word automaton read off an invertible Hankel fragment of a sample
    LearnHankel {
        sample: String,
        /// Comma-separated row words; an empty entry is the empty word
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// Comma-separated column words; an empty entry is the empty word
        #[arg(long, allow_hyphen_values = true)]
        cols: String,
    },
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn at(path: &str) -> impl Fn(ParseError) -> String + '_ {
    move |e| format!("{path}:{}:{}: {}", e.line, e.column, e.message)
}

fn load(path: &str) -> Result<AnyAutomaton, String> {
    parse_automaton(&read(path)?).map_err(at(path))
}

fn word_list(text: &str) -> Vec<Vec<String>> {
    text.split(',').map(parse_word).collect()
}

fn verdict(b: bool, yes: &str, no: &str) -> String {
    format!("{}\n", if b { yes } else { no })
}

fn pair<T>(
    first: &str,
    second: &str,
    mta: impl Fn(&crate::Mta, &crate::Mta) -> Result<T, String>,
    mwa: impl Fn(&crate::Mwa, &crate::Mwa) -> Result<T, String>,
) -> Result<T, String> {
    match (load(first)?, load(second)?) {
        (AnyAutomaton::Mta(a), AnyAutomaton::Mta(b)) => mta(&a, &b),
        (AnyAutomaton::Mwa(a), AnyAutomaton::Mwa(b)) => mwa(&a, &b),
        _ => Err("both automata must be of the same kind".into()),
    }
}

fn execute(cmd: Command) -> Result<String, String> {
    let s = |e: &dyn Display| e.to_string();
    match cmd {
        Command::Eval { automaton, input } => {
            let v = match load(&automaton)? {
                AnyAutomaton::Mwa(a) => a.eval_word(&parse_word(&input)).map_err(|e| s(&e))?,
                AnyAutomaton::Mta(a) => {
                    let t = Tree::parse(&input).map_err(|e| s(&e))?;
                    a.eval_tree(&t).map_err(|e| s(&e))?
                }
            };
            Ok(format!("{}\n", Exact(&v)))
        }
        Command::Minimize { automaton, method } => {
            let (text, from, to) = match load(&automaton)? {
                AnyAutomaton::Mta(a) => {
                    let m = minimise(&a, method).map_err(|e| s(&e))?;
                    (write_mta(&m), a.dim(), m.dim())
                }
                AnyAutomaton::Mwa(a) => {
                    let m = minimise_mwa(&a, method).map_err(|e| s(&e))?;
                    (write_mwa(&m), a.dim(), m.dim())
                }
            };
            Ok(format!("{text}# dim {from} -> {to}\n"))
        }
        Command::Equiv { first, second } => {
            let eq = pair(
                &first,
                &second,
                |a, b| equivalence(a, b).map_err(|e| s(&e)),
                |a, b| equivalence_mwa(a, b).map_err(|e| s(&e)),
            )?;
            Ok(verdict(eq, "equivalent", "not equivalent"))
        }
        Command::Zeroness { automaton } => {
            let z = match load(&automaton)? {
                AnyAutomaton::Mta(a) => zeroness(&a),
                AnyAutomaton::Mwa(a) => zeroness_mwa(&a),
            };
            Ok(verdict(z, "zero", "nonzero"))
        }
        Command::Product { first, second } => pair(
            &first,
            &second,
            |a, b| product(a, b).map(|p| write_mta(&p)).map_err(|e| s(&e)),
            |a, b| product_mwa(a, b).map(|p| write_mwa(&p)).map_err(|e| s(&e)),
        ),
        Command::Diff { first, second } => pair(
            &first,
            &second,
            |a, b| difference(a, b).map(|p| write_mta(&p)).map_err(|e| s(&e)),
            |a, b| difference_mwa(a, b).map(|p| write_mwa(&p)).map_err(|e| s(&e)),
        ),
        Command::HankelRank { automaton, height, depth, cap } => {
            let a = match load(&automaton)? {
                AnyAutomaton::Mta(a) => a,
                AnyAutomaton::Mwa(a) => a.as_mta(),
            };
            let pool = forward_basis(&a).witnesses;
            let r = hankel_rank(&a, height.unwrap_or(a.dim()), depth.unwrap_or(a.dim()), &pool, cap)
                .map_err(|e| s(&e))?;
            Ok(format!("{r}\n"))
        }
        Command::ToAcit { automaton, d, rational } => {
            let c = match load(&automaton)? {
                AnyAutomaton::Mta(a) => reduce_minimisation_to_acit(&a, d),
                AnyAutomaton::Mwa(a) => reduce_minimisation_to_acit_mwa(&a, d),
            }
            .map_err(|e| s(&e))?;
            Ok(write_circuit(&if rational { c } else { lower(&c) }))
        }
        Command::Acit { circuit, trials, seed, exact } => {
            let c = parse_circuit(&read(&circuit)?).map_err(at(&circuit))?;
            let v = if exact { exact_test(&c) } else { acit_test(&c, trials, seed) }.map_err(|e| s(&e))?;
            let outcome = if v.outcome == Outcome::Zero { "zero" } else { "nonzero" };
            let confidence = match v.confidence {
                Confidence::Exact => "exact".to_string(),
                Confidence::OneSided { trials, mult_depth } => {
                    format!("one-sided, {trials} trials, multiplicative depth {mult_depth}")
                }
            };
            Ok(format!("{outcome}\n# confidence: {confidence}\n"))
        }
        Command::EncodeSentence { sentence } => {
            let sen = parse_sentence(&read(&sentence)?).map_err(at(&sentence))?;
            let enc = encode_sample(&sen).map_err(|e| s(&e))?;
            let mut out = format!("# dimension {}\n", enc.dimension);
            for (k, w) in excluded_words(&sen).iter().enumerate() {
                out.push_str(&format!("# excluded: {}\t= a{}\n", format_word(w), k + 1));
            }
            out.push_str(&write_sample(&enc.sample));
            Ok(out)
        }
        Command::FigureAutomaton { sentence, witness } => {
            let sen = parse_sentence(&read(&sentence)?).map_err(at(&sentence))?;
            let values = if witness.trim().is_empty() {
                Vec::new()
            } else {
                witness.split(',').map(parse_scalar).collect::<Result<Vec<_>, _>>().map_err(|e| s(&e))?
            };
            let a = build_figure_automaton(&sen, &values).map_err(|e| s(&e))?;
            Ok(write_mwa(&a))
        }
        Command::VerifySample { automaton, sample } => {
            let smp = parse_sample(&read(&sample)?).map_err(at(&sample))?;
            let ok = match load(&automaton)? {
                AnyAutomaton::Mwa(a) => verify_sample(&a, &smp).map_err(|e| s(&e))?,
                AnyAutomaton::Mta(_) => return Err("verify-sample expects an mwa".into()),
            };
            Ok(verdict(ok, "consistent", "inconsistent"))
        }
        Command::LearnHankel { sample, rows, cols } => {
            let smp = parse_sample(&read(&sample)?).map_err(at(&sample))?;
            let (x, y) = (word_list(&rows), word_list(&cols));
            let (h, hs) = hankel_from_sample(&smp, &x, &y).map_err(|e| s(&e))?;
            let a = learn_from_hankel(&h, &hs, &x, &y).map_err(|e| s(&e))?;
            Ok(write_mwa(&a))
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name. Exit status 0 on
/// success, 1 on a domain error (stderr starts with `error:`), 2 on a usage
/// error.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { status: 2, stdout: String::new(), stderr: text }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => CommandResult::ok(out),
        Err(e) => CommandResult::domain(e),
    }
}
