use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bimonoid_automata::bridge::{string_wta_to_wsa, wsa_to_wta};
use bimonoid_automata::format::{
    self, algebra_to_json, parse_automaton, parse_table, Automaton, AutomatonFile,
};
use bimonoid_automata::harness::{
    check_image_theorem, check_support_theorem_trees, check_support_theorem_words,
    tree_cost_profile, word_cost_profile, CheckReport, ImageMode, TheoremCheckConfig,
};
use bimonoid_automata::properties::classify;
use bimonoid_automata::trees::{RankedAlphabet, Tree};
use bimonoid_automata::weights::{builtin, dedup, AnyAlgebra, AnyElem, Weights};
use bimonoid_automata::{RunOptions, Semantics};

const PRUNE: RunOptions = RunOptions { prune: true };

#[derive(Parser)]
#[command(name = "bimonoid", version, about = "Weighted automata over strong bimonoids")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an automaton on one input.
    Eval {
        #[command(flatten)]
        automaton: AutomatonArg,
        /// A word (`abba`, `gamma delta`, `ε`) or a tree term.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Both)]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// List the supports of both semantics up to a bound.
    Support {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// List the images of both semantics up to a bound.
    Image {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Decide the zero-sum-freeness hierarchy for a finite algebra.
    Props {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Check a characterization theorem on a finite algebra.
    Check {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Number of random automata.
        #[arg(long, default_value_t = 100)]
        automata: usize,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        /// Probability of forcing a random weight to zero.
        #[arg(long, default_value_t = 0.5)]
        zero_bias: f64,
        /// Word alphabet, comma separated.
        #[arg(long, default_value = "a,b")]
        alphabet: String,
        /// Ranked alphabet as `symbol:rank` pairs, comma separated.
        #[arg(long, default_value = "alpha:0,sigma:2")]
        tree_alphabet: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Convert between word automata and tree automata over a string ranked
    /// alphabet.
    Convert {
        /// Automaton file to read.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, default_value = "e")]
        end_marker: String,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Count the operations both semantics spend on one input.
    Profile {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

#[derive(Args)]
struct AutomatonArg {
    /// Automaton file.
    #[arg(long)]
    automaton: PathBuf,
    /// Accept inline tables that violate the axioms.
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AlgebraChoice {
    /// A bundled algebra, for example `B4` or `TruncFun(2)`.
    #[arg(long)]
    algebra: Option<String>,
    /// An operation table file.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArg {
    #[command(flatten)]
    choice: AlgebraChoice,
    /// Accept tables that violate the axioms.
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(Args)]
struct Bounds {
    /// Longest word.
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    /// Largest tree, in nodes.
    #[arg(long, default_value_t = 7)]
    max_size: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Run,
    Init,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    SupportsWords,
    SupportsTrees,
    ImageWords,
    ImageTrees,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    WordToTree,
    TreeToWord,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))
}

fn load_automaton(arg: &AutomatonArg) -> Result<AutomatonFile> {
    let text = read(&arg.automaton)?;
    parse_automaton(&text, arg.allow_invalid).map_err(|e| anyhow!("{}: {e}", arg.automaton.display()))
}

fn load_algebra(arg: &AlgebraArg) -> Result<AnyAlgebra> {
    match (&arg.choice.algebra, &arg.choice.table) {
        (Some(name), _) => Ok(builtin(name)?),
        (_, Some(path)) => {
            let t = parse_table(&read(path)?, arg.allow_invalid)
                .map_err(|e| anyhow!("{}: {e}", path.display()))?;
            Ok(AnyAlgebra::Table(t))
        }
        _ => bail!("give --algebra or --table"),
    }
}

enum Parsed {
    Word(Vec<String>),
    Tree(Tree),
}

fn parse_input(file: &AutomatonFile, text: &str) -> Result<Parsed> {
    Ok(match &file.automaton {
        Automaton::Word(a) => Parsed::Word(a.parse_word(text).with_context(|| format!("input `{text}`"))?),
        Automaton::Tree(a) => Parsed::Tree(Tree::parse(text, a.alphabet()).with_context(|| format!("input `{text}`"))?),
    })
}

fn evaluate(file: &AutomatonFile, input: &Parsed, sem: Semantics) -> Result<AnyElem> {
    let alg = &file.algebra;
    Ok(match (&file.automaton, input) {
        (Automaton::Word(a), Parsed::Word(w)) => match sem {
            Semantics::Run => a.run_semantics_with(alg, w, PRUNE)?,
            Semantics::Init => a.initial_semantics(alg, w)?,
        },
        (Automaton::Tree(a), Parsed::Tree(t)) => a.evaluate_with(alg, t, sem, PRUNE)?,
        _ => unreachable!("inputs are parsed against their automaton"),
    })
}

fn label(input: &Parsed) -> String {
    match input {
        Parsed::Word(w) if w.is_empty() => "ε".into(),
        Parsed::Word(w) => w.join(" "),
        Parsed::Tree(t) => t.to_string(),
    }
}

fn inputs(file: &AutomatonFile, bounds: &Bounds) -> Vec<Parsed> {
    match &file.automaton {
        Automaton::Word(a) => a.words_up_to(bounds.max_len).into_iter().map(Parsed::Word).collect(),
        Automaton::Tree(a) => a.trees_up_to(bounds.max_size).into_iter().map(Parsed::Tree).collect(),
    }
}

fn emit(format: OutputFormat, value: &Value, table: &str) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("json values print")),
        OutputFormat::Table => print!("{table}"),
    }
}

fn cmd_eval(file: AutomatonFile, text: &str, which: SemanticsArg, format: OutputFormat) -> Result<()> {
    let input = parse_input(&file, text)?;
    let alg = &file.algebra;
    let mut obj = serde_json::Map::new();
    obj.insert("input".into(), json!(label(&input)));
    let mut lines = Vec::new();
    for (arg, sem, key) in [(SemanticsArg::Run, Semantics::Run, "run"), (SemanticsArg::Init, Semantics::Init, "init")] {
        if which == arg || which == SemanticsArg::Both {
            let v = alg.describe(&evaluate(&file, &input, sem)?);
            lines.push(if which == SemanticsArg::Both { format!("{key:<5} {v}") } else { v.clone() });
            obj.insert(key.into(), json!(v));
        }
    }
    emit(format, &Value::Object(obj), &(lines.join("\n") + "\n"));
    Ok(())
}

fn cmd_support(file: AutomatonFile, bounds: &Bounds, format: OutputFormat) -> Result<()> {
    let alg = &file.algebra;
    let mut run_support = Vec::new();
    let mut init_support = Vec::new();
    let mut table = format!("{:<24} {:<12} {:<12}\n", "input", "run", "init");
    for input in inputs(&file, bounds) {
        let run = evaluate(&file, &input, Semantics::Run)?;
        let init = evaluate(&file, &input, Semantics::Init)?;
        let (r, i) = (!alg.is_zero(&run), !alg.is_zero(&init));
        if r || i {
            table += &format!("{:<24} {:<12} {:<12}\n", label(&input), alg.describe(&run), alg.describe(&init));
        }
        if r {
            run_support.push(label(&input));
        }
        if i {
            init_support.push(label(&input));
        }
    }
    let equal = run_support == init_support;
    table += &format!("supports equal: {}\n", if equal { "yes" } else { "no" });
    let value = json!({
        "run_support": run_support,
        "init_support": init_support,
        "equal": equal,
    });
    emit(format, &value, &table);
    Ok(())
}

fn cmd_image(file: AutomatonFile, bounds: &Bounds, format: OutputFormat) -> Result<()> {
    let alg = &file.algebra;
    let all = inputs(&file, bounds);
    let mut images = Vec::new();
    for sem in [Semantics::Run, Semantics::Init] {
        let values = all
            .iter()
            .map(|i| evaluate(&file, i, sem))
            .collect::<Result<Vec<_>>>()?;
        images.push(dedup(alg, values));
    }
    let names = |vs: &[AnyElem]| vs.iter().map(|v| alg.describe(v)).collect::<Vec<_>>();
    let (run, init) = (names(&images[0]), names(&images[1]));
    let equal = bimonoid_automata::weights::same_set(alg, &images[0], &images[1]);
    let table = format!(
        "run image   {{{}}}\ninit image  {{{}}}\nimages equal: {}\n",
        run.join(", "),
        init.join(", "),
        if equal { "yes" } else { "no" }
    );
    emit(format, &json!({ "run": run, "init": init, "equal": equal }), &table);
    Ok(())
}

fn cmd_props(alg: AnyAlgebra, format: OutputFormat) -> Result<()> {
    let report = classify(&alg)?.named(&alg);
    emit(format, &serde_json::to_value(&report)?, &report.to_string());
    Ok(())
}

fn parse_ranked(text: &str) -> Result<RankedAlphabet> {
    let symbols = text
        .split(',')
        .map(|part| {
            let (s, k) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| anyhow!("`{part}` is not of the form symbol:rank"))?;
            Ok((s.trim().to_string(), k.trim().parse::<usize>().with_context(|| format!("rank in `{part}`"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankedAlphabet::new(symbols)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    theorem: TheoremArg,
    alg: AnyAlgebra,
    seed: u64,
    automata: usize,
    max_states: usize,
    max_len: usize,
    max_size: usize,
    zero_bias: f64,
    alphabet: &str,
    tree_alphabet: &str,
    format: OutputFormat,
) -> Result<CheckReport> {
    let cfg = TheoremCheckConfig {
        word_alphabet: alphabet.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        tree_alphabet: parse_ranked(tree_alphabet)?,
        max_len,
        max_size,
        automata,
        max_states,
        zero_bias,
        seed,
        ..TheoremCheckConfig::for_algebra(&alg)?
    };
    let report = match theorem {
        TheoremArg::SupportsWords => check_support_theorem_words(&cfg)?,
        TheoremArg::SupportsTrees => check_support_theorem_trees(&cfg)?,
        TheoremArg::ImageWords => check_image_theorem(&cfg, ImageMode::Words)?,
        TheoremArg::ImageTrees => check_image_theorem(&cfg, ImageMode::Trees)?,
    };
    emit(format, &serde_json::to_value(&report)?, &report.to_string());
    Ok(report)
}

fn cmd_convert(path: &Path, direction: Direction, end: &str, output: Option<&Path>, allow_invalid: bool) -> Result<()> {
    let file = parse_automaton(&read(path)?, allow_invalid).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let alg = &file.algebra;
    let algebra = algebra_to_json(alg);
    let out = match (direction, &file.automaton) {
        (Direction::WordToTree, Automaton::Word(a)) => {
            format::tree_automaton_to_json(alg, algebra, &wsa_to_wta(alg, a, end)?)
        }
        (Direction::TreeToWord, Automaton::Tree(a)) => {
            let (word, _) = string_wta_to_wsa(a)?;
            format::word_automaton_to_json(alg, algebra, &word)
        }
        (Direction::WordToTree, _) => bail!("{}: expected a word automaton", path.display()),
        (Direction::TreeToWord, _) => bail!("{}: expected a tree automaton", path.display()),
    };
    let text = serde_json::to_string_pretty(&out)? + "\n";
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("{}: cannot write file", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_profile(file: AutomatonFile, text: &str, format: OutputFormat) -> Result<()> {
    let profile = match (&file.automaton, parse_input(&file, text)?) {
        (Automaton::Word(a), Parsed::Word(w)) => word_cost_profile(&file.algebra, a, &w)?,
        (Automaton::Tree(a), Parsed::Tree(t)) => tree_cost_profile(&file.algebra, a, &t)?,
        _ => unreachable!("inputs are parsed against their automaton"),
    };
    emit(format, &serde_json::to_value(&profile)?, &profile.to_string());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval { automaton, input, semantics, format } => cmd_eval(load_automaton(&automaton)?, &input, semantics, format)?,
        Command::Support { automaton, bounds, format } => cmd_support(load_automaton(&automaton)?, &bounds, format)?,
        Command::Image { automaton, bounds, format } => cmd_image(load_automaton(&automaton)?, &bounds, format)?,
        Command::Props { algebra, format } => cmd_props(load_algebra(&algebra)?, format)?,
        Command::Check {
            theorem,
            algebra,
            automata,
            max_states,
            max_len,
            max_size,
            zero_bias,
            alphabet,
            tree_alphabet,
            format,
        } => {
            let report = cmd_check(
                theorem,
                load_algebra(&algebra)?,
                cli.seed,
                automata,
                max_states,
                max_len,
                max_size,
                zero_bias,
                &alphabet,
                &tree_alphabet,
                format,
            )?;
            if report.is_unexpected() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Convert { input, direction, end_marker, output, allow_invalid } => {
            cmd_convert(&input, direction, &end_marker, output.as_deref(), allow_invalid)?
        }
        Command::Profile { automaton, input, format } => cmd_profile(load_automaton(&automaton)?, &input, format)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
