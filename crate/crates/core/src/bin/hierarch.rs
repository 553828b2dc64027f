//! Command-line front end. Exit codes: 0 for success or a positive verdict,
//! 3 for a negative verdict, 2 for errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use hierarch::corpus;
use hierarch::covering::{cover_report, CoverReport};
use hierarch::deciders::member;
use hierarch::lang::{compile_str, Alphabet, Dfa};
use hierarch::logic::{
    build_xi, eval_tl, parse_tl, tl_equiv, tl_to_fo2_sentence, tlx_to_tl_plus, Env, MarkedProduct, PointedWord, Side,
};
use hierarch::monoid::{syntactic_morphism, syntactic_of_regex, GreenKind, Morphism};
use hierarch::prevariety::Oracle;

#[derive(Parser, Debug)]
#[command(name = "hierarch", version, about = "Membership, separation and covering for unambiguous polynomial closure")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; the verdict is in the exit code.
    #[arg(long, global = true)]
    quiet: bool,
    /// Complete partial automata read from JSON with a sink state.
    #[arg(long, global = true)]
    complete: bool,
    /// Letters for languages given as regular expressions.
    #[arg(long, global = true, default_value = "ab")]
    alphabet: String,
    /// Run one invocation per line of this file, in parallel.
    #[arg(long)]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Syntactic ordered monoid with Green classes, idempotents and ω-powers.
    Syntactic {
        /// Fixture name (F1..F6, coF1..), DFA JSON file, or regular expression.
        lang: String,
    },
    /// Green classes of the syntactic monoid.
    Green {
        /// Fixture name (F1..F6, coF1..), DFA JSON file, or regular expression.
        lang: String,
    },
    /// Kernel of the syntactic morphism for a base class.
    Kernel {
        /// Base class: st, st+, at, at+, mod, amt or finite[+]:<monoid.json>.
        #[arg(long)]
        class: String,
        /// Restrict to images of nonempty words.
        #[arg(long)]
        strict: bool,
        /// Fixture name (F1..F6, coF1..), DFA JSON file, or regular expression.
        lang: String,
    },
    /// Pairs of the syntactic morphism for a base class.
    Pairs {
        /// Base class: st, st+, at, at+, mod, amt or finite[+]:<monoid.json>.
        #[arg(long)]
        class: String,
        /// Fixture name (F1..F6, coF1..), DFA JSON file, or regular expression.
        lang: String,
    },
    /// Membership in pol:C, upol:C, upol-bpol:C, fo2:G or fo2s:G.
    Member {
        /// For example upol:at, pol:st+, upol-bpol:mod, fo2:st or fo2s:amt.
        #[arg(long)]
        class: String,
        /// Fixture name (F1..F6, coF1..), DFA JSON file, or regular expression.
        lang: String,
    },
    /// Separation of two languages by upol:C.
    Separate {
        /// upol:C with C finite: st, st+, at, at+ or finite[+]:<monoid.json>.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        synth: SynthArgs,
        /// Language to contain.
        l1: String,
        /// Language to avoid.
        l2: String,
    },
    /// Covering of a language by upol:C with respect to others.
    Cover {
        /// upol:C with C finite: st, st+, at, at+ or finite[+]:<monoid.json>.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        synth: SynthArgs,
        /// Language to cover.
        l0: String,
        /// No block may meet all of these.
        ls: Vec<String>,
    },
    /// Temporal logic tools.
    Tl {
        #[command(subcommand)]
        command: TlCommand,
    },
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Also build an explicit cover and list its blocks meeting the first language.
    #[arg(long)]
    synthesize: bool,
}

#[derive(Subcommand, Debug)]
enum TlCommand {
    /// Evaluate a formula at a pointed word `w@i`.
    Eval {
        formula: String,
        word: String,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Translate a formula into an equivalent FO² sentence.
    Compile {
        formula: String,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Rank-k equivalence of two pointed words.
    Equiv {
        k: usize,
        left: String,
        right: String,
        /// `st`, `at`, `regex:<r>` or a monoid JSON file.
        #[arg(long, default_value = "st")]
        eta: String,
    },
    /// Formula recognizing that the prefix or suffix lies in `K0 a1 K1 ... an Kn`.
    Xi {
        product: String,
        #[arg(long, value_enum, default_value_t = SideArg::Suffix)]
        side: SideArg,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Translate an FO² sentence into temporal logic.
    #[cfg(feature = "fo2-to-tl")]
    FromFo2 {
        sentence: String,
        #[arg(long)]
        env: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Prefix,
    Suffix,
}

/// Result of one invocation.
struct Output {
    text: String,
    json: Value,
    verdict: Option<bool>,
}

impl Output {
    fn info(text: String, json: Value) -> Self {
        Output { text, json, verdict: None }
    }

    fn verdict(v: bool, text: String, json: Value) -> Self {
        Output { text, json, verdict: Some(v) }
    }

    fn code(&self) -> u8 {
        if self.verdict == Some(false) {
            3
        } else {
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.batch {
        return run_batch(path);
    }
    let (printed, code) = render(&cli, execute(&cli));
    if !printed.is_empty() {
        if code == 2 {
            eprintln!("{printed}");
        } else {
            println!("{printed}");
        }
    }
    ExitCode::from(code)
}

fn render(cli: &Cli, result: Result<Output>) -> (String, u8) {
    match result {
        Ok(out) => {
            let text = if cli.quiet {
                String::new()
            } else if cli.json {
                out.json.to_string()
            } else {
                out.text.clone()
            };
            (text, out.code())
        }
        Err(e) => (format!("error: {e:#}"), 2),
    }
}

fn run_batch(path: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: reading {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let results: Vec<(String, u8)> = lines
        .par_iter()
        .map(|line| {
            let args = match shell_words::split(line) {
                Ok(a) => a,
                Err(e) => return (format!("error: {e}"), 2),
            };
            match Cli::try_parse_from(std::iter::once("hierarch".to_string()).chain(args)) {
                Ok(cli) if cli.batch.is_some() => ("error: nested --batch".into(), 2),
                Ok(cli) => render(&cli, execute(&cli)),
                Err(e) => (format!("error: {}", e.to_string().trim()), 2),
            }
        })
        .collect();
    let mut worst = 0;
    for (out, code) in results {
        println!("{out}");
        if code == 2 {
            worst = 2;
        }
    }
    ExitCode::from(worst)
}

fn execute(cli: &Cli) -> Result<Output> {
    let command = cli.command.as_ref().ok_or_else(|| anyhow!("no subcommand given"))?;
    match command {
        Command::Syntactic { lang } => syntactic(&syntactic_morphism(&load_lang(cli, lang)?)),
        Command::Green { lang } => Ok(green(&syntactic_morphism(&load_lang(cli, lang)?))),
        Command::Kernel { class, strict, lang } => {
            let oracle = Oracle::parse(class)?;
            let alpha = syntactic_morphism(&load_lang(cli, lang)?);
            let elems = if *strict { oracle.strict_kernel(&alpha)? } else { oracle.kernel(&alpha)? };
            let labels: Vec<String> = elems.iter().map(|&s| alpha.label(s)).collect();
            Ok(Output::info(shown(&labels).join(" "), json!({ "kernel": labels })))
        }
        Command::Pairs { class, lang } => {
            let oracle = Oracle::parse(class)?;
            let alpha = syntactic_morphism(&load_lang(cli, lang)?);
            let pairs: Vec<[String; 2]> =
                oracle.pairs(&alpha)?.pairs().map(|(s, t)| [alpha.label(s), alpha.label(t)]).collect();
            let text = pairs.iter().map(|[s, t]| format!("({}, {})", show(s), show(t))).collect::<Vec<_>>().join("\n");
            Ok(Output::info(text, json!({ "pairs": pairs })))
        }
        Command::Member { class, lang } => {
            let v = member(&load_lang(cli, lang)?, class)?;
            let mut text = v.member.to_string();
            if let Some(c) = &v.certificate {
                text.push_str(&format!("\nviolates {} at {}", c.equation, shown(&c.witnesses).join(", ")));
            }
            Ok(Output::verdict(v.member, text, serde_json::from_str(&v.to_json())?))
        }
        Command::Separate { class, synth, l1, l2 } => {
            let oracle = upol_oracle(class)?;
            let report = cover_report(&load_lang(cli, l1)?, &[load_lang(cli, l2)?], &oracle)?;
            cover_output(report, synth.synthesize)
        }
        Command::Cover { class, synth, l0, ls } => {
            let oracle = upol_oracle(class)?;
            let ls = ls.iter().map(|l| load_lang(cli, l)).collect::<Result<Vec<_>>>()?;
            let report = cover_report(&load_lang(cli, l0)?, &ls, &oracle)?;
            cover_output(report, synth.synthesize)
        }
        Command::Tl { command } => tl(cli, command),
    }
}

/// Accepts `upol:<oracle>` only: covering is implemented for UPol.
fn upol_oracle(class: &str) -> Result<Oracle> {
    let base = class.strip_prefix("upol:").ok_or_else(|| anyhow!("covering supports upol:<class>, not {class:?}"))?;
    Ok(Oracle::parse(base)?)
}

fn cover_output(report: CoverReport, synthesize: bool) -> Result<Output> {
    let r = &report.result;
    let mut json = serde_json::to_value(r)?;
    let mut text = format!("coverable: {}\nopt_size: {}", r.coverable, r.opt_size);
    if let Some(w) = &r.witness_f_element {
        let parts: Vec<String> = w.iter().map(|p| format!("{{{}}}", shown(p).join(", "))).collect();
        text.push_str(&format!("\nwitness: {}", parts.join(" x ")));
    }
    if synthesize {
        let blocks = synthesized_blocks(&report)?;
        text.push_str(&format!("\ncover blocks ({}):", blocks.len()));
        for b in &blocks {
            text.push_str(&format!("\n  {b}"));
        }
        json["blocks"] = json!(blocks);
    }
    Ok(Output::verdict(r.coverable, text, json))
}

#[cfg(feature = "synthesis")]
fn synthesized_blocks(report: &CoverReport) -> Result<Vec<String>> {
    use hierarch::lang::{combine, BoolOp};
    let l0 = &report.instance.recognizers[0];
    let l0 = l0.preimage_dfa(&(0..l0.size()).filter(|&s| l0.accepting().is_some_and(|acc| acc[s])).collect::<Vec<_>>());
    let blocks = hierarch::covering::synthesize_full_cover(&report.saturated)?;
    let mut out = Vec::new();
    for b in blocks {
        if !combine(&b.dfa, &l0, BoolOp::Intersection)?.is_empty() {
            out.push(b.description.clone());
        }
    }
    Ok(out)
}

#[cfg(not(feature = "synthesis"))]
fn synthesized_blocks(_: &CoverReport) -> Result<Vec<String>> {
    bail!("built without the synthesis feature")
}

fn tl(cli: &Cli, command: &TlCommand) -> Result<Output> {
    match command {
        TlCommand::Eval { formula, word, env } => {
            let env = load_env(cli, env.as_deref())?;
            let phi = parse_tl(formula, &env)?;
            let pw = PointedWord::parse(word, env.alphabet())?;
            let v = eval_tl(&phi, &pw, &env)?;
            Ok(Output::verdict(v, v.to_string(), json!({ "holds": v })))
        }
        TlCommand::Compile { formula, env } => {
            let mut env = load_env(cli, env.as_deref())?;
            let phi = parse_tl(formula, &env)?;
            let phi = if phi.is_tl() { phi } else { tlx_to_tl_plus(&phi, &mut env) };
            let fo = tl_to_fo2_sentence(&phi)?;
            Ok(Output::info(fo.to_string(), json!({ "fo2": fo.to_string(), "tl": phi.to_string() })))
        }
        TlCommand::Equiv { k, left, right, eta } => {
            let alphabet = Alphabet::from_str_letters(&cli.alphabet)?;
            let eta = load_eta(eta, &alphabet)?;
            let a = PointedWord::parse(left, eta.alphabet())?;
            let b = PointedWord::parse(right, eta.alphabet())?;
            let v = tl_equiv(*k, &eta, &a, &b);
            Ok(Output::verdict(v, v.to_string(), json!({ "equivalent": v })))
        }
        TlCommand::Xi { product, side, env } => {
            let env = load_env(cli, env.as_deref())?;
            let k = MarkedProduct::parse(product, &env)?;
            let side = match side {
                SideArg::Prefix => Side::Prefix,
                SideArg::Suffix => Side::Suffix,
            };
            let phi = build_xi(&k, side);
            Ok(Output::info(phi.to_string(), json!({ "tl": phi.to_string() })))
        }
        #[cfg(feature = "fo2-to-tl")]
        TlCommand::FromFo2 { sentence, env } => {
            let mut env = load_env(cli, env.as_deref())?;
            let fo = hierarch::logic::parse_fo2(sentence, &env)?;
            let phi = hierarch::logic::fo2_to_tl(&fo, &mut env)?;
            let generated: serde_json::Map<String, Value> = phi
                .languages()
                .into_iter()
                .filter_map(|l| {
                    env.get(&l).ok().map(|d| (l, serde_json::to_value(d.to_json_value()).expect("serializable")))
                })
                .collect();
            Ok(Output::info(phi.to_string(), json!({ "tl": phi.to_string(), "languages": generated })))
        }
    }
}

/// A fixture name (`F1`..`F6`, `coF1`..), a JSON automaton file, or a
/// regular expression over `--alphabet`.
fn load_lang(cli: &Cli, spec: &str) -> Result<Dfa> {
    if let Some(d) = corpus::fixture(spec) {
        return Ok(d);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Dfa::from_json(&text, cli.complete).with_context(|| format!("parsing {spec}"));
    }
    let alphabet = Alphabet::from_str_letters(&cli.alphabet)?;
    compile_str(spec, &alphabet)
        .with_context(|| format!("{spec:?} is neither a fixture, a file, nor a regular expression"))
}

/// The `--env` file, or `{All, Bst, Ap}` when absent.
fn load_env(cli: &Cli, path: Option<&Path>) -> Result<Env> {
    match path {
        None => {
            if cli.alphabet != "ab" {
                bail!("the default environment is over {{a, b}}; pass --env for other alphabets");
            }
            Ok(corpus::logic_env())
        }
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Env::from_json(&text, &Alphabet::from_str_letters(&cli.alphabet)?)?)
        }
    }
}

fn load_eta(spec: &str, alphabet: &Alphabet) -> Result<Morphism> {
    if let Some(r) = spec.strip_prefix("regex:") {
        return Ok(syntactic_of_regex(r, alphabet)?);
    }
    match spec {
        "st" | "at" => Ok(Oracle::parse(spec)?.canonical_morphism(alphabet)?),
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(Morphism::from_json(&text)?)
        }
    }
}

fn show(label: &str) -> &str {
    if label.is_empty() {
        "1"
    } else {
        label
    }
}

fn shown(labels: &[String]) -> Vec<&str> {
    labels.iter().map(|l| show(l)).collect()
}

fn syntactic(alpha: &Morphism) -> Result<Output> {
    let m = alpha.monoid();
    let labels: Vec<String> = m.elements().map(|s| alpha.label(s)).collect();
    let idempotents: Vec<&String> = m.idempotents().into_iter().map(|s| &labels[s]).collect();
    let omega: Vec<[&String; 2]> = m.elements().map(|s| [&labels[s], &labels[m.omega(s)]]).collect();
    let accepting: Vec<&String> =
        m.elements().filter(|&s| alpha.accepting().is_some_and(|a| a[s])).map(|s| &labels[s]).collect();
    let mut text = format!("size: {}\nelements: {}\n", m.size(), shown(&labels).join(" "));
    text.push_str(&format!("accepting: {}\n", accepting.iter().map(|l| show(l)).collect::<Vec<_>>().join(" ")));
    text.push_str("table:\n");
    for s in m.elements() {
        let row: Vec<&str> = m.elements().map(|t| show(&labels[m.mul(s, t)])).collect();
        text.push_str(&format!("  {} | {}\n", show(&labels[s]), row.join(" ")));
    }
    if let Some(order) = m.order() {
        let strict: Vec<String> = m
            .elements()
            .flat_map(|s| m.elements().map(move |t| (s, t)))
            .filter(|&(s, t)| s != t && order[s][t])
            .map(|(s, t)| format!("{} <= {}", show(&labels[s]), show(&labels[t])))
            .collect();
        text.push_str(&format!(
            "order: {}\n",
            if strict.is_empty() { "equality".to_string() } else { strict.join(", ") }
        ));
    }
    let g = green(alpha);
    text.push_str(&g.text);
    text.push_str(&format!("\nidempotents: {}", idempotents.iter().map(|l| show(l)).collect::<Vec<_>>().join(" ")));
    text.push_str(&format!(
        "\nomega: {}",
        omega.iter().map(|[s, w]| format!("{}^w = {}", show(s), show(w))).collect::<Vec<_>>().join(", ")
    ));
    let mut json = serde_json::to_value(alpha.to_json_value())?;
    json["accepting"] = json!(accepting);
    json["green"] = g.json;
    json["idempotents"] = json!(idempotents);
    json["omega"] = json!(omega);
    Ok(Output::info(text, json))
}

fn green(alpha: &Morphism) -> Output {
    let g = alpha.monoid().green();
    let mut text = Vec::new();
    let mut json = serde_json::Map::new();
    for (kind, name) in [(GreenKind::J, "J"), (GreenKind::R, "R"), (GreenKind::L, "L"), (GreenKind::H, "H")] {
        let classes: Vec<Vec<String>> =
            g.classes(kind).iter().map(|c| c.iter().map(|&s| alpha.label(s)).collect()).collect();
        let shown_classes: Vec<String> = classes.iter().map(|c| format!("{{{}}}", shown(c).join(", "))).collect();
        text.push(format!("{name}-classes ({}): {}", classes.len(), shown_classes.join(" ")));
        json.insert(name.to_string(), json!(classes));
    }
    Output::info(text.join("\n"), Value::Object(json))
}
