use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use monoid_tc::variants::with_zero_letter;
use monoid_tc::{
    parse_presentation, run_rees, Alphabet, CongruenceKind, EnumerationResult, Limits,
    ParsedPresentation, Session, Stats, StephenGraph, StephenStatus, Strategy, Word, WordGraph,
    WordOrder,
};

/// Congruence enumeration for finitely presented monoids.
#[derive(Parser, Debug)]
#[command(name = "monoid-tc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the congruence described by a presentation file.
    Run(RunArgs),
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Presentation file.
    input: PathBuf,

    /// hlt, felsch, felsch-mod, or alt:<h>,<f>.
    #[arg(long, default_value = "hlt")]
    strategy: Strategy,

    /// Overrides the kind given in the file: right, left, or twosided.
    #[arg(long)]
    kind: Option<CongruenceKind>,

    #[arg(long)]
    max_nodes: Option<usize>,

    #[arg(long)]
    max_steps: Option<u64>,

    #[arg(long, value_enum, default_value_t = Output::Classes)]
    output: Output,

    /// Order used to number the classes.
    #[arg(long, value_enum, default_value_t = Order::Shortlex)]
    order: Order,

    /// Run Stephen's procedure on this word instead of enumerating.
    #[arg(long, conflicts_with = "rees")]
    stephen: Option<String>,

    /// With --stephen: report whether this word equals the Stephen word.
    #[arg(long, requires = "stephen")]
    accept: Vec<String>,

    /// Comma-separated generators of an ideal; enumerates its Rees congruence.
    #[arg(long, value_delimiter = ',')]
    rees: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Classes,
    NormalForms,
    Dot,
    Stats,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Shortlex,
    Lex,
}

impl Order {
    fn word_order(self) -> WordOrder {
        match self {
            Order::Shortlex => WordOrder::shortlex(),
            Order::Lex => WordOrder::lex(),
        }
    }
}

/// Exit status for a run that stopped at a limit.
const LIMIT: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Command::Run(args) = cli.command;
    let mut out = std::io::stdout().lock();
    match execute(&args, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn execute(args: &RunArgs, out: &mut impl Write) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let parsed = parse_presentation(&text)
        .with_context(|| format!("cannot parse {}", args.input.display()))?;
    let mut limits = Limits::default();
    if let Some(n) = args.max_nodes {
        limits.max_nodes = n;
    }
    if let Some(n) = args.max_steps {
        limits.max_steps = n;
    }
    if let Some(w) = &args.stephen {
        return stephen(args, &parsed, w, limits, out);
    }
    let kind = args.kind.unwrap_or(parsed.kind);
    let (result, alphabet, mode) = match &args.rees {
        Some(words) => {
            if kind == CongruenceKind::Left {
                bail!("Rees congruences are enumerated as right or twosided");
            }
            let p = with_zero_letter(&parsed.presentation)?;
            let mut alphabet = parsed.alphabet.clone();
            if !parsed.presentation.has_zero() {
                let name = ['0', 'z', 'Z', '#']
                    .into_iter()
                    .find(|&c| alphabet.index(c).is_none())
                    .context("no free name for the zero letter")?;
                alphabet.push(name);
            }
            let ideal = words
                .iter()
                .map(|w| alphabet.parse_word(w.trim()))
                .collect::<Result<Vec<Word>, _>>()?;
            let r = run_rees(&p, &ideal, kind, args.strategy, limits)?;
            (r, alphabet, "rees")
        }
        None => {
            let mut sess = Session::new(&parsed.presentation, &parsed.pairs, kind)?;
            sess.set_limits(limits);
            (sess.run(args.strategy)?, parsed.alphabet.clone(), "run")
        }
    };
    report(args, mode, kind, &result, &alphabet, out)
}

fn stats_lines(out: &mut impl Write, stats: &Stats) -> std::io::Result<()> {
    writeln!(out, "tc1={}", stats.tc1)?;
    writeln!(out, "tc2={}", stats.tc2)?;
    writeln!(out, "tc3={}", stats.tc3)?;
    writeln!(out, "steps={}", stats.steps)?;
    writeln!(out, "nodes_defined={}", stats.nodes_defined)?;
    writeln!(out, "active_nodes={}", stats.active)?;
    writeln!(out, "peak_nodes={}", stats.peak)
}

fn report(
    args: &RunArgs,
    mode: &str,
    kind: CongruenceKind,
    r: &EnumerationResult,
    alphabet: &Alphabet,
    out: &mut impl Write,
) -> anyhow::Result<u8> {
    let show_stats = matches!(args.output, Output::Stats | Output::All);
    if !r.is_complete() {
        // an unfinished graph has no classes to report
        writeln!(out, "mode={mode}")?;
        writeln!(out, "strategy={}", args.strategy)?;
        writeln!(out, "kind={kind}")?;
        writeln!(out, "status={}", r.status().as_str())?;
        stats_lines(out, &r.stats())?;
        out.flush()?;
        eprintln!(
            "stopped at {} with {} active nodes",
            r.status().as_str().replace('_', " "),
            r.graph().num_active()
        );
        return Ok(LIMIT);
    }

    // number classes by the requested order
    let (graph, map) = r.graph().standardized(&args.order.word_order())?;
    let n = graph.num_active();
    let mut forms = vec![String::new(); n];
    for (old, w) in r.normal_forms()?.iter().enumerate() {
        if let Some(new) = map[old] {
            forms[new] = alphabet.format_word(w);
        }
    }
    let zero = r.zero_class().and_then(|z| map[z]);

    if show_stats {
        writeln!(out, "mode={mode}")?;
        writeln!(out, "strategy={}", args.strategy)?;
        writeln!(out, "kind={kind}")?;
        writeln!(out, "status=complete")?;
        writeln!(out, "classes={n}")?;
        if let Some(z) = zero {
            writeln!(out, "zero_class={z}")?;
        }
        stats_lines(out, &r.stats())?;
    }
    if matches!(args.output, Output::Classes | Output::All) {
        writeln!(out, "{n} classes")?;
        for (c, f) in forms.iter().enumerate() {
            let mark = if Some(c) == zero { " (zero)" } else { "" };
            writeln!(out, "{c}\t{f}{mark}")?;
        }
    }
    if args.output == Output::NormalForms {
        for f in &forms {
            writeln!(out, "{f}")?;
        }
    }
    if matches!(args.output, Output::Dot | Output::All) {
        write!(out, "{}", graph.to_dot(Some(alphabet), Some(&forms)))?;
    }
    Ok(0)
}

fn stephen(
    args: &RunArgs,
    parsed: &ParsedPresentation,
    word: &str,
    limits: Limits,
    out: &mut impl Write,
) -> anyhow::Result<u8> {
    let p = parsed.presentation.expand_zero();
    let w = parsed.alphabet.parse_word(word)?;
    let mut s = StephenGraph::build(&p, &w)?;
    let status = s.run(limits);
    let status_name = match status {
        StephenStatus::Closed => "closed",
        StephenStatus::Open => "open",
        StephenStatus::NodeLimit => "node_limit",
        StephenStatus::StepLimit => "step_limit",
    };
    let show_stats = matches!(args.output, Output::Stats | Output::All);
    if show_stats || status != StephenStatus::Closed {
        writeln!(out, "mode=stephen")?;
        writeln!(out, "word={}", parsed.alphabet.format_word(&w))?;
        writeln!(out, "status={status_name}")?;
        stats_lines(out, &s.stats())?;
    }
    if status != StephenStatus::Closed {
        out.flush()?;
        eprintln!(
            "stopped at {} with {} active nodes",
            status_name.replace('_', " "),
            s.graph().num_active()
        );
        return Ok(LIMIT);
    }
    let accept = s.accept_node();
    let (graph, map) = s.graph().standardized(&args.order.word_order())?;
    let accept = map[accept].expect("accept node is reachable");
    if args.output != Output::Stats {
        writeln!(out, "{} nodes, accept node {accept}", graph.num_active())?;
    }
    for u in &args.accept {
        let u = parsed.alphabet.parse_word(u)?;
        let verdict = if s.accepts(&u)? { "yes" } else { "no" };
        writeln!(out, "{}\t{verdict}", parsed.alphabet.format_word(&u))?;
    }
    if matches!(args.output, Output::Dot | Output::All) {
        write!(out, "{}", stephen_dot(&graph, &parsed.alphabet, accept))?;
    }
    Ok(0)
}

fn stephen_dot(g: &WordGraph, alphabet: &Alphabet, accept: usize) -> String {
    let labels: Vec<String> = (0..g.id_bound())
        .map(|n| {
            if n == accept {
                "accept".to_string()
            } else {
                String::new()
            }
        })
        .collect();
    g.to_dot(Some(alphabet), Some(&labels))
}
