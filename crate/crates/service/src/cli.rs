//! The `attrex` command line.

use std::fs;
use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use attrex::io::{implication_records, parse_cxt, parse_partial_context, write_implications};
use attrex::{
    audit_consistency, canonical_base, malformed_entries, oracle_partial, pseudo_intents,
    AttributeUniverse, FormalContext, Implication, Strategy, Universe,
};
use clap::{Parser, Subcommand};

use crate::config::{Mode, PriorExamples, SessionConfig};
use crate::error::ServiceError;
use crate::session::{Answer, Session, Status};
use crate::store::Store;

#[derive(Debug, Parser)]
#[command(name = "attrex", version, about = "Attribute exploration for formal concept analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Explore interactively on the terminal, or against a hidden context.
    Explore(ExploreArgs),
    /// Print the canonical base of a .cxt context as JSON.
    Base {
        context: PathBuf,
        /// Print the pseudo-intents and base size instead.
        #[arg(long)]
        report: bool,
    },
    /// Print the pseudo-intents of a .cxt context as JSON.
    Pseudointents { context: PathBuf },
    /// Replay a session log and check it for consistency.
    Verify { log: PathBuf },
    /// Serve the HTTP session API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Directory for session logs; sessions are kept in memory if absent.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct ExploreArgs {
    /// Answer questions from this hidden context instead of the terminal.
    #[arg(long)]
    pub oracle: Option<PathBuf>,
    /// Attribute names, comma separated. Taken from --oracle or a .cxt
    /// --examples file when omitted.
    #[arg(long, value_delimiter = ',')]
    pub universe: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "general")]
    pub mode: ModeArg,
    #[arg(long, default_value = "minimal")]
    pub strategy: Strategy,
    /// Implications JSON that holds in advance.
    #[arg(long)]
    pub background: Option<PathBuf>,
    /// Known examples: a .cxt context or a partial-context JSON file.
    #[arg(long)]
    pub examples: Option<PathBuf>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Write the session log here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the resulting implications here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "")]
    pub label: String,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum ModeArg {
    General,
    Classical,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = io::stdin();
    match run(cli, &mut stdin.lock(), &mut io::stdout(), &mut io::stderr()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Explore(args) => explore(args, input, out, err),
        Command::Base { context, report } => {
            let base = canonical_base(&read_cxt(&context)?);
            if report {
                writeln!(out, "{}", serde_json::to_string_pretty(&base.report())?)?;
            } else {
                writeln!(out, "{}", write_implications(&base.implications))?;
            }
            Ok(())
        }
        Command::Pseudointents { context } => {
            let ctx = read_cxt(&context)?;
            let sets: Vec<Vec<String>> = pseudo_intents(&ctx)
                .sets
                .iter()
                .map(|p| ctx.universe().names_of(p))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&sets)?)?;
            Ok(())
        }
        Command::Verify { log } => verify(&log, out),
        Command::Serve { addr, data_dir } => {
            let store = match data_dir {
                Some(dir) => Store::open(dir)?,
                None => Store::in_memory(),
            };
            serve(addr, Arc::new(store), err)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_cxt(path: &Path) -> Result<FormalContext> {
    parse_cxt(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn is_cxt(path: &Path) -> bool {
    path.extension().is_some_and(|x| x.eq_ignore_ascii_case("cxt"))
}

/// Picks the universe from whichever inputs name one and checks they agree.
fn resolve_universe(args: &ExploreArgs, oracle: Option<&FormalContext>, examples: Option<&FormalContext>) -> Result<Universe> {
    let mut found: Option<(String, Vec<String>)> = None;
    let sources = [
        ("--universe", args.universe.clone()),
        ("--oracle", oracle.map(|c| c.universe().names().to_vec())),
        ("--examples", examples.map(|c| c.universe().names().to_vec())),
    ];
    for (what, names) in sources {
        let Some(names) = names else { continue };
        match &found {
            Some((first, known)) if *known != names => {
                bail!("{what} has attributes {names:?}, but {first} has {known:?}")
            }
            Some(_) => {}
            None => found = Some((what.to_owned(), names)),
        }
    }
    let (_, names) = found.ok_or_else(|| anyhow!("no attributes given: use --universe, --oracle or a .cxt --examples file"))?;
    Ok(AttributeUniverse::new(names)?)
}

fn explore(args: ExploreArgs, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let oracle = args.oracle.as_deref().map(read_cxt).transpose()?;
    let example_cxt = match &args.examples {
        Some(p) if is_cxt(p) => Some(read_cxt(p)?),
        _ => None,
    };
    let universe = resolve_universe(&args, oracle.as_ref(), example_cxt.as_ref())?;

    let mut config = SessionConfig::new(&universe);
    config.mode = match args.mode {
        ModeArg::General => Mode::General,
        ModeArg::Classical => Mode::Classical,
    };
    config.strategy = args.strategy;
    config.label = args.label.clone();
    if let Some(path) = &args.background {
        config.background = serde_json::from_str(&read(path)?)
            .with_context(|| format!("parsing {}", path.display()))?;
    }
    config.prior_examples = match (&args.examples, example_cxt) {
        (_, Some(ctx)) => Some(PriorExamples::from_context(&ctx)),
        (Some(path), None) => {
            let pctx = parse_partial_context(&universe, &read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            Some(PriorExamples::from_partial(&pctx))
        }
        (None, None) => None,
    };

    let mut session = Session::create("cli", config)?;
    let cap = args
        .max_iterations
        .unwrap_or_else(|| attrex::exploration::default_iteration_cap(universe.len()));
    let oracle = oracle.map(oracle_partial);
    let mut outcome = Ok(());
    while let Some(question) = session.pending().cloned() {
        if session.seq() >= cap {
            outcome = Err(anyhow!("exploration aborted after {cap} interactions"));
            break;
        }
        let answer = match &oracle {
            Some(o) => Answer::from_reply(&universe, &o.reply(&question)),
            None => match ask(&universe, &question, input, err)? {
                Some(a) => a,
                None => {
                    outcome = Err(anyhow!("input ended before the exploration finished"));
                    break;
                }
            },
        };
        match session.answer(&answer) {
            Ok(_) => {}
            Err(ServiceError::Rejected(r)) if oracle.is_none() => {
                writeln!(err, "rejected: {r}")?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = &args.trace {
        fs::write(path, session.to_log()).with_context(|| format!("writing {}", path.display()))?;
    }
    outcome?;
    let text = write_implications(&session.base());
    match &args.output {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(out, "{text}")?,
    }
    let p = session.question_view().progress;
    writeln!(
        err,
        "finished: {} confirmed, {} counterexamples",
        p.confirmed, p.counterexamples
    )?;
    Ok(())
}

/// Reads one answer from the terminal: `y` confirms, a list like
/// `+a +b -c` is a counterexample. `None` at end of input.
fn ask(universe: &Universe, q: &Implication, input: &mut dyn BufRead, err: &mut dyn Write) -> Result<Option<Answer>> {
    loop {
        writeln!(err, "{} ?", q.display(universe))?;
        write!(err, "[y | +has -lacks ...] > ")?;
        err.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        match parse_reply(line.trim()) {
            Ok(a) => return Ok(Some(a)),
            Err(msg) => writeln!(err, "{msg}")?,
        }
    }
}

pub fn parse_reply(line: &str) -> Result<Answer, String> {
    if matches!(line, "y" | "yes") {
        return Ok(Answer::confirm());
    }
    let (mut positive, mut negative) = (Vec::new(), Vec::new());
    for token in line.split_whitespace() {
        if let Some(name) = token.strip_prefix('+') {
            positive.push(name.to_owned());
        } else if let Some(name) = token.strip_prefix('-') {
            negative.push(name.to_owned());
        } else {
            return Err(format!("expected `y` or attributes marked + or -, got `{token}`"));
        }
    }
    if positive.is_empty() && negative.is_empty() {
        return Err("empty answer".into());
    }
    Ok(Answer::counterexample(positive, negative))
}

fn verify(path: &Path, out: &mut dyn Write) -> Result<()> {
    let (session, repaired) = Session::from_log(&read(path)?).with_context(|| format!("replaying {}", path.display()))?;
    let log = session.log();
    let bad = malformed_entries(log, session.universe());
    if let Some((k, r)) = bad.first() {
        bail!("answer {} is malformed: {r}", k + 1);
    }
    if let Some(v) = audit_consistency(log).first() {
        bail!(
            "answer {} contradicts confirmed implication {}",
            v.counterexample + 1,
            log.entries()[v.confirmed].question.display(session.universe())
        );
    }
    let status = match session.status() {
        Status::Finished => "finished",
        Status::AwaitingAnswer => "awaiting an answer",
    };
    writeln!(
        out,
        "ok: session {} replays with {} answers, {} confirmed implications, {status}{}",
        session.id(),
        session.seq(),
        implication_records(session.confirmed()).len(),
        if repaired { " (log ends early)" } else { "" }
    )?;
    Ok(())
}

fn serve(addr: SocketAddr, store: Arc<Store>, err: &mut dyn Write) -> Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        writeln!(err, "listening on {}", listener.local_addr()?)?;
        axum::serve(listener, crate::api::router(store))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
