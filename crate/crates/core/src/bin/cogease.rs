use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cogease::alignment::AlignmentResources;
use cogease::explain::render_explanation;
use cogease::ingest::{self, IngestError, Lexicon, ParsedCorpus};
use cogease::levels::Evaluator;
use cogease::model::{Registry, WeightProfile};
use cogease::tuning::{fit_weights, Correlation, TuningConfig};

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;

#[derive(Parser)]
#[command(name = "cogease", version, about = "Cognitive-ease scoring for MT output")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a corpus and write an evaluation report.
    Score(ScoreArgs),
    /// Fit profile weights to human scores.
    Tune(TuneArgs),
    /// Print the per-level breakdown of one unit.
    Explain(ExplainArgs),
}

#[derive(Args)]
struct Resources {
    /// JSON Lines corpus.
    #[arg(long)]
    corpus: PathBuf,
    /// Weight profile JSON; the uniform profile when omitted.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Language statistics JSON.
    #[arg(long)]
    stats: PathBuf,
    /// Frequency lexicon, token<TAB>count per line.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Term list, one term per line.
    #[arg(long)]
    terms: Option<PathBuf>,
    /// Synonym sets, tab-separated members per line.
    #[arg(long)]
    synonyms: Option<PathBuf>,
    /// Exit with status 2 when any record is rejected.
    #[arg(long)]
    strict: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    inputs: Resources,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print only the corpus mean score.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct TuneArgs {
    #[command(flatten)]
    inputs: Resources,
    /// Where to write the fitted profile.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "max-iters", default_value_t = 200)]
    max_iters: usize,
    /// Initial coordinate step.
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Also fit gamma per level.
    #[arg(long)]
    optimize_gamma: bool,
    /// Parameter path to hold fixed, e.g. `w.word` or `alpha.chunk.head`.
    #[arg(long = "freeze")]
    frozen: Vec<String>,
}

#[derive(Args)]
struct ExplainArgs {
    #[command(flatten)]
    inputs: Resources,
    /// Unit id to explain.
    #[arg(long)]
    id: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        if e.is_validation() {
            Self::validation(e.to_string())
        } else {
            Self::io(e.to_string())
        }
    }
}

struct Loaded {
    corpus: ParsedCorpus,
    profile: WeightProfile,
    evaluator: Evaluator,
}

fn load(args: &Resources) -> Result<Loaded, Failure> {
    let profile = match &args.profile {
        Some(path) => ingest::load_profile(path)?,
        None => WeightProfile::uniform(),
    };
    let stats = ingest::load_stats(&args.stats)?;
    let lexicon: Lexicon = ingest::load_lexicon(args.lexicon.as_deref(), args.terms.as_deref(), &args.stats)?;
    let synonyms = match &args.synonyms {
        Some(path) => ingest::load_synonyms(path)?,
        None => Default::default(),
    };
    let corpus = ingest::load_corpus(&args.corpus)?;
    for d in &corpus.diagnostics {
        eprintln!("{}: {d}", args.corpus.display());
    }
    if args.strict && corpus.rejected > 0 {
        return Err(Failure::validation(format!(
            "{} record(s) rejected",
            corpus.rejected
        )));
    }
    let evaluator = Evaluator::new(lexicon).with_resources(AlignmentResources {
        stem_rules: stats.stem_rules(),
        synonyms,
    });
    Ok(Loaded { corpus, profile, evaluator })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(e.to_string())),
    }
}

fn score(args: ScoreArgs) -> Result<(), Failure> {
    let loaded = load(&args.inputs)?;
    let (report, diagnostics) =
        loaded
            .evaluator
            .evaluate(&loaded.corpus.pairs, &loaded.profile, args.inputs.jobs);
    for d in &diagnostics {
        eprintln!("{d}");
    }
    if args.inputs.strict && !diagnostics.is_empty() {
        return Err(Failure::validation(format!("{} unit(s) could not be scored", diagnostics.len())));
    }
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::io(e.to_string()))? + "\n";
    if args.out.is_some() || !args.summary {
        write_output(args.out.as_deref(), &json)?;
    }
    if args.summary {
        println!("{}", report.corpus_mean_g);
    }
    Ok(())
}

fn describe(c: Option<Correlation>) -> String {
    match c {
        Some(c) => format!("pearson {:.6}  spearman {:.6}", c.pearson, c.spearman),
        None => "pearson n/a  spearman n/a".into(),
    }
}

fn tune(args: TuneArgs) -> Result<(), Failure> {
    let loaded = load(&args.inputs)?;
    if let Some(p) = loaded.corpus.pairs.iter().find(|p| p.human_score.is_none()) {
        return Err(Failure::validation(format!("record {} has no human_score", p.id)));
    }
    let config = TuningConfig {
        max_iterations: args.max_iters.max(1),
        step: args.step,
        seed: args.seed,
        frozen: args.frozen.into_iter().collect::<BTreeSet<_>>(),
        optimize_gamma: args.optimize_gamma,
        ..TuningConfig::default()
    };
    let result = fit_weights(&loaded.corpus.pairs, &loaded.evaluator, &loaded.profile, &config)
        .map_err(|e| Failure::validation(e.to_string()))?;
    let json = serde_json::to_string_pretty(&result.profile).map_err(|e| Failure::io(e.to_string()))? + "\n";
    write_output(Some(&args.out), &json)?;
    println!("initial_loss {}", result.initial_loss);
    println!("final_loss {}", result.final_loss);
    println!("before: {}", describe(result.initial_correlation));
    println!("after:  {}", describe(result.correlation));
    println!("iterations {} accepted_moves {}", result.iterations, result.accepted_moves);
    Ok(())
}

fn explain(args: ExplainArgs) -> Result<(), Failure> {
    let loaded = load(&args.inputs)?;
    let pair = loaded
        .corpus
        .pairs
        .iter()
        .find(|p| p.id == args.id)
        .ok_or_else(|| Failure::validation(format!("no unit with id {:?}", args.id)))?;
    let report = loaded
        .evaluator
        .score_unit(pair, &loaded.profile)
        .map_err(|e| Failure::validation(e.to_string()))?;
    print!("{}", render_explanation(&report, &Registry::standard()));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_IO) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Score(args) => score(args),
        Command::Tune(args) => tune(args),
        Command::Explain(args) => explain(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
