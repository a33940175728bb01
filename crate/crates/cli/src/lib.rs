//! `healthmine` command-line driver: one subcommand per pipeline stage,
//! files in between.

mod config;
mod manifest;

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use healthmine_core::data_io::{
    load_ade_corpus, load_ade_predictions, load_concept_set, load_pairs, load_sentiment_corpus,
    load_sentiment_predictions, load_spans, load_tweets, write_pairs, write_predictions, write_sentiment_corpus,
    SpanRow, PAIRS_HEADER,
};
use healthmine_core::linker::{anchor_and_link, build_index, load_lexicon, EmbeddingIndex, NormalizeReport};
use healthmine_core::metrics::{evaluate_extraction, evaluate_sentiment, extraction_table, Scope};
use healthmine_core::model::{
    distribution_baseline, extract_ade_spans, majority_class_baseline, predict, render_training_log,
    train_classifier, BackendRegistry, ClassifierHandle, GazetteerGenerator, LookupGenerator, SpanGenerator,
    TableEncoder, TextEncoder, TrainingConfig,
};
use healthmine_core::pairing::{build_pairs, HypothesisTemplate, SentencePair, DEFAULT_TEMPLATE};
use healthmine_core::preprocess::{preprocess_tweet, EmoticonMap};
use healthmine_core::sampling::{class_counts, split, undersample_with, ClassRatio, SplitConfig, UndersampleMode};
use healthmine_core::SentimentLabel;

use crate::config::UsageError;
use crate::manifest::Manifest;

#[derive(Debug, Parser)]
#[command(name = "healthmine", version, about = "Therapy sentiment and adverse drug event pipelines for health tweets")]
struct Cli {
    /// Flat `key = value` file of flag values; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Fallback directory for relative checkpoint and vector-table paths.
    #[arg(long, global = true, env = "HEALTHMINE_CACHE_DIR", value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize tweet text: emoticons, mentions, links.
    Preprocess(PreprocessArgs),
    /// Turn a labeled corpus into premise/hypothesis pairs.
    Pair(PairArgs),
    /// Undersample a labeled corpus to a class ratio.
    Resample(ResampleArgs),
    /// Seeded train/dev split.
    Split(SplitArgs),
    /// Train a sentiment pair classifier.
    TrainSentiment(TrainArgs),
    /// Label pairs with a trained classifier.
    PredictSentiment(PredictArgs),
    /// Score sentiment predictions.
    EvalSentiment(EvalSentimentArgs),
    /// Label-only baseline predictions.
    Baseline(BaselineArgs),
    /// Generate candidate ADE spans per tweet.
    ExtractAde(ExtractArgs),
    /// Embed a concept lexicon into an index directory.
    BuildIndex(BuildIndexArgs),
    /// Anchor spans in their tweets and link them to lexicon concepts.
    Link(LinkArgs),
    /// Score ADE extraction and normalization.
    EvalAde(EvalAdeArgs),
}

#[derive(Debug, Args)]
struct PreprocessArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// `surface\tphrase` TSV replacing the built-in emoticon map.
    #[arg(long, value_name = "FILE")]
    emoticons: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, default_value = DEFAULT_TEMPLATE)]
    hypothesis_template: String,
    #[arg(long, value_name = "FILE")]
    emoticons: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Downsample {
    Neutral,
}

#[derive(Debug, Args)]
struct ResampleArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// positive:negative:neutral
    #[arg(long, default_value = "1:1:2")]
    ratio: ClassRatio,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shrink only this class instead of cutting every class to the ratio.
    #[arg(long)]
    only_downsample: Option<Downsample>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    train_out: PathBuf,
    #[arg(long, value_name = "FILE")]
    dev_out: PathBuf,
    #[arg(long, default_value_t = 0.8)]
    train_fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Apply the fraction within each class.
    #[arg(long)]
    stratified: bool,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Labeled pairs file.
    #[arg(long, value_name = "FILE")]
    train: PathBuf,
    /// Labeled pairs scored after every epoch.
    #[arg(long, value_name = "FILE")]
    dev: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    model_dir: PathBuf,
    #[arg(long, default_value = "hashed-linear")]
    backend: String,
    /// Backend-specific initialization, e.g. `bits:18` for hashed-linear.
    #[arg(long, default_value = "")]
    checkpoint: String,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    #[arg(long, default_value_t = 5e-6)]
    learning_rate: f64,
    #[arg(long, default_value_t = 0.9)]
    weight_decay: f64,
    #[arg(long, default_value_t = 16)]
    batch_size: usize,
    #[arg(long, default_value_t = 128)]
    max_seq_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long, value_name = "DIR")]
    model_dir: PathBuf,
    /// Pairs file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EvalSentimentArgs {
    /// Labeled corpus or labeled pairs file.
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// `tweet_id\tlabel` rows.
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
    /// Also write `key=value` lines here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BaselineKind {
    Majority,
    Distribution,
}

#[derive(Debug, Args)]
struct BaselineArgs {
    #[arg(long, value_enum)]
    kind: BaselineKind,
    /// Labeled corpus or pairs file the label distribution comes from.
    #[arg(long, value_name = "FILE")]
    train: PathBuf,
    /// Corpus or pairs file to label.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorKind {
    Gazetteer,
    Lookup,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["checkpoint", "train"])))]
struct ExtractArgs {
    /// Sentiment or ADE corpus.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "gazetteer")]
    backend: GeneratorKind,
    /// Saved generator: a phrase list for gazetteer, `text\toutput` rows for lookup.
    #[arg(long, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    /// ADE corpus to fit a gazetteer on.
    #[arg(long, value_name = "FILE")]
    train: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    emoticons: Option<PathBuf>,
    /// Feed the generator raw tweet text instead of normalized text.
    #[arg(long)]
    raw: bool,
}

#[derive(Debug, Args)]
struct BuildIndexArgs {
    /// `concept_id\tterm` TSV.
    #[arg(long, value_name = "FILE")]
    lexicon: PathBuf,
    /// `char-ngram` or `table:<path>`.
    #[arg(long, default_value = "char-ngram")]
    encoder: String,
    #[arg(long, value_name = "DIR")]
    index_dir: PathBuf,
}

#[derive(Debug, Args)]
struct LinkArgs {
    #[arg(long, value_name = "FILE")]
    tweets: PathBuf,
    /// `tweet_id\tspan` rows from extract-ade.
    #[arg(long, value_name = "FILE")]
    spans: PathBuf,
    #[arg(long, value_name = "DIR")]
    index_dir: PathBuf,
    /// Links need a cosine strictly above this.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Overall,
    Unseen,
    Both,
}

#[derive(Debug, Args)]
struct EvalAdeArgs {
    /// ADE corpus.
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// `tweet_id\tstart\tend\tspan\tconcept_id` rows.
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
    /// Concept id list, or the ADE training corpus.
    #[arg(long, value_name = "FILE")]
    train_concepts: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    scope: ScopeArg,
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

/// What a finished command read and where its manifest goes.
struct Done {
    inputs: Vec<PathBuf>,
    manifest_beside: Option<PathBuf>,
}

impl Done {
    fn new(inputs: impl IntoIterator<Item = PathBuf>, output: &Path) -> Self {
        Done { inputs: inputs.into_iter().collect(), manifest_beside: Some(output.to_path_buf()) }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code: 0 on success, 1 on runtime errors, 2 on usage errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cmd = Cli::command();
    let argv = match config::merge(argv, &cmd) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 };
        }
    };
    let matches = match cmd.try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (name, sub_matches) = matches.subcommand().expect("subcommand is required");
    // building propagates the global flags into each subcommand
    let mut built = Cli::command();
    built.build();

    match dispatch(&cli).and_then(|done| {
        if let Some(out) = done.manifest_beside {
            let m = Manifest {
                command: name,
                settings: manifest::resolved_settings(
                    built.find_subcommand(name).expect("parsed subcommand exists"),
                    sub_matches,
                ),
                inputs: done.inputs,
            };
            m.write(&manifest::path_for(&out))?;
        }
        Ok(())
    }) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Done> {
    let cache = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Preprocess(a) => preprocess(a),
        Command::Pair(a) => pair(a),
        Command::Resample(a) => resample(a),
        Command::Split(a) => split_cmd(a),
        Command::TrainSentiment(a) => train(a),
        Command::PredictSentiment(a) => predict_cmd(a),
        Command::EvalSentiment(a) => eval_sentiment(a),
        Command::Baseline(a) => baseline(a),
        Command::ExtractAde(a) => extract(a, cache),
        Command::BuildIndex(a) => build_index_cmd(a, cache),
        Command::Link(a) => link_cmd(a, cache),
        Command::EvalAde(a) => eval_ade(a),
    }
}

fn emoticon_map(path: Option<&Path>) -> Result<EmoticonMap> {
    Ok(match path {
        Some(p) => EmoticonMap::load(p)?,
        None => EmoticonMap::default(),
    })
}

/// `path` as given if it exists, else under the cache directory if it is
/// relative and present there.
fn resolve(path: &Path, cache: Option<&Path>) -> PathBuf {
    match cache {
        Some(dir) if path.is_relative() && !path.exists() && dir.join(path).exists() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn first_line(path: &Path) -> Result<String> {
    let src = fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    Ok(src.split('\n').next().unwrap_or_default().to_string())
}

/// Pairs from either a pairs file or a sentiment corpus (premise = text,
/// hypothesis = therapy). Only ids and labels matter to the callers.
fn load_items(path: &Path) -> Result<Vec<SentencePair>> {
    if first_line(path)? == PAIRS_HEADER {
        return Ok(load_pairs(path)?);
    }
    Ok(load_sentiment_corpus(path)?
        .into_iter()
        .map(|r| SentencePair {
            tweet_id: r.tweet_id,
            premise: r.text,
            hypothesis: r.therapy.unwrap_or_default(),
            label: r.label,
        })
        .collect())
}

fn labels_of(items: &[SentencePair], path: &Path) -> Result<Vec<(String, SentimentLabel)>> {
    items
        .iter()
        .map(|p| match p.label {
            Some(l) => Ok((p.tweet_id.clone(), l)),
            None => bail!("{}: tweet {:?} has no label", path.display(), p.tweet_id),
        })
        .collect()
}

fn count_line(counts: [usize; 3]) -> String {
    SentimentLabel::ALL
        .iter()
        .map(|l| format!("{l}={}", counts[l.index()]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn preprocess(a: &PreprocessArgs) -> Result<Done> {
    let map = emoticon_map(a.emoticons.as_deref())?;
    let mut records = load_tweets(&a.input)?;
    for r in &mut records {
        r.text = preprocess_tweet(&r.text, &map);
    }
    write_sentiment_corpus(&records, &a.out)?;
    Ok(Done::new([a.input.clone()].into_iter().chain(a.emoticons.clone()), &a.out))
}

fn pair(a: &PairArgs) -> Result<Done> {
    let map = emoticon_map(a.emoticons.as_deref())?;
    let template = HypothesisTemplate::new(a.hypothesis_template.as_str())?;
    let records = load_sentiment_corpus(&a.input)?;
    let pairs = build_pairs(&records, &template, &map)?;
    write_pairs(&pairs, &a.out)?;
    Ok(Done::new([a.input.clone()].into_iter().chain(a.emoticons.clone()), &a.out))
}

fn resample(a: &ResampleArgs) -> Result<Done> {
    let records = load_sentiment_corpus(&a.input)?;
    let mode = match a.only_downsample {
        Some(Downsample::Neutral) => UndersampleMode::NeutralOnly,
        None => UndersampleMode::ExactRatio,
    };
    let kept = undersample_with(&records, a.ratio, a.seed, mode)?;
    write_sentiment_corpus(&kept, &a.out)?;
    eprintln!("{}", count_line(class_counts(&kept)));
    Ok(Done::new([a.input.clone()], &a.out))
}

fn split_cmd(a: &SplitArgs) -> Result<Done> {
    let records = load_sentiment_corpus(&a.input)?;
    let cfg = SplitConfig::new(a.train_fraction, a.seed, a.stratified)?;
    let (train, dev) = split(&records, &cfg)?;
    write_sentiment_corpus(&train, &a.train_out)?;
    write_sentiment_corpus(&dev, &a.dev_out)?;
    eprintln!("train={} dev={}", train.len(), dev.len());
    Ok(Done::new([a.input.clone()], &a.train_out))
}

fn train(a: &TrainArgs) -> Result<Done> {
    let registry = BackendRegistry::with_builtins();
    let train = load_pairs(&a.train)?;
    let dev = match &a.dev {
        Some(p) => load_pairs(p)?,
        None => Vec::new(),
    };
    let config = TrainingConfig {
        epochs: a.epochs,
        learning_rate: a.learning_rate,
        weight_decay_rate: a.weight_decay,
        batch_size: a.batch_size,
        max_sequence_length: a.max_seq_len,
        seed: a.seed,
    };
    let handle = train_classifier(&registry, &a.backend, &a.checkpoint, &train, &dev, &config)?;
    eprint!("{}", render_training_log(handle.training_log()));
    handle.save(&a.model_dir)?;
    Ok(Done::new([a.train.clone()].into_iter().chain(a.dev.clone()), &a.model_dir))
}

fn predict_cmd(a: &PredictArgs) -> Result<Done> {
    let registry = BackendRegistry::with_builtins();
    let handle = ClassifierHandle::load(&a.model_dir, &registry)?;
    let pairs = load_pairs(&a.input)?;
    let run = predict(&handle, &pairs);
    let rows: Vec<(String, SentimentLabel)> = run.records.iter().map(|r| r.as_pair()).collect();
    write_predictions(&rows, &a.out)?;
    eprintln!("predicted={} truncated={}", rows.len(), run.truncated);
    Ok(Done::new([a.model_dir.clone(), a.input.clone()], &a.out))
}

fn write_report(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("{}", path.display()))
}

fn eval_sentiment(a: &EvalSentimentArgs) -> Result<Done> {
    let gold = labels_of(&load_items(&a.gold)?, &a.gold)?;
    let pred = load_sentiment_predictions(&a.pred)?;
    let report = evaluate_sentiment(&gold, &pred)?;
    print!("{}", report.to_table());
    let inputs = vec![a.gold.clone(), a.pred.clone()];
    match &a.report {
        Some(p) => {
            write_report(p, &report.to_kv_lines())?;
            Ok(Done::new(inputs, p))
        }
        None => Ok(Done { inputs, manifest_beside: None }),
    }
}

fn baseline(a: &BaselineArgs) -> Result<Done> {
    let train_labels: Vec<SentimentLabel> =
        labels_of(&load_items(&a.train)?, &a.train)?.into_iter().map(|(_, l)| l).collect();
    let handle = match a.kind {
        BaselineKind::Majority => majority_class_baseline(&train_labels)?,
        BaselineKind::Distribution => distribution_baseline(&train_labels, a.seed)?,
    };
    let items = load_items(&a.input)?;
    let rows: Vec<(String, SentimentLabel)> = predict(&handle, &items).records.iter().map(|r| r.as_pair()).collect();
    write_predictions(&rows, &a.out)?;
    Ok(Done::new([a.train.clone(), a.input.clone()], &a.out))
}

fn extract(a: &ExtractArgs, cache: Option<&Path>) -> Result<Done> {
    let checkpoint = a.checkpoint.as_deref().map(|p| resolve(p, cache));
    let generator: Box<dyn SpanGenerator> = match (a.backend, &checkpoint, &a.train) {
        (GeneratorKind::Gazetteer, Some(p), _) => Box::new(GazetteerGenerator::load(p)?),
        (GeneratorKind::Gazetteer, None, Some(train)) => Box::new(GazetteerGenerator::fit_corpus(&load_ade_corpus(train)?)),
        (GeneratorKind::Lookup, Some(p), _) => Box::new(LookupGenerator::load(p)?),
        (GeneratorKind::Lookup, None, _) => bail!("the lookup backend needs --checkpoint"),
        (GeneratorKind::Gazetteer, None, None) => unreachable!("clap requires --checkpoint or --train"),
    };
    let map = emoticon_map(a.emoticons.as_deref())?;
    let tweets = load_tweets(&a.input)?;
    let mut rows = Vec::new();
    for t in &tweets {
        let text = if a.raw { t.text.clone() } else { preprocess_tweet(&t.text, &map) };
        let spans = extract_ade_spans(generator.as_ref(), &text).with_context(|| format!("tweet {:?}", t.tweet_id))?;
        rows.extend(spans.into_iter().map(|span| SpanRow { tweet_id: t.tweet_id.clone(), span }));
    }
    write_predictions(&rows, &a.out)?;
    eprintln!("tweets={} spans={}", tweets.len(), rows.len());
    let inputs = [a.input.clone()]
        .into_iter()
        .chain(checkpoint)
        .chain(a.train.clone())
        .chain(a.emoticons.clone());
    Ok(Done::new(inputs, &a.out))
}

/// Encoder for an id as stored in index manifests, plus the file it reads.
fn encoder_for(id: &str, cache: Option<&Path>) -> Result<(Arc<dyn TextEncoder>, Option<PathBuf>)> {
    if let Some(path) = id.strip_prefix("table:") {
        let path = resolve(Path::new(path), cache);
        return Ok((Arc::new(TableEncoder::load(&path)?), Some(path)));
    }
    Ok((BackendRegistry::with_builtins().encoder(id)?, None))
}

fn build_index_cmd(a: &BuildIndexArgs, cache: Option<&Path>) -> Result<Done> {
    let lexicon = load_lexicon(&a.lexicon)?;
    let (encoder, table) = encoder_for(&a.encoder, cache)?;
    let index = build_index(&lexicon, encoder.as_ref())?;
    index.save(&a.index_dir)?;
    eprintln!("entries={} dimension={}", index.len(), index.dimension());
    Ok(Done::new([a.lexicon.clone()].into_iter().chain(table), &a.index_dir))
}

fn link_cmd(a: &LinkArgs, cache: Option<&Path>) -> Result<Done> {
    let index = EmbeddingIndex::load(&a.index_dir)?;
    let (encoder, table) = encoder_for(index.encoder_id(), cache)?;
    let tweets = load_tweets(&a.tweets)?;
    let spans = load_spans(&a.spans)?;

    let mut by_tweet: HashMap<&str, Vec<String>> = HashMap::new();
    for s in &spans {
        by_tweet.entry(s.tweet_id.as_str()).or_default().push(s.span.clone());
    }
    if let Some(s) = spans.iter().find(|s| !tweets.iter().any(|t| t.tweet_id == s.tweet_id)) {
        bail!("{}: span for unknown tweet {:?}", a.spans.display(), s.tweet_id);
    }

    let mut report = NormalizeReport::default();
    let mut out = Vec::new();
    for t in &tweets {
        report.tweets += 1;
        let spans = by_tweet.get(t.tweet_id.as_str()).map(Vec::as_slice).unwrap_or_default();
        out.extend(anchor_and_link(t, spans, &index, encoder.as_ref(), a.threshold, &mut report)?);
    }
    write_predictions(&out, &a.out)?;
    eprint!("{}", report.to_kv_lines());
    let inputs = [a.tweets.clone(), a.spans.clone(), a.index_dir.clone()].into_iter().chain(table);
    Ok(Done::new(inputs, &a.out))
}

fn eval_ade(a: &EvalAdeArgs) -> Result<Done> {
    let gold: Vec<_> = load_ade_corpus(&a.gold)?.into_iter().flat_map(|t| t.annotations).collect();
    let pred = load_ade_predictions(&a.pred)?;
    let concepts = load_concept_set(&a.train_concepts)?;
    let scopes: &[Scope] = match a.scope {
        ScopeArg::Overall => &[Scope::Overall],
        ScopeArg::Unseen => &[Scope::Unseen],
        ScopeArg::Both => &[Scope::Overall, Scope::Unseen],
    };
    let reports = scopes
        .iter()
        .map(|s| evaluate_extraction(&gold, &pred, &concepts, *s))
        .collect::<healthmine_core::Result<Vec<_>>>()?;
    print!("{}", extraction_table(&reports));
    let inputs = vec![a.gold.clone(), a.pred.clone(), a.train_concepts.clone()];
    match &a.report {
        Some(p) => {
            let body: String = reports.iter().map(|r| r.to_kv_lines()).collect();
            write_report(p, &body)?;
            Ok(Done::new(inputs, p))
        }
        None => Ok(Done { inputs, manifest_beside: None }),
    }
}
