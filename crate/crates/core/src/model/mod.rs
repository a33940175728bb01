//! Backend-agnostic contracts for the learned components: the sentence-pair
//! classifier, the span generator and the text encoder.
//!
//! Backends live in a [`BackendRegistry`] keyed by string id. The built-in
//! backends are small and CPU-only; heavier ones (transformer checkpoints)
//! plug in through the same traits.

mod baseline;
mod encoder;
mod generator;
mod hashed;
mod optim;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::SentimentLabel;
use crate::pairing::SentencePair;

pub use baseline::{distribution_baseline, majority_class_baseline, DistributionBackend, MajorityBackend};
pub use encoder::{encode_text, CharNgramEncoder, TableEncoder, TextEncoder};
pub use generator::{
    extract_ade_spans, format_span_target, parse_generated_spans, GazetteerGenerator, LookupGenerator, SpanGenerator,
    NO_SPANS, SPAN_SEPARATOR,
};
pub use hashed::HashedLinearBackend;
pub use optim::AdamW;

/// Hyperparameters shared by trainable pair classifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    /// Decoupled weight-decay coefficient of the optimizer.
    pub weight_decay_rate: f64,
    pub batch_size: usize,
    pub max_sequence_length: usize,
    pub seed: u64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        TrainingConfig {
            epochs: 10,
            learning_rate: 5e-6,
            weight_decay_rate: 0.9,
            batch_size: 16,
            max_sequence_length: 128,
            seed: 0,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.epochs == 0 {
            return fail("epochs must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail("learning rate must be positive");
        }
        if !(0.0..1.0).contains(&self.weight_decay_rate) {
            return fail("weight decay rate must lie in [0, 1)");
        }
        if self.batch_size == 0 {
            return fail("batch size must be positive");
        }
        if self.max_sequence_length == 0 {
            return fail("max sequence length must be positive");
        }
        Ok(())
    }
}

/// One line of the training log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_loss: f64,
    /// `None` when no dev pairs were supplied.
    pub dev_micro_f1: Option<f64>,
}

/// Renders the log as `epoch\ttrain_loss\tdev_micro_f1` lines.
pub fn render_training_log(log: &[EpochRecord]) -> String {
    log.iter()
        .map(|r| {
            let f1 = r.dev_micro_f1.map_or_else(|| "nan".to_string(), |f| format!("{f:.6}"));
            format!("{}\t{:.6}\t{}\n", r.epoch, r.train_loss, f1)
        })
        .collect()
}

/// A classifier output for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub tweet_id: String,
    pub label: SentimentLabel,
    pub probabilities: [f64; 3],
}

impl PredictionRecord {
    /// Label is the argmax, ties going to the earlier label.
    pub fn from_probabilities(tweet_id: impl Into<String>, probabilities: [f64; 3]) -> Self {
        let mut best = 0;
        for i in 1..3 {
            if probabilities[i] > probabilities[best] {
                best = i;
            }
        }
        PredictionRecord {
            tweet_id: tweet_id.into(),
            label: SentimentLabel::from_index(best).expect("index < 3"),
            probabilities,
        }
    }

    pub fn as_pair(&self) -> (String, SentimentLabel) {
        (self.tweet_id.clone(), self.label)
    }
}

/// Class probabilities for a batch plus how many inputs were truncated.
#[derive(Debug, Clone, Default)]
pub struct Scored {
    pub probabilities: Vec<[f64; 3]>,
    pub truncated: usize,
}

/// A trained, immutable pair classifier.
pub trait PairModel: Send + Sync {
    fn score(&self, pairs: &[SentencePair]) -> Scored;
    /// Serializable state, reloadable through the owning backend.
    fn state(&self) -> serde_json::Value;
}

/// A trainable pair-classifier family.
pub trait PairClassifierBackend: Send + Sync {
    fn id(&self) -> &str;

    /// Fits a model; `log` receives one record per finished epoch.
    fn train(
        &self,
        train: &[SentencePair],
        dev: &[SentencePair],
        config: &TrainingConfig,
        checkpoint: &str,
        log: &mut dyn FnMut(EpochRecord),
    ) -> Result<Arc<dyn PairModel>>;

    fn load(&self, state: &serde_json::Value) -> Result<Arc<dyn PairModel>>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HandleMetadata {
    pub backend: String,
    pub checkpoint: String,
    pub label_order: [SentimentLabel; 3],
}

/// A trained classifier with its provenance and training log.
#[derive(Clone)]
pub struct ClassifierHandle {
    model: Arc<dyn PairModel>,
    metadata: HandleMetadata,
    log: Vec<EpochRecord>,
}

impl std::fmt::Debug for ClassifierHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassifierHandle")
            .field("metadata", &self.metadata)
            .field("epochs", &self.log.len())
            .finish()
    }
}

const METADATA_FILE: &str = "metadata.json";
const MODEL_FILE: &str = "model.json";
const LOG_FILE: &str = "training_log.tsv";

impl ClassifierHandle {
    pub fn new(model: Arc<dyn PairModel>, backend: &str, checkpoint: &str, log: Vec<EpochRecord>) -> Self {
        ClassifierHandle {
            model,
            metadata: HandleMetadata {
                backend: backend.to_string(),
                checkpoint: checkpoint.to_string(),
                label_order: SentimentLabel::ALL,
            },
            log,
        }
    }

    pub fn metadata(&self) -> &HandleMetadata {
        &self.metadata
    }

    pub fn training_log(&self) -> &[EpochRecord] {
        &self.log
    }

    /// Writes `metadata.json`, `model.json` and `training_log.tsv` into `dir`.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let write = |name: &str, body: String| {
            let p = dir.join(name);
            fs::write(&p, body).map_err(|e| Error::io(p, e))
        };
        write(METADATA_FILE, to_json(&self.metadata)?)?;
        write(MODEL_FILE, to_json(&self.model.state())?)?;
        write(LOG_FILE, render_training_log(&self.log))
    }

    pub fn load(dir: impl AsRef<Path>, registry: &BackendRegistry) -> Result<Self> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let p = dir.join(name);
            fs::read_to_string(&p).map_err(|e| Error::io(p, e))
        };
        let metadata: HandleMetadata = serde_json::from_str(&read(METADATA_FILE)?)
            .map_err(|e| Error::Config(format!("bad model metadata: {e}")))?;
        if metadata.label_order != SentimentLabel::ALL {
            return Err(Error::Config("model label order differs from positive, negative, neutral".into()));
        }
        let state: serde_json::Value = serde_json::from_str(&read(MODEL_FILE)?)
            .map_err(|e| Error::Config(format!("bad model state: {e}")))?;
        let model = registry.classifier(&metadata.backend)?.load(&state)?;
        Ok(ClassifierHandle { model, metadata, log: Vec::new() })
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Predictions for a batch with the truncation count for the run report.
#[derive(Debug, Clone, Default)]
pub struct PredictionRun {
    pub records: Vec<PredictionRecord>,
    pub truncated: usize,
}

/// Fine-tunes a registered backend for exactly `config.epochs` epochs and
/// returns the final-epoch model.
pub fn train_classifier(
    registry: &BackendRegistry,
    backend: &str,
    checkpoint: &str,
    train: &[SentencePair],
    dev: &[SentencePair],
    config: &TrainingConfig,
) -> Result<ClassifierHandle> {
    config.validate()?;
    let backend_impl = registry.classifier(backend)?;
    if train.is_empty() {
        return Err(Error::InvalidInput("training set is empty".into()));
    }
    if let Some(p) = train.iter().chain(dev).find(|p| p.label.is_none()) {
        return Err(Error::InvalidInput(format!("pair {:?} has no label", p.tweet_id)));
    }
    let mut log = Vec::with_capacity(config.epochs);
    let model = backend_impl.train(train, dev, config, checkpoint, &mut |r| log.push(r))?;
    Ok(ClassifierHandle::new(model, backend, checkpoint, log))
}

/// One record per pair, in input order.
pub fn predict(handle: &ClassifierHandle, pairs: &[SentencePair]) -> PredictionRun {
    if pairs.is_empty() {
        return PredictionRun::default();
    }
    let scored = handle.model.score(pairs);
    PredictionRun {
        records: pairs
            .iter()
            .zip(scored.probabilities)
            .map(|(p, probs)| PredictionRecord::from_probabilities(p.tweet_id.clone(), probs))
            .collect(),
        truncated: scored.truncated,
    }
}

/// Backends by id.
#[derive(Clone, Default)]
pub struct BackendRegistry {
    classifiers: BTreeMap<String, Arc<dyn PairClassifierBackend>>,
    generators: BTreeMap<String, Arc<dyn SpanGenerator>>,
    encoders: BTreeMap<String, Arc<dyn TextEncoder>>,
}

impl BackendRegistry {
    /// Registry with the bundled classifiers and the `char-ngram` encoder.
    /// Generators need fitted state and are registered by the caller.
    pub fn with_builtins() -> Self {
        let mut r = BackendRegistry::default();
        r.register_classifier(Arc::new(HashedLinearBackend));
        r.register_classifier(Arc::new(MajorityBackend));
        r.register_classifier(Arc::new(DistributionBackend));
        r.register_encoder(Arc::new(CharNgramEncoder::default()));
        r
    }

    pub fn register_classifier(&mut self, backend: Arc<dyn PairClassifierBackend>) {
        self.classifiers.insert(backend.id().to_string(), backend);
    }

    pub fn register_generator(&mut self, generator: Arc<dyn SpanGenerator>) {
        self.generators.insert(generator.id().to_string(), generator);
    }

    pub fn register_encoder(&mut self, encoder: Arc<dyn TextEncoder>) {
        self.encoders.insert(encoder.id().to_string(), encoder);
    }

    pub fn classifier(&self, id: &str) -> Result<Arc<dyn PairClassifierBackend>> {
        self.classifiers
            .get(id)
            .cloned()
            .ok_or_else(|| unregistered("classifier", id, self.classifiers.keys()))
    }

    pub fn generator(&self, id: &str) -> Result<Arc<dyn SpanGenerator>> {
        self.generators
            .get(id)
            .cloned()
            .ok_or_else(|| unregistered("generator", id, self.generators.keys()))
    }

    pub fn encoder(&self, id: &str) -> Result<Arc<dyn TextEncoder>> {
        self.encoders
            .get(id)
            .cloned()
            .ok_or_else(|| unregistered("encoder", id, self.encoders.keys()))
    }
}

fn unregistered<'a>(kind: &str, id: &str, known: impl Iterator<Item = &'a String>) -> Error {
    let known: Vec<&str> = known.map(String::as_str).collect();
    Error::Config(format!("unregistered {kind} backend {id:?} (known: {})", known.join(", ")))
}

/// 64-bit FNV-1a; stable across platforms and releases, used for feature hashing.
pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
