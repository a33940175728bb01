//! Linear softmax classifier over hashed sentence-pair features.
//!
//! Inputs are tokenized in `[CLS] premise [SEP] hypothesis [SEP]` order and
//! truncated longest-segment-first to `max_sequence_length` tokens. Features
//! are premise unigrams and bigrams, hypothesis unigrams, premise x hypothesis
//! crosses, and premise words near a hypothesis word (the therapy mention).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{fnv1a, AdamW, EpochRecord, PairClassifierBackend, PairModel, Scored, TrainingConfig};
use crate::error::{Error, Result};
use crate::metrics::accuracy;
use crate::pairing::SentencePair;

const DEFAULT_BITS: u32 = 16;
const SPECIAL_TOKENS: usize = 3;
const WINDOW: usize = 3;

#[derive(Debug, Clone, Copy, Default)]
pub struct HashedLinearBackend;

/// Checkpoint strings select the hash width: `""`, `"default"` or `"bits:N"`.
fn parse_bits(checkpoint: &str) -> Result<u32> {
    match checkpoint.trim() {
        "" | "default" => Ok(DEFAULT_BITS),
        other => {
            let bits = other
                .strip_prefix("bits:")
                .and_then(|b| b.parse::<u32>().ok())
                .ok_or_else(|| Error::Config(format!("hashed-linear checkpoint {other:?} is not bits:N")))?;
            if !(8..=24).contains(&bits) {
                return Err(Error::Config(format!("hash width {bits} outside 8..=24")));
            }
            Ok(bits)
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '@' || c == '\''))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

type Features = Vec<(usize, f64)>;

struct Encoded {
    features: Features,
    truncated: bool,
}

fn encode(pair: &SentencePair, bits: u32, max_len: usize) -> Encoded {
    let mut premise = tokenize(&pair.premise);
    let mut hypothesis = tokenize(&pair.hypothesis);
    let budget = max_len.saturating_sub(SPECIAL_TOKENS);
    let truncated = premise.len() + hypothesis.len() > budget;
    while premise.len() + hypothesis.len() > budget {
        if premise.len() >= hypothesis.len() {
            premise.pop();
        } else {
            hypothesis.pop();
        }
    }

    let mut names: Vec<String> = vec!["bias".into()];
    names.extend(premise.iter().map(|t| format!("p:{t}")));
    names.extend(premise.windows(2).map(|w| format!("pb:{} {}", w[0], w[1])));
    names.extend(hypothesis.iter().map(|t| format!("h:{t}")));
    for p in &premise {
        names.extend(hypothesis.iter().map(|h| format!("x:{p}|{h}")));
    }
    for (i, _) in premise.iter().enumerate().filter(|(_, t)| hypothesis.contains(t)) {
        let lo = i.saturating_sub(WINDOW);
        let hi = (i + WINDOW + 1).min(premise.len());
        names.extend(premise[lo..hi].iter().map(|t| format!("n:{t}")));
    }

    let mask = (1u64 << bits) - 1;
    let mut idx: Vec<usize> = names.iter().map(|n| (fnv1a(n.as_bytes()) & mask) as usize).collect();
    idx.sort_unstable();
    let scale = 1.0 / (idx.len() as f64).sqrt();
    let mut features: Features = Vec::with_capacity(idx.len());
    for i in idx {
        match features.last_mut() {
            Some((j, v)) if *j == i => *v += scale,
            _ => features.push((i, scale)),
        }
    }
    Encoded { features, truncated }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HashedLinearModel {
    bits: u32,
    max_sequence_length: usize,
    /// Row-major `[feature][class]`.
    weights: Vec<f64>,
}

impl HashedLinearModel {
    fn logits(&self, features: &Features) -> [f64; 3] {
        let mut z = [0.0; 3];
        for &(i, v) in features {
            for (c, zc) in z.iter_mut().enumerate() {
                *zc += self.weights[i * 3 + c] * v;
            }
        }
        z
    }
}

fn softmax(z: [f64; 3]) -> [f64; 3] {
    let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e = z.map(|x| (x - m).exp());
    let s: f64 = e.iter().sum();
    e.map(|x| x / s)
}

impl PairModel for HashedLinearModel {
    fn score(&self, pairs: &[SentencePair]) -> Scored {
        let mut out = Scored::default();
        for p in pairs {
            let enc = encode(p, self.bits, self.max_sequence_length);
            out.truncated += usize::from(enc.truncated);
            out.probabilities.push(softmax(self.logits(&enc.features)));
        }
        out
    }

    fn state(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("model state serializes")
    }
}

impl PairClassifierBackend for HashedLinearBackend {
    fn id(&self) -> &str {
        "hashed-linear"
    }

    fn train(
        &self,
        train: &[SentencePair],
        dev: &[SentencePair],
        config: &TrainingConfig,
        checkpoint: &str,
        log: &mut dyn FnMut(EpochRecord),
    ) -> Result<Arc<dyn PairModel>> {
        let bits = parse_bits(checkpoint)?;
        let dim = 1usize << bits;
        let encoded: Vec<(Features, usize)> = train
            .iter()
            .map(|p| {
                let label = p.label.expect("train_classifier checks labels").index();
                (encode(p, bits, config.max_sequence_length).features, label)
            })
            .collect();

        let mut model = HashedLinearModel {
            bits,
            max_sequence_length: config.max_sequence_length,
            weights: vec![0.0; dim * 3],
        };
        let mut opt = AdamW::new(dim * 3, config.learning_rate, config.weight_decay_rate);
        let mut grads = vec![0.0; dim * 3];
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut order: Vec<usize> = (0..encoded.len()).collect();

        for epoch in 1..=config.epochs {
            order.shuffle(&mut rng);
            let mut loss_sum = 0.0;
            for batch in order.chunks(config.batch_size) {
                let inv = 1.0 / batch.len() as f64;
                let mut touched = Vec::new();
                for &k in batch {
                    let (features, gold) = &encoded[k];
                    let probs = softmax(model.logits(features));
                    loss_sum -= probs[*gold].max(f64::MIN_POSITIVE).ln();
                    for &(i, v) in features {
                        for c in 0..3 {
                            let target = if c == *gold { 1.0 } else { 0.0 };
                            grads[i * 3 + c] += (probs[c] - target) * v * inv;
                        }
                        touched.push(i);
                    }
                }
                opt.step(&mut model.weights, &grads);
                for i in touched {
                    grads[i * 3..i * 3 + 3].fill(0.0);
                }
            }

            let dev_micro_f1 = if dev.is_empty() {
                None
            } else {
                let gold: Vec<_> = dev.iter().map(|p| p.label.expect("labeled dev")).collect();
                let pred: Vec<_> = model
                    .score(dev)
                    .probabilities
                    .into_iter()
                    .map(|pr| super::PredictionRecord::from_probabilities("", pr).label)
                    .collect();
                Some(accuracy(&gold, &pred))
            };
            log(EpochRecord {
                epoch,
                train_loss: loss_sum / encoded.len() as f64,
                dev_micro_f1,
            });
        }
        Ok(Arc::new(model))
    }

    fn load(&self, state: &serde_json::Value) -> Result<Arc<dyn PairModel>> {
        let model: HashedLinearModel = serde_json::from_value(state.clone())
            .map_err(|e| Error::Config(format!("bad hashed-linear state: {e}")))?;
        if model.weights.len() != (1usize << model.bits) * 3 {
            return Err(Error::Config("hashed-linear weight count does not match hash width".into()));
        }
        Ok(Arc::new(model))
    }
}
