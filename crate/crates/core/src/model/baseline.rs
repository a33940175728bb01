//! Label-only baselines: always-majority and sampling from the training
//! label distribution. Neither looks at the text.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ClassifierHandle, EpochRecord, PairClassifierBackend, PairModel, Scored, TrainingConfig};
use crate::error::{Error, Result};
use crate::labels::SentimentLabel;
use crate::pairing::SentencePair;

fn one_hot(label: SentimentLabel) -> [f64; 3] {
    let mut p = [0.0; 3];
    p[label.index()] = 1.0;
    p
}

fn counts(labels: &[SentimentLabel]) -> [usize; 3] {
    let mut c = [0; 3];
    for l in labels {
        c[l.index()] += 1;
    }
    c
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MajorityModel {
    label: SentimentLabel,
}

impl PairModel for MajorityModel {
    fn score(&self, pairs: &[SentencePair]) -> Scored {
        Scored {
            probabilities: vec![one_hot(self.label); pairs.len()],
            truncated: 0,
        }
    }

    fn state(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Samples each prediction from the fitted distribution. The generator is
/// reseeded on every call so repeated calls agree.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DistributionModel {
    probabilities: [f64; 3],
    seed: u64,
}

impl DistributionModel {
    fn sample(&self, rng: &mut ChaCha8Rng) -> SentimentLabel {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for label in SentimentLabel::ALL {
            acc += self.probabilities[label.index()];
            if u < acc {
                return label;
            }
        }
        // u landed in the rounding gap above the cumulative sum
        *SentimentLabel::ALL
            .iter()
            .rev()
            .find(|l| self.probabilities[l.index()] > 0.0)
            .expect("at least one class has mass")
    }
}

impl PairModel for DistributionModel {
    fn score(&self, pairs: &[SentencePair]) -> Scored {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Scored {
            probabilities: pairs.iter().map(|_| one_hot(self.sample(&mut rng))).collect(),
            truncated: 0,
        }
    }

    fn state(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn majority_label(labels: &[SentimentLabel]) -> SentimentLabel {
    let c = counts(labels);
    // max_by_key keeps the last maximum, so scan in reverse label order
    *SentimentLabel::ALL
        .iter()
        .rev()
        .max_by_key(|l| c[l.index()])
        .expect("three labels")
}

/// Always predicts the most frequent training label (ties go to the earlier
/// label) with probability 1.
pub fn majority_class_baseline(train_labels: &[SentimentLabel]) -> Result<ClassifierHandle> {
    if train_labels.is_empty() {
        return Err(Error::InvalidInput("baseline needs at least one label".into()));
    }
    let model = MajorityModel { label: majority_label(train_labels) };
    Ok(ClassifierHandle::new(Arc::new(model), "majority", "", Vec::new()))
}

/// Predicts labels drawn i.i.d. from the empirical training distribution.
pub fn distribution_baseline(train_labels: &[SentimentLabel], seed: u64) -> Result<ClassifierHandle> {
    if train_labels.is_empty() {
        return Err(Error::InvalidInput("baseline needs at least one label".into()));
    }
    let n = train_labels.len() as f64;
    let model = DistributionModel {
        probabilities: counts(train_labels).map(|c| c as f64 / n),
        seed,
    };
    Ok(ClassifierHandle::new(Arc::new(model), "distribution", "", Vec::new()))
}

fn labels_of(pairs: &[SentencePair]) -> Vec<SentimentLabel> {
    pairs.iter().filter_map(|p| p.label).collect()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MajorityBackend;

impl PairClassifierBackend for MajorityBackend {
    fn id(&self) -> &str {
        "majority"
    }

    fn train(
        &self,
        train: &[SentencePair],
        _dev: &[SentencePair],
        _config: &TrainingConfig,
        _checkpoint: &str,
        _log: &mut dyn FnMut(EpochRecord),
    ) -> Result<Arc<dyn PairModel>> {
        Ok(Arc::new(MajorityModel { label: majority_label(&labels_of(train)) }))
    }

    fn load(&self, state: &serde_json::Value) -> Result<Arc<dyn PairModel>> {
        serde_json::from_value::<MajorityModel>(state.clone())
            .map(|m| Arc::new(m) as Arc<dyn PairModel>)
            .map_err(|e| Error::Config(format!("bad majority state: {e}")))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DistributionBackend;

impl PairClassifierBackend for DistributionBackend {
    fn id(&self) -> &str {
        "distribution"
    }

    fn train(
        &self,
        train: &[SentencePair],
        _dev: &[SentencePair],
        config: &TrainingConfig,
        _checkpoint: &str,
        _log: &mut dyn FnMut(EpochRecord),
    ) -> Result<Arc<dyn PairModel>> {
        let labels = labels_of(train);
        let n = labels.len() as f64;
        Ok(Arc::new(DistributionModel {
            probabilities: counts(&labels).map(|c| c as f64 / n),
            seed: config.seed,
        }))
    }

    fn load(&self, state: &serde_json::Value) -> Result<Arc<dyn PairModel>> {
        serde_json::from_value::<DistributionModel>(state.clone())
            .map(|m| Arc::new(m) as Arc<dyn PairModel>)
            .map_err(|e| Error::Config(format!("bad distribution state: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::SentimentLabel::*;
    use crate::model::predict;

    fn probe(n: usize) -> Vec<SentencePair> {
        (0..n)
            .map(|i| SentencePair {
                tweet_id: format!("t{i}"),
                premise: "p".into(),
                hypothesis: "h".into(),
                label: None,
            })
            .collect()
    }

    fn labels(pos: usize, neg: usize, neu: usize) -> Vec<SentimentLabel> {
        let mut v = vec![Positive; pos];
        v.extend(vec![Negative; neg]);
        v.extend(vec![Neutral; neu]);
        v
    }

    #[test]
    fn majority_picks_most_frequent() {
        let h = majority_class_baseline(&labels(20, 14, 66)).unwrap();
        let run = predict(&h, &probe(5));
        assert!(run.records.iter().all(|r| r.label == Neutral && r.probabilities == [0.0, 0.0, 1.0]));
    }

    #[test]
    fn majority_tie_goes_to_label_order() {
        let h = majority_class_baseline(&labels(50, 50, 0)).unwrap();
        assert_eq!(predict(&h, &probe(1)).records[0].label, Positive);
        let h = majority_class_baseline(&labels(0, 3, 3)).unwrap();
        assert_eq!(predict(&h, &probe(1)).records[0].label, Negative);
        let h = majority_class_baseline(&[Negative]).unwrap();
        assert_eq!(predict(&h, &probe(1)).records[0].label, Negative);
        assert!(majority_class_baseline(&[]).is_err());
    }

    #[test]
    fn distribution_is_seeded() {
        let h = distribution_baseline(&labels(20, 14, 66), 7).unwrap();
        let a = predict(&h, &probe(200));
        let b = predict(&h, &probe(200));
        assert_eq!(a.records, b.records);
        let h = distribution_baseline(&labels(0, 0, 100), 7).unwrap();
        assert!(predict(&h, &probe(50)).records.iter().all(|r| r.label == Neutral));
    }
}
