//! Scoring for sentiment classification and ADE extraction + normalization.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::data_io::{AdeAnnotation, AdeTweet};
use crate::error::{Error, Result};
use crate::labels::SentimentLabel;

/// Fraction of equal positions; 0 for empty input.
pub fn accuracy(gold: &[SentimentLabel], pred: &[SentimentLabel]) -> f64 {
    if gold.is_empty() {
        return 0.0;
    }
    let hits = gold.iter().zip(pred).filter(|(g, p)| g == p).count();
    hits as f64 / gold.len() as f64
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    /// Rows are gold labels, columns predictions, both in canonical order.
    pub confusion: [[usize; 3]; 3],
    pub per_class: [ClassScores; 3],
    pub micro_f1: f64,
}

impl ClassificationReport {
    pub fn from_confusion(confusion: [[usize; 3]; 3]) -> Self {
        let total: usize = confusion.iter().flatten().sum();
        let trace: usize = (0..3).map(|i| confusion[i][i]).sum();
        let per_class = [0, 1, 2].map(|c| {
            let tp = confusion[c][c];
            let predicted: usize = (0..3).map(|g| confusion[g][c]).sum();
            let support: usize = confusion[c].iter().sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            ClassScores { precision, recall, f1: harmonic(precision, recall), support }
        });
        // single-label multiclass: pooled fp == pooled fn, so micro P = R = F1 = accuracy
        ClassificationReport { confusion, per_class, micro_f1: ratio(trace, total) }
    }

    pub fn total(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<10} {:>9} {:>9} {:>9} {:>8}", "label", "precision", "recall", "f1", "support");
        for label in SentimentLabel::ALL {
            let c = &self.per_class[label.index()];
            let _ = writeln!(s, "{:<10} {:>9.4} {:>9.4} {:>9.4} {:>8}", label.as_str(), c.precision, c.recall, c.f1, c.support);
        }
        let _ = writeln!(s, "{:<10} {:>9} {:>9} {:>9.4} {:>8}", "micro", "", "", self.micro_f1, self.total());
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<10} {:>9} {:>9} {:>9}", "gold\\pred", "positive", "negative", "neutral");
        for label in SentimentLabel::ALL {
            let row = &self.confusion[label.index()];
            let _ = writeln!(s, "{:<10} {:>9} {:>9} {:>9}", label.as_str(), row[0], row[1], row[2]);
        }
        s
    }

    pub fn to_kv_lines(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "micro_f1={:.6}", self.micro_f1);
        let _ = writeln!(s, "total={}", self.total());
        for label in SentimentLabel::ALL {
            let c = &self.per_class[label.index()];
            let _ = writeln!(
                s,
                "{l}.precision={:.6}\n{l}.recall={:.6}\n{l}.f1={:.6}\n{l}.support={}",
                c.precision,
                c.recall,
                c.f1,
                c.support,
                l = label
            );
        }
        for g in SentimentLabel::ALL {
            for p in SentimentLabel::ALL {
                let _ = writeln!(s, "confusion.{g}.{p}={}", self.confusion[g.index()][p.index()]);
            }
        }
        s
    }
}

/// Scores predictions against gold. Every gold id needs exactly one
/// prediction and predictions for unknown ids are rejected.
pub fn evaluate_sentiment(
    gold: &[(String, SentimentLabel)],
    pred: &[(String, SentimentLabel)],
) -> Result<ClassificationReport> {
    let mut by_id: HashMap<&str, SentimentLabel> = HashMap::with_capacity(pred.len());
    for (id, label) in pred {
        if by_id.insert(id.as_str(), *label).is_some() {
            return Err(Error::Evaluation(format!("duplicate prediction for {id:?}")));
        }
    }
    let gold_ids: HashSet<&str> = gold.iter().map(|(id, _)| id.as_str()).collect();
    if gold_ids.len() != gold.len() {
        return Err(Error::Evaluation("duplicate tweet id in gold".into()));
    }

    let missing: Vec<&str> = gold
        .iter()
        .map(|(id, _)| id.as_str())
        .filter(|id| !by_id.contains_key(id))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Evaluation(format!("missing predictions for: {}", missing.join(", "))));
    }
    let mut extra: Vec<&str> = by_id.keys().copied().filter(|id| !gold_ids.contains(id)).collect();
    if !extra.is_empty() {
        extra.sort_unstable();
        return Err(Error::Evaluation(format!("predictions for unknown ids: {}", extra.join(", "))));
    }

    let mut confusion = [[0usize; 3]; 3];
    for (id, g) in gold {
        confusion[g.index()][by_id[id.as_str()].index()] += 1;
    }
    Ok(ClassificationReport::from_confusion(confusion))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Overall,
    /// Only gold and predicted annotations whose concept never occurs in
    /// the training annotations.
    Unseen,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Overall => "overall",
            Scope::Unseen => "unseen",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionReport {
    pub scope: Scope,
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ExtractionReport {
    pub fn from_counts(scope: Scope, tp: usize, fp: usize, fn_: usize) -> Self {
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        ExtractionReport { scope, tp, fp, fn_, precision, recall, f1: harmonic(precision, recall) }
    }

    pub fn to_kv_lines(&self) -> String {
        let s = self.scope.as_str();
        format!(
            "{s}.tp={}\n{s}.fp={}\n{s}.fn={}\n{s}.precision={:.6}\n{s}.recall={:.6}\n{s}.f1={:.6}\n",
            self.tp, self.fp, self.fn_, self.precision, self.recall, self.f1
        )
    }
}

/// Aligned text table for one or more extraction reports.
pub fn extraction_table(reports: &[ExtractionReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<8} {:>6} {:>6} {:>6} {:>9} {:>9} {:>9}", "scope", "tp", "fp", "fn", "precision", "recall", "f1");
    for r in reports {
        let _ = writeln!(
            s,
            "{:<8} {:>6} {:>6} {:>6} {:>9.4} {:>9.4} {:>9.4}",
            r.scope.as_str(),
            r.tp,
            r.fp,
            r.fn_,
            r.precision,
            r.recall,
            r.f1
        );
    }
    s
}

/// Concept ids occurring in training annotations.
pub fn train_concepts(train: &[AdeTweet]) -> BTreeSet<String> {
    train
        .iter()
        .flat_map(|t| t.annotations.iter().map(|a| a.concept_id.clone()))
        .collect()
}

/// Whether a prediction counts as a hit for a gold annotation: same tweet,
/// overlapping character ranges and equal concept ids.
pub fn annotations_match(gold: &AdeAnnotation, pred: &AdeAnnotation) -> bool {
    gold.tweet_id == pred.tweet_id
        && gold.concept_id == pred.concept_id
        && gold.start.max(pred.start) < gold.end.min(pred.end)
}

/// Greedy matching in prediction order; each gold annotation is consumed at
/// most once.
pub fn evaluate_extraction(
    gold: &[AdeAnnotation],
    pred: &[AdeAnnotation],
    train_concepts: &BTreeSet<String>,
    scope: Scope,
) -> Result<ExtractionReport> {
    let mut seen = HashSet::new();
    for g in gold {
        if !seen.insert((g.tweet_id.as_str(), g.start, g.end, g.concept_id.as_str())) {
            return Err(Error::Format {
                origin: "gold".into(),
                line: 0,
                message: format!(
                    "duplicate gold annotation {} [{}, {}) {}",
                    g.tweet_id, g.start, g.end, g.concept_id
                ),
            });
        }
    }

    let in_scope = |a: &&AdeAnnotation| match scope {
        Scope::Overall => true,
        Scope::Unseen => !train_concepts.contains(&a.concept_id),
    };
    let gold: Vec<&AdeAnnotation> = gold.iter().filter(in_scope).collect();
    let pred: Vec<&AdeAnnotation> = pred.iter().filter(in_scope).collect();

    let mut gold_by_tweet: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, g) in gold.iter().enumerate() {
        gold_by_tweet.entry(g.tweet_id.as_str()).or_default().push(i);
    }
    let mut used = vec![false; gold.len()];
    let mut tp = 0;
    for p in &pred {
        let hit = gold_by_tweet
            .get(p.tweet_id.as_str())
            .and_then(|cands| cands.iter().copied().find(|&i| !used[i] && annotations_match(gold[i], p)));
        if let Some(i) = hit {
            used[i] = true;
            tp += 1;
        }
    }
    Ok(ExtractionReport::from_counts(scope, tp, pred.len() - tp, gold.len() - tp))
}
