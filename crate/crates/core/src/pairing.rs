//! Recasting (tweet, therapy, sentiment) triples as premise/hypothesis pairs
//! whose inference label is the sentiment class.

use crate::data_io::TweetRecord;
use crate::error::{Error, Result};
use crate::labels::{Labeled, SentimentLabel};
use crate::preprocess::{preprocess_tweet, EmoticonMap};

pub const THERAPY_PLACEHOLDER: &str = "{therapy}";
pub const DEFAULT_TEMPLATE: &str = "This is on {therapy}";

/// A hypothesis pattern with exactly one `{therapy}` placeholder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisTemplate(String);

impl HypothesisTemplate {
    pub fn new(pattern: impl Into<String>) -> Result<Self> {
        let pattern = pattern.into();
        let n = pattern.matches(THERAPY_PLACEHOLDER).count();
        if n != 1 {
            return Err(Error::InvalidInput(format!(
                "hypothesis template {pattern:?} must contain {THERAPY_PLACEHOLDER} exactly once (found {n})"
            )));
        }
        Ok(HypothesisTemplate(pattern))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for HypothesisTemplate {
    fn default() -> Self {
        HypothesisTemplate(DEFAULT_TEMPLATE.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePair {
    pub tweet_id: String,
    pub premise: String,
    pub hypothesis: String,
    pub label: Option<SentimentLabel>,
}

impl Labeled for SentencePair {
    fn label(&self) -> Option<SentimentLabel> {
        self.label
    }
}

/// Substitutes the therapy verbatim into the template.
pub fn build_hypothesis(template: &HypothesisTemplate, therapy: &str) -> Result<String> {
    if therapy.trim().is_empty() {
        return Err(Error::InvalidInput("therapy is empty".into()));
    }
    Ok(template.0.replacen(THERAPY_PLACEHOLDER, therapy, 1))
}

/// Premise is the preprocessed tweet, hypothesis the templated therapy.
pub fn build_pair(record: &TweetRecord, template: &HypothesisTemplate, map: &EmoticonMap) -> Result<SentencePair> {
    let therapy = record.therapy.as_deref().ok_or_else(|| {
        Error::InvalidInput(format!("tweet {:?} has no therapy", record.tweet_id))
    })?;
    let hypothesis = build_hypothesis(template, therapy)?;
    let premise = preprocess_tweet(&record.text, map);
    if premise.trim().is_empty() {
        return Err(Error::InvalidInput(format!("tweet {:?} has empty text", record.tweet_id)));
    }
    Ok(SentencePair {
        tweet_id: record.tweet_id.clone(),
        premise,
        hypothesis,
        label: record.label,
    })
}

pub fn build_pairs(records: &[TweetRecord], template: &HypothesisTemplate, map: &EmoticonMap) -> Result<Vec<SentencePair>> {
    records.iter().map(|r| build_pair(r, template, map)).collect()
}

/// `<cls> premise <sep> hypothesis <sep>`, single-space separated.
pub fn render_model_input(pair: &SentencePair, cls_marker: &str, sep_marker: &str) -> String {
    format!(
        "{cls_marker} {} {sep_marker} {} {sep_marker}",
        pair.premise, pair.hypothesis
    )
}
