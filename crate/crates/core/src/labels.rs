use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Sentiment toward a therapy. The discriminant is the canonical class index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Positive = 0,
    Negative = 1,
    Neutral = 2,
}

impl SentimentLabel {
    /// All labels in canonical order.
    pub const ALL: [SentimentLabel; 3] = [
        SentimentLabel::Positive,
        SentimentLabel::Negative,
        SentimentLabel::Neutral,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "positive",
            SentimentLabel::Negative => "negative",
            SentimentLabel::Neutral => "neutral",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SentimentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "positive" => Ok(SentimentLabel::Positive),
            "negative" => Ok(SentimentLabel::Negative),
            "neutral" => Ok(SentimentLabel::Neutral),
            _ => Err(Error::InvalidInput(format!("unknown sentiment label {s:?}"))),
        }
    }
}

/// Anything that may carry a sentiment label (corpus rows, sentence pairs).
pub trait Labeled {
    fn label(&self) -> Option<SentimentLabel>;
}

impl<T> Labeled for (T, SentimentLabel) {
    fn label(&self) -> Option<SentimentLabel> {
        Some(self.1)
    }
}

impl Labeled for SentimentLabel {
    fn label(&self) -> Option<SentimentLabel> {
        Some(*self)
    }
}
