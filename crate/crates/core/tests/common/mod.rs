#![allow(dead_code)]

use healthmine_core::pairing::SentencePair;
use healthmine_core::SentimentLabel;

const THERAPIES: [&str; 4] = ["CBT", "ibuprofen", "yoga", "physical therapy"];
const CUES: [[&str; 4]; 3] = [
    ["love", "great", "helped", "amazing"],
    ["hate", "awful", "worse", "useless"],
    ["started", "asked", "reading", "heard"],
];
const FILLER: [&str; 8] = ["today", "again", "finally", "honestly", "lately", "tonight", "still", "maybe"];

/// 32 labeled pairs with pairwise distinct premises.
pub fn toy_pairs() -> Vec<SentencePair> {
    (0..32)
        .map(|i| {
            let label = SentimentLabel::ALL[i % 3];
            let therapy = THERAPIES[i % 4];
            let cue = CUES[label.index()][(i / 3) % 4];
            let filler = FILLER[i % 8];
            SentencePair {
                tweet_id: format!("toy{i}"),
                premise: format!("{filler} {cue} my {therapy} number{i}"),
                hypothesis: format!("This is on {therapy}"),
                label: Some(label),
            }
        })
        .collect()
}

pub fn labels(pos: usize, neg: usize, neu: usize) -> Vec<SentimentLabel> {
    let mut v = vec![SentimentLabel::Positive; pos];
    v.extend(vec![SentimentLabel::Negative; neg]);
    v.extend(vec![SentimentLabel::Neutral; neu]);
    v
}
