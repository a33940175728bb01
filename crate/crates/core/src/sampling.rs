//! Seeded class rebalancing and train/dev splitting.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so results
//! are identical across runs and platforms for the same input order and seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::labels::{Labeled, SentimentLabel};

/// Target class proportions `positive:negative:neutral`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassRatio {
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
}

impl ClassRatio {
    pub fn new(positive: usize, negative: usize, neutral: usize) -> Result<Self> {
        if positive == 0 || negative == 0 || neutral == 0 {
            return Err(Error::InvalidInput(format!(
                "ratio components must be >= 1, got {positive}:{negative}:{neutral}"
            )));
        }
        Ok(ClassRatio { positive, negative, neutral })
    }

    pub fn get(&self, label: SentimentLabel) -> usize {
        match label {
            SentimentLabel::Positive => self.positive,
            SentimentLabel::Negative => self.negative,
            SentimentLabel::Neutral => self.neutral,
        }
    }
}

impl Default for ClassRatio {
    fn default() -> Self {
        ClassRatio { positive: 1, negative: 1, neutral: 2 }
    }
}

impl FromStr for ClassRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidInput(format!("ratio {s:?} is not of the form P:N:U"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n: Vec<usize> = parts
            .iter()
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        ClassRatio::new(n[0], n[1], n[2])
    }
}

impl fmt::Display for ClassRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.positive, self.negative, self.neutral)
    }
}

/// Which classes the undersampler may shrink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndersampleMode {
    /// Every class is cut to `ratio_c * unit`, `unit = min_c floor(count_c / ratio_c)`.
    #[default]
    ExactRatio,
    /// Only neutral is cut, to `ratio_neu * max(floor(pos/ratio_pos), floor(neg/ratio_neg))`,
    /// capped at the neutral count.
    NeutralOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitConfig {
    pub fn new(train_fraction: f64, seed: u64, stratified: bool) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::InvalidInput(format!(
                "train fraction must lie in (0, 1), got {train_fraction}"
            )));
        }
        Ok(SplitConfig { train_fraction, seed, stratified })
    }
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig { train_fraction: 0.8, seed: 0, stratified: false }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Input positions grouped by label, in input order.
fn positions_by_class<T: Labeled>(items: &[T]) -> Result<[Vec<usize>; 3]> {
    let mut groups: [Vec<usize>; 3] = Default::default();
    for (i, item) in items.iter().enumerate() {
        let label = item
            .label()
            .ok_or_else(|| Error::InvalidInput(format!("item {i} has no label")))?;
        groups[label.index()].push(i);
    }
    Ok(groups)
}

/// Per-class output sizes for the given counts.
pub fn undersample_targets(counts: [usize; 3], ratio: ClassRatio, mode: UndersampleMode) -> [usize; 3] {
    let r = [ratio.positive, ratio.negative, ratio.neutral];
    match mode {
        UndersampleMode::ExactRatio => {
            let unit = (0..3).map(|c| counts[c] / r[c]).min().unwrap_or(0);
            [r[0] * unit, r[1] * unit, r[2] * unit]
        }
        UndersampleMode::NeutralOnly => {
            let unit = (counts[0] / r[0]).max(counts[1] / r[1]);
            [counts[0], counts[1], (r[2] * unit).min(counts[2])]
        }
    }
}

/// Keeps a seeded uniform subset of each class so the output matches the
/// ratio, then shuffles the result with the same generator. Never
/// oversamples.
pub fn undersample<T: Labeled + Clone>(items: &[T], ratio: ClassRatio, seed: u64) -> Result<Vec<T>> {
    undersample_with(items, ratio, seed, UndersampleMode::ExactRatio)
}

pub fn undersample_with<T: Labeled + Clone>(
    items: &[T],
    ratio: ClassRatio,
    seed: u64,
    mode: UndersampleMode,
) -> Result<Vec<T>> {
    let groups = positions_by_class(items)?;
    if let Some(empty) = SentimentLabel::ALL.iter().find(|l| groups[l.index()].is_empty()) {
        return Err(Error::InvalidInput(format!("class {empty} has no examples")));
    }
    let targets = undersample_targets([groups[0].len(), groups[1].len(), groups[2].len()], ratio, mode);

    let mut rng = rng(seed);
    let mut kept: Vec<usize> = Vec::with_capacity(targets.iter().sum());
    for (group, &target) in groups.iter().zip(&targets) {
        if target == group.len() {
            kept.extend_from_slice(group);
        } else {
            kept.extend(group.choose_multiple(&mut rng, target).copied());
        }
    }
    kept.shuffle(&mut rng);
    Ok(kept.into_iter().map(|i| items[i].clone()).collect())
}

fn train_size(n: usize, fraction: f64) -> usize {
    // tolerate representation error such as 0.29 * 100 = 28.999999999999996
    ((fraction * n as f64) + 1e-9).floor() as usize
}

/// Seeded random partition into `(train, dev)` with
/// `|train| = floor(fraction * n)`. When stratified the floor applies per
/// class (unlabeled items form their own group) and remainders go to dev.
pub fn split<T: Labeled + Clone>(items: &[T], config: &SplitConfig) -> Result<(Vec<T>, Vec<T>)> {
    if items.is_empty() {
        return Err(Error::InvalidInput("cannot split an empty list".into()));
    }
    SplitConfig::new(config.train_fraction, config.seed, config.stratified)?;
    let mut rng = rng(config.seed);

    let (mut train_idx, mut dev_idx) = if config.stratified {
        let mut groups: [Vec<usize>; 4] = Default::default();
        for (i, item) in items.iter().enumerate() {
            groups[item.label().map_or(3, SentimentLabel::index)].push(i);
        }
        let mut train = Vec::new();
        let mut dev = Vec::new();
        for mut group in groups {
            group.shuffle(&mut rng);
            let k = train_size(group.len(), config.train_fraction);
            dev.extend_from_slice(&group[k..]);
            group.truncate(k);
            train.extend(group);
        }
        train.shuffle(&mut rng);
        dev.shuffle(&mut rng);
        (train, dev)
    } else {
        let mut order: Vec<usize> = (0..items.len()).collect();
        order.shuffle(&mut rng);
        let dev = order.split_off(train_size(items.len(), config.train_fraction));
        (order, dev)
    };

    let take = |idx: &mut Vec<usize>| idx.drain(..).map(|i| items[i].clone()).collect::<Vec<T>>();
    Ok((take(&mut train_idx), take(&mut dev_idx)))
}

/// Counts per class in canonical order; unlabeled items are ignored.
pub fn class_counts<T: Labeled>(items: &[T]) -> [usize; 3] {
    let mut counts = [0; 3];
    for item in items {
        if let Some(l) = item.label() {
            counts[l.index()] += 1;
        }
    }
    counts
}
