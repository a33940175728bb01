//! Acceptance criteria, one test each. Every test prints a PASS/FAIL line
//! and fails if its check or its time budget does.
//!
//! cargo test -p healthmine-core --test acceptance -- --nocapture

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use healthmine_core::data_io::{AdeAnnotation, TweetRecord};
use healthmine_core::linker::{build_index, link_vector, normalize_pipeline, EmbeddingIndex, LexiconEntry};
use healthmine_core::metrics::{evaluate_extraction, evaluate_sentiment, ExtractionReport, Scope};
use healthmine_core::model::{
    distribution_baseline, majority_class_baseline, predict, train_classifier, BackendRegistry, LookupGenerator,
    TableEncoder, TrainingConfig,
};
use healthmine_core::pairing::{build_pairs, HypothesisTemplate, SentencePair};
use healthmine_core::preprocess::{preprocess_tweet, EmoticonMap};
use healthmine_core::sampling::{class_counts, split, undersample, ClassRatio, SplitConfig};
use healthmine_core::SentimentLabel::{self, *};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus(pos: usize, neg: usize, neu: usize) -> Vec<TweetRecord> {
    common::labels(pos, neg, neu)
        .into_iter()
        .enumerate()
        .map(|(i, l)| TweetRecord::new(format!("t{i:05}"), format!("tweet number {i}")).with_therapy("CBT").with_label(l))
        .collect()
}

fn gold_of(pairs: &[SentencePair]) -> Vec<(String, SentimentLabel)> {
    pairs.iter().map(|p| (p.tweet_id.clone(), p.label.expect("labeled"))).collect()
}

fn baseline_anchor() -> Check {
    let records = corpus(1000, 700, 3300);
    let pairs = build_pairs(&records, &HypothesisTemplate::default(), &EmoticonMap::default()).map_err(|e| e.to_string())?;
    let labels: Vec<SentimentLabel> = pairs.iter().filter_map(|p| p.label).collect();
    let handle = majority_class_baseline(&labels).map_err(|e| e.to_string())?;
    let pred: Vec<_> = predict(&handle, &pairs).records.iter().map(|r| r.as_pair()).collect();
    let report = evaluate_sentiment(&gold_of(&pairs), &pred).map_err(|e| e.to_string())?;
    ensure!(report.micro_f1 == 0.660, "micro-F1 {} != 0.660", report.micro_f1);
    Ok(())
}

fn resampling_anchor() -> Check {
    let records = corpus(1000, 700, 3300);
    let a = undersample(&records, ClassRatio::new(1, 1, 2).unwrap(), 42).map_err(|e| e.to_string())?;
    ensure!(class_counts(&a) == [700, 700, 1400], "counts {:?}", class_counts(&a));
    let b = undersample(&records, ClassRatio::new(1, 1, 2).unwrap(), 42).map_err(|e| e.to_string())?;
    let ids = |v: &[TweetRecord]| v.iter().map(|r| r.tweet_id.clone()).collect::<Vec<_>>();
    ensure!(ids(&a) == ids(&b), "same seed selected different ids");
    ensure!(ids(&a).iter().collect::<HashSet<_>>().len() == a.len(), "an id was selected twice");
    Ok(())
}

fn split_anchor() -> Check {
    let records = corpus(1000, 700, 3300);
    let cfg = SplitConfig::new(0.8, 7, false).unwrap();
    let (train, dev) = split(&records, &cfg).map_err(|e| e.to_string())?;
    ensure!((train.len(), dev.len()) == (4000, 1000), "sizes ({}, {})", train.len(), dev.len());
    let t: HashSet<&str> = train.iter().map(|r| r.tweet_id.as_str()).collect();
    let d: HashSet<&str> = dev.iter().map(|r| r.tweet_id.as_str()).collect();
    ensure!(t.is_disjoint(&d), "train and dev overlap");
    let all: HashSet<&str> = records.iter().map(|r| r.tweet_id.as_str()).collect();
    ensure!(t.union(&d).copied().collect::<HashSet<_>>() == all, "records were lost");
    ensure!(split(&records, &cfg).map_err(|e| e.to_string())? == (train, dev), "same seed gave a different split");
    Ok(())
}

const GOLDEN: &[(&str, &str)] = &[
    ("@mary migraine gone!", "@USER migraine gone!"),
    ("", ""),
    ("mail me a@b.com", "mail me a@b.com"),
    ("hi@bob", "hi@bob"),
    ("@a @b_c @d1", "@USER @USER @USER"),
    ("see https://t.co/xyz now", "see HTTPURL now"),
    ("no links here", "no links here"),
    ("www.example.com/a?b=1", "HTTPURL"),
    ("HTTP://EXAMPLE.COM", "HTTPURL"),
    ("WWW.Site.org ok", "HTTPURL ok"),
    ("see:https://x.io", "see:HTTPURL"),
    ("x https://a.io\tb", "x HTTPURL\tb"),
    ("read https://a.io/x:)", "read HTTPURL"),
    ("great day :)", "great day smiling face"),
    ("plain text", "plain text"),
    (":-( again", "frowning face again"),
    ("</3", "broken heart"),
    ("<3 this", "red heart this"),
    ("XD lol", "laughing face lol"),
    ("so sick 😷 today", "so sick face with medical mask today"),
    ("took 💊 at 9", "took pill at 9"),
    ("@bob try https://x.io :)", "@USER try HTTPURL smiling face"),
    ("love my @dr CBT :)", "love my @USER CBT smiling face"),
    // emoticons go first, so the phrase's first word joins the handle
    ("@bob:)", "@USER face"),
    ("@http://x.io hi", "@USER hi"),
    ("HTTPURL", "HTTPURL"),
    ("@USER", "@USER"),
    ("@USER thanks HTTPURL smiling face", "@USER thanks HTTPURL smiling face"),
];

const FRAGMENTS: &[&str] = &[
    ":)", ":", "(", ")", "/", "-", "@", "@bob", "http://", "https://", "www.", "HTTPURL", "@USER", "😷", "💊", "❤️", "XD",
    "<3", "</3", ":-(", " ", " ", "\t", "a", "b", "x", "D", ".", "_", "é", "pill", "face",
];

fn has_raw_mention(text: &str) -> bool {
    let chars: Vec<char> = text.chars().collect();
    let word = |c: char| c.is_alphanumeric() || c == '_';
    (0..chars.len()).any(|i| {
        if chars[i] != '@' || (i > 0 && !chars[i - 1].is_whitespace()) {
            return false;
        }
        let handle: String = chars[i + 1..].iter().take_while(|c| word(**c)).collect();
        !handle.is_empty() && handle != "USER"
    })
}

fn preprocessing_golden() -> Check {
    let map = EmoticonMap::default();
    ensure!(GOLDEN.len() >= 20, "only {} golden pairs", GOLDEN.len());
    for (input, expected) in GOLDEN {
        let got = preprocess_tweet(input, &map);
        ensure!(got == *expected, "{input:?} -> {got:?}, expected {expected:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..24);
        let text: String = (0..n).map(|_| *FRAGMENTS.choose(&mut rng).unwrap()).collect();
        let once = preprocess_tweet(&text, &map);
        let twice = preprocess_tweet(&once, &map);
        ensure!(once == twice, "not idempotent on {text:?}: {once:?} then {twice:?}");
        let lower = once.to_ascii_lowercase();
        ensure!(!lower.contains("http://") && !lower.contains("https://") && !lower.contains("www."), "raw link left in {once:?}");
        ensure!(!has_raw_mention(&once), "raw mention left in {once:?}");
    }
    Ok(())
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn linker_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dim = 16;
    let random_vec = |rng: &mut ChaCha8Rng| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    // rows rounded to f32 up front so the oracle sees exactly what the index stores
    let rows: Vec<Vec<f64>> = (0..50)
        .map(|_| unit(random_vec(&mut rng)).into_iter().map(|x| f64::from(x as f32)).collect())
        .collect();
    let entries = (0..50).map(|i| LexiconEntry::new(format!("C{i:03}"), format!("term {i}"))).collect();
    let index = EmbeddingIndex::from_parts("planted", entries, &rows).map_err(|e| e.to_string())?;

    for _ in 0..1000 {
        let q = unit(random_vec(&mut rng));
        let qn = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scores: Vec<f64> = rows
            .iter()
            .map(|r| {
                let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                q.iter().zip(r).map(|(a, b)| a * b).sum::<f64>() / (qn * rn)
            })
            .collect();
        let (best, best_score) = scores
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc });
        let (i, s) = index.nearest(&q).map_err(|e| e.to_string())?;
        ensure!(i == best, "top-1 {i} but brute force says {best}");
        ensure!((s - best_score).abs() <= 1e-9, "score {s} vs {best_score}");
        let linked = link_vector(&q, &index, -1.0).map_err(|e| e.to_string())?;
        ensure!(linked.map(|l| l.concept_id) == Some(format!("C{best:03}")), "link_vector disagrees with nearest");
    }

    let boundary = EmbeddingIndex::from_parts("planted", vec![LexiconEntry::new("C1", "x")], &[vec![0.5; 4]])
        .map_err(|e| e.to_string())?;
    let exact = link_vector(&[1.0, 0.0, 0.0, 0.0], &boundary, 0.5).map_err(|e| e.to_string())?;
    ensure!(exact.is_none(), "score exactly 0.5 was linked");
    let above = link_vector(&[1.0, 1e-6, 0.0, 0.0], &boundary, 0.5).map_err(|e| e.to_string())?;
    ensure!(above.as_ref().is_some_and(|l| l.score > 0.5), "score 0.5+eps was not linked: {above:?}");
    Ok(())
}

fn ann(tweet: &str, start: usize, end: usize, concept: &str) -> AdeAnnotation {
    AdeAnnotation { tweet_id: tweet.into(), start, end, span_text: String::new(), concept_id: concept.into() }
}

fn metrics_fixtures() -> Check {
    let ids = |labels: &[SentimentLabel]| -> Vec<(String, SentimentLabel)> {
        labels.iter().enumerate().map(|(i, l)| (format!("t{i}"), *l)).collect()
    };
    let r = evaluate_sentiment(&ids(&[Positive, Negative, Neutral, Neutral]), &ids(&[Positive, Neutral, Neutral, Negative]))
        .map_err(|e| e.to_string())?;
    ensure!(r.micro_f1 == 0.5, "4-item fixture micro-F1 {}", r.micro_f1);
    let gold = ids(&common::labels(20, 14, 66));
    let all_neutral = ids(&[Neutral; 100]);
    let r = evaluate_sentiment(&gold, &all_neutral).map_err(|e| e.to_string())?;
    ensure!(r.micro_f1 == 0.66, "all-neutral micro-F1 {}", r.micro_f1);

    let none = BTreeSet::new();
    let e = |g: &[AdeAnnotation], p: &[AdeAnnotation]| evaluate_extraction(g, p, &none, Scope::Overall).unwrap();
    let r = e(&[ann("t1", 10, 20, "C001")], &[ann("t1", 12, 18, "C001")]);
    ensure!((r.tp, r.f1) == (1, 1.0), "overlap fixture: {r:?}");
    let r = e(&[ann("t1", 10, 20, "C001")], &[ann("t1", 12, 18, "C002")]);
    ensure!((r.tp, r.fp, r.fn_, r.f1) == (0, 1, 1, 0.0), "id mismatch fixture: {r:?}");
    let r = e(&[], &[ann("t2", 0, 3, "C001")]);
    ensure!((r.fp, r.precision, r.recall) == (1, 0.0, 0.0), "no-gold fixture: {r:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let random_anns = |rng: &mut ChaCha8Rng| {
        let mut seen = HashSet::new();
        (0..rng.gen_range(0..12))
            .filter_map(|_| {
                let start = rng.gen_range(0..30);
                let a = ann(&format!("t{}", rng.gen_range(0..4)), start, start + rng.gen_range(1..8), &format!("C{}", rng.gen_range(0..5)));
                seen.insert((a.tweet_id.clone(), a.start, a.end, a.concept_id.clone())).then_some(a)
            })
            .collect::<Vec<_>>()
    };
    for _ in 0..1000 {
        let gold = random_anns(&mut rng);
        let pred = random_anns(&mut rng);
        let train: BTreeSet<String> = (0..5).filter(|_| rng.gen_bool(0.4)).map(|c| format!("C{c}")).collect();
        for scope in [Scope::Overall, Scope::Unseen] {
            let r = evaluate_extraction(&gold, &pred, &train, scope).map_err(|e| e.to_string())?;
            let in_scope = |a: &&AdeAnnotation| scope == Scope::Overall || !train.contains(&a.concept_id);
            let (g, p) = (gold.iter().filter(in_scope).count(), pred.iter().filter(in_scope).count());
            ensure!(r.tp + r.fn_ == g && r.tp + r.fp == p, "count identity broken: {r:?} with |gold|={g} |pred|={p}");
        }
    }
    Ok(())
}

fn training_sanity() -> Check {
    let registry = BackendRegistry::with_builtins();
    let pairs = common::toy_pairs();
    // lr scaled up from the 5e-6 default so a linear model moves in 10 epochs
    let config = TrainingConfig { learning_rate: 0.05, batch_size: 8, seed: 3, ..TrainingConfig::default() };
    ensure!(config.epochs == 10, "default epochs changed");
    let a = train_classifier(&registry, "hashed-linear", "", &pairs, &[], &config).map_err(|e| e.to_string())?;
    let b = train_classifier(&registry, "hashed-linear", "", &pairs, &[], &config).map_err(|e| e.to_string())?;
    let log = a.training_log();
    ensure!(log.len() == 10, "{} epochs logged", log.len());
    ensure!(log[9].train_loss < log[0].train_loss, "loss {} -> {}", log[0].train_loss, log[9].train_loss);
    let run = predict(&a, &pairs);
    let hits = run.records.iter().zip(&pairs).filter(|(r, p)| Some(r.label) == p.label).count();
    ensure!(hits * 100 >= 95 * pairs.len(), "training accuracy {hits}/{}", pairs.len());
    ensure!(run.records == predict(&b, &pairs).records, "seeded runs disagree");
    Ok(())
}

const DIM: usize = 21;
const NOISE_AXIS: usize = 20;

const LEXICON: [(&str, &str); 20] = [
    ("C01", "head pain"),
    ("C02", "nausea"),
    ("C03", "vertigo"),
    ("C04", "insomnia"),
    ("C05", "somnolence"),
    ("C06", "skin eruption"),
    ("C07", "pruritus"),
    ("C08", "abdominal pain"),
    ("C09", "adverse event"),
    ("C10", "asthenia"),
    ("C11", "weight increased"),
    ("C12", "xerostomia"),
    ("C13", "pyrexia"),
    ("C14", "cough"),
    ("C15", "anxiety"),
    ("C16", "tremor"),
    ("C17", "palpitations"),
    ("C18", "constipation"),
    ("C19", "diarrhoea"),
    ("C20", "alopecia"),
];

fn axis(i: usize) -> Vec<f64> {
    let mut v = vec![0.0; DIM];
    v[i] = 1.0;
    v
}

/// Unit vector with cosine `score` to lexicon row `concept` and to no other.
fn planted(concept: usize, score: f64) -> Vec<f64> {
    let mut v = vec![0.0; DIM];
    v[concept] = score;
    v[NOISE_AXIS] = (1.0 - score * score).sqrt();
    v
}

// (id, text, gold (span, concept), generator output, planted (span, concept row, score))
type Row = (&'static str, &'static str, &'static [(&'static str, &'static str)], &'static str, &'static [(&'static str, usize, f64)]);

const TWEETS: [Row; 10] = [
    ("t01", "took the pill and got a headache", &[("headache", "C01")], "headache", &[("headache", 0, 0.95)]),
    ("t02", "felt nauseous all night", &[("nauseous", "C02")], "nauseous", &[("nauseous", 1, 0.8)]),
    ("t03", "so dizzy after my dose", &[("dizzy", "C03")], "dizzy", &[("dizzy", 2, 0.6)]),
    // linked to the wrong concept
    ("t04", "cannot sleep at all", &[("cannot sleep", "C04")], "cannot sleep", &[("cannot sleep", 4, 0.7)]),
    ("t05", "rash on my arms and itching", &[("rash", "C06"), ("itching", "C07")], "rash; itching", &[("rash", 5, 0.92), ("itching", 6, 0.45)]),
    ("t06", "feeling great today", &[], "none", &[]),
    // partial span still overlaps
    ("t07", "my stomach hurts", &[("stomach hurts", "C08")], "stomach", &[("stomach", 7, 0.85)]),
    ("t08", "no side effects so far", &[], "side effects", &[("side effects", 8, 0.75)]),
    ("t09", "terrible fatigue and weight gain", &[("fatigue", "C10"), ("weight gain", "C11")], "fatigue; weight gain", &[("fatigue", 9, 0.3), ("weight gain", 10, 0.97)]),
    // not a substring of the tweet, so it cannot be anchored
    ("t10", "dry mouth since monday", &[("dry mouth", "C12")], "dry mouths", &[("dry mouths", 11, 0.99)]),
];

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

fn check_report(r: &ExtractionReport, counts: (usize, usize, usize), prf: (f64, f64, f64)) -> Check {
    ensure!((r.tp, r.fp, r.fn_) == counts, "{:?} counts ({}, {}, {}), expected {counts:?}", r.scope, r.tp, r.fp, r.fn_);
    ensure!(close(r.precision, prf.0) && close(r.recall, prf.1) && close(r.f1, prf.2), "{r:?}, expected P/R/F1 {prf:?}");
    Ok(())
}

fn end_to_end_task5() -> Check {
    let tweets: Vec<TweetRecord> = TWEETS.iter().map(|t| TweetRecord::new(t.0, t.1)).collect();
    let gold: Vec<AdeAnnotation> = TWEETS
        .iter()
        .flat_map(|t| {
            t.2.iter().map(move |(span, c)| {
                let start = t.1.find(span).expect("gold span in tweet");
                ann(t.0, start, start + span.len(), c)
            })
        })
        .collect();
    let generator = LookupGenerator::new(TWEETS.iter().map(|t| (t.1, t.3)));
    let lexicon: Vec<LexiconEntry> = LEXICON.iter().map(|(c, term)| LexiconEntry::new(*c, *term)).collect();
    let vectors = LEXICON
        .iter()
        .enumerate()
        .map(|(i, (_, term))| (term.to_string(), axis(i)))
        .chain(TWEETS.iter().flat_map(|t| t.4.iter().map(|(span, c, s)| (span.to_string(), planted(*c, *s)))));
    let encoder = TableEncoder::new("table:planted", vectors).map_err(|e| e.to_string())?;
    let index = build_index(&lexicon, &encoder).map_err(|e| e.to_string())?;
    ensure!(index.len() == 20, "index has {} rows", index.len());

    let run = |threshold: f64| normalize_pipeline(&tweets, &generator, &encoder, &index, threshold, None).map_err(|e| e.to_string());
    let (pred, report) = run(0.5)?;
    ensure!(
        (report.spans, report.linked, report.unanchored, report.unlinked) == (11, 8, 1, 2),
        "pipeline counters {report:?}"
    );
    let train: BTreeSet<String> = ["C01", "C02", "C03"].iter().map(|s| s.to_string()).collect();
    let overall = evaluate_extraction(&gold, &pred, &train, Scope::Overall).map_err(|e| e.to_string())?;
    // 6 hits out of 8 linked spans and 10 gold annotations
    check_report(&overall, (6, 2, 4), (0.75, 0.6, 2.0 / 3.0))?;
    let unseen = evaluate_extraction(&gold, &pred, &train, Scope::Unseen).map_err(|e| e.to_string())?;
    check_report(&unseen, (3, 2, 4), (0.6, 3.0 / 7.0, 0.5))?;

    let (strict, _) = run(0.9)?;
    let strict = evaluate_extraction(&gold, &strict, &train, Scope::Overall).map_err(|e| e.to_string())?;
    check_report(&strict, (3, 0, 7), (1.0, 0.3, 6.0 / 13.0))?;
    let mut last_recall = f64::INFINITY;
    for step in 0..=8 {
        let th = 0.5 + 0.05 * f64::from(step);
        let (p, _) = run(th)?;
        let r = evaluate_extraction(&gold, &p, &train, Scope::Overall).map_err(|e| e.to_string())?;
        ensure!(r.recall <= last_recall, "recall rose to {} at threshold {th}", r.recall);
        last_recall = r.recall;
    }
    Ok(())
}

fn distribution_expectation() -> Check {
    let train = common::labels(200, 140, 660);
    let handle = distribution_baseline(&train, 17).map_err(|e| e.to_string())?;
    let gold_labels = common::labels(20_000, 14_000, 66_000);
    let pairs: Vec<SentencePair> = gold_labels
        .iter()
        .enumerate()
        .map(|(i, l)| SentencePair {
            tweet_id: format!("t{i}"),
            premise: String::new(),
            hypothesis: String::new(),
            label: Some(*l),
        })
        .collect();
    let pred: Vec<_> = predict(&handle, &pairs).records.iter().map(|r| r.as_pair()).collect();
    let report = evaluate_sentiment(&gold_of(&pairs), &pred).map_err(|e| e.to_string())?;
    let expected: f64 = [0.20f64, 0.14, 0.66].iter().map(|p| p * p).sum();
    ensure!(close(expected, 0.4952), "analytic value {expected}");
    ensure!((report.micro_f1 - expected).abs() <= 0.01, "accuracy {} vs {expected}", report.micro_f1);
    Ok(())
}

/// Runs one criterion within its time budget and prints its PASS/FAIL line.
fn criterion(n: usize, name: &str, budget: Duration, check: fn() -> Check) {
    let started = Instant::now();
    let outcome = check();
    let elapsed = started.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("took {elapsed:?}, budget {budget:?}"))
        }
    });
    match outcome {
        Ok(()) => println!("PASS {n} {name} ({:.3}s)", elapsed.as_secs_f64()),
        Err(why) => {
            println!("FAIL {n} {name} ({:.3}s): {why}", elapsed.as_secs_f64());
            panic!("criterion {n} failed: {why}");
        }
    }
}

#[test]
fn criterion_1_majority_baseline() {
    criterion(1, "majority baseline micro-F1 = 0.660", Duration::from_secs(1), baseline_anchor);
}

#[test]
fn criterion_2_undersampling() {
    criterion(2, "undersample 1:1:2 -> (700, 700, 1400), seeded", Duration::from_secs(1), resampling_anchor);
}

#[test]
fn criterion_3_split() {
    criterion(3, "split 0.8 of 5000 -> (4000, 1000)", Duration::from_secs(1), split_anchor);
}

#[test]
fn criterion_4_preprocessing() {
    criterion(4, "preprocessing golden pairs and idempotence", Duration::from_secs(5), preprocessing_golden);
}

#[test]
fn criterion_5_linker() {
    criterion(5, "linker top-1 oracle and 0.5 boundary", Duration::from_secs(10), linker_oracle);
}

#[test]
fn criterion_6_metrics() {
    criterion(6, "metrics fixtures and count identities", Duration::from_secs(10), metrics_fixtures);
}

#[test]
fn criterion_7_training() {
    criterion(7, "toy-set training sanity", Duration::from_secs(600), training_sanity);
}

#[test]
fn criterion_8_ade_end_to_end() {
    criterion(8, "ADE normalization end to end", Duration::from_secs(30), end_to_end_task5);
}

#[test]
fn criterion_9_distribution_baseline() {
    criterion(9, "distribution baseline accuracy ~ 0.4952", Duration::from_secs(5), distribution_expectation);
}
