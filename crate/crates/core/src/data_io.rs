//! Tab-separated corpus, prediction and span files.
//!
//! Every format is UTF-8 with `\n` line endings and literal tab separators.
//! There is no quoting: a tab, newline or carriage return inside a field is
//! rejected on write, and shows up as a column-count or content error on read.
//! Character offsets are Unicode code points.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::labels::{Labeled, SentimentLabel};
use crate::pairing::SentencePair;

pub const SENTIMENT_HEADER: &str = "tweet_id\ttext\ttherapy\tlabel";
pub const SENTIMENT_HEADER_UNLABELED: &str = "tweet_id\ttext\ttherapy";
pub const ADE_HEADER: &str = "tweet_id\ttext\thas_ade\tstart\tend\tspan\tconcept_id";
pub const PAIRS_HEADER: &str = "tweet_id\tpremise\thypothesis\tlabel";

/// One tweet, optionally with its therapy aspect and sentiment label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub text: String,
    pub therapy: Option<String>,
    pub label: Option<SentimentLabel>,
}

impl TweetRecord {
    pub fn new(tweet_id: impl Into<String>, text: impl Into<String>) -> Self {
        TweetRecord {
            tweet_id: tweet_id.into(),
            text: text.into(),
            therapy: None,
            label: None,
        }
    }

    pub fn with_therapy(mut self, therapy: impl Into<String>) -> Self {
        self.therapy = Some(therapy.into());
        self
    }

    pub fn with_label(mut self, label: SentimentLabel) -> Self {
        self.label = Some(label);
        self
    }
}

impl Labeled for TweetRecord {
    fn label(&self) -> Option<SentimentLabel> {
        self.label
    }
}

/// An adverse drug event mention: code-point span `[start, end)` of a tweet
/// plus the lexicon concept it normalizes to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdeAnnotation {
    pub tweet_id: String,
    pub start: usize,
    pub end: usize,
    pub span_text: String,
    pub concept_id: String,
}

impl AdeAnnotation {
    /// Checks `0 <= start < end <= len(text)` and that `span_text` matches
    /// the text at those offsets, ignoring case.
    pub fn validate_against(&self, text: &str) -> std::result::Result<(), String> {
        let len = text.chars().count();
        if self.start >= self.end || self.end > len {
            return Err(format!(
                "offsets [{}, {}) out of range for text of {} characters",
                self.start, self.end, len
            ));
        }
        let actual = char_slice(text, self.start, self.end);
        if !eq_ignore_case(actual, &self.span_text) {
            return Err(format!(
                "span {:?} does not match text {:?} at [{}, {})",
                self.span_text, actual, self.start, self.end
            ));
        }
        Ok(())
    }
}

/// A tweet from the ADE corpus with all of its annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeTweet {
    pub record: TweetRecord,
    pub annotations: Vec<AdeAnnotation>,
}

/// A generated (not yet anchored) span for a tweet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanRow {
    pub tweet_id: String,
    pub span: String,
}

/// Rows accepted by [`write_predictions`].
pub trait PredictionRow {
    fn tsv_fields(&self) -> Vec<String>;
}

impl PredictionRow for (String, SentimentLabel) {
    fn tsv_fields(&self) -> Vec<String> {
        vec![self.0.clone(), self.1.to_string()]
    }
}

impl PredictionRow for AdeAnnotation {
    fn tsv_fields(&self) -> Vec<String> {
        vec![
            self.tweet_id.clone(),
            self.start.to_string(),
            self.end.to_string(),
            self.span_text.clone(),
            self.concept_id.clone(),
        ]
    }
}

impl PredictionRow for SpanRow {
    fn tsv_fields(&self) -> Vec<String> {
        vec![self.tweet_id.clone(), self.span.clone()]
    }
}

/// Substring by code-point offsets. Offsets past the end are clamped.
pub fn char_slice(text: &str, start: usize, end: usize) -> &str {
    let byte_at = |n: usize| {
        text.char_indices()
            .nth(n)
            .map(|(i, _)| i)
            .unwrap_or(text.len())
    };
    let (s, e) = (byte_at(start), byte_at(end));
    &text[s..e.max(s)]
}

/// Per-character case-insensitive comparison; `a` and `b` must have the same
/// number of code points to compare equal.
pub fn eq_ignore_case(a: &str, b: &str) -> bool {
    let mut a = a.chars();
    let mut b = b.chars();
    loop {
        match (a.next(), b.next()) {
            (None, None) => return true,
            (Some(x), Some(y)) => {
                if !char_eq_ignore_case(x, y) {
                    return false;
                }
            }
            _ => return false,
        }
    }
}

pub(crate) fn char_eq_ignore_case(x: char, y: char) -> bool {
    x == y || x.to_lowercase().eq(y.to_lowercase())
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes through a sibling temp file and a rename, so readers never see a
/// half-written file.
fn write_string(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).map_err(|e| Error::io(path, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// Data lines of a TSV source as `(1-based line number, line)`. A single
/// trailing newline is not a row.
fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    let body = src.strip_suffix('\n').unwrap_or(src);
    let empty = body.is_empty() && src.len() <= 1;
    body.split('\n')
        .enumerate()
        .filter(move |_| !empty)
        .map(|(i, l)| (i + 1, l))
}

fn split_row<'a>(origin: &str, line_no: usize, line: &'a str, columns: usize) -> Result<Vec<&'a str>> {
    if line.contains('\r') {
        return Err(Error::format(origin, line_no, "carriage return in row"));
    }
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != columns {
        return Err(Error::format(
            origin,
            line_no,
            format!("expected {columns} tab-separated columns, found {}", fields.len()),
        ));
    }
    Ok(fields)
}

fn check_field(value: &str) -> Result<()> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(Error::InvalidInput(format!(
            "field {value:?} contains a tab or line break"
        )));
    }
    Ok(())
}

fn render_rows<I, R>(header: Option<&str>, rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str(h);
        out.push('\n');
    }
    for row in rows {
        let mut first = true;
        for field in row {
            check_field(&field)?;
            if !first {
                out.push('\t');
            }
            out.push_str(&field);
            first = false;
        }
        out.push('\n');
    }
    Ok(out)
}

fn non_empty(value: &str) -> Option<String> {
    if value.is_empty() {
        None
    } else {
        Some(value.to_string())
    }
}

/// Parses a sentiment corpus (`tweet_id\ttext\ttherapy[\tlabel]`).
pub fn parse_sentiment_corpus(src: &str, origin: &str) -> Result<Vec<TweetRecord>> {
    let mut rows = lines(src);
    let columns = match rows.next() {
        Some((_, SENTIMENT_HEADER)) => 4,
        Some((_, SENTIMENT_HEADER_UNLABELED)) => 3,
        Some((n, other)) => {
            return Err(Error::format(
                origin,
                n,
                format!("unexpected header {other:?}, expected {SENTIMENT_HEADER:?}"),
            ))
        }
        None => return Err(Error::format(origin, 1, "missing header row")),
    };

    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (n, line) in rows {
        let f = split_row(origin, n, line, columns)?;
        if f[0].is_empty() {
            return Err(Error::format(origin, n, "empty tweet_id"));
        }
        if !seen.insert(f[0]) {
            return Err(Error::format(origin, n, format!("duplicate tweet_id {:?}", f[0])));
        }
        let label = match f.get(3) {
            Some(l) if !l.is_empty() => Some(
                l.parse::<SentimentLabel>()
                    .map_err(|_| Error::format(origin, n, format!("unknown label {l:?}")))?,
            ),
            _ => None,
        };
        records.push(TweetRecord {
            tweet_id: f[0].to_string(),
            text: f[1].to_string(),
            therapy: non_empty(f[2]),
            label,
        });
    }
    Ok(records)
}

pub fn load_sentiment_corpus(path: impl AsRef<Path>) -> Result<Vec<TweetRecord>> {
    let path = path.as_ref();
    parse_sentiment_corpus(&read_to_string(path)?, &path.display().to_string())
}

pub fn render_sentiment_corpus(records: &[TweetRecord]) -> Result<String> {
    render_rows(
        Some(SENTIMENT_HEADER),
        records.iter().map(|r| {
            [
                r.tweet_id.clone(),
                r.text.clone(),
                r.therapy.clone().unwrap_or_default(),
                r.label.map(|l| l.to_string()).unwrap_or_default(),
            ]
        }),
    )
}

pub fn write_sentiment_corpus(records: &[TweetRecord], path: impl AsRef<Path>) -> Result<()> {
    write_string(path.as_ref(), &render_sentiment_corpus(records)?)
}

fn parse_offset(origin: &str, n: usize, name: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::format(origin, n, format!("non-integer {name} offset {value:?}")))
}

/// Parses an ADE corpus, grouping repeated rows of one tweet.
pub fn parse_ade_corpus(src: &str, origin: &str) -> Result<Vec<AdeTweet>> {
    let mut rows = lines(src);
    match rows.next() {
        Some((_, ADE_HEADER)) => {}
        Some((n, other)) => {
            return Err(Error::format(
                origin,
                n,
                format!("unexpected header {other:?}, expected {ADE_HEADER:?}"),
            ))
        }
        None => return Err(Error::format(origin, 1, "missing header row")),
    }

    let mut tweets: Vec<AdeTweet> = Vec::new();
    let mut by_id: HashMap<String, (usize, bool)> = HashMap::new();
    for (n, line) in rows {
        let f = split_row(origin, n, line, 7)?;
        let (id, text) = (f[0], f[1]);
        if id.is_empty() {
            return Err(Error::format(origin, n, "empty tweet_id"));
        }
        let has_ade = match f[2] {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::format(origin, n, format!("has_ade must be 0 or 1, got {other:?}")))
            }
        };

        let annotation = if has_ade {
            let ann = AdeAnnotation {
                tweet_id: id.to_string(),
                start: parse_offset(origin, n, "start", f[3])?,
                end: parse_offset(origin, n, "end", f[4])?,
                span_text: f[5].to_string(),
                concept_id: f[6].to_string(),
            };
            if ann.concept_id.is_empty() {
                return Err(Error::format(origin, n, "empty concept_id"));
            }
            ann.validate_against(text)
                .map_err(|m| Error::format(origin, n, m))?;
            Some(ann)
        } else {
            if f[3..].iter().any(|c| !c.is_empty()) {
                return Err(Error::format(origin, n, "has_ade=0 row with span columns filled"));
            }
            None
        };

        match by_id.get(id) {
            Some(&(idx, flag)) => {
                let tweet = &mut tweets[idx];
                if tweet.record.text != text {
                    return Err(Error::format(origin, n, format!("tweet {id:?} repeated with different text")));
                }
                if flag != has_ade || !has_ade {
                    return Err(Error::format(origin, n, format!("tweet {id:?} repeated with inconsistent has_ade")));
                }
                tweet.annotations.extend(annotation);
            }
            None => {
                by_id.insert(id.to_string(), (tweets.len(), has_ade));
                tweets.push(AdeTweet {
                    record: TweetRecord::new(id, text),
                    annotations: annotation.into_iter().collect(),
                });
            }
        }
    }
    Ok(tweets)
}

pub fn load_ade_corpus(path: impl AsRef<Path>) -> Result<Vec<AdeTweet>> {
    let path = path.as_ref();
    parse_ade_corpus(&read_to_string(path)?, &path.display().to_string())
}

pub fn render_ade_corpus(tweets: &[AdeTweet]) -> Result<String> {
    let mut rows: Vec<[String; 7]> = Vec::new();
    for t in tweets {
        let (id, text) = (&t.record.tweet_id, &t.record.text);
        if t.annotations.is_empty() {
            rows.push([id.clone(), text.clone(), "0".into(), String::new(), String::new(), String::new(), String::new()]);
        }
        for a in &t.annotations {
            rows.push([
                id.clone(),
                text.clone(),
                "1".into(),
                a.start.to_string(),
                a.end.to_string(),
                a.span_text.clone(),
                a.concept_id.clone(),
            ]);
        }
    }
    render_rows(Some(ADE_HEADER), rows)
}

pub fn write_ade_corpus(tweets: &[AdeTweet], path: impl AsRef<Path>) -> Result<()> {
    write_string(path.as_ref(), &render_ade_corpus(tweets)?)
}

/// Loads tweet texts from either a sentiment corpus or an ADE corpus,
/// dispatching on the header. Labels and annotations are kept where present.
pub fn load_tweets(path: impl AsRef<Path>) -> Result<Vec<TweetRecord>> {
    let path = path.as_ref();
    let src = read_to_string(path)?;
    let origin = path.display().to_string();
    if src.split('\n').next() == Some(ADE_HEADER) {
        Ok(parse_ade_corpus(&src, &origin)?
            .into_iter()
            .map(|t| t.record)
            .collect())
    } else {
        parse_sentiment_corpus(&src, &origin)
    }
}

/// Renders prediction rows, one per line, no header.
pub fn render_predictions<R: PredictionRow>(rows: &[R]) -> Result<String> {
    render_rows(None, rows.iter().map(|r| r.tsv_fields()))
}

/// Writes headerless prediction rows: `tweet_id\tlabel` for sentiment,
/// `tweet_id\tstart\tend\tspan\tconcept_id` for ADE normalization.
pub fn write_predictions<R: PredictionRow>(rows: &[R], path: impl AsRef<Path>) -> Result<()> {
    write_string(path.as_ref(), &render_predictions(rows)?)
}

pub fn parse_sentiment_predictions(src: &str, origin: &str) -> Result<Vec<(String, SentimentLabel)>> {
    lines(src)
        .map(|(n, line)| {
            let f = split_row(origin, n, line, 2)?;
            let label = f[1]
                .parse::<SentimentLabel>()
                .map_err(|_| Error::format(origin, n, format!("unknown label {:?}", f[1])))?;
            Ok((f[0].to_string(), label))
        })
        .collect()
}

pub fn load_sentiment_predictions(path: impl AsRef<Path>) -> Result<Vec<(String, SentimentLabel)>> {
    let path = path.as_ref();
    parse_sentiment_predictions(&read_to_string(path)?, &path.display().to_string())
}

pub fn parse_ade_predictions(src: &str, origin: &str) -> Result<Vec<AdeAnnotation>> {
    lines(src)
        .map(|(n, line)| {
            let f = split_row(origin, n, line, 5)?;
            let ann = AdeAnnotation {
                tweet_id: f[0].to_string(),
                start: parse_offset(origin, n, "start", f[1])?,
                end: parse_offset(origin, n, "end", f[2])?,
                span_text: f[3].to_string(),
                concept_id: f[4].to_string(),
            };
            if ann.start >= ann.end {
                return Err(Error::format(origin, n, "start must be smaller than end"));
            }
            Ok(ann)
        })
        .collect()
}

pub fn load_ade_predictions(path: impl AsRef<Path>) -> Result<Vec<AdeAnnotation>> {
    let path = path.as_ref();
    parse_ade_predictions(&read_to_string(path)?, &path.display().to_string())
}

pub fn parse_spans(src: &str, origin: &str) -> Result<Vec<SpanRow>> {
    lines(src)
        .map(|(n, line)| {
            let f = split_row(origin, n, line, 2)?;
            Ok(SpanRow {
                tweet_id: f[0].to_string(),
                span: f[1].to_string(),
            })
        })
        .collect()
}

pub fn load_spans(path: impl AsRef<Path>) -> Result<Vec<SpanRow>> {
    let path = path.as_ref();
    parse_spans(&read_to_string(path)?, &path.display().to_string())
}

pub fn parse_pairs(src: &str, origin: &str) -> Result<Vec<SentencePair>> {
    let mut rows = lines(src);
    match rows.next() {
        Some((_, PAIRS_HEADER)) => {}
        Some((n, other)) => return Err(Error::format(origin, n, format!("unexpected header {other:?}"))),
        None => return Err(Error::format(origin, 1, "missing header row")),
    }
    rows.map(|(n, line)| {
        let f = split_row(origin, n, line, 4)?;
        let label = match f[3] {
            "" => None,
            l => Some(
                l.parse::<SentimentLabel>()
                    .map_err(|_| Error::format(origin, n, format!("unknown label {l:?}")))?,
            ),
        };
        Ok(SentencePair {
            tweet_id: f[0].to_string(),
            premise: f[1].to_string(),
            hypothesis: f[2].to_string(),
            label,
        })
    })
    .collect()
}

pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<SentencePair>> {
    let path = path.as_ref();
    parse_pairs(&read_to_string(path)?, &path.display().to_string())
}

pub fn write_pairs(pairs: &[SentencePair], path: impl AsRef<Path>) -> Result<()> {
    let out = render_rows(
        Some(PAIRS_HEADER),
        pairs.iter().map(|p| {
            [
                p.tweet_id.clone(),
                p.premise.clone(),
                p.hypothesis.clone(),
                p.label.map(|l| l.to_string()).unwrap_or_default(),
            ]
        }),
    )?;
    write_string(path.as_ref(), &out)
}

/// Training concept ids from either a plain list (one id per line) or an ADE
/// corpus file.
pub fn load_concept_set(path: impl AsRef<Path>) -> Result<BTreeSet<String>> {
    let path = path.as_ref();
    let src = read_to_string(path)?;
    if src.split('\n').next() == Some(ADE_HEADER) {
        let tweets = parse_ade_corpus(&src, &path.display().to_string())?;
        return Ok(tweets
            .iter()
            .flat_map(|t| t.annotations.iter().map(|a| a.concept_id.clone()))
            .collect());
    }
    Ok(src
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labeled_row() {
        let src = format!("{SENTIMENT_HEADER}\nt1\tI love it\tCBT\tpositive\n");
        let got = parse_sentiment_corpus(&src, "x").unwrap();
        assert_eq!(
            got,
            vec![TweetRecord::new("t1", "I love it")
                .with_therapy("CBT")
                .with_label(SentimentLabel::Positive)]
        );
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_sentiment_corpus(&format!("{SENTIMENT_HEADER}\n"), "x").unwrap().is_empty());
        assert!(parse_sentiment_corpus(SENTIMENT_HEADER, "x").unwrap().is_empty());
    }

    #[test]
    fn label_is_case_folded() {
        let src = format!("{SENTIMENT_HEADER}\nt1\ttext\tCBT\tPositive\n");
        assert_eq!(parse_sentiment_corpus(&src, "x").unwrap()[0].label, Some(SentimentLabel::Positive));
    }

    #[test]
    fn unlabeled_header() {
        let src = format!("{SENTIMENT_HEADER_UNLABELED}\nt1\ttext\tyoga\n");
        let got = parse_sentiment_corpus(&src, "x").unwrap();
        assert_eq!(got[0].label, None);
        assert_eq!(got[0].therapy.as_deref(), Some("yoga"));
    }

    #[test]
    fn unknown_label_names_line() {
        let src = format!("{SENTIMENT_HEADER}\nt1\ta\tb\tpositive\nt2\ta\tb\tmeh\n");
        match parse_sentiment_corpus(&src, "c.tsv").unwrap_err() {
            Error::Format { line, origin, .. } => {
                assert_eq!(line, 3);
                assert_eq!(origin, "c.tsv");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn duplicate_id_rejected() {
        let src = format!("{SENTIMENT_HEADER}\nt1\ta\tb\t\nt1\tc\td\t\n");
        assert!(matches!(parse_sentiment_corpus(&src, "x"), Err(Error::Format { line: 3, .. })));
    }

    #[test]
    fn tab_in_text_rejected() {
        let src = format!("{SENTIMENT_HEADER}\nt1\ta\tb\tc\tpositive\n");
        assert!(matches!(parse_sentiment_corpus(&src, "x"), Err(Error::Format { line: 2, .. })));
        let rec = TweetRecord::new("t1", "has\ttab");
        assert!(matches!(render_sentiment_corpus(&[rec]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn ade_single_annotation() {
        let src = format!("{ADE_HEADER}\nt9\tdrug X gave me hives\t1\t15\t20\thives\tC100\n");
        let got = parse_ade_corpus(&src, "x").unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(
            got[0].annotations,
            vec![AdeAnnotation {
                tweet_id: "t9".into(),
                start: 15,
                end: 20,
                span_text: "hives".into(),
                concept_id: "C100".into(),
            }]
        );
    }

    #[test]
    fn ade_negative_row() {
        let src = format!("{ADE_HEADER}\nt2\tfine today\t0\t\t\t\t\n");
        let got = parse_ade_corpus(&src, "x").unwrap();
        assert_eq!(got[0].record.text, "fine today");
        assert!(got[0].annotations.is_empty());
    }

    #[test]
    fn ade_rows_grouped() {
        let src = format!(
            "{ADE_HEADER}\nt3\tnausea and Headache\t1\t0\t6\tnausea\tC1\nt3\tnausea and Headache\t1\t11\t19\theadache\tC2\n"
        );
        let got = parse_ade_corpus(&src, "x").unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].annotations.len(), 2);
        assert_eq!(got[0].annotations[1].span_text, "headache");
    }

    #[test]
    fn ade_offsets_are_code_points() {
        // "😷 hives": the emoji is one code point but four bytes.
        let src = format!("{ADE_HEADER}\nt1\t😷 hives\t1\t2\t7\thives\tC1\n");
        assert_eq!(parse_ade_corpus(&src, "x").unwrap()[0].annotations[0].start, 2);
    }

    #[test]
    fn ade_mismatched_span_names_line() {
        let src = format!("{ADE_HEADER}\nt1\tok\t0\t\t\t\t\nt9\tdrug X gave me hives\t1\t14\t19\thives\tC100\n");
        assert!(matches!(parse_ade_corpus(&src, "x"), Err(Error::Format { line: 3, .. })));
    }

    #[test]
    fn ade_non_integer_offset() {
        let src = format!("{ADE_HEADER}\nt9\tdrug X gave me hives\t1\tfifteen\t20\thives\tC100\n");
        match parse_ade_corpus(&src, "x").unwrap_err() {
            Error::Format { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("non-integer"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn writes_sentiment_prediction_rows() {
        let out = render_predictions(&[("t1".to_string(), SentimentLabel::Positive)]).unwrap();
        assert_eq!(out, "t1\tpositive\n");
        let empty: Vec<(String, SentimentLabel)> = vec![];
        assert_eq!(render_predictions(&empty).unwrap(), "");
    }

    #[test]
    fn prediction_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.tsv");
        let rows = vec![
            ("t1".to_string(), SentimentLabel::Positive),
            ("t2".to_string(), SentimentLabel::Neutral),
        ];
        write_predictions(&rows, &path).unwrap();
        assert_eq!(load_sentiment_predictions(&path).unwrap(), rows);

        let ade = vec![AdeAnnotation {
            tweet_id: "t1".into(),
            start: 3,
            end: 9,
            span_text: "nausea".into(),
            concept_id: "C5".into(),
        }];
        write_predictions(&ade, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "t1\t3\t9\tnausea\tC5\n");
        assert_eq!(load_ade_predictions(&path).unwrap(), ade);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(load_sentiment_corpus("/nonexistent/corpus.tsv"), Err(Error::Io { .. })));
    }

    #[test]
    fn char_slice_by_code_point() {
        assert_eq!(char_slice("a😷bc", 1, 3), "😷b");
        assert_eq!(char_slice("abc", 1, 10), "bc");
    }
}
