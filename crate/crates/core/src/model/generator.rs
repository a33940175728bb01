//! Text-to-text span generators and their output format.
//!
//! A generator reads a tweet and emits one string: the ADE spans joined by
//! `"; "`, or the literal `none`. The same format is used for fine-tuning
//! targets, see [`format_span_target`].

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crate::data_io::{char_eq_ignore_case, AdeTweet};
use crate::error::{Error, Result};

pub const SPAN_SEPARATOR: &str = "; ";
pub const NO_SPANS: &str = "none";

pub trait SpanGenerator: Send + Sync {
    fn id(&self) -> &str;
    fn generate(&self, text: &str) -> Result<String>;
}

/// Parses generator output: `none` is the empty list, otherwise spans split
/// on `"; "`, trimmed, empties dropped. Order and duplicates are kept.
pub fn parse_generated_spans(output: &str) -> Vec<String> {
    if output.trim() == NO_SPANS {
        return Vec::new();
    }
    output
        .split(SPAN_SEPARATOR)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Target sequence for a tweet with the given gold spans.
pub fn format_span_target<S: AsRef<str>>(spans: &[S]) -> String {
    if spans.is_empty() {
        NO_SPANS.to_string()
    } else {
        spans.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(SPAN_SEPARATOR)
    }
}

pub fn extract_ade_spans(generator: &dyn SpanGenerator, tweet_text: &str) -> Result<Vec<String>> {
    Ok(parse_generated_spans(&generator.generate(tweet_text)?))
}

/// Emits every known ADE phrase found in the text at word boundaries,
/// longest match first, left to right. Phrases are learned from training
/// targets.
#[derive(Debug, Clone, Default)]
pub struct GazetteerGenerator {
    // lowercased phrases keyed by first char
    phrases: HashMap<char, Vec<Vec<char>>>,
    count: usize,
}

impl GazetteerGenerator {
    pub const ID: &'static str = "gazetteer";

    pub fn from_phrases<I, S>(phrases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let unique: BTreeSet<String> = phrases
            .into_iter()
            .map(|p| p.as_ref().trim().to_lowercase())
            .filter(|p| !p.is_empty())
            .collect();
        let mut by_first: HashMap<char, Vec<Vec<char>>> = HashMap::new();
        for p in &unique {
            let chars: Vec<char> = p.chars().collect();
            by_first.entry(chars[0]).or_default().push(chars);
        }
        for v in by_first.values_mut() {
            v.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        }
        GazetteerGenerator { phrases: by_first, count: unique.len() }
    }

    /// Learns from `(text, target)` pairs in the generator output format.
    pub fn fit<'a>(examples: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Self::from_phrases(examples.into_iter().flat_map(|(_, target)| parse_generated_spans(target)))
    }

    pub fn fit_corpus(tweets: &[AdeTweet]) -> Self {
        let targets: Vec<(String, String)> = tweets
            .iter()
            .map(|t| {
                let spans: Vec<&str> = t.annotations.iter().map(|a| a.span_text.as_str()).collect();
                (t.record.text.clone(), format_span_target(&spans))
            })
            .collect();
        Self::fit(targets.iter().map(|(a, b)| (a.as_str(), b.as_str())))
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// One phrase per line, sorted.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut all: Vec<String> = self
            .phrases
            .values()
            .flatten()
            .map(|c| c.iter().collect())
            .collect();
        all.sort();
        let body: String = all.iter().map(|p| format!("{p}\n")).collect();
        fs::write(path, body).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_phrases(src.lines()))
    }

    fn matches_at(phrase: &[char], text: &[char], at: usize) -> bool {
        let end = at + phrase.len();
        end <= text.len()
            && phrase.iter().zip(&text[at..end]).all(|(p, t)| char_eq_ignore_case(*p, *t))
            && text.get(end).is_none_or(|c| !c.is_alphanumeric())
    }
}

impl SpanGenerator for GazetteerGenerator {
    fn id(&self) -> &str {
        Self::ID
    }

    fn generate(&self, text: &str) -> Result<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut spans: Vec<String> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let at_boundary = i == 0 || !chars[i - 1].is_alphanumeric();
            let found = if at_boundary {
                let first = chars[i].to_lowercase().next().unwrap_or(chars[i]);
                self.phrases
                    .get(&first)
                    .and_then(|cands| cands.iter().find(|p| Self::matches_at(p, &chars, i)))
            } else {
                None
            };
            match found {
                Some(p) => {
                    spans.push(chars[i..i + p.len()].iter().collect());
                    i += p.len();
                }
                None => i += 1,
            }
        }
        Ok(format_span_target(&spans))
    }
}

/// Fixed text -> output table. Unknown texts are a backend error.
#[derive(Debug, Clone, Default)]
pub struct LookupGenerator {
    table: HashMap<String, String>,
}

impl LookupGenerator {
    pub const ID: &'static str = "lookup";

    pub fn new<I, K, V>(rows: I) -> Self
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        LookupGenerator {
            table: rows.into_iter().map(|(k, v)| (k.into(), v.into())).collect(),
        }
    }

    /// Headerless `text\toutput` TSV.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let origin = path.display().to_string();
        let mut rows = Vec::new();
        for (i, line) in src.lines().enumerate() {
            match line.split_once('\t') {
                Some((k, v)) if !v.contains('\t') => rows.push((k.to_string(), v.to_string())),
                _ => return Err(Error::format(&origin, i + 1, "expected `text\\toutput`")),
            }
        }
        Ok(Self::new(rows))
    }
}

impl SpanGenerator for LookupGenerator {
    fn id(&self) -> &str {
        Self::ID
    }

    fn generate(&self, text: &str) -> Result<String> {
        self.table
            .get(text)
            .cloned()
            .ok_or_else(|| Error::Backend(format!("lookup generator has no output for {text:?}")))
    }
}
