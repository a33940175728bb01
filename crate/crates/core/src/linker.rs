//! ADE span normalization: exhaustive top-1 cosine retrieval over an
//! embedded lexicon, plus recovery of span character offsets.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data_io::{char_eq_ignore_case, AdeAnnotation, TweetRecord};
use crate::error::{Error, Result};
use crate::model::{encode_text, extract_ade_spans, SpanGenerator, TextEncoder};
use crate::preprocess::{preprocess_tweet, EmoticonMap};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Row norms of a built index must be within this of 1.
const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub concept_id: String,
    pub term: String,
}

impl LexiconEntry {
    pub fn new(concept_id: impl Into<String>, term: impl Into<String>) -> Self {
        LexiconEntry {
            concept_id: concept_id.into(),
            term: term.into(),
        }
    }
}

/// Parses a headerless `concept_id\tterm` TSV. Repeated identical rows are
/// collapsed; one concept may own several terms.
pub fn parse_lexicon(src: &str, origin: &str) -> Result<Vec<LexiconEntry>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let n = i + 1;
        let (id, term) = line
            .split_once('\t')
            .ok_or_else(|| Error::format(origin, n, "expected `concept_id\\tterm`"))?;
        if term.contains('\t') {
            return Err(Error::format(origin, n, "too many columns"));
        }
        if id.trim().is_empty() || term.trim().is_empty() {
            return Err(Error::format(origin, n, "blank concept id or term"));
        }
        let entry = LexiconEntry::new(id, term);
        if seen.insert(entry.clone()) {
            out.push(entry);
        }
    }
    Ok(out)
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Vec<LexiconEntry>> {
    let path = path.as_ref();
    let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_lexicon(&src, &path.display().to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct IndexManifest {
    encoder_id: String,
    dimension: usize,
    count: usize,
}

const MANIFEST_FILE: &str = "manifest.json";
const ENTRIES_FILE: &str = "entries.tsv";
const VECTORS_FILE: &str = "vectors.f32";

/// Lexicon terms with one unit vector each, stored row-major as `f32`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingIndex {
    encoder_id: String,
    dimension: usize,
    entries: Vec<LexiconEntry>,
    vectors: Vec<f32>,
}

impl EmbeddingIndex {
    /// Builds from precomputed rows; every row must be unit length.
    pub fn from_parts(encoder_id: impl Into<String>, entries: Vec<LexiconEntry>, rows: &[Vec<f64>]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("cannot index an empty lexicon".into()));
        }
        if rows.len() != entries.len() {
            return Err(Error::InvalidInput(format!("{} entries but {} vectors", entries.len(), rows.len())));
        }
        let dimension = rows[0].len();
        let mut vectors = Vec::with_capacity(dimension * rows.len());
        for (row, entry) in rows.iter().zip(&entries) {
            if row.len() != dimension || dimension == 0 {
                return Err(Error::InvalidInput(format!("vector for {:?} has the wrong dimension", entry.term)));
            }
            vectors.extend(row.iter().map(|&x| x as f32));
        }
        let index = EmbeddingIndex {
            encoder_id: encoder_id.into(),
            dimension,
            entries,
            vectors,
        };
        index.check_norms()?;
        Ok(index)
    }

    fn check_norms(&self) -> Result<()> {
        for (i, row) in self.vectors.chunks(self.dimension).enumerate() {
            let norm = row.iter().map(|&x| f64::from(x) * f64::from(x)).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InvalidInput(format!(
                    "index row {i} ({:?}) has norm {norm}",
                    self.entries[i].term
                )));
            }
        }
        Ok(())
    }

    pub fn encoder_id(&self) -> &str {
        &self.encoder_id
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.vectors[i * self.dimension..(i + 1) * self.dimension]
    }

    /// Best-scoring row for a query vector: highest cosine, ties to the
    /// smallest concept id, then the earliest entry.
    pub fn nearest(&self, query: &[f64]) -> Result<(usize, f64)> {
        if query.len() != self.dimension {
            return Err(Error::InvalidInput(format!(
                "query has {} dims, index has {}",
                query.len(),
                self.dimension
            )));
        }
        let q_norm = l2(query.iter().copied());
        if q_norm == 0.0 {
            return Err(Error::InvalidInput("zero query vector".into()));
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.len() {
            let row = self.row(i);
            let dot: f64 = query.iter().zip(row).map(|(q, &r)| q * f64::from(r)).sum();
            let score = dot / (q_norm * l2(row.iter().map(|&r| f64::from(r))));
            let better = match best {
                None => true,
                Some((b, s)) => {
                    score > s || (score == s && self.entries[i].concept_id < self.entries[b].concept_id)
                }
            };
            if better {
                best = Some((i, score));
            }
        }
        Ok(best.expect("index is non-empty"))
    }

    /// Writes `manifest.json`, `entries.tsv` and little-endian `vectors.f32`.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let manifest = IndexManifest {
            encoder_id: self.encoder_id.clone(),
            dimension: self.dimension,
            count: self.entries.len(),
        };
        let write = |name: &str, bytes: &[u8]| {
            let p = dir.join(name);
            fs::write(&p, bytes).map_err(|e| Error::io(p, e))
        };
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        write(MANIFEST_FILE, json.as_bytes())?;
        let entries: String = self
            .entries
            .iter()
            .map(|e| format!("{}\t{}\n", e.concept_id, e.term))
            .collect();
        write(ENTRIES_FILE, entries.as_bytes())?;
        let bytes: Vec<u8> = self.vectors.iter().flat_map(|x| x.to_le_bytes()).collect();
        write(VECTORS_FILE, &bytes)
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let p = dir.join(name);
            fs::read(&p).map_err(|e| Error::io(p, e))
        };
        let manifest: IndexManifest = serde_json::from_slice(&read(MANIFEST_FILE)?)
            .map_err(|e| Error::Config(format!("bad index manifest: {e}")))?;
        let entries_src = String::from_utf8(read(ENTRIES_FILE)?)
            .map_err(|_| Error::Config("index entries are not UTF-8".into()))?;
        let entries = parse_lexicon(&entries_src, &dir.join(ENTRIES_FILE).display().to_string())?;
        let bytes = read(VECTORS_FILE)?;
        if entries.len() != manifest.count || bytes.len() != manifest.count * manifest.dimension * 4 {
            return Err(Error::Config(format!("index at {} is inconsistent with its manifest", dir.display())));
        }
        let vectors = bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        let index = EmbeddingIndex {
            encoder_id: manifest.encoder_id,
            dimension: manifest.dimension,
            entries,
            vectors,
        };
        index.check_norms()?;
        Ok(index)
    }
}

fn l2(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|x| x * x).sum::<f64>().sqrt()
}

/// Embeds every lexicon term with `encoder`.
pub fn build_index(lexicon: &[LexiconEntry], encoder: &dyn TextEncoder) -> Result<EmbeddingIndex> {
    if lexicon.is_empty() {
        return Err(Error::InvalidInput("cannot index an empty lexicon".into()));
    }
    let terms: Vec<&str> = lexicon.iter().map(|e| e.term.as_str()).collect();
    let rows = encode_text(encoder, &terms)?;
    EmbeddingIndex::from_parts(encoder.id(), lexicon.to_vec(), &rows)
}

/// `dot(u, v) / (|u| |v|)`.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", u.len(), v.len())));
    }
    let (nu, nv) = (l2(u.iter().copied()), l2(v.iter().copied()));
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::InvalidInput("cosine of a zero vector".into()));
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() / (nu * nv))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkResult {
    pub concept_id: String,
    pub term: String,
    pub score: f64,
}

/// Top-1 entry for a query vector if its score is strictly above `threshold`.
pub fn link_vector(query: &[f64], index: &EmbeddingIndex, threshold: f64) -> Result<Option<LinkResult>> {
    let (i, score) = index.nearest(query)?;
    Ok((score > threshold).then(|| LinkResult {
        concept_id: index.entries[i].concept_id.clone(),
        term: index.entries[i].term.clone(),
        score,
    }))
}

/// Encodes the raw span text and links it. The encoder must be the one the
/// index was built with.
pub fn link(span_text: &str, index: &EmbeddingIndex, encoder: &dyn TextEncoder, threshold: f64) -> Result<Option<LinkResult>> {
    if encoder.id() != index.encoder_id {
        return Err(Error::Config(format!(
            "index was built with encoder {:?}, query uses {:?}",
            index.encoder_id,
            encoder.id()
        )));
    }
    let query = encode_text(encoder, &[span_text])?.remove(0);
    link_vector(&query, index, threshold)
}

/// Code-point offsets `[start, end)` of the first case-insensitive
/// occurrence of `span_text`.
pub fn resolve_offsets(tweet_text: &str, span_text: &str) -> Result<(usize, usize)> {
    let text: Vec<char> = tweet_text.chars().collect();
    let span: Vec<char> = span_text.chars().collect();
    if span.is_empty() || text.is_empty() {
        return Err(Error::InvalidInput("empty tweet or span".into()));
    }
    if span.len() <= text.len() {
        for start in 0..=text.len() - span.len() {
            if span
                .iter()
                .zip(&text[start..])
                .all(|(a, b)| char_eq_ignore_case(*a, *b))
            {
                return Ok((start, start + span.len()));
            }
        }
    }
    Err(Error::Unresolved { span: span_text.to_string() })
}

/// Counters from a normalization run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    pub tweets: usize,
    pub spans: usize,
    pub linked: usize,
    pub unanchored: usize,
    pub unlinked: usize,
}

impl NormalizeReport {
    pub fn to_kv_lines(&self) -> String {
        format!(
            "tweets={}\nspans={}\nlinked={}\nunanchored={}\nunlinked={}\n",
            self.tweets, self.spans, self.linked, self.unanchored, self.unlinked
        )
    }
}

/// Links already-extracted spans of one tweet: each is anchored in the raw
/// text, then linked. Spans failing either step only bump counters.
pub fn anchor_and_link(
    tweet: &TweetRecord,
    spans: &[String],
    index: &EmbeddingIndex,
    encoder: &dyn TextEncoder,
    threshold: f64,
    report: &mut NormalizeReport,
) -> Result<Vec<AdeAnnotation>> {
    let mut out = Vec::new();
    for span in spans {
        report.spans += 1;
        let (start, end) = match resolve_offsets(&tweet.text, span) {
            Ok(o) => o,
            Err(Error::Unresolved { .. }) => {
                report.unanchored += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match link(span, index, encoder, threshold)? {
            Some(hit) => {
                report.linked += 1;
                out.push(AdeAnnotation {
                    tweet_id: tweet.tweet_id.clone(),
                    start,
                    end,
                    span_text: span.clone(),
                    concept_id: hit.concept_id,
                });
            }
            None => report.unlinked += 1,
        }
    }
    Ok(out)
}

/// Extract -> resolve -> link for every tweet. The generator sees the
/// preprocessed tweet when `emoticons` is given; offsets always refer to the
/// raw text. Any backend error aborts the whole run.
pub fn normalize_pipeline(
    tweets: &[TweetRecord],
    generator: &dyn SpanGenerator,
    encoder: &dyn TextEncoder,
    index: &EmbeddingIndex,
    threshold: f64,
    emoticons: Option<&EmoticonMap>,
) -> Result<(Vec<AdeAnnotation>, NormalizeReport)> {
    let mut report = NormalizeReport::default();
    let mut out = Vec::new();
    for tweet in tweets {
        report.tweets += 1;
        let input = match emoticons {
            Some(map) => preprocess_tweet(&tweet.text, map),
            None => tweet.text.clone(),
        };
        let spans = extract_ade_spans(generator, &input)?;
        out.extend(anchor_and_link(tweet, &spans, index, encoder, threshold, &mut report)?);
    }
    Ok((out, report))
}
