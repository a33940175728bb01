//! Sentence encoders producing unit-length vectors.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::fnv1a;
use crate::error::{Error, Result};

pub trait TextEncoder: Send + Sync {
    fn id(&self) -> &str;
    fn dimension(&self) -> usize;
    /// Raw embedding; [`encode_text`] normalizes it.
    fn embed(&self, text: &str) -> Result<Vec<f64>>;
}

/// One L2-normalized vector per text.
pub fn encode_text(encoder: &dyn TextEncoder, texts: &[impl AsRef<str>]) -> Result<Vec<Vec<f64>>> {
    texts
        .iter()
        .map(|t| {
            let t = t.as_ref();
            if t.is_empty() {
                return Err(Error::InvalidInput("cannot encode an empty string".into()));
            }
            let mut v = encoder.embed(t)?;
            if v.len() != encoder.dimension() {
                return Err(Error::Backend(format!(
                    "encoder {} returned {} dims, expected {}",
                    encoder.id(),
                    v.len(),
                    encoder.dimension()
                )));
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::Backend(format!("encoder {} produced a zero vector for {t:?}", encoder.id())));
            }
            v.iter_mut().for_each(|x| *x /= norm);
            Ok(v)
        })
        .collect()
}

/// Signed feature hashing of lowercased character trigrams (with word
/// boundary markers) and whole words. Surface-similar strings land close.
#[derive(Debug, Clone)]
pub struct CharNgramEncoder {
    dimension: usize,
    id: String,
}

impl CharNgramEncoder {
    pub fn new(dimension: usize) -> Self {
        let id = if dimension == 256 {
            "char-ngram".to_string()
        } else {
            format!("char-ngram-{dimension}")
        };
        CharNgramEncoder { dimension, id }
    }

    fn add(&self, v: &mut [f64], feature: &str, weight: f64) {
        let h = fnv1a(feature.as_bytes());
        let sign = if h >> 63 == 1 { -1.0 } else { 1.0 };
        v[(h % self.dimension as u64) as usize] += sign * weight;
    }
}

impl Default for CharNgramEncoder {
    fn default() -> Self {
        CharNgramEncoder::new(256)
    }
}

impl TextEncoder for CharNgramEncoder {
    fn id(&self) -> &str {
        &self.id
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        let mut v = vec![0.0; self.dimension];
        let lower = text.to_lowercase();
        for word in lower.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()) {
            self.add(&mut v, &format!("w:{word}"), 1.0);
            let padded: Vec<char> = format!("<{word}>").chars().collect();
            for gram in padded.windows(3) {
                self.add(&mut v, &gram.iter().collect::<String>(), 1.0);
            }
        }
        if v.iter().all(|x| *x == 0.0) {
            // punctuation-only text, or features cancelled out
            self.add(&mut v, &format!("raw:{lower}"), 1.0);
        }
        Ok(v)
    }
}

/// Fixed text -> vector table, for planted-embedding fixtures. Unknown
/// texts are a backend error.
#[derive(Debug, Clone)]
pub struct TableEncoder {
    id: String,
    dimension: usize,
    table: HashMap<String, Vec<f64>>,
}

impl TableEncoder {
    pub fn new(id: impl Into<String>, rows: impl IntoIterator<Item = (String, Vec<f64>)>) -> Result<Self> {
        let mut table = HashMap::new();
        let mut dimension = None;
        for (text, vec) in rows {
            if *dimension.get_or_insert(vec.len()) != vec.len() || vec.is_empty() {
                return Err(Error::InvalidInput(format!("vector for {text:?} has the wrong dimension")));
            }
            table.insert(text, vec);
        }
        Ok(TableEncoder {
            id: id.into(),
            dimension: dimension.unwrap_or(0),
            table,
        })
    }

    /// Headerless `text\tv1,v2,...` TSV; the encoder id is `table:<path>`.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let origin = path.display().to_string();
        let mut rows = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let bad = |m: &str| Error::format(&origin, i + 1, m);
            let (text, values) = line.split_once('\t').ok_or_else(|| bad("expected `text\\tvector`"))?;
            let vec = values
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("non-numeric vector component"))?;
            rows.push((text.to_string(), vec));
        }
        Self::new(format!("table:{}", path.display()), rows)
    }
}

impl TextEncoder for TableEncoder {
    fn id(&self) -> &str {
        &self.id
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        self.table
            .get(text)
            .cloned()
            .ok_or_else(|| Error::Backend(format!("no planted vector for {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn unit_and_deterministic() {
        let enc = CharNgramEncoder::default();
        let texts = ["headache", "bad headache", "!!!", "😷"];
        let a = encode_text(&enc, &texts).unwrap();
        let b = encode_text(&enc, &texts).unwrap();
        assert_eq!(a, b);
        for v in &a {
            assert!((norm(v) - 1.0).abs() < 1e-6);
            assert_eq!(v.len(), 256);
        }
    }

    #[test]
    fn empty_text_rejected() {
        assert!(matches!(encode_text(&CharNgramEncoder::default(), &[""]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn similar_strings_are_closer() {
        let enc = CharNgramEncoder::default();
        let v = encode_text(&enc, &["headaches", "headache", "insomnia"]).unwrap();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        assert!(dot(&v[0], &v[1]) > dot(&v[0], &v[2]));
    }

    #[test]
    fn table_encoder() {
        let enc = TableEncoder::new("table:t", [("a".to_string(), vec![3.0, 4.0])]).unwrap();
        assert_eq!(encode_text(&enc, &["a"]).unwrap()[0], vec![0.6, 0.8]);
        assert!(matches!(enc.embed("b"), Err(Error::Backend(_))));
        assert!(TableEncoder::new("x", [("a".to_string(), vec![1.0]), ("b".to_string(), vec![1.0, 2.0])]).is_err());
    }
}
