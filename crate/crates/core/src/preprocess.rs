//! Tweet text normalization: emoticons to words, user mentions to `@USER`,
//! links to `HTTPURL`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const USER_TOKEN: &str = "@USER";
pub const URL_TOKEN: &str = "HTTPURL";

const URL_PREFIXES: [&str; 3] = ["http://", "https://", "www."];

/// Stand-in inventory of ASCII emoticons and common emoji. Keys never end
/// in a lowercase letter that a phrase could start with, which keeps the
/// full preprocessing pass idempotent.
const DEFAULT_EMOTICONS: &[(&str, &str)] = &[
    (":)", "smiling face"),
    (":-)", "smiling face"),
    ("(:", "smiling face"),
    (":(", "frowning face"),
    (":-(", "frowning face"),
    (":D", "grinning face"),
    (":-D", "grinning face"),
    (";)", "winking face"),
    (";-)", "winking face"),
    (":P", "tongue out"),
    (":-P", "tongue out"),
    (":/", "skeptical face"),
    (":-/", "skeptical face"),
    (":'(", "crying face"),
    (":O", "surprised face"),
    (":o", "surprised face"),
    (":|", "neutral face"),
    (":*", "kissing face"),
    ("XD", "laughing face"),
    ("<3", "red heart"),
    ("</3", "broken heart"),
    ("😂", "face with tears of joy"),
    ("🤣", "rolling on the floor laughing"),
    ("😊", "smiling face with smiling eyes"),
    ("🙂", "slightly smiling face"),
    ("😀", "grinning face"),
    ("😁", "beaming face"),
    ("😍", "smiling face with heart eyes"),
    ("🥰", "smiling face with hearts"),
    ("😉", "winking face"),
    ("🙁", "slightly frowning face"),
    ("😞", "disappointed face"),
    ("😔", "pensive face"),
    ("😩", "weary face"),
    ("😢", "crying face"),
    ("😭", "loudly crying face"),
    ("😠", "angry face"),
    ("😡", "pouting face"),
    ("😴", "sleeping face"),
    ("😷", "face with medical mask"),
    ("🤒", "face with thermometer"),
    ("🤕", "face with head bandage"),
    ("🤢", "nauseated face"),
    ("🤮", "face vomiting"),
    ("💊", "pill"),
    ("💉", "syringe"),
    ("👍", "thumbs up"),
    ("👎", "thumbs down"),
    ("🙏", "folded hands"),
    ("❤️", "red heart"),
    ("❤", "red heart"),
    ("💔", "broken heart"),
];

/// Emoticon/emoji surface strings and their replacement phrases.
#[derive(Debug, Clone)]
pub struct EmoticonMap {
    entries: BTreeMap<String, String>,
    // keys grouped by first char, longest first
    by_first: HashMap<char, Vec<(String, String)>>,
}

impl EmoticonMap {
    /// Builds a map, rejecting duplicate keys, empty keys or phrases, tabs and
    /// line breaks, and keys that equal some replacement phrase.
    pub fn new<I, K, V>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            let (k, v) = (k.into(), v.into());
            if k.is_empty() || v.trim().is_empty() {
                return Err(Error::InvalidInput(format!("empty emoticon key or phrase ({k:?} -> {v:?})")));
            }
            if k.contains(['\t', '\n', '\r']) || v.contains(['\t', '\n', '\r']) {
                return Err(Error::InvalidInput(format!("tab or line break in emoticon entry {k:?}")));
            }
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::InvalidInput(format!("duplicate emoticon key {k:?}")));
            }
        }
        if let Some(k) = map.values().find(|phrase| map.contains_key(*phrase)) {
            return Err(Error::InvalidInput(format!("emoticon phrase {k:?} is also a key")));
        }

        let mut by_first: HashMap<char, Vec<(String, String)>> = HashMap::new();
        for (k, v) in &map {
            let first = k.chars().next().expect("non-empty key");
            by_first.entry(first).or_default().push((k.clone(), v.clone()));
        }
        for keys in by_first.values_mut() {
            keys.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        }
        Ok(EmoticonMap { entries: map, by_first })
    }

    /// An empty map: translation becomes the identity.
    pub fn empty() -> Self {
        EmoticonMap {
            entries: BTreeMap::new(),
            by_first: HashMap::new(),
        }
    }

    /// Parses a headerless `surface\tphrase` TSV.
    pub fn parse_tsv(src: &str, origin: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in src.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            match (cols.next(), cols.next(), cols.next()) {
                (Some(k), Some(v), None) => pairs.push((k.to_string(), v.to_string())),
                _ => return Err(Error::format(origin, i + 1, "expected `surface\\tphrase`")),
            }
        }
        Self::new(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_tsv(&src, &path.display().to_string())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Length in chars of the longest replacement phrase.
    pub fn longest_phrase(&self) -> usize {
        self.entries.values().map(|v| v.chars().count()).max().unwrap_or(0)
    }

    fn longest_match<'a>(&'a self, rest: &str) -> Option<(&'a str, &'a str)> {
        let first = rest.chars().next()?;
        self.by_first
            .get(&first)?
            .iter()
            .find(|(k, _)| rest.starts_with(k.as_str()))
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl Default for EmoticonMap {
    fn default() -> Self {
        EmoticonMap::new(DEFAULT_EMOTICONS.iter().copied()).expect("default emoticon map is valid")
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn url_prefix_at(rest: &str) -> bool {
    URL_PREFIXES.iter().any(|p| {
        rest.len() >= p.len()
            && rest.is_char_boundary(p.len())
            && rest[..p.len()].eq_ignore_ascii_case(p)
    })
}

fn token_end(rest: &str) -> usize {
    rest.find(char::is_whitespace).unwrap_or(rest.len())
}

/// Replaces each `@handle` that starts the string or follows whitespace with
/// `@USER`. Addresses like `a@b.com` are left alone. If the rest of the
/// whitespace-delimited token holds a link (`@bob/https://x`), the whole
/// token becomes `@USER`.
pub fn normalize_mentions(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut prev: Option<char> = None;
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().expect("in bounds");
        if c == '@' && prev.is_none_or(char::is_whitespace) {
            // a mention glued to a link goes as a whole, so the link prefix
            // is never left half-consumed
            let end = token_end(rest);
            if (1..end).any(|j| rest.is_char_boundary(j) && url_prefix_at(&rest[j..])) {
                out.push_str(USER_TOKEN);
                i += end;
                prev = text[..i].chars().next_back();
                continue;
            }
            let handle = rest[1..]
                .char_indices()
                .find(|&(_, ch)| !is_word_char(ch))
                .map_or(rest.len() - 1, |(j, _)| j);
            if handle > 0 {
                out.push_str(USER_TOKEN);
                i += 1 + handle;
                prev = text[..i].chars().next_back();
                continue;
            }
        }
        out.push(c);
        prev = Some(c);
        i += c.len_utf8();
    }
    out
}

/// Replaces every run starting `http://`, `https://` or `www.` (ASCII case
/// ignored) up to the next whitespace with `HTTPURL`.
pub fn normalize_urls(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        if url_prefix_at(rest) {
            out.push_str(URL_TOKEN);
            i += token_end(rest);
            continue;
        }
        let c = rest.chars().next().expect("in bounds");
        out.push(c);
        i += c.len_utf8();
    }
    out
}

/// Single left-to-right pass replacing the longest emoticon key at each
/// position. Replacements are not rescanned and URL runs are copied through
/// untouched.
pub fn translate_emoticons(text: &str, map: &EmoticonMap) -> String {
    if map.is_empty() {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        if url_prefix_at(rest) {
            let end = token_end(rest);
            out.push_str(&rest[..end]);
            i += end;
            continue;
        }
        if let Some((key, phrase)) = map.longest_match(rest) {
            out.push_str(phrase);
            i += key.len();
            continue;
        }
        let c = rest.chars().next().expect("in bounds");
        out.push(c);
        i += c.len_utf8();
    }
    out
}

/// Emoticons, then mentions, then URLs.
pub fn preprocess_tweet(text: &str, map: &EmoticonMap) -> String {
    normalize_urls(&normalize_mentions(&translate_emoticons(text, map)))
}
