//! Review corpus data model: tokens, BIO tags, phrases and the eleven
//! travel categories, plus readers and writers for the on-disk formats.

mod bio;
mod conll;
mod kappa;
mod keywords;
mod phrases;
mod reviews;
mod split;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bio::{extract_phrases, phrases_to_tags, repair_bio, validate_bio, BioViolation};
pub use conll::{parse_conll, write_conll};
pub use kappa::cohen_kappa;
pub use keywords::{filter_candidate_sentences, KeywordIndex};
pub use phrases::{parse_phrase_tsv, write_phrase_tsv, PHRASE_TSV_HEADER};
pub use reviews::{parse_reviews_jsonl, sentences_from_review, split_sentences, tokenize, Review};
pub use split::{split_dataset, SplitRatios};
pub use stats::{label_distribution, LabelDistribution};

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("sentence `{0}` has no tags")]
    MissingTags(String),
    #[error("invalid BIO sequence: violation at index {0}")]
    InvalidBio(usize),
    #[error("split ratios must be three non-negative values summing to 1, got {0:?}")]
    BadRatios([f64; 3]),
    #[error("label lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid keyword `{keyword}` for {category}: keywords must be non-empty, lowercase and whitespace-free")]
    BadKeyword { category: Category, keyword: String },
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("phrase span [{start}, {end}) is invalid for sentence `{sentence_id}` of length {len}")]
    SpanOutOfRange {
        sentence_id: String,
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("phrase refers to unknown sentence `{0}`")]
    UnknownSentence(String),
    #[error("malformed JSON on line {line}: {reason}")]
    Json { line: usize, reason: String },
}

/// A single whitespace-free token together with its lowercased form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    text: String,
    lower: String,
}

impl Token {
    /// Returns `None` for empty text or text containing whitespace.
    pub fn new(text: impl Into<String>) -> Option<Self> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return None;
        }
        let lower = text.to_lowercase();
        Some(Token { text, lower })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn lower(&self) -> &str {
        &self.lower
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Per-token label. The discriminant order is the canonical order used for
/// tie-breaking everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BioTag {
    O = 0,
    BInc = 1,
    Inc = 2,
    BExc = 3,
    Exc = 4,
}

impl BioTag {
    pub const COUNT: usize = 5;
    pub const ALL: [BioTag; 5] = [BioTag::O, BioTag::BInc, BioTag::Inc, BioTag::BExc, BioTag::Exc];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BioTag::O => "O",
            BioTag::BInc => "B_INC",
            BioTag::Inc => "INC",
            BioTag::BExc => "B_EXC",
            BioTag::Exc => "EXC",
        }
    }

    /// Phrase class of a non-O tag.
    pub fn coarse(self) -> Option<Coarse> {
        match self {
            BioTag::O => None,
            BioTag::BInc | BioTag::Inc => Some(Coarse::Inc),
            BioTag::BExc | BioTag::Exc => Some(Coarse::Exc),
        }
    }

    pub fn is_begin(self) -> bool {
        matches!(self, BioTag::BInc | BioTag::BExc)
    }

    pub fn is_inside(self) -> bool {
        matches!(self, BioTag::Inc | BioTag::Exc)
    }
}

impl fmt::Display for BioTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BioTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BioTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown tag `{s}`"))
    }
}

/// Coarse phrase class: inclusion or exclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coarse {
    #[serde(rename = "INC")]
    Inc,
    #[serde(rename = "EXC")]
    Exc,
}

impl Coarse {
    pub const ALL: [Coarse; 2] = [Coarse::Inc, Coarse::Exc];

    pub fn as_str(self) -> &'static str {
        match self {
            Coarse::Inc => "INC",
            Coarse::Exc => "EXC",
        }
    }

    pub fn begin_tag(self) -> BioTag {
        match self {
            Coarse::Inc => BioTag::BInc,
            Coarse::Exc => BioTag::BExc,
        }
    }

    pub fn inside_tag(self) -> BioTag {
        match self {
            Coarse::Inc => BioTag::Inc,
            Coarse::Exc => BioTag::Exc,
        }
    }
}

impl fmt::Display for Coarse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Coarse {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "INC" => Ok(Coarse::Inc),
            "EXC" => Ok(Coarse::Exc),
            _ => Err(format!("unknown coarse class `{s}`")),
        }
    }
}

/// The eleven visitor factors a phrase can be about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    AgeHeight,
    Claustrophobia,
    CouplesFamily,
    Crowd,
    Food,
    Handicap,
    Hygiene,
    Parking,
    Price,
    Queues,
    Time,
}

impl Category {
    pub const COUNT: usize = 11;
    pub const ALL: [Category; 11] = [
        Category::AgeHeight,
        Category::Claustrophobia,
        Category::CouplesFamily,
        Category::Crowd,
        Category::Food,
        Category::Handicap,
        Category::Hygiene,
        Category::Parking,
        Category::Price,
        Category::Queues,
        Category::Time,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::AgeHeight => "AgeHeight",
            Category::Claustrophobia => "Claustrophobia",
            Category::CouplesFamily => "CouplesFamily",
            Category::Crowd => "Crowd",
            Category::Food => "Food",
            Category::Handicap => "Handicap",
            Category::Hygiene => "Hygiene",
            Category::Parking => "Parking",
            Category::Price => "Price",
            Category::Queues => "Queues",
            Category::Time => "Time",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = CorpusError;

    /// Accepts the canonical spelling and the slash-separated display names
    /// ("Age/Height", "Couples/Family"), case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_alphanumeric())
            .flat_map(char::to_lowercase)
            .collect();
        Category::ALL
            .into_iter()
            .find(|c| c.as_str().to_lowercase() == norm)
            .ok_or_else(|| CorpusError::UnknownCategory(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub id: String,
    pub spot_id: Option<String>,
    pub tokens: Vec<Token>,
    pub tags: Option<Vec<BioTag>>,
}

impl Sentence {
    pub fn new(id: impl Into<String>, tokens: Vec<Token>) -> Self {
        Sentence {
            id: id.into(),
            spot_id: None,
            tokens,
            tags: None,
        }
    }

    /// Builds a tagged sentence from whitespace-free words.
    ///
    /// Panics if a word is not a valid token or the lengths differ; meant for
    /// fixtures and examples.
    pub fn tagged(id: impl Into<String>, words: &[&str], tags: &[BioTag]) -> Self {
        assert_eq!(words.len(), tags.len(), "words and tags differ in length");
        let tokens = words
            .iter()
            .map(|w| Token::new(*w).unwrap_or_else(|| panic!("invalid token `{w}`")))
            .collect();
        Sentence {
            id: id.into(),
            spot_id: None,
            tokens,
            tags: Some(tags.to_vec()),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Space-joined surface text of `tokens[start..end]`.
    pub fn span_text(&self, start: usize, end: usize) -> String {
        self.tokens[start..end]
            .iter()
            .map(Token::text)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Half-open token span `[start, end)` inside one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub sentence_id: String,
    pub start: usize,
    pub end: usize,
    pub coarse: Coarse,
    pub category: Option<Category>,
}

impl Phrase {
    pub fn new(sentence_id: impl Into<String>, start: usize, end: usize, coarse: Coarse) -> Self {
        Phrase {
            sentence_id: sentence_id.into(),
            start,
            end,
            coarse,
            category: None,
        }
    }

    pub fn with_category(mut self, category: Category) -> Self {
        self.category = Some(category);
        self
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Number of tokens shared with `other`, ignoring sentence identity.
    pub fn overlap(&self, other: &Phrase) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        hi.saturating_sub(lo)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    pub sentences: Vec<Sentence>,
    pub phrases: Vec<Phrase>,
}

impl Dataset {
    pub fn new(sentences: Vec<Sentence>) -> Self {
        Dataset {
            sentences,
            phrases: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn sentence(&self, id: &str) -> Option<&Sentence> {
        self.sentences.iter().find(|s| s.id == id)
    }

    /// Checks that every phrase resolves to a sentence and lies inside it.
    pub fn validate(&self) -> Result<(), CorpusError> {
        let lens: std::collections::HashMap<&str, usize> = self
            .sentences
            .iter()
            .map(|s| (s.id.as_str(), s.len()))
            .collect();
        for p in &self.phrases {
            let len = *lens
                .get(p.sentence_id.as_str())
                .ok_or_else(|| CorpusError::UnknownSentence(p.sentence_id.clone()))?;
            check_span(p, len)?;
        }
        Ok(())
    }

    /// Phrases obtained by decoding every sentence's tags. Sentences without
    /// tags contribute nothing; orphan inside tags are repaired first.
    pub fn phrases_from_tags(&self) -> Vec<Phrase> {
        self.sentences
            .iter()
            .filter_map(|s| s.tags.as_ref().map(|t| (s, t)))
            .flat_map(|(s, tags)| {
                let fixed = repair_bio(tags);
                extract_phrases(&s.id, &fixed).expect("repaired tags are valid")
            })
            .collect()
    }
}

pub(crate) fn check_span(p: &Phrase, len: usize) -> Result<(), CorpusError> {
    if p.start >= p.end || p.end > len {
        return Err(CorpusError::SpanOutOfRange {
            sentence_id: p.sentence_id.clone(),
            start: p.start,
            end: p.end,
            len,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_lowercases_and_rejects_whitespace() {
        let t = Token::new("Wheelchair").unwrap();
        assert_eq!(t.lower(), "wheelchair");
        assert!(Token::new("").is_none());
        assert!(Token::new("a b").is_none());
    }

    #[test]
    fn tag_names_round_trip() {
        for t in BioTag::ALL {
            assert_eq!(t.as_str().parse::<BioTag>().unwrap(), t);
            assert_eq!(BioTag::from_index(t.index()), Some(t));
        }
        assert!("B_FOO".parse::<BioTag>().is_err());
    }

    #[test]
    fn category_parsing_accepts_display_names() {
        assert_eq!("Age/Height".parse::<Category>().unwrap(), Category::AgeHeight);
        assert_eq!("couples/family".parse::<Category>().unwrap(), Category::CouplesFamily);
        assert_eq!("Price".parse::<Category>().unwrap(), Category::Price);
        assert!("Weather".parse::<Category>().is_err());
        assert_eq!(Category::ALL.len(), 11);
        for (i, c) in Category::ALL.iter().enumerate() {
            assert_eq!(c.index(), i);
        }
    }

    #[test]
    fn dataset_validate_catches_bad_spans() {
        let mut d = Dataset::new(vec![Sentence::tagged("s", &["a", "b"], &[BioTag::O, BioTag::O])]);
        d.phrases.push(Phrase::new("s", 0, 2, Coarse::Inc));
        assert!(d.validate().is_ok());
        d.phrases.push(Phrase::new("s", 1, 3, Coarse::Inc));
        assert!(matches!(d.validate(), Err(CorpusError::SpanOutOfRange { .. })));
        d.phrases.pop();
        d.phrases.push(Phrase::new("x", 0, 1, Coarse::Inc));
        assert_eq!(d.validate(), Err(CorpusError::UnknownSentence("x".into())));
    }
}
