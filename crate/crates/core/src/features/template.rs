use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{EmbeddingTable, FeatureError};
use crate::corpus::{Sentence, Token};

pub const BIAS: &str = "bias";
pub const CAPITALIZED: &str = "cap";
pub const ALL_CAPS: &str = "allcaps";
pub const DIGIT: &str = "digit";
pub const PUNCT: &str = "punct";
pub const OOV: &str = "oov";

const FLAGS: [&str; 6] = [BIAS, CAPITALIZED, ALL_CAPS, DIGIT, PUNCT, OOV];

/// Features of one token position: a dense embedding window and a sorted set
/// of active binary feature ids.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub dense: Vec<f64>,
    pub sparse: Vec<usize>,
}

/// Character-class shape: `X`/`x` for cased letters, `9` for digits, other
/// characters kept as-is, runs longer than four collapsed to four.
pub fn word_shape(word: &str) -> String {
    let mut out = String::new();
    let mut run_char = None;
    let mut run_len = 0;
    for c in word.chars() {
        let m = if c.is_uppercase() {
            'X'
        } else if c.is_alphabetic() {
            'x'
        } else if c.is_numeric() {
            '9'
        } else {
            c
        };
        if run_char == Some(m) {
            run_len += 1;
        } else {
            run_char = Some(m);
            run_len = 1;
        }
        if run_len <= 4 {
            out.push(m);
        }
    }
    out
}

fn is_capitalized(w: &str) -> bool {
    w.chars().next().is_some_and(char::is_uppercase)
}

fn is_all_caps(w: &str) -> bool {
    w.chars().any(char::is_alphabetic) && !w.chars().any(char::is_lowercase)
}

fn is_digit(w: &str) -> bool {
    w.chars().all(char::is_numeric)
}

fn is_punct(w: &str) -> bool {
    w.chars().all(|c| !c.is_alphanumeric())
}

fn identity_key(lower: &str) -> String {
    format!("w={lower}")
}

fn shape_key(shape: &str) -> String {
    format!("shape={shape}")
}

/// Collects feature counts over training sentences.
#[derive(Debug, Clone)]
pub struct TemplateBuilder {
    dim: usize,
    window: usize,
    min_word_count: usize,
    words: HashMap<String, usize>,
    shapes: BTreeSet<String>,
}

impl TemplateBuilder {
    pub fn new(dim: usize) -> Self {
        TemplateBuilder {
            dim,
            window: 1,
            min_word_count: 2,
            words: HashMap::new(),
            shapes: BTreeSet::new(),
        }
    }

    /// Context radius of the dense embedding window.
    pub fn window(mut self, radius: usize) -> Self {
        self.window = radius;
        self
    }

    /// Minimum training frequency for a word-identity feature.
    pub fn min_word_count(mut self, count: usize) -> Self {
        self.min_word_count = count.max(1);
        self
    }

    pub fn observe(&mut self, sentence: &Sentence) {
        for tok in &sentence.tokens {
            *self.words.entry(tok.lower().to_string()).or_default() += 1;
            self.shapes.insert(word_shape(tok.text()));
        }
    }

    pub fn observe_all<'a>(mut self, sentences: impl IntoIterator<Item = &'a Sentence>) -> Self {
        for s in sentences {
            self.observe(s);
        }
        self
    }

    /// Freezes the vocabulary. Ids: fixed flags first, then shapes, then
    /// words, each group in lexicographic order.
    pub fn build(self) -> FeatureTemplate {
        let kept: BTreeSet<&String> = self
            .words
            .iter()
            .filter(|(_, &n)| n >= self.min_word_count)
            .map(|(w, _)| w)
            .collect();
        let names: Vec<String> = FLAGS
            .iter()
            .map(|f| f.to_string())
            .chain(self.shapes.iter().map(|s| shape_key(s)))
            .chain(kept.into_iter().map(|w| identity_key(w)))
            .collect();
        FeatureTemplate::from_parts(self.dim, self.window, self.min_word_count, names)
            .expect("builder produces unique names")
    }
}

/// Frozen token feature template. Unseen features map to no id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TemplateRepr", into = "TemplateRepr")]
pub struct FeatureTemplate {
    dim: usize,
    window: usize,
    min_word_count: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct TemplateRepr {
    dim: usize,
    window: usize,
    min_word_count: usize,
    sparse_features: Vec<String>,
}

impl TryFrom<TemplateRepr> for FeatureTemplate {
    type Error = FeatureError;

    fn try_from(r: TemplateRepr) -> Result<Self, Self::Error> {
        FeatureTemplate::from_parts(r.dim, r.window, r.min_word_count, r.sparse_features)
    }
}

impl From<FeatureTemplate> for TemplateRepr {
    fn from(t: FeatureTemplate) -> Self {
        TemplateRepr {
            dim: t.dim,
            window: t.window,
            min_word_count: t.min_word_count,
            sparse_features: t.names,
        }
    }
}

impl FeatureTemplate {
    pub fn from_parts(
        dim: usize,
        window: usize,
        min_word_count: usize,
        names: Vec<String>,
    ) -> Result<Self, FeatureError> {
        if dim == 0 {
            return Err(FeatureError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(FeatureError::DuplicateFeature(n.clone()));
            }
        }
        Ok(FeatureTemplate {
            dim,
            window,
            min_word_count,
            names,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn min_word_count(&self) -> usize {
        self.min_word_count
    }

    pub fn dense_width(&self) -> usize {
        (2 * self.window + 1) * self.dim
    }

    pub fn sparse_len(&self) -> usize {
        self.names.len()
    }

    pub fn sparse_names(&self) -> &[String] {
        &self.names
    }

    pub fn sparse_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn sparse_for(&self, tok: &Token, oov: bool) -> Vec<usize> {
        let w = tok.text();
        let mut keys: Vec<String> = vec![BIAS.into(), identity_key(tok.lower()), shape_key(&word_shape(w))];
        for (on, flag) in [
            (is_capitalized(w), CAPITALIZED),
            (is_all_caps(w), ALL_CAPS),
            (is_digit(w), DIGIT),
            (is_punct(w), PUNCT),
            (oov, OOV),
        ] {
            if on {
                keys.push(flag.into());
            }
        }
        let mut ids: Vec<usize> = keys.iter().filter_map(|k| self.sparse_id(k)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Features of position `t`: embeddings of the tokens in the window
    /// around `t` (zeros beyond the sentence and for OOV words) plus the
    /// binary features of token `t`.
    pub fn token_features(
        &self,
        table: &EmbeddingTable,
        sentence: &Sentence,
        t: usize,
    ) -> Result<FeatureVector, FeatureError> {
        if table.dim() != self.dim {
            return Err(FeatureError::TableDim {
                template: self.dim,
                table: table.dim(),
            });
        }
        let len = sentence.len();
        if t >= len {
            return Err(FeatureError::IndexOutOfRange { index: t, len });
        }
        let mut dense = vec![0.0; self.dense_width()];
        for (slot, chunk) in dense.chunks_mut(self.dim).enumerate() {
            let pos = (t + slot).checked_sub(self.window);
            if let Some(v) = pos.filter(|&p| p < len).and_then(|p| table.lookup(&sentence.tokens[p])) {
                chunk.copy_from_slice(v);
            }
        }
        let tok = &sentence.tokens[t];
        let oov = table.lookup(tok).is_none();
        Ok(FeatureVector {
            dense,
            sparse: self.sparse_for(tok, oov),
        })
    }

    /// Features of every position of `sentence`.
    pub fn sentence_features(
        &self,
        table: &EmbeddingTable,
        sentence: &Sentence,
    ) -> Result<Vec<FeatureVector>, FeatureError> {
        (0..sentence.len())
            .map(|t| self.token_features(table, sentence, t))
            .collect()
    }

    /// Id-to-name view of `ids`, for debugging and tests.
    pub fn describe(&self, ids: &[usize]) -> BTreeMap<usize, &str> {
        ids.iter()
            .filter_map(|&i| self.names.get(i).map(|n| (i, n.as_str())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::BioTag;

    fn sent(words: &[&str]) -> Sentence {
        Sentence::tagged("s", words, &vec![BioTag::O; words.len()])
    }

    #[test]
    fn shapes() {
        assert_eq!(word_shape("Paris"), "Xxxxx");
        assert_eq!(word_shape("Wheelchair"), "Xxxxx");
        assert_eq!(word_shape("$25.00"), "$99.99");
        assert_eq!(word_shape("1234567"), "9999");
        assert_eq!(word_shape("USA-2"), "XXX-9");
    }

    #[test]
    fn boundary_window_is_zero() {
        let table = EmbeddingTable::load("the 1 2\nramp 3 4\n").unwrap();
        let tpl = TemplateBuilder::new(2).build();
        let s = sent(&["the", "ramp"]);
        let f0 = tpl.token_features(&table, &s, 0).unwrap();
        assert_eq!(f0.dense, vec![0.0, 0.0, 1.0, 2.0, 3.0, 4.0]);
        let f1 = tpl.token_features(&table, &s, 1).unwrap();
        assert_eq!(f1.dense, vec![1.0, 2.0, 3.0, 4.0, 0.0, 0.0]);
        assert_eq!(
            tpl.token_features(&table, &s, 2),
            Err(FeatureError::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn capitalized_token_gets_shape_and_flag() {
        let table = EmbeddingTable::load("paris 1 1\n").unwrap();
        let train = sent(&["Paris", "Paris"]);
        let tpl = TemplateBuilder::new(2).observe_all([&train]).build();
        let f = tpl.token_features(&table, &sent(&["Paris"]), 0).unwrap();
        let names: Vec<&str> = tpl.describe(&f.sparse).into_values().collect();
        assert!(names.contains(&"shape=Xxxxx"));
        assert!(names.contains(&CAPITALIZED));
        assert!(names.contains(&"w=paris"));
        assert!(!names.contains(&OOV));
        assert!(!names.contains(&ALL_CAPS));
    }

    #[test]
    fn oov_token_has_zero_center_and_no_identity() {
        let table = EmbeddingTable::load("a 1 1\n").unwrap();
        let tpl = TemplateBuilder::new(2).observe_all([&sent(&["a", "a"])]).build();
        let f = tpl.token_features(&table, &sent(&["a", "zebra", "a"]), 1).unwrap();
        assert_eq!(&f.dense[2..4], &[0.0, 0.0]);
        let names: Vec<&str> = tpl.describe(&f.sparse).into_values().collect();
        assert!(names.contains(&OOV));
        assert!(!names.iter().any(|n| n.starts_with("w=")));
    }

    #[test]
    fn identity_needs_min_count() {
        let tpl = TemplateBuilder::new(1)
            .observe_all([&sent(&["once", "twice", "twice"])])
            .build();
        assert!(tpl.sparse_id("w=twice").is_some());
        assert!(tpl.sparse_id("w=once").is_none());
        let tpl = TemplateBuilder::new(1)
            .min_word_count(1)
            .observe_all([&sent(&["once"])])
            .build();
        assert!(tpl.sparse_id("w=once").is_some());
    }

    #[test]
    fn table_dim_must_match() {
        let table = EmbeddingTable::load("a 1 1 1\n").unwrap();
        let tpl = TemplateBuilder::new(2).build();
        assert_eq!(
            tpl.token_features(&table, &sent(&["a"]), 0),
            Err(FeatureError::TableDim { template: 2, table: 3 })
        );
    }

    #[test]
    fn serde_round_trip() {
        let tpl = TemplateBuilder::new(3)
            .window(2)
            .observe_all([&sent(&["No", "ramp", "ramp", "!"])])
            .build();
        let json = serde_json::to_string(&tpl).unwrap();
        let back: FeatureTemplate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tpl);
        assert_eq!(back.dense_width(), 15);
    }
}
