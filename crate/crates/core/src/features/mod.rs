//! Word vectors and the feature extractors built on them: windowed token
//! features for the sequence tagger and pooled span features for the
//! phrase categorizer.

mod embeddings;
mod template;

use thiserror::Error;

pub use embeddings::EmbeddingTable;
pub use template::{word_shape, FeatureTemplate, FeatureVector, TemplateBuilder};
pub use template::{ALL_CAPS, BIAS, CAPITALIZED, DIGIT, OOV, PUNCT};

use crate::corpus::{Category, KeywordIndex, Sentence};

#[derive(Debug, Error, PartialEq)]
pub enum FeatureError {
    #[error("line {line}: expected {expected} values, found {found}")]
    DimMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: non-numeric vector component")]
    NonNumeric { line: usize },
    #[error("no embedding rows")]
    Empty,
    #[error("token index {index} out of range for sentence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty span")]
    EmptySpan,
    #[error("span [{start}, {end}) outside sentence of length {len}")]
    SpanOutOfRange { start: usize, end: usize, len: usize },
    #[error("template expects {template}-dimensional embeddings, table has {table}")]
    TableDim { template: usize, table: usize },
    #[error("duplicate sparse feature `{0}`")]
    DuplicateFeature(String),
}

/// Free-function form of [`FeatureTemplate::token_features`].
pub fn token_features(
    template: &FeatureTemplate,
    table: &EmbeddingTable,
    sentence: &Sentence,
    t: usize,
) -> Result<FeatureVector, FeatureError> {
    template.token_features(table, sentence, t)
}

/// Width of [`phrase_features`] for a table of dimension `dim`.
pub fn phrase_feature_width(dim: usize) -> usize {
    dim + 1 + Category::COUNT
}

/// Span features for the categorizer: mean embedding over the span (OOV
/// words count as zero vectors), `min(len / 10, 1)`, and one keyword-hit
/// indicator per category.
pub fn phrase_features(
    table: &EmbeddingTable,
    keywords: &KeywordIndex,
    sentence: &Sentence,
    start: usize,
    end: usize,
) -> Result<Vec<f64>, FeatureError> {
    if start >= end {
        return Err(FeatureError::EmptySpan);
    }
    if end > sentence.len() {
        return Err(FeatureError::SpanOutOfRange {
            start,
            end,
            len: sentence.len(),
        });
    }
    let dim = table.dim();
    let span = &sentence.tokens[start..end];
    let mut out = vec![0.0; phrase_feature_width(dim)];
    for tok in span {
        if let Some(v) = table.lookup(tok) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
    }
    let n = span.len() as f64;
    for o in &mut out[..dim] {
        *o /= n;
    }
    out[dim] = (n / 10.0).min(1.0);
    for c in keywords.matches(span) {
        out[dim + 1 + c.index()] = 1.0;
    }
    Ok(out)
}
