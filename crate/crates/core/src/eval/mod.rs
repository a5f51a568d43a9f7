//! Metrics: span overlap (binary and proportional) for phrase mining,
//! per-category precision/recall/F1 for the categorizer, and the
//! end-to-end protocol that chains the two.

mod classes;
mod e2e;
mod overlap;

use serde::Serialize;
use thiserror::Error;

pub use classes::{multiclass_report, ClassMetrics, ClassReport};
pub use e2e::{end_to_end, BucketScores, E2EReport};
pub use overlap::{overlap_scores, ClassOverlap, OverlapReport, SpanScores};

use crate::corpus::Phrase;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("invalid span [{start}, {end}) in sentence `{sentence_id}`")]
    SpanOutOfRange {
        sentence_id: String,
        start: usize,
        end: usize,
    },
    #[error("prediction and gold lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("phrase [{start}, {end}) in sentence `{sentence_id}` has no category")]
    MissingCategory {
        sentence_id: String,
        start: usize,
        end: usize,
    },
}

/// Precision, recall and their harmonic mean.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    pub fn new(precision: f64, recall: f64) -> Self {
        Prf {
            precision,
            recall,
            f1: f1(precision, recall),
        }
    }
}

/// `2PR / (P + R)`, zero when both are zero.
pub fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// `num / den`, zero for an empty denominator.
pub(crate) fn ratio(num: f64, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num / den as f64
    }
}

pub(crate) fn check_spans<'a>(phrases: impl IntoIterator<Item = &'a Phrase>) -> Result<(), EvalError> {
    for p in phrases {
        if p.start >= p.end {
            return Err(EvalError::SpanOutOfRange {
                sentence_id: p.sentence_id.clone(),
                start: p.start,
                end: p.end,
            });
        }
    }
    Ok(())
}
