use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_spans, f1, ratio, EvalError};
use crate::corpus::{Coarse, Phrase};

/// Scores of one coarse class under one overlap mode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SpanScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Summed per-prediction credit (numerator of precision).
    pub precision_credit: f64,
    /// Summed per-gold credit (numerator of recall).
    pub recall_credit: f64,
    pub predicted: usize,
    pub gold: usize,
}

impl SpanScores {
    fn new(precision_credit: f64, recall_credit: f64, predicted: usize, gold: usize) -> Self {
        let precision = ratio(precision_credit, predicted);
        let recall = ratio(recall_credit, gold);
        SpanScores {
            precision,
            recall,
            f1: f1(precision, recall),
            precision_credit,
            recall_credit,
            predicted,
            gold,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ClassOverlap {
    pub binary: SpanScores,
    pub proportional: SpanScores,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OverlapReport {
    pub inclusion: ClassOverlap,
    pub exclusion: ClassOverlap,
}

impl OverlapReport {
    pub fn class(&self, coarse: Coarse) -> &ClassOverlap {
        match coarse {
            Coarse::Inc => &self.inclusion,
            Coarse::Exc => &self.exclusion,
        }
    }

    /// Mean of the inclusion and exclusion binary F1.
    pub fn mean_binary_f1(&self) -> f64 {
        0.5 * (self.inclusion.binary.f1 + self.exclusion.binary.f1)
    }

    pub const TSV_HEADER: &'static str =
        "class\tmode\tprecision\trecall\tf1\tprecision_credit\trecall_credit\tpredicted\tgold";

    /// One row per class and mode.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\n", Self::TSV_HEADER);
        for c in Coarse::ALL {
            let r = self.class(c);
            for (mode, s) in [("binary", &r.binary), ("proportional", &r.proportional)] {
                let _ = writeln!(
                    out,
                    "{c}\t{mode}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
                    s.precision, s.recall, s.f1, s.precision_credit, s.recall_credit, s.predicted, s.gold
                );
            }
        }
        out
    }
}

/// Binary credit is 1 for any same-class overlap; proportional credit is the
/// summed overlap with same-class spans on the other side, capped at the
/// span's own length, divided by that length.
fn credits(side: &[&Phrase], other: &HashMap<&str, Vec<&Phrase>>) -> (f64, f64) {
    let mut binary = 0.0;
    let mut prop = 0.0;
    for p in side {
        let total: usize = other
            .get(p.sentence_id.as_str())
            .map_or(0, |v| v.iter().map(|o| p.overlap(o)).sum());
        if total > 0 {
            binary += 1.0;
            prop += total.min(p.len()) as f64 / p.len() as f64;
        }
    }
    (binary, prop)
}

fn by_sentence<'a>(v: &[&'a Phrase]) -> HashMap<&'a str, Vec<&'a Phrase>> {
    let mut m: HashMap<&str, Vec<&Phrase>> = HashMap::new();
    for x in v {
        m.entry(x.sentence_id.as_str()).or_default().push(*x);
    }
    m
}

pub fn overlap_scores(pred: &[Phrase], gold: &[Phrase]) -> Result<OverlapReport, EvalError> {
    check_spans(pred.iter().chain(gold))?;
    let mut report = OverlapReport::default();
    for c in Coarse::ALL {
        let p: Vec<&Phrase> = pred.iter().filter(|x| x.coarse == c).collect();
        let g: Vec<&Phrase> = gold.iter().filter(|x| x.coarse == c).collect();
        let (pb, pp) = credits(&p, &by_sentence(&g));
        let (rb, rp) = credits(&g, &by_sentence(&p));
        let scores = ClassOverlap {
            binary: SpanScores::new(pb, rb, p.len(), g.len()),
            proportional: SpanScores::new(pp, rp, p.len(), g.len()),
        };
        match c {
            Coarse::Inc => report.inclusion = scores,
            Coarse::Exc => report.exclusion = scores,
        }
    }
    Ok(report)
}
