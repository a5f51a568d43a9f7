use std::fmt::Write as _;

use serde::Serialize;

use super::{f1, ratio, EvalError, Prf};
use crate::corpus::Category;

const C: usize = Category::COUNT;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub category: Category,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
    pub predicted: usize,
}

/// Per-category scores, aggregates and the confusion matrix
/// (`confusion[gold][pred]`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub classes: Vec<ClassMetrics>,
    /// Support-weighted mean over categories with gold support.
    pub weighted: Prf,
    /// Unweighted mean over categories that occur in gold or predictions.
    pub macro_avg: Prf,
    pub accuracy: f64,
    pub total: usize,
    pub confusion: [[usize; C]; C],
}

pub fn multiclass_report(pred: &[Category], gold: &[Category]) -> Result<ClassReport, EvalError> {
    if pred.len() != gold.len() {
        return Err(EvalError::LengthMismatch(pred.len(), gold.len()));
    }
    if pred.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut confusion = [[0usize; C]; C];
    for (p, g) in pred.iter().zip(gold) {
        confusion[g.index()][p.index()] += 1;
    }
    let classes: Vec<ClassMetrics> = Category::ALL
        .iter()
        .map(|&c| {
            let i = c.index();
            let tp = confusion[i][i] as f64;
            let support: usize = confusion[i].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[i]).sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            ClassMetrics {
                category: c,
                precision,
                recall,
                f1: f1(precision, recall),
                support,
                predicted,
            }
        })
        .collect();

    let total = gold.len();
    let weighted_mean = |f: fn(&ClassMetrics) -> f64| {
        classes.iter().map(|m| m.support as f64 * f(m)).sum::<f64>() / total as f64
    };
    let weighted = Prf {
        precision: weighted_mean(|m| m.precision),
        recall: weighted_mean(|m| m.recall),
        f1: weighted_mean(|m| m.f1),
    };
    let active: Vec<&ClassMetrics> = classes.iter().filter(|m| m.support + m.predicted > 0).collect();
    let macro_mean = |f: fn(&ClassMetrics) -> f64| active.iter().map(|m| f(m)).sum::<f64>() / active.len() as f64;
    let macro_avg = Prf {
        precision: macro_mean(|m| m.precision),
        recall: macro_mean(|m| m.recall),
        f1: macro_mean(|m| m.f1),
    };
    let correct: usize = (0..C).map(|i| confusion[i][i]).sum();
    Ok(ClassReport {
        classes,
        weighted,
        macro_avg,
        accuracy: correct as f64 / total as f64,
        total,
        confusion,
    })
}

impl ClassReport {
    pub fn class(&self, c: Category) -> &ClassMetrics {
        &self.classes[c.index()]
    }

    pub const TSV_HEADER: &'static str = "class\tprecision\trecall\tf1\tsupport\tpredicted";

    /// Metric rows followed by a blank line and the confusion matrix block
    /// (rows gold, columns predicted).
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\n", Self::TSV_HEADER);
        for m in &self.classes {
            let _ = writeln!(
                out,
                "{}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
                m.category, m.precision, m.recall, m.f1, m.support, m.predicted
            );
        }
        for (name, a) in [("weighted", self.weighted), ("macro", self.macro_avg)] {
            let _ = writeln!(
                out,
                "{name}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
                a.precision, a.recall, a.f1, self.total, self.total
            );
        }
        let _ = writeln!(out, "accuracy\t{:.6}\t\t\t{}\t", self.accuracy, self.total);
        out.push('\n');
        out.push_str(&self.confusion_tsv());
        out
    }

    pub fn confusion_tsv(&self) -> String {
        let mut out = String::from("gold\\pred");
        for c in Category::ALL {
            let _ = write!(out, "\t{c}");
        }
        out.push('\n');
        for c in Category::ALL {
            out.push_str(c.as_str());
            for n in self.confusion[c.index()] {
                let _ = write!(out, "\t{n}");
            }
            out.push('\n');
        }
        out
    }
}
