use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_spans, f1, ratio, EvalError};
use crate::corpus::{Category, Coarse, Phrase};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BucketScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub predicted: usize,
    pub gold: usize,
    pub correct: usize,
    pub recalled: usize,
}

impl BucketScores {
    fn new(correct: usize, predicted: usize, recalled: usize, gold: usize) -> Self {
        let precision = ratio(correct as f64, predicted);
        let recall = ratio(recalled as f64, gold);
        BucketScores {
            precision,
            recall,
            f1: f1(precision, recall),
            predicted,
            gold,
            correct,
            recalled,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct E2EReport {
    pub overall: BucketScores,
    /// Precision over predictions labelled INC, recall over INC gold.
    pub inclusion: BucketScores,
    pub exclusion: BucketScores,
    /// Predictions that overlap no gold phrase.
    pub sink: usize,
    /// Gold phrases no prediction was assigned to.
    pub undetected: usize,
    /// Predictions assigned to a gold phrase of another category.
    pub miscategorized: usize,
}

impl E2EReport {
    pub fn bucket(&self, coarse: Coarse) -> &BucketScores {
        match coarse {
            Coarse::Inc => &self.inclusion,
            Coarse::Exc => &self.exclusion,
        }
    }

    pub const TSV_HEADER: &'static str = "bucket\tprecision\trecall\tf1\tpredicted\tgold\tcorrect\trecalled";

    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\n", Self::TSV_HEADER);
        for (name, b) in [
            ("overall", &self.overall),
            ("inclusion", &self.inclusion),
            ("exclusion", &self.exclusion),
        ] {
            let _ = writeln!(
                out,
                "{name}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}\t{}\t{}",
                b.precision, b.recall, b.f1, b.predicted, b.gold, b.correct, b.recalled
            );
        }
        let _ = writeln!(out, "sink\t{}", self.sink);
        let _ = writeln!(out, "undetected\t{}", self.undetected);
        let _ = writeln!(out, "miscategorized\t{}", self.miscategorized);
        out
    }
}

fn category(p: &Phrase) -> Result<Category, EvalError> {
    p.category.ok_or_else(|| EvalError::MissingCategory {
        sentence_id: p.sentence_id.clone(),
        start: p.start,
        end: p.end,
    })
}

/// Chains phrase mining and categorization: each prediction takes the label
/// of the same-sentence gold phrase it overlaps most (earliest gold start on
/// ties, any coarse class); predictions without overlap go to the sink.
/// A prediction is correct when its category equals the assigned gold
/// category, and a gold phrase is recalled when a correct prediction was
/// assigned to it.
pub fn end_to_end(pred: &[Phrase], gold: &[Phrase]) -> Result<E2EReport, EvalError> {
    check_spans(pred.iter().chain(gold))?;
    let gold_cats = gold.iter().map(category).collect::<Result<Vec<_>, _>>()?;
    let pred_cats = pred.iter().map(category).collect::<Result<Vec<_>, _>>()?;

    let mut by_sentence: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, g) in gold.iter().enumerate() {
        by_sentence.entry(g.sentence_id.as_str()).or_default().push(i);
    }

    let mut assigned = vec![false; gold.len()];
    let mut recalled = vec![false; gold.len()];
    let mut correct_by = [0usize; 2];
    let mut pred_by = [0usize; 2];
    let mut report = E2EReport::default();

    for (p, pc) in pred.iter().zip(&pred_cats) {
        let bucket = p.coarse as usize;
        pred_by[bucket] += 1;
        let best = by_sentence
            .get(p.sentence_id.as_str())
            .into_iter()
            .flatten()
            .map(|&gi| (gi, p.overlap(&gold[gi])))
            .filter(|&(_, ov)| ov > 0)
            .min_by_key(|&(gi, ov)| (std::cmp::Reverse(ov), gold[gi].start, gi));
        let Some((gi, _)) = best else {
            report.sink += 1;
            continue;
        };
        assigned[gi] = true;
        if *pc == gold_cats[gi] {
            recalled[gi] = true;
            correct_by[bucket] += 1;
        } else {
            report.miscategorized += 1;
        }
    }

    let mut gold_by = [0usize; 2];
    let mut recalled_by = [0usize; 2];
    for (i, g) in gold.iter().enumerate() {
        let bucket = g.coarse as usize;
        gold_by[bucket] += 1;
        recalled_by[bucket] += usize::from(recalled[i]);
        report.undetected += usize::from(!assigned[i]);
    }

    report.overall = BucketScores::new(
        correct_by.iter().sum(),
        pred.len(),
        recalled_by.iter().sum(),
        gold.len(),
    );
    report.inclusion = BucketScores::new(correct_by[0], pred_by[0], recalled_by[0], gold_by[0]);
    report.exclusion = BucketScores::new(correct_by[1], pred_by[1], recalled_by[1], gold_by[1]);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Category::*;

    fn ph(s: &str, a: usize, b: usize, c: Coarse, cat: Category) -> Phrase {
        Phrase::new(s, a, b, c).with_category(cat)
    }

    #[test]
    fn overlapping_same_category_is_correct() {
        let gold = [ph("s", 1, 4, Coarse::Inc, Price)];
        let pred = [ph("s", 0, 3, Coarse::Inc, Price)];
        let r = end_to_end(&pred, &gold).unwrap();
        assert_eq!((r.overall.precision, r.overall.recall, r.overall.f1), (1.0, 1.0, 1.0));
        assert_eq!(r.inclusion.f1, 1.0);
        assert_eq!(r.exclusion, BucketScores::default());
    }

    #[test]
    fn disjoint_prediction_goes_to_sink() {
        let gold = [ph("s", 0, 2, Coarse::Exc, Food)];
        let pred = [ph("s", 3, 5, Coarse::Exc, Food)];
        let r = end_to_end(&pred, &gold).unwrap();
        assert_eq!((r.overall.precision, r.overall.recall), (0.0, 0.0));
        assert_eq!((r.sink, r.undetected), (1, 1));
    }

    #[test]
    fn max_intersection_then_earliest_start() {
        // pred [2,6) overlaps gold A [0,3) by 1, gold B [3,6) by 3 -> B.
        let gold = [ph("s", 0, 3, Coarse::Inc, Food), ph("s", 3, 6, Coarse::Inc, Price)];
        let r = end_to_end(&[ph("s", 2, 6, Coarse::Inc, Price)], &gold).unwrap();
        assert_eq!((r.overall.correct, r.overall.recalled, r.undetected), (1, 1, 1));
        // pred [1,5) overlaps both by 2 -> earliest start A (Food), so Price is wrong.
        let r = end_to_end(&[ph("s", 1, 5, Coarse::Inc, Price)], &gold).unwrap();
        assert_eq!((r.overall.correct, r.miscategorized), (0, 1));
    }

    #[test]
    fn buckets_use_predicted_and_gold_coarse() {
        // Gold EXC/Handicap, prediction labelled INC/Handicap overlapping it.
        let gold = [ph("s", 0, 3, Coarse::Exc, Handicap)];
        let pred = [ph("s", 0, 3, Coarse::Inc, Handicap)];
        let r = end_to_end(&pred, &gold).unwrap();
        assert_eq!((r.inclusion.predicted, r.inclusion.correct, r.inclusion.gold), (1, 1, 0));
        assert_eq!((r.exclusion.gold, r.exclusion.recalled, r.exclusion.predicted), (1, 1, 0));
        assert_eq!(r.overall.f1, 1.0);
    }

    #[test]
    fn missing_category_rejected() {
        let gold = [Phrase::new("s", 0, 1, Coarse::Inc)];
        assert!(matches!(end_to_end(&[], &gold), Err(EvalError::MissingCategory { .. })));
    }

    #[test]
    fn counts_audit_on_mixed_fixture() {
        let gold = [
            ph("a", 0, 2, Coarse::Inc, Time),
            ph("a", 5, 8, Coarse::Exc, Queues),
            ph("b", 1, 3, Coarse::Exc, Crowd),
        ];
        let pred = [
            ph("a", 1, 3, Coarse::Inc, Time),
            ph("a", 6, 7, Coarse::Exc, Crowd),
            ph("b", 4, 6, Coarse::Inc, Crowd),
            ph("c", 0, 1, Coarse::Exc, Food),
        ];
        let r = end_to_end(&pred, &gold).unwrap();
        assert_eq!(r.overall.predicted, 4);
        assert_eq!(r.overall.gold, 3);
        assert_eq!((r.overall.correct, r.overall.recalled), (1, 1));
        assert_eq!((r.sink, r.undetected, r.miscategorized), (2, 1, 1));
        assert_eq!(r.overall.precision, 0.25);
        assert!((r.overall.recall - 1.0 / 3.0).abs() < 1e-15);
    }
}
