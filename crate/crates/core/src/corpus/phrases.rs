use std::collections::HashMap;
use std::fmt::Write as _;

use super::{check_span, Category, Coarse, CorpusError, Dataset, Phrase};

pub const PHRASE_TSV_HEADER: &str = "sentence_id\tstart\tend\tcoarse\tcategory\ttext";

/// Writes phrases with a header row; `text` is the space-joined span taken
/// from the sentence in `dataset`.
pub fn write_phrase_tsv(dataset: &Dataset, phrases: &[Phrase]) -> Result<String, CorpusError> {
    let by_id: HashMap<&str, _> = dataset.sentences.iter().map(|s| (s.id.as_str(), s)).collect();
    let mut out = String::from(PHRASE_TSV_HEADER);
    out.push('\n');
    for p in phrases {
        let s = by_id
            .get(p.sentence_id.as_str())
            .ok_or_else(|| CorpusError::UnknownSentence(p.sentence_id.clone()))?;
        check_span(p, s.len())?;
        let category = p.category.map(Category::as_str).unwrap_or("");
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            p.sentence_id,
            p.start,
            p.end,
            p.coarse,
            category,
            s.span_text(p.start, p.end)
        );
    }
    Ok(out)
}

/// Reads a phrase TSV. The header row is optional; the `text` column is
/// informational and not checked.
pub fn parse_phrase_tsv(text: &str) -> Result<Vec<Phrase>, CorpusError> {
    let err = |line: usize, reason: String| CorpusError::Parse { line, reason };
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || (i == 0 && line.starts_with("sentence_id\t")) {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 5 {
            return Err(err(line_no, format!("expected at least 5 columns, got {}", cols.len())));
        }
        if cols[0].is_empty() {
            return Err(err(line_no, "empty sentence id".into()));
        }
        let num = |s: &str, name: &str| {
            s.parse::<usize>()
                .map_err(|_| err(line_no, format!("bad {name} `{s}`")))
        };
        let start = num(cols[1], "start")?;
        let end = num(cols[2], "end")?;
        if start >= end {
            return Err(err(line_no, format!("empty span [{start}, {end})")));
        }
        let coarse = cols[3].parse::<Coarse>().map_err(|e| err(line_no, e))?;
        let category = match cols[4].trim() {
            "" => None,
            c => Some(c.parse::<Category>().map_err(|e| err(line_no, e.to_string()))?),
        };
        out.push(Phrase {
            sentence_id: cols[0].to_string(),
            start,
            end,
            coarse,
            category,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{BioTag, Sentence};

    #[test]
    fn round_trip_with_text_column() {
        let d = Dataset::new(vec![Sentence::tagged(
            "r1:0",
            &["no", "wheelchair", "access", "here"],
            &[BioTag::BExc, BioTag::Exc, BioTag::Exc, BioTag::O],
        )]);
        let phrases = vec![
            Phrase::new("r1:0", 0, 3, Coarse::Exc).with_category(Category::Handicap),
            Phrase::new("r1:0", 3, 4, Coarse::Inc),
        ];
        let text = write_phrase_tsv(&d, &phrases).unwrap();
        assert_eq!(
            text,
            format!("{PHRASE_TSV_HEADER}\nr1:0\t0\t3\tEXC\tHandicap\tno wheelchair access\nr1:0\t3\t4\tINC\t\there\n")
        );
        assert_eq!(parse_phrase_tsv(&text).unwrap(), phrases);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(parse_phrase_tsv("s\t0\t0\tINC\t\tx\n"), Err(CorpusError::Parse { line: 1, .. })));
        assert!(matches!(parse_phrase_tsv("s\t0\t1\tFOO\t\tx\n"), Err(CorpusError::Parse { .. })));
        assert!(matches!(parse_phrase_tsv("s\t0\t1\tINC\tWeather\tx\n"), Err(CorpusError::Parse { .. })));
        assert!(matches!(parse_phrase_tsv("s\t0\n"), Err(CorpusError::Parse { .. })));
    }
}
