use std::fmt::Write as _;

use super::{BioTag, CorpusError, Dataset, Sentence, Token};

const ID_PREFIX: &str = "# id = ";
const SPOT_PREFIX: &str = "# spot_id = ";

/// Id given to the `index`-th sentence when its block has no `# id` line.
pub(crate) fn default_sentence_id(index: usize) -> String {
    index.to_string()
}

fn err(line: usize, reason: impl Into<String>) -> CorpusError {
    CorpusError::Parse {
        line,
        reason: reason.into(),
    }
}

#[derive(Default)]
struct Pending {
    id: Option<String>,
    spot_id: Option<String>,
    tokens: Vec<Token>,
    tags: Vec<BioTag>,
}

impl Pending {
    fn flush(&mut self, out: &mut Vec<Sentence>) {
        if self.tokens.is_empty() {
            return;
        }
        let taken = std::mem::take(self);
        let id = taken.id.unwrap_or_else(|| default_sentence_id(out.len()));
        out.push(Sentence {
            id,
            spot_id: taken.spot_id,
            tokens: taken.tokens,
            tags: Some(taken.tags),
        });
    }
}

/// Reads `token<TAB>tag` lines, one sentence per blank-line separated block.
///
/// Lines starting with `#` and containing no tab are comments; `# id = ...`
/// and `# spot_id = ...` attach to the following sentence, other comments are
/// ignored.
pub fn parse_conll(text: &str) -> Result<Dataset, CorpusError> {
    let mut sentences = Vec::new();
    let mut cur = Pending::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            cur.flush(&mut sentences);
            continue;
        }
        if line.starts_with('#') && !line.contains('\t') {
            let meta = if let Some(id) = line.strip_prefix(ID_PREFIX) {
                Some((&mut cur.id, id))
            } else {
                line.strip_prefix(SPOT_PREFIX).map(|s| (&mut cur.spot_id, s))
            };
            if let Some((slot, value)) = meta {
                if !cur.tokens.is_empty() {
                    return Err(err(line_no, "sentence metadata inside a sentence"));
                }
                let value = value.trim();
                if value.is_empty() {
                    return Err(err(line_no, "empty metadata value"));
                }
                *slot = Some(value.to_string());
            }
            continue;
        }
        let mut cols = line.split('\t');
        let (Some(word), Some(tag), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(err(line_no, "expected exactly two tab-separated columns"));
        };
        let token = Token::new(word).ok_or_else(|| err(line_no, "empty or whitespace-bearing token"))?;
        let tag = tag.trim().parse::<BioTag>().map_err(|e| err(line_no, e))?;
        cur.tokens.push(token);
        cur.tags.push(tag);
    }
    cur.flush(&mut sentences);
    Ok(Dataset::new(sentences))
}

/// Inverse of [`parse_conll`]. The `# id` line is only written when the id
/// differs from the one the parser would assign by position.
pub fn write_conll(dataset: &Dataset) -> Result<String, CorpusError> {
    let mut out = String::new();
    for (i, s) in dataset.sentences.iter().enumerate() {
        let tags = s
            .tags
            .as_ref()
            .ok_or_else(|| CorpusError::MissingTags(s.id.clone()))?;
        if s.id != default_sentence_id(i) {
            let _ = writeln!(out, "{ID_PREFIX}{}", s.id);
        }
        if let Some(spot) = &s.spot_id {
            let _ = writeln!(out, "{SPOT_PREFIX}{spot}");
        }
        for (tok, tag) in s.tokens.iter().zip(tags) {
            let _ = writeln!(out, "{}\t{}", tok.text(), tag);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BioTag::*;

    #[test]
    fn parses_single_sentence() {
        let d = parse_conll("wheelchair\tB_EXC\nramp\tEXC\n\n").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.sentences[0].tags.as_deref(), Some(&[BExc, Exc][..]));
        assert_eq!(d.sentences[0].tokens[1].text(), "ramp");
        assert_eq!(d.sentences[0].id, "0");
    }

    #[test]
    fn empty_input_is_empty_dataset() {
        assert!(parse_conll("").unwrap().is_empty());
        assert!(parse_conll("\n\n").unwrap().is_empty());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_conll("word\tB_FOO\n"), Err(CorpusError::Parse { line: 1, .. })));
        assert!(matches!(parse_conll("a\tO\nword\n"), Err(CorpusError::Parse { line: 2, .. })));
        assert!(matches!(parse_conll("\tO\n"), Err(CorpusError::Parse { line: 1, .. })));
        assert!(matches!(parse_conll("a\tO\tx\n"), Err(CorpusError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_conll("a\tO\n# id = late\nb\tO\n"),
            Err(CorpusError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn metadata_comments_and_crlf() {
        let text = "# id = r1:0\r\n# spot_id = eiffel\r\n# free comment\r\nThe\tO\r\n\r\n#\tO\r\n";
        let d = parse_conll(text).unwrap();
        assert_eq!(d.sentences[0].id, "r1:0");
        assert_eq!(d.sentences[0].spot_id.as_deref(), Some("eiffel"));
        assert_eq!(d.sentences[1].id, "1");
        assert_eq!(d.sentences[1].tokens[0].text(), "#");
    }

    #[test]
    fn writes_exact_format() {
        let d = Dataset::new(vec![Sentence::tagged("0", &["no", "ramp"], &[BExc, Exc])]);
        assert_eq!(write_conll(&d).unwrap(), "no\tB_EXC\nramp\tEXC\n\n");

        let mut named = d.clone();
        named.sentences[0].id = "r7:2".into();
        named.sentences[0].spot_id = Some("louvre".into());
        let text = write_conll(&named).unwrap();
        assert_eq!(text, "# id = r7:2\n# spot_id = louvre\nno\tB_EXC\nramp\tEXC\n\n");
        assert_eq!(parse_conll(&text).unwrap(), named);
    }

    #[test]
    fn missing_tags_rejected() {
        let mut d = Dataset::new(vec![Sentence::tagged("0", &["a"], &[O])]);
        d.sentences[0].tags = None;
        assert_eq!(write_conll(&d), Err(CorpusError::MissingTags("0".into())));
    }
}
