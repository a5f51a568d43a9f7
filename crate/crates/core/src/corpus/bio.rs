use super::{BioTag, Coarse, CorpusError, Phrase};

/// An inside tag whose predecessor does not continue a phrase of the same class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BioViolation {
    pub index: usize,
    pub found: BioTag,
    /// `None` when the violation is at sentence start.
    pub previous: Option<BioTag>,
}

fn continues(prev: Option<BioTag>, cur: BioTag) -> bool {
    match (prev.and_then(BioTag::coarse), cur.coarse()) {
        (Some(p), Some(c)) => p == c,
        _ => false,
    }
}

pub fn validate_bio(tags: &[BioTag]) -> Vec<BioViolation> {
    let mut out = Vec::new();
    let mut prev = None;
    for (i, &t) in tags.iter().enumerate() {
        if t.is_inside() && !continues(prev, t) {
            out.push(BioViolation {
                index: i,
                found: t,
                previous: prev,
            });
        }
        prev = Some(t);
    }
    out
}

/// Rewrites every orphan inside tag to the begin tag of its class.
///
/// The check uses the already-repaired predecessor, which is equivalent to
/// the original one since repairs never change a tag's class.
pub fn repair_bio(tags: &[BioTag]) -> Vec<BioTag> {
    let mut out = Vec::with_capacity(tags.len());
    let mut prev: Option<BioTag> = None;
    for &t in tags {
        let fixed = match t.coarse() {
            Some(c) if t.is_inside() && !continues(prev, t) => c.begin_tag(),
            _ => t,
        };
        out.push(fixed);
        prev = Some(fixed);
    }
    out
}

/// One phrase per maximal begin-then-inside run, ordered by start.
pub fn extract_phrases(sentence_id: &str, tags: &[BioTag]) -> Result<Vec<Phrase>, CorpusError> {
    if let Some(v) = validate_bio(tags).first() {
        return Err(CorpusError::InvalidBio(v.index));
    }
    let mut phrases = Vec::new();
    let mut open: Option<(usize, Coarse)> = None;
    for (i, &t) in tags.iter().enumerate() {
        if t.is_inside() {
            continue;
        }
        if let Some((start, coarse)) = open.take() {
            phrases.push(Phrase::new(sentence_id, start, i, coarse));
        }
        if t.is_begin() {
            open = t.coarse().map(|c| (i, c));
        }
    }
    if let Some((start, coarse)) = open {
        phrases.push(Phrase::new(sentence_id, start, tags.len(), coarse));
    }
    Ok(phrases)
}

/// Inverse of [`extract_phrases`]: begin tag at each start, inside tags
/// through the span, `O` elsewhere. Later phrases overwrite earlier ones
/// where spans overlap.
pub fn phrases_to_tags<'a>(len: usize, phrases: impl IntoIterator<Item = &'a Phrase>) -> Vec<BioTag> {
    let mut tags = vec![BioTag::O; len];
    for p in phrases {
        let end = p.end.min(len);
        for (i, tag) in tags.iter_mut().enumerate().take(end).skip(p.start) {
            *tag = if i == p.start {
                p.coarse.begin_tag()
            } else {
                p.coarse.inside_tag()
            };
        }
    }
    tags
}
