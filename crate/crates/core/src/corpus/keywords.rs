use std::collections::{BTreeMap, BTreeSet};

use super::{Category, CorpusError, Sentence, Token};

/// Per-category single-token keyword lists used to pre-filter review sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeywordIndex {
    by_category: BTreeMap<Category, BTreeSet<String>>,
}

impl KeywordIndex {
    pub fn new<I, S>(entries: I) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = (Category, Vec<S>)>,
        S: Into<String>,
    {
        let mut by_category: BTreeMap<Category, BTreeSet<String>> = BTreeMap::new();
        for (category, words) in entries {
            let set = by_category.entry(category).or_default();
            for w in words {
                let w = w.into();
                if w.is_empty() || w.chars().any(char::is_whitespace) || w.to_lowercase() != w {
                    return Err(CorpusError::BadKeyword { category, keyword: w });
                }
                set.insert(w);
            }
        }
        Ok(KeywordIndex { by_category })
    }

    /// Parses a JSON object mapping category names to arrays of keywords.
    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(text).map_err(|e| CorpusError::Json {
            line: e.line(),
            reason: e.to_string(),
        })?;
        let mut entries = Vec::with_capacity(raw.len());
        for (name, words) in raw {
            entries.push((name.parse::<Category>()?, words));
        }
        Self::new(entries)
    }

    /// Canonical JSON form: categories in canonical order, keywords sorted.
    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .by_category
            .iter()
            .map(|(c, words)| (c.as_str().to_string(), words.iter().cloned().collect()))
            .collect();
        serde_json::Value::Object(map).to_string()
    }

    pub fn keywords(&self, category: Category) -> impl Iterator<Item = &str> {
        self.by_category
            .get(&category)
            .into_iter()
            .flat_map(|s| s.iter().map(String::as_str))
    }

    /// Categories whose keyword list contains `lower` exactly.
    pub fn categories_of(&self, lower: &str) -> impl Iterator<Item = Category> + '_ {
        let lower = lower.to_string();
        self.by_category
            .iter()
            .filter(move |(_, set)| set.contains(&lower))
            .map(|(c, _)| *c)
    }

    /// Union of keyword-hit categories over `tokens`, in canonical order.
    pub fn matches(&self, tokens: &[Token]) -> BTreeSet<Category> {
        tokens
            .iter()
            .flat_map(|t| self.categories_of(t.lower()).collect::<Vec<_>>())
            .collect()
    }
}

/// Keeps sentences with at least one keyword hit on a lowercased token,
/// preserving order, and reports the hit categories for each.
pub fn filter_candidate_sentences<'a>(
    sentences: &'a [Sentence],
    index: &KeywordIndex,
) -> Vec<(&'a Sentence, BTreeSet<Category>)> {
    sentences
        .iter()
        .filter_map(|s| {
            let hits = index.matches(&s.tokens);
            (!hits.is_empty()).then_some((s, hits))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::BioTag;

    fn sentence(words: &[&str]) -> Sentence {
        Sentence::tagged("s", words, &vec![BioTag::O; words.len()])
    }

    #[test]
    fn keeps_hits_and_drops_misses() {
        let idx = KeywordIndex::new([
            (Category::Handicap, vec!["wheelchair", "ramp"]),
            (Category::Price, vec!["expensive"]),
        ])
        .unwrap();
        let sents = vec![
            sentence(&["The", "Wheelchair", "ramp", "was", "steep"]),
            sentence(&["Lovely", "view"]),
            sentence(&["expensive", "but", "ramp"]),
        ];
        let kept = filter_candidate_sentences(&sents, &idx);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].1.iter().copied().collect::<Vec<_>>(), vec![Category::Handicap]);
        assert_eq!(
            kept[1].1.iter().copied().collect::<Vec<_>>(),
            vec![Category::Handicap, Category::Price]
        );
        assert!(std::ptr::eq(kept[1].0, &sents[2]));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let idx = KeywordIndex::from_json(r#"{"Handicap": ["wheelchair"], "Age/Height": ["toddler", "kids"]}"#)
            .unwrap();
        assert_eq!(idx.keywords(Category::AgeHeight).collect::<Vec<_>>(), vec!["kids", "toddler"]);
        assert_eq!(KeywordIndex::from_json(&idx.to_json()).unwrap(), idx);

        assert!(matches!(
            KeywordIndex::from_json(r#"{"Handicap": ["Wheelchair"]}"#),
            Err(CorpusError::BadKeyword { .. })
        ));
        assert!(matches!(
            KeywordIndex::from_json(r#"{"Handicap": ["two words"]}"#),
            Err(CorpusError::BadKeyword { .. })
        ));
        assert!(matches!(
            KeywordIndex::from_json(r#"{"Weather": ["rain"]}"#),
            Err(CorpusError::UnknownCategory(_))
        ));
    }
}
