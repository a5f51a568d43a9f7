use std::fmt;

use serde::Serialize;

use super::{BioTag, Category, Dataset};

/// Token-label and phrase-category counts of a dataset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LabelDistribution {
    pub sentences: usize,
    pub tokens: usize,
    /// Indexed by [`BioTag::index`].
    pub tags: [usize; BioTag::COUNT],
    /// Phrases decoded from the (repaired) tags.
    pub tagged_phrases: usize,
    /// Entries of the phrase list.
    pub phrases: usize,
    /// Indexed by [`Category::index`]; phrases without a category are not counted.
    pub categories: [usize; Category::COUNT],
    pub uncategorized: usize,
}

impl LabelDistribution {
    pub fn tag(&self, tag: BioTag) -> usize {
        self.tags[tag.index()]
    }

    pub fn category(&self, category: Category) -> usize {
        self.categories[category.index()]
    }
}

pub fn label_distribution(dataset: &Dataset) -> LabelDistribution {
    let mut d = LabelDistribution {
        sentences: dataset.sentences.len(),
        ..Default::default()
    };
    for s in &dataset.sentences {
        d.tokens += s.len();
        if let Some(tags) = &s.tags {
            for t in tags {
                d.tags[t.index()] += 1;
            }
        }
    }
    d.tagged_phrases = dataset.phrases_from_tags().len();
    d.phrases = dataset.phrases.len();
    for p in &dataset.phrases {
        match p.category {
            Some(c) => d.categories[c.index()] += 1,
            None => d.uncategorized += 1,
        }
    }
    d
}

impl fmt::Display for LabelDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sentences\t{}", self.sentences)?;
        writeln!(f, "tokens\t{}", self.tokens)?;
        for t in BioTag::ALL {
            writeln!(f, "tag:{}\t{}", t, self.tag(t))?;
        }
        writeln!(f, "tagged_phrases\t{}", self.tagged_phrases)?;
        writeln!(f, "phrases\t{}", self.phrases)?;
        for c in Category::ALL {
            writeln!(f, "category:{}\t{}", c, self.category(c))?;
        }
        writeln!(f, "uncategorized\t{}", self.uncategorized)
    }
}
