//! Generated review-like corpora with a known labelling rule, for demos and
//! for checking that the learners can fit separable data.
//!
//! Every phrase is a cue word for its class (`great`, `no`, ...) followed by
//! a category keyword and optionally one more inside word. Those words never
//! occur outside phrases, so tags and categories are a deterministic
//! function of the tokens.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{BioTag, Category, Coarse, Dataset, KeywordIndex, Phrase, Sentence, Token};
use crate::features::EmbeddingTable;

const INC_CUES: [&str; 3] = ["great", "perfect", "ideal"];
const EXC_CUES: [&str; 3] = ["no", "never", "avoid"];
const INNER: [&str; 3] = ["here", "inside", "overall"];
const FILLERS: [&str; 12] = [
    "we", "visited", "the", "museum", "and", "it", "was", "a", "sunny", "day", "tower", "view",
];

fn category_words(c: Category) -> [&'static str; 2] {
    match c {
        Category::AgeHeight => ["toddlers", "seniors"],
        Category::Claustrophobia => ["tunnels", "narrow"],
        Category::CouplesFamily => ["couples", "families"],
        Category::Crowd => ["crowds", "packed"],
        Category::Food => ["vegetarian", "snacks"],
        Category::Handicap => ["wheelchair", "ramp"],
        Category::Hygiene => ["restrooms", "dirty"],
        Category::Parking => ["parking", "garage"],
        Category::Price => ["expensive", "cheap"],
        Category::Queues => ["queues", "lines"],
        Category::Time => ["evening", "weekends"],
    }
}

/// Keyword index mapping each category to its two generator words.
pub fn keyword_index() -> KeywordIndex {
    KeywordIndex::new(Category::ALL.map(|c| (c, category_words(c).to_vec()))).expect("static keywords are valid")
}

pub struct SyntheticCorpus {
    /// Tagged sentences plus one categorized phrase entry per tagged phrase.
    pub dataset: Dataset,
    pub embeddings: EmbeddingTable,
    pub keywords: KeywordIndex,
}

fn vocabulary() -> Vec<&'static str> {
    let mut v: Vec<&str> = INC_CUES.iter().chain(&EXC_CUES).chain(&INNER).chain(&FILLERS).copied().collect();
    for c in Category::ALL {
        v.extend(category_words(c));
    }
    v
}

/// Random vectors in `[-1, 1]` for every generator word.
pub fn random_embeddings(dim: usize, rng: &mut impl Rng) -> EmbeddingTable {
    let rows = vocabulary()
        .into_iter()
        .map(|w| (w, (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect::<Vec<f64>>()));
    EmbeddingTable::from_rows(dim, rows).expect("rows have the requested width")
}

/// `n` sentences, each with one or two phrases among filler words.
pub fn synthetic_corpus(n: usize, dim: usize, seed: u64) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let embeddings = random_embeddings(dim, &mut rng);
    let mut dataset = Dataset::default();
    for i in 0..n {
        let id = format!("syn:{i}");
        let mut words: Vec<&str> = Vec::new();
        let mut tags = Vec::new();
        let n_phrases = rng.random_range(1..=2);
        for _ in 0..n_phrases {
            for _ in 0..rng.random_range(0..=3) {
                words.push(FILLERS.choose(&mut rng).expect("non-empty"));
                tags.push(BioTag::O);
            }
            let coarse = if rng.random_bool(0.5) { Coarse::Inc } else { Coarse::Exc };
            let category = *Category::ALL.choose(&mut rng).expect("non-empty");
            let start = words.len();
            let cues = if coarse == Coarse::Inc { &INC_CUES } else { &EXC_CUES };
            words.push(cues.choose(&mut rng).expect("non-empty"));
            tags.push(coarse.begin_tag());
            words.push(category_words(category).choose(&mut rng).expect("non-empty"));
            tags.push(coarse.inside_tag());
            if rng.random_bool(0.4) {
                words.push(INNER.choose(&mut rng).expect("non-empty"));
                tags.push(coarse.inside_tag());
            }
            dataset
                .phrases
                .push(Phrase::new(id.clone(), start, words.len(), coarse).with_category(category));
        }
        for _ in 0..rng.random_range(0..=2) {
            words.push(FILLERS.choose(&mut rng).expect("non-empty"));
            tags.push(BioTag::O);
        }
        let tokens = words
            .iter()
            .map(|w| Token::new(*w).expect("generator words are tokens"))
            .collect();
        dataset.sentences.push(Sentence {
            id,
            spot_id: Some(format!("spot{}", i % 7)),
            tokens,
            tags: Some(tags),
        });
    }
    SyntheticCorpus {
        dataset,
        embeddings,
        keywords: keyword_index(),
    }
}
