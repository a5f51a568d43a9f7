//! Shared oracles and random fixtures for the integration tests.
#![allow(dead_code)]

pub mod oracles;
pub mod pipeline;
pub mod separable;

use excmine::corpus::{validate_bio, BioTag, Sentence, Token};
use excmine::crf::CrfModel;
use excmine::features::{EmbeddingTable, FeatureVector, TemplateBuilder};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const WORDS: [&str; 10] = ["No", "ramp", "great", "for", "kids", "3pm", "!", "QUEUE", "parking", "zz"];

/// Every BIO-valid tag sequence of length `len`.
pub fn valid_sequences(len: usize) -> Vec<Vec<BioTag>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                BioTag::ALL.into_iter().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    p
                })
            })
            .filter(|p| validate_bio(p).is_empty())
            .collect();
    }
    out
}

/// Sequence score summed straight from the parameter vector.
pub fn direct_score(model: &CrfModel, feats: &[FeatureVector], tags: &[BioTag]) -> f64 {
    let p = model.params();
    let mut s = p[model.start_index(tags[0])];
    for (t, (f, &y)) in feats.iter().zip(tags).enumerate() {
        for (k, x) in f.dense.iter().enumerate() {
            s += p[model.dense_index(y, k)] * x;
        }
        for &id in &f.sparse {
            s += p[model.sparse_index(y, id)];
        }
        if t > 0 {
            s += p[model.transition_index(tags[t - 1], y)];
        }
    }
    s
}

pub fn random_table(rng: &mut impl Rng, dim: usize) -> EmbeddingTable {
    // leave the last word out so OOV features fire
    let rows = WORDS[..WORDS.len() - 1]
        .iter()
        .map(|w| (*w, (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<f64>>()));
    EmbeddingTable::from_rows(dim, rows).unwrap()
}

pub fn random_sentence(rng: &mut impl Rng, id: &str, len: usize) -> Sentence {
    let tokens = (0..len)
        .map(|_| Token::new(*WORDS.choose(rng).unwrap()).unwrap())
        .collect();
    Sentence::new(id, tokens)
}

pub fn random_valid_tags(rng: &mut impl Rng, len: usize) -> Vec<BioTag> {
    let mut tags: Vec<BioTag> = Vec::with_capacity(len);
    while tags.len() < len {
        let t = *BioTag::ALL.choose(rng).unwrap();
        let mut next = tags.clone();
        next.push(t);
        if validate_bio(&next).is_empty() {
            tags = next;
        }
    }
    tags
}

/// A model over a template observed on `sentences`, weights uniform in `[-2, 2]`.
pub fn random_model(rng: &mut impl Rng, dim: usize, sentences: &[Sentence]) -> CrfModel {
    let template = TemplateBuilder::new(dim)
        .window(rng.random_range(0..=1))
        .min_word_count(1)
        .observe_all(sentences)
        .build();
    let n = CrfModel::zeros(template.clone()).params().len();
    let params = (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect();
    CrfModel::from_params(template, params).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
