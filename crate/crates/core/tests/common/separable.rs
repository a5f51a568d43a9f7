//! Training runs on generated corpora whose labels are a function of the words.

use excmine::corpus::{Category, Dataset, Phrase};
use excmine::crf::{tag, train_crf, TrainConfig};
use excmine::features::{phrase_features, TemplateBuilder};
use excmine::phrase_clf::{train_softmax, ClfConfig};
use excmine::synthetic::{synthetic_corpus, SyntheticCorpus};

pub struct CrfRun {
    pub held_out_accuracy: f64,
    pub tokens: usize,
    /// Objective before training followed by one value per epoch, full batch,
    /// no momentum.
    pub full_batch_losses: Vec<f64>,
}

fn halves(c: &SyntheticCorpus) -> (Dataset, Dataset) {
    let n = c.dataset.sentences.len() / 2;
    let part = |r: std::ops::Range<usize>| {
        let sentences = c.dataset.sentences[r].to_vec();
        let ids: std::collections::HashSet<&str> = sentences.iter().map(|s| s.id.as_str()).collect();
        let phrases = c
            .dataset
            .phrases
            .iter()
            .filter(|p| ids.contains(p.sentence_id.as_str()))
            .cloned()
            .collect();
        Dataset { sentences, phrases }
    };
    (part(0..n), part(n..c.dataset.sentences.len()))
}

pub fn crf_run(seed: u64) -> CrfRun {
    let c = synthetic_corpus(300, 8, seed);
    let (train, test) = halves(&c);
    let template = || TemplateBuilder::new(8).observe_all(&train.sentences).build();

    let cfg = TrainConfig {
        learning_rate: 0.05,
        epochs: 10,
        ..Default::default()
    };
    let (model, _) = train_crf(&cfg, &train.sentences, &train.sentences, template(), &c.embeddings).unwrap();
    let predicted = tag(&model, &c.embeddings, &test.sentences).unwrap();
    let mut right = 0;
    let mut total = 0;
    for (s, p) in test.sentences.iter().zip(&predicted) {
        for (g, y) in s.tags.as_ref().unwrap().iter().zip(p) {
            right += usize::from(g == y);
            total += 1;
        }
    }

    let full = TrainConfig {
        learning_rate: 1e-4,
        momentum: 0.0,
        batch_size: train.sentences.len(),
        epochs: 15,
        l2_lambda: 1e-4,
        seed,
    };
    let (_, hist) = train_crf(&full, &train.sentences, &[], template(), &c.embeddings).unwrap();
    let mut losses = vec![hist.initial_loss];
    losses.extend(hist.epochs.iter().map(|e| e.train_loss));

    CrfRun {
        held_out_accuracy: right as f64 / total as f64,
        tokens: total,
        full_batch_losses: losses,
    }
}

pub struct ClfRun {
    pub train_accuracy: f64,
    pub held_out_accuracy: f64,
    pub held_out: usize,
    pub full_batch_losses: Vec<f64>,
}

fn matrix(c: &SyntheticCorpus, d: &Dataset) -> (Vec<Vec<f64>>, Vec<Category>) {
    d.phrases
        .iter()
        .map(|p: &Phrase| {
            let s = d.sentence(&p.sentence_id).unwrap();
            (
                phrase_features(&c.embeddings, &c.keywords, s, p.start, p.end).unwrap(),
                p.category.unwrap(),
            )
        })
        .unzip()
}

pub fn clf_run(seed: u64) -> ClfRun {
    let c = synthetic_corpus(300, 8, seed);
    let (train, test) = halves(&c);
    let (xs, ys) = matrix(&c, &train);
    let (xt, yt) = matrix(&c, &test);
    let cfg = ClfConfig {
        learning_rate: 0.5,
        epochs: 300,
        ..Default::default()
    };
    let (model, losses) = train_softmax(&cfg, &xs, &ys).unwrap();
    let acc = |x: &[Vec<f64>], y: &[Category]| {
        x.iter().zip(y).filter(|(x, y)| model.predict(x).unwrap().0 == **y).count() as f64 / y.len() as f64
    };
    ClfRun {
        train_accuracy: acc(&xs, &ys),
        held_out_accuracy: acc(&xt, &yt),
        held_out: yt.len(),
        full_batch_losses: losses,
    }
}

pub fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}
