use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CrfError, CrfModel, Featurized};
use crate::corpus::{extract_phrases, repair_bio, BioTag, Phrase, Sentence};
use crate::eval::overlap_scores;
use crate::features::{EmbeddingTable, FeatureTemplate, FeatureVector};

/// Minibatch SGD with classical momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub momentum: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub l2_lambda: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 1e-5,
            momentum: 0.7,
            batch_size: 8,
            epochs: 50,
            l2_lambda: 1e-4,
            seed: 13,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), CrfError> {
        let bad = |m: &str| Err(CrfError::BadConfig(m.to_string()));
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning_rate must be positive");
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return bad("momentum must be in [0, 1)");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be at least 1");
        }
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.l2_lambda.is_finite() && self.l2_lambda >= 0.0) {
            return bad("l2_lambda must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Full training objective after the epoch's updates.
    pub train_loss: f64,
    /// Mean of inclusion and exclusion binary-overlap F1 on the dev set.
    pub dev_f1: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    pub initial_loss: f64,
    pub epochs: Vec<EpochRecord>,
    pub best_epoch: usize,
    pub best_dev_f1: f64,
}

impl CrfModel {
    /// Objective value only; cheaper than [`CrfModel::nll_and_gradient`].
    pub fn objective<'a>(&self, data: impl IntoIterator<Item = &'a Featurized>, l2: f64) -> f64 {
        let mut loss = 0.0;
        for ex in data {
            if ex.features.is_empty() {
                continue;
            }
            let lat = self.lattice(&ex.features);
            loss += lat.log_partition() - lat.score(&ex.gold);
        }
        loss + 0.5 * l2 * self.params().iter().map(|w| w * w).sum::<f64>()
    }
}

fn featurize_gold(
    template: &FeatureTemplate,
    table: &EmbeddingTable,
    sentences: &[Sentence],
) -> Result<Vec<Featurized>, CrfError> {
    sentences
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let gold = s.tags.as_deref().ok_or_else(|| CrfError::MissingGold(s.id.clone()))?;
            Featurized::new(template, table, s, gold)
        })
        .collect()
}

struct DevSet {
    ids: Vec<String>,
    features: Vec<Vec<FeatureVector>>,
    gold: Vec<Phrase>,
}

impl DevSet {
    fn new(template: &FeatureTemplate, table: &EmbeddingTable, sentences: &[Sentence]) -> Result<Self, CrfError> {
        let mut dev = DevSet {
            ids: Vec::new(),
            features: Vec::new(),
            gold: Vec::new(),
        };
        for s in sentences.iter().filter(|s| !s.is_empty()) {
            let tags = s.tags.as_deref().ok_or_else(|| CrfError::MissingGold(s.id.clone()))?;
            dev.gold
                .extend(extract_phrases(&s.id, &repair_bio(tags)).expect("repaired tags are valid"));
            dev.ids.push(s.id.clone());
            dev.features.push(template.sentence_features(table, s)?);
        }
        Ok(dev)
    }

    fn score(&self, model: &CrfModel) -> f64 {
        let mut pred = Vec::new();
        for (id, f) in self.ids.iter().zip(&self.features) {
            let tags = model.lattice(f).viterbi().0;
            pred.extend(extract_phrases(id, &tags).expect("constrained decoding yields valid BIO"));
        }
        overlap_scores(&pred, &self.gold)
            .expect("spans from tag sequences are non-empty")
            .mean_binary_f1()
    }
}

/// Trains from a zero initialization and returns the snapshot with the best
/// dev score (latest epoch on ties) along with the per-epoch history.
pub fn train_crf(
    config: &TrainConfig,
    train: &[Sentence],
    dev: &[Sentence],
    template: FeatureTemplate,
    table: &EmbeddingTable,
) -> Result<(CrfModel, TrainHistory), CrfError> {
    config.validate()?;
    let data = featurize_gold(&template, table, train)?;
    if data.is_empty() {
        return Err(CrfError::EmptyTrainSet);
    }
    let dev = DevSet::new(&template, table, dev)?;
    let mut model = CrfModel::zeros(template);
    let mut velocity = vec![0.0; model.params().len()];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();

    let mut history = TrainHistory {
        initial_loss: model.objective(&data, config.l2_lambda),
        ..Default::default()
    };
    let mut best = model.clone();
    let mut best_f1 = f64::NEG_INFINITY;

    for epoch in 1..=config.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<&Featurized> = chunk.iter().map(|&i| &data[i]).collect();
            let (_, grad) = model.nll_and_gradient(batch, config.l2_lambda)?;
            for ((w, v), g) in model.params_mut().iter_mut().zip(&mut velocity).zip(&grad) {
                *v = config.momentum * *v - config.learning_rate * g;
                *w += *v;
            }
        }
        let dev_f1 = dev.score(&model);
        history.epochs.push(EpochRecord {
            epoch,
            train_loss: model.objective(&data, config.l2_lambda),
            dev_f1,
        });
        if dev_f1 >= best_f1 {
            best_f1 = dev_f1;
            best = model.clone();
            history.best_epoch = epoch;
        }
    }
    history.best_dev_f1 = best_f1;
    Ok((best, history))
}

/// Viterbi tags for each sentence, in input order.
pub fn tag(model: &CrfModel, table: &EmbeddingTable, sentences: &[Sentence]) -> Result<Vec<Vec<BioTag>>, CrfError> {
    sentences.iter().map(|s| model.decode(table, s)).collect()
}
