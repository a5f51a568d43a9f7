//! Linear-chain CRF over the five BIO tags.
//!
//! Emission scores are linear in the token features (dense embedding window
//! plus sparse binary features), transitions are a 5×5 matrix and the first
//! tag gets a start score. Inside tags are hard-masked wherever BIO forbids
//! them, so every decoded sequence is well formed.

mod lattice;
mod train;

use thiserror::Error;

pub use lattice::{log_sum_exp, Lattice, Marginals};
pub use train::{tag, train_crf, EpochRecord, TrainConfig, TrainHistory};

use crate::corpus::{BioTag, Sentence};
use crate::features::{EmbeddingTable, FeatureError, FeatureTemplate, FeatureVector};

const K: usize = BioTag::COUNT;

#[derive(Debug, Error, PartialEq)]
pub enum CrfError {
    #[error("gold tags are not permitted by the BIO constraints (position {0})")]
    InvalidGold(usize),
    #[error("gold sequence has {tags} tags for {tokens} tokens")]
    GoldLength { tags: usize, tokens: usize },
    #[error("sentence `{0}` has no gold tags")]
    MissingGold(String),
    #[error("empty training set")]
    EmptyTrainSet,
    #[error("invalid training configuration: {0}")]
    BadConfig(String),
    #[error("parameter vector has {found} entries, model expects {expected}")]
    ParamCount { expected: usize, found: usize },
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Whether tag `to` may follow tag `from`.
pub fn transition_allowed(from: BioTag, to: BioTag) -> bool {
    match to {
        BioTag::Inc => matches!(from, BioTag::BInc | BioTag::Inc),
        BioTag::Exc => matches!(from, BioTag::BExc | BioTag::Exc),
        _ => true,
    }
}

/// Whether a sentence may open with `tag`.
pub fn start_allowed(tag: BioTag) -> bool {
    !tag.is_inside()
}

/// A sentence already turned into per-position features, with gold tags.
#[derive(Debug, Clone, PartialEq)]
pub struct Featurized {
    pub features: Vec<FeatureVector>,
    pub gold: Vec<BioTag>,
}

impl Featurized {
    pub fn new(
        template: &FeatureTemplate,
        table: &EmbeddingTable,
        sentence: &Sentence,
        gold: &[BioTag],
    ) -> Result<Self, CrfError> {
        if gold.len() != sentence.len() {
            return Err(CrfError::GoldLength {
                tags: gold.len(),
                tokens: sentence.len(),
            });
        }
        Ok(Featurized {
            features: template.sentence_features(table, sentence)?,
            gold: gold.to_vec(),
        })
    }
}

/// Trained (or initial) CRF parameters together with their feature template.
///
/// All parameters live in one flat vector laid out as dense emission
/// weights (`tag × dense_width`), sparse emission weights
/// (`tag × sparse_len`), transitions (`from × to`) and start scores.
/// Entries the BIO mask forbids are kept at zero and never trained.
#[derive(Debug, Clone, PartialEq)]
pub struct CrfModel {
    template: FeatureTemplate,
    params: Vec<f64>,
}

impl CrfModel {
    pub fn zeros(template: FeatureTemplate) -> Self {
        let n = Self::param_count_for(&template);
        CrfModel {
            template,
            params: vec![0.0; n],
        }
    }

    pub fn from_params(template: FeatureTemplate, params: Vec<f64>) -> Result<Self, CrfError> {
        let expected = Self::param_count_for(&template);
        if params.len() != expected {
            return Err(CrfError::ParamCount {
                expected,
                found: params.len(),
            });
        }
        let mut m = CrfModel { template, params };
        m.clear_masked();
        Ok(m)
    }

    fn param_count_for(t: &FeatureTemplate) -> usize {
        K * (t.dense_width() + t.sparse_len()) + K * K + K
    }

    pub fn template(&self) -> &FeatureTemplate {
        &self.template
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    fn sparse_offset(&self) -> usize {
        K * self.template.dense_width()
    }

    fn transition_offset(&self) -> usize {
        self.sparse_offset() + K * self.template.sparse_len()
    }

    fn start_offset(&self) -> usize {
        self.transition_offset() + K * K
    }

    pub fn dense_index(&self, tag: BioTag, k: usize) -> usize {
        tag.index() * self.template.dense_width() + k
    }

    pub fn sparse_index(&self, tag: BioTag, id: usize) -> usize {
        self.sparse_offset() + tag.index() * self.template.sparse_len() + id
    }

    pub fn transition_index(&self, from: BioTag, to: BioTag) -> usize {
        self.transition_offset() + from.index() * K + to.index()
    }

    pub fn start_index(&self, tag: BioTag) -> usize {
        self.start_offset() + tag.index()
    }

    /// Flat indices of the parameters fixed by the BIO mask.
    pub fn masked_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for to in BioTag::ALL {
            for from in BioTag::ALL {
                if !transition_allowed(from, to) {
                    out.push(self.transition_index(from, to));
                }
            }
            if !start_allowed(to) {
                out.push(self.start_index(to));
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn clear_masked(&mut self) {
        for i in self.masked_indices() {
            self.params[i] = 0.0;
        }
    }

    pub fn transition(&self, from: BioTag, to: BioTag) -> f64 {
        if transition_allowed(from, to) {
            self.params[self.transition_index(from, to)]
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn start(&self, tag: BioTag) -> f64 {
        if start_allowed(tag) {
            self.params[self.start_index(tag)]
        } else {
            f64::NEG_INFINITY
        }
    }

    fn emission(&self, f: &FeatureVector) -> [f64; K] {
        let dw = self.template.dense_width();
        let sl = self.template.sparse_len();
        let sparse = &self.params[self.sparse_offset()..self.transition_offset()];
        std::array::from_fn(|y| {
            let w = &self.params[y * dw..(y + 1) * dw];
            let dense: f64 = w.iter().zip(&f.dense).map(|(a, b)| a * b).sum();
            let row = &sparse[y * sl..(y + 1) * sl];
            dense + f.sparse.iter().map(|&id| row[id]).sum::<f64>()
        })
    }

    /// Lattice for precomputed position features.
    pub fn lattice(&self, features: &[FeatureVector]) -> Lattice {
        let emissions = features.iter().map(|f| self.emission(f)).collect();
        let t = &self.params[self.transition_offset()..self.start_offset()];
        let transitions = std::array::from_fn(|a| std::array::from_fn(|b| t[a * K + b]));
        let start = std::array::from_fn(|y| self.params[self.start_offset() + y]);
        Lattice::new(emissions, transitions, start)
    }

    pub fn build_lattice(&self, table: &EmbeddingTable, sentence: &Sentence) -> Result<Lattice, CrfError> {
        Ok(self.lattice(&self.template.sentence_features(table, sentence)?))
    }

    pub fn decode(&self, table: &EmbeddingTable, sentence: &Sentence) -> Result<Vec<BioTag>, CrfError> {
        Ok(self.build_lattice(table, sentence)?.viterbi().0)
    }

    /// Summed sequence NLL of `batch` plus `l2 / 2 · ‖θ‖²`, and its gradient.
    pub fn nll_and_gradient<'a>(
        &self,
        batch: impl IntoIterator<Item = &'a Featurized>,
        l2: f64,
    ) -> Result<(f64, Vec<f64>), CrfError> {
        let mut grad = vec![0.0; self.params.len()];
        let mut loss = 0.0;
        let dw = self.template.dense_width();
        for ex in batch {
            if ex.gold.len() != ex.features.len() {
                return Err(CrfError::GoldLength {
                    tags: ex.gold.len(),
                    tokens: ex.features.len(),
                });
            }
            if ex.features.is_empty() {
                continue;
            }
            let lat = self.lattice(&ex.features);
            let gold_score = lat.score(&ex.gold);
            if !gold_score.is_finite() {
                let bad = crate::corpus::validate_bio(&ex.gold)
                    .first()
                    .map_or(0, |v| v.index);
                return Err(CrfError::InvalidGold(bad));
            }
            let m = lat.marginals();
            loss += m.log_z - gold_score;

            for (t, (f, p)) in ex.features.iter().zip(&m.nodes).enumerate() {
                for y in BioTag::ALL {
                    let coef = p[y.index()] - f64::from(u8::from(ex.gold[t] == y));
                    if coef == 0.0 {
                        continue;
                    }
                    let base = y.index() * dw;
                    for (g, x) in grad[base..base + dw].iter_mut().zip(&f.dense) {
                        *g += coef * x;
                    }
                    for &id in &f.sparse {
                        grad[self.sparse_index(y, id)] += coef;
                    }
                }
            }
            for (t, edge) in m.edges.iter().enumerate() {
                let (ga, gb) = (ex.gold[t], ex.gold[t + 1]);
                for a in BioTag::ALL {
                    for b in BioTag::ALL {
                        let observed = f64::from(u8::from(ga == a && gb == b));
                        grad[self.transition_index(a, b)] += edge[a.index()][b.index()] - observed;
                    }
                }
            }
            for y in BioTag::ALL {
                let observed = f64::from(u8::from(ex.gold[0] == y));
                grad[self.start_index(y)] += m.nodes[0][y.index()] - observed;
            }
        }
        if l2 != 0.0 {
            loss += 0.5 * l2 * self.params.iter().map(|w| w * w).sum::<f64>();
            for (g, w) in grad.iter_mut().zip(&self.params) {
                *g += l2 * w;
            }
        }
        for i in self.masked_indices() {
            grad[i] = 0.0;
        }
        Ok((loss, grad))
    }
}
