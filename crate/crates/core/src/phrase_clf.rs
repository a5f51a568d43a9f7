//! Eleven-way phrase categorization with multinomial logistic regression
//! over [`phrase_features`](crate::features::phrase_features).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Category;

const C: usize = Category::COUNT;

#[derive(Debug, Error, PartialEq)]
pub enum ClfError {
    #[error("no training examples")]
    EmptyInput,
    #[error("{features} feature vectors but {labels} labels")]
    LengthMismatch { features: usize, labels: usize },
    #[error("feature width {found} does not match expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("invalid classifier configuration: {0}")]
    BadConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClfConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2_lambda: f64,
    /// `None` trains full-batch.
    pub batch_size: Option<usize>,
    pub seed: u64,
    /// Inverse-frequency example weights.
    pub balanced: bool,
}

impl Default for ClfConfig {
    fn default() -> Self {
        ClfConfig {
            learning_rate: 0.1,
            epochs: 200,
            l2_lambda: 1e-3,
            batch_size: None,
            seed: 13,
            balanced: false,
        }
    }
}

impl ClfConfig {
    fn validate(&self) -> Result<(), ClfError> {
        let bad = |m: &str| Err(ClfError::BadConfig(m.into()));
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning_rate must be positive");
        }
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.l2_lambda.is_finite() && self.l2_lambda >= 0.0) {
            return bad("l2_lambda must be non-negative");
        }
        if self.batch_size == Some(0) {
            return bad("batch_size must be at least 1");
        }
        Ok(())
    }
}

/// Weights (`category × width`, row-major) followed by one bias per category.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftmaxModel {
    width: usize,
    params: Vec<f64>,
}

/// Softmax with max shift.
pub fn softmax(logits: &[f64; C]) -> [f64; C] {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: [f64; C] = std::array::from_fn(|c| (logits[c] - max).exp());
    let sum: f64 = exps.iter().sum();
    std::array::from_fn(|c| exps[c] / sum)
}

/// Index of the largest value, lowest index on ties.
fn argmax(v: &[f64; C]) -> usize {
    let mut best = 0;
    for c in 1..C {
        if v[c] > v[best] {
            best = c;
        }
    }
    best
}

impl SoftmaxModel {
    pub fn zeros(width: usize) -> Self {
        SoftmaxModel {
            width,
            params: vec![0.0; C * width + C],
        }
    }

    pub fn from_params(width: usize, params: Vec<f64>) -> Result<Self, ClfError> {
        if params.len() != C * width + C {
            return Err(ClfError::WidthMismatch {
                expected: C * width + C,
                found: params.len(),
            });
        }
        Ok(SoftmaxModel { width, params })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    fn check(&self, x: &[f64]) -> Result<(), ClfError> {
        if x.len() != self.width {
            return Err(ClfError::WidthMismatch {
                expected: self.width,
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn logits(&self, x: &[f64]) -> Result<[f64; C], ClfError> {
        self.check(x)?;
        let bias = &self.params[C * self.width..];
        Ok(std::array::from_fn(|c| {
            let row = &self.params[c * self.width..(c + 1) * self.width];
            row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + bias[c]
        }))
    }

    pub fn predict(&self, x: &[f64]) -> Result<(Category, [f64; C]), ClfError> {
        let probs = softmax(&self.logits(x)?);
        let cat = Category::from_index(argmax(&probs)).expect("index below category count");
        Ok((cat, probs))
    }

    /// Weighted mean cross-entropy plus `l2 / 2 · ‖W‖²` (biases are not
    /// penalized) and its gradient in the layout of [`SoftmaxModel::params`].
    /// Without explicit weights every example weighs 1.
    pub fn loss_and_gradient(
        &self,
        xs: &[&[f64]],
        ys: &[Category],
        weights: Option<&[f64]>,
        l2: f64,
    ) -> Result<(f64, Vec<f64>), ClfError> {
        if xs.len() != ys.len() {
            return Err(ClfError::LengthMismatch {
                features: xs.len(),
                labels: ys.len(),
            });
        }
        if xs.is_empty() {
            return Err(ClfError::EmptyInput);
        }
        let n = xs.len() as f64;
        let w_bias = C * self.width;
        let mut grad = vec![0.0; self.params.len()];
        let mut loss = 0.0;
        for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
            let weight = weights.map_or(1.0, |w| w[i]);
            let logits = self.logits(x)?;
            let probs = softmax(&logits);
            let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lse = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
            loss += weight * (lse - logits[y.index()]);
            for c in 0..C {
                let d = weight * (probs[c] - f64::from(u8::from(c == y.index()))) / n;
                let row = &mut grad[c * self.width..(c + 1) * self.width];
                for (g, v) in row.iter_mut().zip(x.iter()) {
                    *g += d * v;
                }
                grad[w_bias + c] += d;
            }
        }
        loss /= n;
        let ww = &self.params[..w_bias];
        loss += 0.5 * l2 * ww.iter().map(|w| w * w).sum::<f64>();
        for (g, w) in grad[..w_bias].iter_mut().zip(ww) {
            *g += l2 * w;
        }
        Ok((loss, grad))
    }
}

fn balanced_weights(ys: &[Category]) -> Vec<f64> {
    let mut counts = [0usize; C];
    for y in ys {
        counts[y.index()] += 1;
    }
    let present = counts.iter().filter(|&&n| n > 0).count() as f64;
    let n = ys.len() as f64;
    ys.iter()
        .map(|y| n / (present * counts[y.index()] as f64))
        .collect()
}

/// Gradient descent from zero weights. Returns the model and the full
/// training objective after each epoch.
pub fn train_softmax(
    config: &ClfConfig,
    features: &[Vec<f64>],
    labels: &[Category],
) -> Result<(SoftmaxModel, Vec<f64>), ClfError> {
    config.validate()?;
    if features.len() != labels.len() {
        return Err(ClfError::LengthMismatch {
            features: features.len(),
            labels: labels.len(),
        });
    }
    let Some(first) = features.first() else {
        return Err(ClfError::EmptyInput);
    };
    let width = first.len();
    if let Some(bad) = features.iter().find(|x| x.len() != width) {
        return Err(ClfError::WidthMismatch {
            expected: width,
            found: bad.len(),
        });
    }
    let weights = config.balanced.then(|| balanced_weights(labels));
    let all: Vec<&[f64]> = features.iter().map(Vec::as_slice).collect();
    let mut model = SoftmaxModel::zeros(width);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..features.len()).collect();
    let batch = config.batch_size.unwrap_or(features.len()).min(features.len());
    let mut losses = Vec::with_capacity(config.epochs);

    for _ in 0..config.epochs {
        if batch < features.len() {
            order.shuffle(&mut rng);
        }
        for chunk in order.chunks(batch) {
            let xs: Vec<&[f64]> = chunk.iter().map(|&i| all[i]).collect();
            let ys: Vec<Category> = chunk.iter().map(|&i| labels[i]).collect();
            let ws: Option<Vec<f64>> = weights.as_ref().map(|w| chunk.iter().map(|&i| w[i]).collect());
            let (_, grad) = model.loss_and_gradient(&xs, &ys, ws.as_deref(), config.l2_lambda)?;
            for (p, g) in model.params.iter_mut().zip(&grad) {
                *p -= config.learning_rate * g;
            }
        }
        losses.push(model.loss_and_gradient(&all, labels, weights.as_deref(), config.l2_lambda)?.0);
    }
    Ok((model, losses))
}
