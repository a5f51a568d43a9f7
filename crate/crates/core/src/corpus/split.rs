use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CorpusError, Dataset};

/// Train/dev/test proportions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios {
            train: 0.7,
            dev: 0.1,
            test: 0.2,
        }
    }
}

impl SplitRatios {
    pub fn new(train: f64, dev: f64, test: f64) -> Result<Self, CorpusError> {
        let r = SplitRatios { train, dev, test };
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<(), CorpusError> {
        let all = [self.train, self.dev, self.test];
        let ok = all.iter().all(|r| r.is_finite() && *r >= 0.0) && (all.iter().sum::<f64>() - 1.0).abs() <= 1e-9;
        if ok {
            Ok(())
        } else {
            Err(CorpusError::BadRatios(all))
        }
    }
}

fn floor_count(n: usize, ratio: f64) -> usize {
    // The epsilon keeps products like 10 * 0.7 from landing just below an integer.
    ((n as f64) * ratio + 1e-9).floor() as usize
}

/// Seeded shuffle followed by a contiguous train/dev/test partition. Dev and
/// test sizes are floored, the remainder goes to train. Phrases follow their
/// sentence.
pub fn split_dataset(
    dataset: &Dataset,
    ratios: SplitRatios,
    seed: u64,
) -> Result<(Dataset, Dataset, Dataset), CorpusError> {
    ratios.check()?;
    let n = dataset.sentences.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let n_dev = floor_count(n, ratios.dev);
    let n_test = floor_count(n, ratios.test);
    let n_train = n - n_dev - n_test;

    let mut part_of: HashMap<&str, usize> = HashMap::with_capacity(n);
    let mut parts = [Dataset::default(), Dataset::default(), Dataset::default()];
    for (rank, &idx) in order.iter().enumerate() {
        let part = if rank < n_train {
            0
        } else if rank < n_train + n_dev {
            1
        } else {
            2
        };
        let s = &dataset.sentences[idx];
        part_of.insert(s.id.as_str(), part);
        parts[part].sentences.push(s.clone());
    }
    for p in &dataset.phrases {
        let part = *part_of
            .get(p.sentence_id.as_str())
            .ok_or_else(|| CorpusError::UnknownSentence(p.sentence_id.clone()))?;
        parts[part].phrases.push(p.clone());
    }
    let [train, dev, test] = parts;
    Ok((train, dev, test))
}
