//! Brute-force and finite-difference checks, each returning a failure
//! description or summary numbers.

use excmine::corpus::{BioTag, Category};
use excmine::crf::{log_sum_exp, CrfModel, Featurized};
use excmine::phrase_clf::SoftmaxModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

#[derive(Debug, Default)]
pub struct InferenceStats {
    pub models: usize,
    pub max_logz_rel: f64,
    pub max_marginal_abs: f64,
    pub max_edge_consistency: f64,
}

/// Compares forward-backward and Viterbi against enumeration on `models`
/// random models (L <= 6, dim <= 4, weights in [-2, 2]).
pub fn crf_inference(models: usize, seed: u64) -> Result<InferenceStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = InferenceStats { models, ..Default::default() };
    for m in 0..models {
        let dim = rng.random_range(1..=4);
        let table = random_table(&mut rng, dim);
        let sentences: Vec<_> = (0..3)
            .map(|i| {
                let len = rng.random_range(1..=6);
                random_sentence(&mut rng, &i.to_string(), len)
            })
            .collect();
        let model = random_model(&mut rng, dim, &sentences);
        for s in &sentences {
            let feats = model.template().sentence_features(&table, s).unwrap();
            let lat = model.lattice(&feats);
            let seqs = valid_sequences(s.len());

            let direct: Vec<f64> = seqs.iter().map(|y| direct_score(&model, &feats, y)).collect();
            let brute_logz = log_sum_exp(direct.iter().copied());
            let logz = lat.log_partition();
            let r = rel_err(logz, brute_logz);
            stats.max_logz_rel = stats.max_logz_rel.max(r);
            if r > 1e-8 {
                return Err(format!("model {m}: logZ {logz} vs brute {brute_logz}"));
            }

            // The lattice scores paths in the same order as the decoder, so
            // the maximum must agree to the bit.
            let lattice_scores: Vec<f64> = seqs.iter().map(|y| lat.score(y)).collect();
            for (a, b) in lattice_scores.iter().zip(&direct) {
                if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                    return Err(format!("model {m}: lattice score {a} vs direct {b}"));
                }
            }
            let best = lattice_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let (path, vscore) = lat.viterbi();
            if vscore != best {
                return Err(format!("model {m}: viterbi {vscore} vs brute max {best}"));
            }
            if lat.score(&path) != best || !validate_bio_ok(&path) {
                return Err(format!("model {m}: viterbi path {path:?} is not an argmax"));
            }

            let marg = lat.marginals();
            let len = s.len();
            let mut nodes = vec![[0.0; BioTag::COUNT]; len];
            let mut edges = vec![[[0.0; BioTag::COUNT]; BioTag::COUNT]; len.saturating_sub(1)];
            for (y, sc) in seqs.iter().zip(&direct) {
                let p = (sc - brute_logz).exp();
                for t in 0..len {
                    nodes[t][y[t].index()] += p;
                    if t + 1 < len {
                        edges[t][y[t].index()][y[t + 1].index()] += p;
                    }
                }
            }
            for t in 0..len {
                for k in 0..BioTag::COUNT {
                    let d = (marg.nodes[t][k] - nodes[t][k]).abs();
                    stats.max_marginal_abs = stats.max_marginal_abs.max(d);
                    if d > 1e-8 {
                        return Err(format!("model {m}: node marginal t={t} k={k} off by {d}"));
                    }
                }
            }
            for t in 0..len.saturating_sub(1) {
                for a in 0..BioTag::COUNT {
                    for b in 0..BioTag::COUNT {
                        let d = (marg.edges[t][a][b] - edges[t][a][b]).abs();
                        stats.max_marginal_abs = stats.max_marginal_abs.max(d);
                        if d > 1e-8 {
                            return Err(format!("model {m}: edge marginal off by {d}"));
                        }
                    }
                    let out: f64 = marg.edges[t][a].iter().sum();
                    let into: f64 = (0..BioTag::COUNT).map(|x| marg.edges[t][x][a]).sum();
                    let c = (out - marg.nodes[t][a]).abs().max((into - marg.nodes[t + 1][a]).abs());
                    stats.max_edge_consistency = stats.max_edge_consistency.max(c);
                    if c > 1e-9 {
                        return Err(format!("model {m}: edge marginals do not sum to nodes ({c})"));
                    }
                }
            }
        }
    }
    Ok(stats)
}

fn validate_bio_ok(tags: &[BioTag]) -> bool {
    excmine::corpus::validate_bio(tags).is_empty()
}

#[derive(Debug, Default)]
pub struct GradStats {
    pub instances: usize,
    pub checked: usize,
    /// Largest norm-wise relative error over instances.
    pub max_rel: f64,
    /// Largest per-coordinate relative error among coordinates above 1e-3.
    pub max_coord_rel: f64,
}

const H: f64 = 1e-5;

/// Per instance: the norm-wise relative error `‖a - n‖ / max(‖a‖, ‖n‖)`
/// must stay below 1e-4. Per coordinate the same bound applies plus an
/// absolute 1e-8 allowance, the roundoff floor of a central difference at
/// `h = 1e-5` (about `eps · |f| / h`).
fn compare(analytic: &[f64], numeric: &[f64], stats: &mut GradStats, what: &str) -> Result<(), String> {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff: Vec<f64> = analytic.iter().zip(numeric).map(|(a, n)| a - n).collect();
    let scale = norm(analytic).max(norm(numeric));
    let r = if scale == 0.0 { 0.0 } else { norm(&diff) / scale };
    stats.max_rel = stats.max_rel.max(r);
    if r >= 1e-4 {
        return Err(format!("{what}: norm-wise relative error {r:.3e}"));
    }
    for (i, (a, n)) in analytic.iter().zip(numeric).enumerate() {
        if (a - n).abs() > 1e-4 * a.abs().max(n.abs()) + 1e-8 {
            return Err(format!("{what}: coordinate {i} analytic {a} numeric {n}"));
        }
        if a.abs().max(n.abs()) > 1e-3 {
            stats.max_coord_rel = stats.max_coord_rel.max(rel_err(*a, *n));
        }
        stats.checked += 1;
    }
    Ok(())
}

/// Central differences of the CRF objective against the analytic gradient
/// over dense, sparse, transition and start weights.
pub fn crf_gradients(instances: usize, lambdas: &[f64], seed: u64) -> Result<GradStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = GradStats::default();
    for inst in 0..instances {
        let l2 = lambdas[inst % lambdas.len()];
        let dim = rng.random_range(1..=4);
        let table = random_table(&mut rng, dim);
        let sentences: Vec<_> = (0..rng.random_range(1..=3))
            .map(|i| {
                let len = rng.random_range(1..=6);
                random_sentence(&mut rng, &i.to_string(), len)
            })
            .collect();
        let mut model = random_model(&mut rng, dim, &sentences);
        let batch: Vec<Featurized> = sentences
            .iter()
            .map(|s| {
                let gold = random_valid_tags(&mut rng, s.len());
                Featurized::new(model.template(), &table, s, &gold).unwrap()
            })
            .collect();
        let (_, grad) = model.nll_and_gradient(&batch, l2).unwrap();
        let masked = model.masked_indices();
        let mut numeric = vec![0.0; grad.len()];
        for i in 0..grad.len() {
            if masked.contains(&i) {
                continue;
            }
            let w = model.params()[i];
            model.params_mut()[i] = w + H;
            let up = model.nll_and_gradient(&batch, l2).unwrap().0;
            model.params_mut()[i] = w - H;
            let down = model.nll_and_gradient(&batch, l2).unwrap().0;
            model.params_mut()[i] = w;
            numeric[i] = (up - down) / (2.0 * H);
        }
        compare(&grad, &numeric, &mut stats, &format!("crf instance {inst} (l2={l2})"))?;
        stats.instances += 1;
    }
    Ok(stats)
}

fn crf_param_blocks(model: &CrfModel) -> [usize; 4] {
    let t = model.template();
    let k = BioTag::COUNT;
    [k * t.dense_width(), k * t.sparse_len(), k * k, k]
}

/// Random CRF instances always exercise every parameter block.
pub fn crf_blocks_nonempty(seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = random_table(&mut rng, 2);
    let s = random_sentence(&mut rng, "0", 6);
    let m = random_model(&mut rng, table.dim(), &[s]);
    crf_param_blocks(&m).iter().all(|&n| n > 0)
}

pub fn softmax_gradients(instances: usize, lambdas: &[f64], seed: u64) -> Result<GradStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = GradStats::default();
    for inst in 0..instances {
        let l2 = lambdas[inst % lambdas.len()];
        let width = rng.random_range(1..=6);
        let n = rng.random_range(1..=8);
        let xs: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..width).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let ys: Vec<Category> = (0..n)
            .map(|_| Category::from_index(rng.random_range(0..Category::COUNT)).unwrap())
            .collect();
        let weights: Option<Vec<f64>> = (inst % 3 == 2).then(|| (0..n).map(|_| rng.random_range(0.1..3.0)).collect());
        let params = (0..Category::COUNT * (width + 1)).map(|_| rng.random_range(-2.0..2.0)).collect();
        let mut model = SoftmaxModel::from_params(width, params).unwrap();
        let xr: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
        let w = weights.as_deref();
        let (_, grad) = model.loss_and_gradient(&xr, &ys, w, l2).unwrap();
        let mut numeric = vec![0.0; grad.len()];
        for i in 0..grad.len() {
            let v = model.params()[i];
            model.params_mut()[i] = v + H;
            let up = model.loss_and_gradient(&xr, &ys, w, l2).unwrap().0;
            model.params_mut()[i] = v - H;
            let down = model.loss_and_gradient(&xr, &ys, w, l2).unwrap().0;
            model.params_mut()[i] = v;
            numeric[i] = (up - down) / (2.0 * H);
        }
        compare(&grad, &numeric, &mut stats, &format!("softmax instance {inst} (l2={l2})"))?;
        stats.instances += 1;
    }
    Ok(stats)
}
