use crate::corpus::BioTag;

use super::{start_allowed, transition_allowed};

const K: usize = BioTag::COUNT;

/// Numerically stable `log Σ exp(x)`; `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64> + Clone) -> f64 {
    let max = xs.clone().into_iter().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.into_iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Per-position tag scores of one sentence together with the transition and
/// start scores. BIO-forbidden entries hold `-inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    emissions: Vec<[f64; K]>,
    transitions: [[f64; K]; K],
    start: [f64; K],
}

/// Posterior tag probabilities per position and per adjacent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginals {
    pub nodes: Vec<[f64; K]>,
    /// `edges[t][a][b]` is the probability of tags `a` at `t` and `b` at `t + 1`.
    pub edges: Vec<[[f64; K]; K]>,
    pub log_z: f64,
}

impl Lattice {
    /// Applies the BIO mask: no inside tag at position 0 or after a tag of
    /// another class.
    pub fn new(mut emissions: Vec<[f64; K]>, mut transitions: [[f64; K]; K], mut start: [f64; K]) -> Self {
        for y in BioTag::ALL {
            if !start_allowed(y) {
                start[y.index()] = f64::NEG_INFINITY;
                if let Some(first) = emissions.first_mut() {
                    first[y.index()] = f64::NEG_INFINITY;
                }
            }
            for from in BioTag::ALL {
                if !transition_allowed(from, y) {
                    transitions[from.index()][y.index()] = f64::NEG_INFINITY;
                }
            }
        }
        Lattice {
            emissions,
            transitions,
            start,
        }
    }

    pub fn len(&self) -> usize {
        self.emissions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.emissions.is_empty()
    }

    pub fn emissions(&self) -> &[[f64; K]] {
        &self.emissions
    }

    pub fn transition(&self, from: BioTag, to: BioTag) -> f64 {
        self.transitions[from.index()][to.index()]
    }

    pub fn start(&self, tag: BioTag) -> f64 {
        self.start[tag.index()]
    }

    /// Unnormalized log score of `tags`; `-inf` for sequences the mask
    /// forbids. Panics if the length differs from the lattice.
    pub fn score(&self, tags: &[BioTag]) -> f64 {
        assert_eq!(tags.len(), self.len(), "tag sequence length must match lattice");
        let Some(&first) = tags.first() else {
            return 0.0;
        };
        let mut s = self.start[first.index()] + self.emissions[0][first.index()];
        for t in 1..tags.len() {
            let (a, b) = (tags[t - 1].index(), tags[t].index());
            s = (s + self.transitions[a][b]) + self.emissions[t][b];
        }
        s
    }

    fn forward(&self) -> Vec<[f64; K]> {
        let mut alpha = Vec::with_capacity(self.len());
        let Some(e0) = self.emissions.first() else {
            return alpha;
        };
        alpha.push(std::array::from_fn(|y| self.start[y] + e0[y]));
        for e in &self.emissions[1..] {
            let prev = alpha.last().expect("non-empty");
            let next = std::array::from_fn(|y| e[y] + log_sum_exp((0..K).map(|a| prev[a] + self.transitions[a][y])));
            alpha.push(next);
        }
        alpha
    }

    fn backward(&self) -> Vec<[f64; K]> {
        let n = self.len();
        let mut beta = vec![[0.0; K]; n];
        for t in (0..n.saturating_sub(1)).rev() {
            let (next_e, next_b) = (&self.emissions[t + 1], beta[t + 1]);
            beta[t] = std::array::from_fn(|y| {
                log_sum_exp((0..K).map(|b| self.transitions[y][b] + next_e[b] + next_b[b]))
            });
        }
        beta
    }

    /// Log partition function over all mask-permitted tag sequences.
    pub fn log_partition(&self) -> f64 {
        match self.forward().last() {
            Some(last) => log_sum_exp(last.iter().copied()),
            None => 0.0,
        }
    }

    pub fn marginals(&self) -> Marginals {
        let alpha = self.forward();
        let beta = self.backward();
        let log_z = alpha.last().map_or(0.0, |a| log_sum_exp(a.iter().copied()));
        let prob = |x: f64| if x == f64::NEG_INFINITY { 0.0 } else { (x - log_z).exp() };
        let nodes = alpha
            .iter()
            .zip(&beta)
            .map(|(a, b)| std::array::from_fn(|y| prob(a[y] + b[y])))
            .collect();
        let edges = (1..self.len())
            .map(|t| {
                std::array::from_fn(|a| {
                    std::array::from_fn(|b| {
                        prob(alpha[t - 1][a] + self.transitions[a][b] + self.emissions[t][b] + beta[t][b])
                    })
                })
            })
            .collect();
        Marginals { nodes, edges, log_z }
    }

    /// Highest-scoring permitted sequence and its score. Among equal scores
    /// the lower tag index wins, both for the final tag and for every
    /// back-pointer.
    pub fn viterbi(&self) -> (Vec<BioTag>, f64) {
        let n = self.len();
        let Some(e0) = self.emissions.first() else {
            return (Vec::new(), 0.0);
        };
        let mut delta: [f64; K] = std::array::from_fn(|y| self.start[y] + e0[y]);
        let mut back: Vec<[usize; K]> = Vec::with_capacity(n.saturating_sub(1));
        for e in &self.emissions[1..] {
            let mut ptr = [0usize; K];
            let next = std::array::from_fn(|y| {
                let mut best = 0;
                let mut best_score = delta[0] + self.transitions[0][y];
                for a in 1..K {
                    let s = delta[a] + self.transitions[a][y];
                    if s > best_score {
                        best = a;
                        best_score = s;
                    }
                }
                ptr[y] = best;
                best_score + e[y]
            });
            back.push(ptr);
            delta = next;
        }
        let mut last = 0;
        for y in 1..K {
            if delta[y] > delta[last] {
                last = y;
            }
        }
        let score = delta[last];
        let mut path = vec![last; n];
        for t in (1..n).rev() {
            path[t - 1] = back[t - 1][path[t]];
        }
        let tags = path
            .into_iter()
            .map(|i| BioTag::from_index(i).expect("index below tag count"))
            .collect();
        (tags, score)
    }
}
