use std::collections::HashMap;
use std::fmt::Write as _;

use super::FeatureError;
use crate::corpus::Token;

/// Pretrained word vectors loaded from a GloVe/word2vec style text file.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vocab: HashMap<String, usize>,
    words: Vec<String>,
    matrix: Vec<f64>,
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(n), Some(d), None) => Some((n.parse().ok()?, d.parse().ok()?)),
        _ => None,
    }
}

impl EmbeddingTable {
    /// Builds a table from `(word, vector)` pairs. Later duplicates overwrite
    /// earlier ones.
    pub fn from_rows<I, S>(dim: usize, rows: I) -> Result<Self, FeatureError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        if dim == 0 {
            return Err(FeatureError::Empty);
        }
        let mut table = EmbeddingTable {
            dim,
            vocab: HashMap::new(),
            words: Vec::new(),
            matrix: Vec::new(),
        };
        for (i, (word, values)) in rows.into_iter().enumerate() {
            if values.len() != dim {
                return Err(FeatureError::DimMismatch {
                    line: i + 1,
                    expected: dim,
                    found: values.len(),
                });
            }
            table.insert(word.into(), &values);
        }
        Ok(table)
    }

    fn insert(&mut self, word: String, values: &[f64]) {
        if let Some(&row) = self.vocab.get(&word) {
            self.matrix[row * self.dim..(row + 1) * self.dim].copy_from_slice(values);
        } else {
            self.vocab.insert(word.clone(), self.words.len());
            self.words.push(word);
            self.matrix.extend_from_slice(values);
        }
    }

    /// Parses `word v1 ... vD` lines. A first line made of exactly two
    /// integers is taken as a `count dim` header.
    pub fn load(text: &str) -> Result<Self, FeatureError> {
        let mut dim: Option<usize> = None;
        let mut table: Option<EmbeddingTable> = None;
        let mut first = true;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            if std::mem::take(&mut first) {
                if let Some((_, d)) = parse_header(line) {
                    if d == 0 {
                        return Err(FeatureError::DimMismatch {
                            line: line_no,
                            expected: 1,
                            found: 0,
                        });
                    }
                    dim = Some(d);
                    continue;
                }
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("non-blank line has a first field");
            let values = parts
                .map(|v| v.parse::<f64>().map_err(|_| FeatureError::NonNumeric { line: line_no }))
                .collect::<Result<Vec<_>, _>>()?;
            let expected = *dim.get_or_insert(values.len());
            if values.is_empty() || values.len() != expected {
                return Err(FeatureError::DimMismatch {
                    line: line_no,
                    expected,
                    found: values.len(),
                });
            }
            table
                .get_or_insert_with(|| EmbeddingTable {
                    dim: expected,
                    vocab: HashMap::new(),
                    words: Vec::new(),
                    matrix: Vec::new(),
                })
                .insert(word.to_string(), &values);
        }
        table.ok_or(FeatureError::Empty)
    }

    /// Text form accepted by [`EmbeddingTable::load`]; values use the
    /// shortest representation that parses back to the same bits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (row, word) in self.words.iter().enumerate() {
            out.push_str(word);
            for v in self.row(row) {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    fn row(&self, row: usize) -> &[f64] {
        &self.matrix[row * self.dim..(row + 1) * self.dim]
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vocab.get(word).map(|&r| self.row(r))
    }

    /// Exact surface form first, then the lowercased form.
    pub fn lookup(&self, token: &Token) -> Option<&[f64]> {
        self.get(token.text()).or_else(|| self.get(token.lower()))
    }

    /// Vector for `word` or a zero vector, together with an OOV flag.
    pub fn vector_or_zero(&self, word: &str) -> (Vec<f64>, bool) {
        match self.get(word) {
            Some(v) => (v.to_vec(), false),
            None => (vec![0.0; self.dim], true),
        }
    }
}
