use std::collections::HashMap;
use std::hash::Hash;

use super::CorpusError;

/// Cohen's kappa between two annotators' label lists.
///
/// Computed from integer counts as `(n·agree − Σ a_k·b_k) / (n² − Σ a_k·b_k)`,
/// which is the usual `(p_o − p_e) / (1 − p_e)` scaled by `n²`. Returns 1.0
/// when chance agreement is total (both annotators used one identical label).
pub fn cohen_kappa<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<f64, CorpusError> {
    if a.len() != b.len() {
        return Err(CorpusError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(CorpusError::EmptyInput);
    }
    let n = a.len() as u128;
    let agree = a.iter().zip(b).filter(|(x, y)| x == y).count() as u128;
    let mut marg: HashMap<&T, (u128, u128)> = HashMap::new();
    for x in a {
        marg.entry(x).or_default().0 += 1;
    }
    for y in b {
        marg.entry(y).or_default().1 += 1;
    }
    let chance: u128 = marg.values().map(|(ca, cb)| ca * cb).sum();
    let denom = n * n - chance;
    if denom == 0 {
        return Ok(1.0);
    }
    let num = (n * agree) as f64 - chance as f64;
    Ok(num / denom as f64)
}
