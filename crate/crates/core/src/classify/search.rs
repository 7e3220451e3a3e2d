use serde::Serialize;

use super::ClassifyError;
use crate::exactreal::QuadraticReal;

/// Closeness required between a cosine sum and the target.
pub const COSINE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosineSolutions {
    pub pairs: Vec<[u32; 2]>,
    pub triples: Vec<[u32; 3]>,
}

/// Integer solutions `3 <= a <= b <= bound` of `cos²(π/a) + cos²(π/b) = (5+√5)/8`,
/// and the same for three terms.
pub fn lemma41_search(bound: u32) -> Result<CosineSolutions, ClassifyError> {
    if bound < 10 {
        return Err(ClassifyError::BoundTooSmall(bound));
    }
    let target = QuadraticReal::from_parts(5, 8, 1, 8, 5).to_f64();
    let f: Vec<f64> =
        (0..=bound).map(|x| if x < 3 { 0.0 } else { (std::f64::consts::PI / f64::from(x)).cos().powi(2) }).collect();
    let hit = |s: f64| (s - target).abs() <= COSINE_TOLERANCE;
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for a in 3..=bound {
        for b in a..=bound {
            let ab = f[a as usize] + f[b as usize];
            if hit(ab) {
                pairs.push([a, b]);
            }
            // Every term is at least 1/4 and the target is below 1, so the
            // third term only has to be scanned while the sum can still land.
            if ab + 0.25 > target + COSINE_TOLERANCE {
                continue;
            }
            for c in b..=bound {
                if hit(ab + f[c as usize]) {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    Ok(CosineSolutions { pairs, triples })
}

fn odd_power_of_two_exponent(s: u64) -> Option<u32> {
    // s = 2^(2i-1) with i >= 1
    (s.is_power_of_two() && s.trailing_zeros() % 2 == 1).then(|| s.trailing_zeros().div_ceil(2))
}

/// For a multiplicity vector `m`: if `Σ m² = 2^(2i-1)` then `Σ m >= 2^i`.
pub fn min_summands_check(mults: &[u64]) -> bool {
    let squares: u64 = mults.iter().map(|m| m * m).sum();
    match odd_power_of_two_exponent(squares) {
        Some(i) => mults.iter().sum::<u64>() >= 1u64 << i,
        None => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicitySweep {
    pub max_square_sum: u64,
    /// Vectors examined, counted up to reordering.
    pub vectors_checked: u64,
    pub violations: Vec<Vec<u64>>,
    /// Vectors meeting the bound with equality.
    pub equality_witnesses: Vec<Vec<u64>>,
}

/// Checks [`min_summands_check`] on every positive vector with `Σ m² <= max_square_sum`.
///
/// Both sums are symmetric, so non-increasing vectors cover every ordering.
pub fn multiplicity_sweep(max_square_sum: u64) -> MultiplicitySweep {
    fn walk(prefix: &mut Vec<u64>, room: u64, cap: u64, out: &mut MultiplicitySweep) {
        if !prefix.is_empty() {
            out.vectors_checked += 1;
            if !min_summands_check(prefix) {
                out.violations.push(prefix.clone());
            } else {
                let squares: u64 = prefix.iter().map(|m| m * m).sum();
                if let Some(i) = odd_power_of_two_exponent(squares) {
                    if prefix.iter().sum::<u64>() == 1 << i {
                        out.equality_witnesses.push(prefix.clone());
                    }
                }
            }
        }
        let mut m = 1;
        while m <= cap && m * m <= room {
            prefix.push(m);
            walk(prefix, room - m * m, m, out);
            prefix.pop();
            m += 1;
        }
    }
    let mut out =
        MultiplicitySweep { max_square_sum, vectors_checked: 0, violations: vec![], equality_witnesses: vec![] };
    walk(&mut Vec::new(), max_square_sum, u64::MAX, &mut out);
    out
}
