use super::{char_poly, recognize, ExactError, RealValue};

/// Target relative width of the Collatz-Wielandt bracket.
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Numeric Perron root of a non-negative matrix, with a rigorous error bound.
///
/// Power iteration on `M + I` from the all-ones vector. For a positive
/// iterate `v`, every ratio `(Mv)_i / v_i` brackets the spectral radius from
/// one side (Collatz-Wielandt), so the half-width of `[min, max]` is reported
/// as the error.
pub fn perron_numeric(m: &[Vec<u64>]) -> Result<(f64, f64), ExactError> {
    let n = m.len();
    if let Some(row) = m.iter().position(|r| r.len() != n) {
        return Err(ExactError::NotSquare { rows: n, row, len: m[row].len() });
    }
    if m.iter().all(|r| r.iter().all(|&v| v == 0)) {
        return Err(ExactError::ZeroMatrix);
    }
    let rows: Vec<Vec<(usize, f64)>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v as f64)).collect())
        .collect();
    let apply = |v: &[f64], out: &mut Vec<f64>| {
        out.clear();
        out.extend(rows.iter().map(|r| r.iter().map(|&(j, a)| a * v[j]).sum::<f64>()));
    };
    let mut v = vec![1.0; n];
    let mut mv = Vec::with_capacity(n);
    let mut gap = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        apply(&v, &mut mv);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (x, y) in v.iter().zip(&mv) {
            let ratio = y / x;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        gap = hi - lo;
        if gap <= POWER_TOLERANCE * hi.max(1.0) {
            let centre = 0.5 * (hi + lo);
            let slack = 4.0 * f64::EPSILON * n as f64 * hi.max(1.0);
            return Ok((centre, 0.5 * gap + slack));
        }
        // v <- (M + I) v, normalized in the max norm.
        let mut top = 0.0f64;
        for (x, y) in v.iter_mut().zip(&mv) {
            *x += y;
            top = top.max(*x);
        }
        if top == 0.0 || !top.is_finite() {
            break;
        }
        v.iter_mut().for_each(|x| *x /= top);
        if v.iter().any(|&x| x < f64::MIN_POSITIVE) {
            break;
        }
    }
    Err(ExactError::ConvergenceFailure { iterations: MAX_ITERATIONS, gap })
}

/// Perron root of a non-negative integer matrix, exact when its minimal
/// polynomial has degree at most two.
pub fn perron_root(m: &[Vec<u64>]) -> Result<RealValue, ExactError> {
    let (value, eps) = perron_numeric(m)?;
    let poly = char_poly(m)?;
    Ok(match recognize(value, &poly) {
        Some(q) => RealValue::Exact(q),
        None => RealValue::approx(value, eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::QuadraticReal;

    #[test]
    fn golden_matrix() {
        let r = perron_root(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(r, RealValue::Exact(QuadraticReal::from_parts(1, 2, 1, 2, 5)));
    }

    #[test]
    fn identity() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(perron_root(&id).unwrap(), RealValue::int(1));
    }

    #[test]
    fn permutation_matrix() {
        // A 5-cycle: eigenvalues are fifth roots of unity.
        let m: Vec<Vec<u64>> = (0..5).map(|i| (0..5).map(|j| u64::from(j == (i + 1) % 5)).collect()).collect();
        assert_eq!(perron_root(&m).unwrap(), RealValue::int(1));
    }

    #[test]
    fn heptagon_dimension_stays_numeric() {
        // Fusion matrix of the rank-3 ring with X⊗X = 1 + Y, Y⊗Y = 1 + X + Y.
        let m = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        let r = perron_root(&m).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 7.0).cos();
        assert!(!r.is_exact());
        assert!((r.to_f64() - expected).abs() <= r.eps());
        assert!(r.eps() <= 1e-9);
    }

    #[test]
    fn zero_matrix_rejected() {
        assert_eq!(perron_numeric(&[vec![0, 0], vec![0, 0]]), Err(ExactError::ZeroMatrix));
    }

    #[test]
    fn nilpotent_part_fails_to_converge_or_brackets() {
        // Jordan-type input: the bracket closes only like 1/k.
        match perron_numeric(&[vec![1, 1], vec![0, 1]]) {
            Ok((v, eps)) => assert!((v - 1.0).abs() <= eps),
            Err(e) => assert!(matches!(e, ExactError::ConvergenceFailure { .. })),
        }
    }
}
