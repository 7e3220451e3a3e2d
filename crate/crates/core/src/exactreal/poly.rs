use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, QuadraticReal, Rational};

/// Tolerance within which a recognized exact root must reproduce the numeric input.
pub const RECOGNITION_TOLERANCE: f64 = 1e-6;

/// Dense integer polynomial, coefficients stored from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact evaluation at a quadratic real.
    pub fn eval_quadratic(&self, x: &QuadraticReal) -> QuadraticReal {
        self.coeffs.iter().rev().fold(QuadraticReal::zero(), |acc, c| {
            let c = QuadraticReal::rational(Rational::from_integer(c.clone()));
            acc.checked_mul(x).and_then(|v| v.checked_add(&c)).expect("Horner steps stay in the field of x")
        })
    }

    /// Division by a monic polynomial: returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let d = divisor.degree().expect("nonzero divisor");
        assert!(divisor.leading().is_some_and(One::is_one), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + d].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
        }
        rem.truncate(d);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Fujiwara's bound on the modulus of every complex root.
    pub fn root_bound(&self) -> f64 {
        let Some(n) = self.degree() else { return 0.0 };
        let lead = self.coeffs[n].to_f64().unwrap_or(f64::INFINITY).abs();
        let mut bound: f64 = 0.0;
        for k in 1..=n {
            let c = self.coeffs[n - k].to_f64().unwrap_or(f64::INFINITY).abs() / lead;
            let mut term = c.powf(1.0 / k as f64);
            if k == n {
                term = (c / 2.0).powf(1.0 / k as f64);
            }
            bound = bound.max(term);
        }
        2.0 * bound
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = power == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Scalar used by the Faddeev-LeVerrier recurrence; `None` signals overflow.
trait Coeff: Clone {
    fn nil() -> Self;
    fn from_u64(v: u64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg_div_exact(&self, k: u64) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Coeff for i128 {
    fn nil() -> Self {
        0
    }
    fn from_u64(v: u64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg_div_exact(&self, k: u64) -> Option<Self> {
        let k = k as i128;
        debug_assert_eq!(self % k, 0, "LeVerrier traces are divisible by the step index");
        self.checked_neg().map(|v| v / k)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coeff for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg_div_exact(&self, k: u64) -> Option<Self> {
        let (q, r) = self.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "LeVerrier traces are divisible by the step index");
        Some(-q)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Sparse row form of a square non-negative matrix.
fn sparse_rows(m: &[Vec<u64>]) -> Vec<Vec<(usize, u64)>> {
    m.iter().map(|row| row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect()).collect()
}

fn leverrier<T: Coeff>(rows: &[Vec<(usize, u64)>]) -> Option<Vec<BigInt>> {
    let n = rows.len();
    // coeffs[k] is the coefficient of x^(n-k).
    let mut coeffs: Vec<T> = vec![T::from_u64(1)];
    let mut acc: Vec<T> = vec![T::nil(); n * n];
    for k in 1..=n {
        // acc <- M * acc_prev + c_{k-1} I, with acc_prev = 0 at k = 1.
        let mut next = vec![T::nil(); n * n];
        for (i, row) in rows.iter().enumerate() {
            for &(l, v) in row {
                let v = T::from_u64(v);
                for j in 0..n {
                    let term = v.mul(&acc[l * n + j])?;
                    next[i * n + j] = next[i * n + j].add(&term)?;
                }
            }
        }
        let c_prev = coeffs[k - 1].clone();
        for i in 0..n {
            next[i * n + i] = next[i * n + i].add(&c_prev)?;
        }
        acc = next;
        // c_k = -tr(M * acc) / k
        let mut trace = T::nil();
        for (i, row) in rows.iter().enumerate() {
            for &(l, v) in row {
                trace = trace.add(&T::from_u64(v).mul(&acc[l * n + i])?)?;
            }
        }
        coeffs.push(trace.neg_div_exact(k as u64)?);
    }
    Some(coeffs.into_iter().rev().map(Coeff::into_big).collect())
}

fn check_square(m: &[Vec<u64>]) -> Result<(), ExactError> {
    let n = m.len();
    match m.iter().position(|row| row.len() != n) {
        Some(row) => Err(ExactError::NotSquare { rows: n, row, len: m[row].len() }),
        None => Ok(()),
    }
}

/// Characteristic polynomial `det(xI - M)` of a non-negative integer matrix.
///
/// Uses the Faddeev-LeVerrier recurrence, whose divisions are exact over the
/// integers. Runs in `i128` and redoes the computation in `BigInt` on overflow.
pub fn char_poly(m: &[Vec<u64>]) -> Result<IntPoly, ExactError> {
    check_square(m)?;
    let rows = sparse_rows(m);
    let coeffs =
        leverrier::<i128>(&rows).or_else(|| leverrier::<BigInt>(&rows)).expect("BigInt arithmetic does not overflow");
    Ok(IntPoly::new(coeffs))
}

fn is_perfect_square(v: &BigInt) -> bool {
    !v.is_negative() && {
        let r = v.sqrt();
        &(&r * &r) == v
    }
}

/// Recovers an exact root of `poly` near `approx` when that root has degree at most 2.
///
/// A monic integer polynomial's rational roots are integers, and a quadratic
/// factor `x² - s·x + p` containing `approx` has its second root `s - approx`
/// inside the polynomial's root bound, so `s` ranges over a short integer
/// window and `p` is pinned by rounding. Each candidate is confirmed by exact
/// division. Non-monic input is rejected as unrecognizable.
pub fn recognize(approx: f64, poly: &IntPoly) -> Option<QuadraticReal> {
    if !approx.is_finite() || poly.degree().unwrap_or(0) == 0 || !poly.leading().is_some_and(One::is_one) {
        return None;
    }
    let r = approx.round();
    if (r - approx).abs() <= RECOGNITION_TOLERANCE {
        let ri = BigInt::from(r as i64);
        if poly.eval_int(&ri).is_zero() {
            return Some(QuadraticReal::rational(Rational::from_integer(ri)));
        }
    }
    let bound = poly.root_bound();
    if !bound.is_finite() || bound > 1e7 {
        return None;
    }
    let lo = (approx - bound).floor() as i64 - 1;
    let hi = (approx + bound).ceil() as i64 + 1;
    for s in lo..=hi {
        let other = s as f64 - approx;
        let p = (approx * other).round();
        let resid = approx * approx - s as f64 * approx + p;
        if resid.abs() > RECOGNITION_TOLERANCE * (1.0 + approx.abs() * (1.0 + s.unsigned_abs() as f64)) {
            continue;
        }
        let (sb, pb) = (BigInt::from(s), BigInt::from(p as i64));
        let disc = &sb * &sb - BigInt::from(4) * &pb;
        if !disc.is_positive() || is_perfect_square(&disc) {
            continue;
        }
        let factor = IntPoly::new(vec![pb.clone(), -sb.clone(), BigInt::one()]);
        if !poly.div_rem_monic(&factor).1.is_zero() {
            continue;
        }
        let Some(d) = disc.to_u64() else { continue };
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let a = Rational::from_integer(sb) * &half;
        for sign in [1i64, -1] {
            let root = QuadraticReal::new(a.clone(), &half * Rational::from_integer(BigInt::from(sign)), d);
            if (root.to_f64() - approx).abs() <= RECOGNITION_TOLERANCE {
                return Some(root);
            }
        }
    }
    None
}
