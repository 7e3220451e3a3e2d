use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rational};

/// An exact real number `a + b·√n` with rational `a`, `b` and square-free `n`.
///
/// Canonical form: `n` is square-free, and `b == 0` exactly when `n == 0`.
/// Rationals are therefore stored with `n == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    a: Rational,
    b: Rational,
    n: u64,
}

/// Binary operations accepted by [`quad_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
    Cmp,
}

/// Result of [`quad_arith`]: a number for the field operations, an ordering for `Cmp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadResult {
    Value(QuadraticReal),
    Order(Ordering),
}

pub fn quad_arith(x: &QuadraticReal, y: &QuadraticReal, op: QuadOp) -> Result<QuadResult, ExactError> {
    Ok(match op {
        QuadOp::Add => QuadResult::Value(x.checked_add(y)?),
        QuadOp::Sub => QuadResult::Value(x.checked_sub(y)?),
        QuadOp::Mul => QuadResult::Value(x.checked_mul(y)?),
        QuadOp::Div => QuadResult::Value(x.checked_div(y)?),
        QuadOp::Cmp => QuadResult::Order(x.try_cmp(y)?),
    })
}

/// Splits `n` into `(f, m)` with `n = f²·m` and `m` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, m * n)
}

impl QuadraticReal {
    /// Builds `a + b·√n`, pulling square factors out of `n`.
    pub fn new(a: Rational, b: Rational, n: u64) -> Self {
        if n == 0 || b.is_zero() {
            return Self::rational(a);
        }
        let (f, m) = square_free_split(n);
        let b = b * Rational::from_integer(BigInt::from(f));
        if m == 1 {
            return Self::rational(a + b);
        }
        QuadraticReal { a, b, n: m }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticReal { a, b: Rational::zero(), n: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(v)))
    }

    /// `p/q + r/s·√n` from small integers, mostly for tests and constants.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64, n: u64) -> Self {
        let ratio = |num: i64, den: i64| Rational::new(BigInt::from(num), BigInt::from(den));
        Self::new(ratio(p, q), ratio(r, s), n)
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The square-free radicand, `0` for rationals.
    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn is_rational(&self) -> bool {
        self.n == 0
    }

    pub fn is_zero(&self) -> bool {
        self.n == 0 && self.a.is_zero()
    }

    /// Common field of two numbers, if any.
    fn joint_field(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.n, other.n) {
            (0, m) | (m, 0) => Ok(m),
            (m, k) if m == k => Ok(m),
            (m, k) => Err(ExactError::FieldMismatch(m, k)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.joint_field(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, n))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.joint_field(other)?;
        let nr = Rational::from_integer(BigInt::from(n));
        let a = &self.a * &other.a + &self.b * &other.b * nr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        let inv = other.recip()?;
        self.checked_mul(&inv)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // (a - b√n) / (a² - b²n); the norm vanishes only for zero since n is not a square.
        let norm = &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.n));
        Ok(Self::new(&self.a / &norm, -&self.b / &norm, self.n))
    }

    pub fn neg(&self) -> Self {
        QuadraticReal { a: -&self.a, b: -&self.b, n: self.n }
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("a number shares its own field")
    }

    /// Exact sign of the represented real.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the larger of a² and b²n wins.
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * Rational::from_integer(BigInt::from(self.n));
        if a2 > b2n {
            sa
        } else {
            sb
        }
    }

    /// Exact comparison; fails only for two distinct irrational fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(self.checked_sub(other)?.signum())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.n == 0 {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.n as f64).sqrt()
    }

    /// Is this an integer (rational with denominator 1)?
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.n == 0 && self.a.is_integer()).then(|| self.a.to_integer())
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.a))?;
        if self.n != 0 {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{}*sqrt({})", sign, fmt_rational(&self.b.abs()), self.n)?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for QuadraticReal {
    type Err = ExactError;

    /// Parses `"a"`, `"a+b*sqrt(n)"` or `"a-b*sqrt(n)"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some(star) = s.find("*sqrt(") else {
            return Ok(Self::rational(parse_rational(s)?));
        };
        let bad = || ExactError::Parse(s.to_string());
        let radicand = s[star + 6..].strip_suffix(')').ok_or_else(bad)?;
        let n: u64 = radicand.trim().parse().map_err(|_| bad())?;
        let head = &s[..star];
        // The sign separating a from b is the last +/- that is not the leading sign.
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a = parse_rational(&head[..split])?;
        let mut b = parse_rational(&head[split + 1..])?;
        if head[split..].starts_with('-') {
            b = -b;
        }
        Ok(Self::new(a, b, n))
    }
}

impl serde::Serialize for QuadraticReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QuadraticReal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
