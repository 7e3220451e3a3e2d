use std::cmp::Ordering;
use std::fmt;

use super::QuadraticReal;

/// Absolute floating slack added to every approximate result.
const ROUNDING_SLACK: f64 = 1e-14;

/// A real number that is exact when it could be recognized, numeric otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum RealValue {
    Exact(QuadraticReal),
    /// `value` is within `eps` of the true number.
    Approx {
        value: f64,
        eps: f64,
    },
}

impl RealValue {
    pub fn int(v: i64) -> Self {
        RealValue::Exact(QuadraticReal::from_int(v))
    }

    pub fn approx(value: f64, eps: f64) -> Self {
        RealValue::Approx { value, eps }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact(q) => q.to_f64(),
            RealValue::Approx { value, .. } => *value,
        }
    }

    pub fn eps(&self) -> f64 {
        match self {
            RealValue::Exact(_) => 0.0,
            RealValue::Approx { eps, .. } => *eps,
        }
    }

    pub fn exact(&self) -> Option<&QuadraticReal> {
        match self {
            RealValue::Exact(q) => Some(q),
            RealValue::Approx { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RealValue::Exact(_))
    }

    fn loosen(value: f64, eps: f64) -> Self {
        RealValue::Approx { value, eps: eps + ROUNDING_SLACK * (1.0 + value.abs()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (RealValue::Exact(x), RealValue::Exact(y)) = (self, other) {
            if let Ok(s) = x.checked_add(y) {
                return RealValue::Exact(s);
            }
        }
        Self::loosen(self.to_f64() + other.to_f64(), self.eps() + other.eps())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (RealValue::Exact(x), RealValue::Exact(y)) = (self, other) {
            if let Ok(p) = x.checked_mul(y) {
                return RealValue::Exact(p);
            }
        }
        let (x, y) = (self.to_f64(), other.to_f64());
        let (ex, ey) = (self.eps(), other.eps());
        Self::loosen(x * y, x.abs() * ey + y.abs() * ex + ex * ey)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, k: i64) -> Self {
        self.mul(&RealValue::int(k))
    }

    pub fn sum<'a>(values: impl IntoIterator<Item = &'a RealValue>) -> Self {
        values.into_iter().fold(RealValue::int(0), |acc, v| acc.add(v))
    }

    /// Equality: exact when both sides are exact in one field, otherwise
    /// `|x - y| <= tol + eps_x + eps_y`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if let (RealValue::Exact(x), RealValue::Exact(y)) = (self, other) {
            if let Ok(ord) = x.try_cmp(y) {
                return ord == Ordering::Equal;
            }
        }
        (self.to_f64() - other.to_f64()).abs() <= tol + self.eps() + other.eps()
    }

    /// Ordering that is exact where possible and falls back to floating comparison.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        if let (RealValue::Exact(x), RealValue::Exact(y)) = (self, other) {
            if let Ok(ord) = x.try_cmp(y) {
                return ord;
            }
        }
        self.to_f64().total_cmp(&other.to_f64())
    }
}

impl From<QuadraticReal> for RealValue {
    fn from(q: QuadraticReal) -> Self {
        RealValue::Exact(q)
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(q) => write!(f, "{q}"),
            RealValue::Approx { value, eps } => write!(f, "~{value:.12} (eps {eps:.1e})"),
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ApproxRepr {
    value: String,
    eps: f64,
}

impl serde::Serialize for RealValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            RealValue::Exact(q) => q.serialize(serializer),
            RealValue::Approx { value, eps } => {
                ApproxRepr { value: format!("~{value:.12}"), eps: *eps }.serialize(serializer)
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for RealValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Exact(QuadraticReal),
            Approx(ApproxRepr),
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Exact(q) => RealValue::Exact(q),
            Repr::Approx(a) => {
                let digits = a
                    .value
                    .strip_prefix('~')
                    .ok_or_else(|| serde::de::Error::custom("approximate values carry a '~' prefix"))?;
                let value = digits.parse().map_err(serde::de::Error::custom)?;
                RealValue::Approx { value, eps: a.eps }
            }
        })
    }
}
