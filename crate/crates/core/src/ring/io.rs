use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{FusionRing, RingError};

/// One nonzero structure constant in the exchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: String,
    pub j: String,
    pub k: String,
    pub m: u32,
}

/// JSON exchange format for fusion rings. Omitted triples mean zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    pub constants: Vec<ConstantEntry>,
}

impl From<&FusionRing> for RingFile {
    fn from(r: &FusionRing) -> Self {
        RingFile {
            name: r.name().to_string(),
            basis: r.labels().to_vec(),
            unit: r.label(r.unit()).to_string(),
            dual: r.basis().map(|i| (r.label(i).to_string(), r.label(r.dual(i)).to_string())).collect(),
            constants: r
                .constants()
                .map(|(i, j, k, m)| ConstantEntry {
                    i: r.label(i).to_string(),
                    j: r.label(j).to_string(),
                    k: r.label(k).to_string(),
                    m,
                })
                .collect(),
        }
    }
}

impl TryFrom<RingFile> for FusionRing {
    type Error = RingError;

    fn try_from(f: RingFile) -> Result<Self, RingError> {
        let index: HashMap<&str, usize> = f.basis.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| RingError::UnknownLabel(l.to_string()));
        let unit = look(&f.unit)?;
        let mut dual = vec![usize::MAX; f.basis.len()];
        for (a, b) in &f.dual {
            dual[look(a)?] = look(b)?;
        }
        if dual.contains(&usize::MAX) {
            return Err(RingError::BadDual);
        }
        let constants = f
            .constants
            .iter()
            .map(|c| Ok((look(&c.i)?, look(&c.j)?, look(&c.k)?, c.m)))
            .collect::<Result<Vec<_>, RingError>>()?;
        FusionRing::new(f.name.clone(), f.basis.clone(), unit, dual, constants)
    }
}

impl FusionRing {
    /// Canonical JSON: pretty-printed, constants in `(i, j, k)` basis order, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&RingFile::from(self)).expect("ring file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, RingError> {
        let file: RingFile = serde_json::from_str(text).map_err(|e| RingError::Format(e.to_string()))?;
        FusionRing::try_from(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::{fib, psu};

    #[test]
    fn canonical_round_trip_is_bit_exact() {
        for r in [fib(), psu()] {
            let text = r.to_json();
            let back = FusionRing::from_json(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn shape_of_exchange_file() {
        let v: serde_json::Value = serde_json::from_str(&fib().to_json()).unwrap();
        assert_eq!(v["unit"], "1");
        assert_eq!(v["dual"]["X"], "X");
        assert_eq!(v["constants"][0], serde_json::json!({"i": "1", "j": "1", "k": "1", "m": 1}));
        assert_eq!(v["constants"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(FusionRing::from_json("{"), Err(RingError::Format(_))));
        let missing_dual = r#"{"name":"x","basis":["1","X"],"unit":"1","dual":{"1":"1"},"constants":[]}"#;
        assert_eq!(FusionRing::from_json(missing_dual).unwrap_err(), RingError::BadDual);
        let unknown = r#"{"name":"x","basis":["1"],"unit":"u","dual":{"1":"1"},"constants":[]}"#;
        assert_eq!(FusionRing::from_json(unknown).unwrap_err(), RingError::UnknownLabel("u".into()));
    }
}
