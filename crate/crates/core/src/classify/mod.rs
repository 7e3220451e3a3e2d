//! Detectors and checks for generalized near-group rings and their relatives.

mod fib;
mod search;
mod theorem;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::exactreal::RealValue;
use crate::groups::{GroupError, GroupTable, Subgroup};
use crate::ring::{FusionRing, RingError};
use crate::structure::{self, StructureError};

pub use fib::{category_type, classify_fib_extension, exact_factorization, fibonacci_component};
pub use search::{lemma41_search, min_summands_check, multiplicity_sweep, CosineSolutions, MultiplicitySweep};
pub use theorem::{check_gty_grading, check_structure_theorem, gng_subring_check};

/// Tolerance for comparing dimensions when at least one side is numeric.
pub const DIM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("ring is pointed; the detector needs a non-invertible simple")]
    PointedInput,
    #[error("type extraction failed: {0}")]
    TypeExtractionFailure(String),
    #[error("GTY detectors disagree: kvec criterion {kvec}, dimension/grading criterion {grading}")]
    DetectorDisagreement { kvec: bool, grading: bool },
    #[error("not an extension of the Fibonacci ring: {0}")]
    NotFibExtension(String),
    #[error("subset is not a subring: {0}")]
    NotClosed(String),
    #[error("subring is pointed")]
    NotPointedPrecondition,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search bound {0} is below 10")]
    BoundTooSmall(u32),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Outcome of one named check, serialized as
/// `{"check", "pass", "witness"?, "details"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Map<String, Value>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), pass: true, witness: None, details: Map::new() }
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
        self
    }

    /// Records a failed condition; the first witness wins.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if !ok {
            if self.pass {
                self.witness = Some(witness());
            }
            self.pass = false;
        }
    }
}

pub(crate) fn same_real(a: &RealValue, b: &RealValue) -> bool {
    a.approx_eq(b, DIM_TOLERANCE)
}

/// Type `(G, Γ, k)` of a generalized near-group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GngType {
    /// Invertible simples; group labels are basis labels.
    pub group: GroupTable,
    pub embedding: Vec<usize>,
    pub gamma: Subgroup,
    /// Multiplicity of every non-invertible simple in `X ⊗ X*`, by label.
    pub kvec: BTreeMap<String, u64>,
}

impl GngType {
    pub fn index(&self) -> usize {
        self.group.order() / self.gamma.order()
    }

    pub fn kvec_is_zero(&self) -> bool {
        self.kvec.values().all(|&k| k == 0)
    }

    pub fn gamma_labels(&self) -> Vec<&str> {
        self.gamma.members().iter().map(|&a| self.group.label(a)).collect()
    }
}

impl Serialize for GngType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        json!({
            "group": self.group,
            "group_order": self.group.order(),
            "gamma": self.gamma_labels(),
            "kvec": self.kvec,
        })
        .serialize(serializer)
    }
}

fn non_invertibles(ring: &FusionRing) -> Vec<usize> {
    ring.basis().filter(|&i| !ring.is_invertible(i)).collect()
}

/// True when the invertibles act transitively on the non-invertible simples.
pub fn is_gng(ring: &FusionRing) -> Result<bool, ClassifyError> {
    let non_inv = non_invertibles(ring);
    let Some(&x) = non_inv.first() else {
        return Err(ClassifyError::PointedInput);
    };
    let act = structure::action(ring)?;
    Ok(act.orbit_of(x).len() == non_inv.len())
}

pub fn gng_type(ring: &FusionRing) -> Result<GngType, ClassifyError> {
    if !is_gng(ring)? {
        return Err(ClassifyError::TypeExtractionFailure("non-invertible simples form several orbits".into()));
    }
    let act = structure::action(ring)?;
    let non_inv = non_invertibles(ring);
    let x = non_inv[0];
    let reference = ring.self_decomp(x);
    if let Some(&bad) = non_inv.iter().find(|&&i| ring.self_decomp(i) != reference) {
        return Err(ClassifyError::TypeExtractionFailure(format!(
            "{} ⊗ {}* = {} differs from {} ⊗ {}* = {}",
            ring.label(bad),
            ring.label(bad),
            ring.format_object(&ring.self_decomp(bad)),
            ring.label(x),
            ring.label(x),
            ring.format_object(&reference)
        )));
    }
    let inv = act.invertibles;
    let gamma = act.stabilizers[x].clone();
    for (a, &b) in inv.embedding.iter().enumerate() {
        let expected = u64::from(gamma.contains(a));
        if reference.mult(b) != expected {
            return Err(ClassifyError::TypeExtractionFailure(format!(
                "{} appears {} times in {} ⊗ {}*, stabilizer predicts {expected}",
                ring.label(b),
                reference.mult(b),
                ring.label(x),
                ring.label(x)
            )));
        }
    }
    let kvec = non_inv.iter().map(|&i| (ring.label(i).to_string(), reference.mult(i))).collect();
    Ok(GngType { group: inv.group, embedding: inv.embedding, gamma, kvec })
}

/// Rank `[G:Γ](1+|Γ|)` and dimension `[G:Γ](d²+|Γ|)`.
pub fn check_rank_dim(ring: &FusionRing, t: &GngType) -> Result<CheckReport, ClassifyError> {
    let index = t.index();
    let gamma = t.gamma.order();
    let mut report = CheckReport::new("rank-dimension-formula");
    let expected_rank = index * (1 + gamma);
    report.require(ring.rank() == expected_rank, || json!({"rank": ring.rank(), "expected": expected_rank}));
    let x = non_invertibles(ring)[0];
    let d = ring.fpdim_simple(x)?;
    let expected_dim = d.square().add(&RealValue::int(gamma as i64)).scale(index as i64);
    let dim = ring.fpdim_ring()?;
    let exact = dim.is_exact() && expected_dim.is_exact();
    report.require(same_real(&dim, &expected_dim), || json!({"fpdim": dim, "expected": expected_dim}));
    Ok(report
        .detail("rank", ring.rank())
        .detail("expected_rank", expected_rank)
        .detail("fpdim", &dim)
        .detail("expected_fpdim", &expected_dim)
        .detail("exact", exact))
}

/// Distinct simple dimensions, ascending.
pub fn cd_set(ring: &FusionRing) -> Result<Vec<RealValue>, ClassifyError> {
    let mut dims = ring.fpdims()?;
    dims.sort_by(|a, b| a.total_cmp(b));
    dims.dedup_by(|a, b| same_real(a, b));
    Ok(dims)
}

pub fn is_near_group(ring: &FusionRing) -> bool {
    non_invertibles(ring).len() == 1
}

/// Detector A: a GNG ring whose k-vector vanishes. Pointed rings are not GTY.
pub fn gty_by_kvec(ring: &FusionRing) -> Result<bool, ClassifyError> {
    match is_gng(ring) {
        Ok(true) => Ok(gng_type(ring)?.kvec_is_zero()),
        Ok(false) | Err(ClassifyError::PointedInput) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Detector B: two distinct dimensions and invertible/non-invertible is a `Z_2`-grading.
pub fn gty_by_grading(ring: &FusionRing) -> Result<bool, ClassifyError> {
    if cd_set(ring)?.len() != 2 {
        return Ok(false);
    }
    let odd: Vec<bool> = ring.basis().map(|i| !ring.is_invertible(i)).collect();
    let graded = ring
        .basis()
        .all(|i| ring.basis().all(|j| ring.product(i, j).iter().all(|&(k, _)| odd[k] == (odd[i] != odd[j]))));
    Ok(graded)
}

/// Runs both detectors and insists that they agree.
pub fn is_gty(ring: &FusionRing) -> Result<bool, ClassifyError> {
    let kvec = gty_by_kvec(ring)?;
    let grading = gty_by_grading(ring)?;
    if kvec != grading {
        return Err(ClassifyError::DetectorDisagreement { kvec, grading });
    }
    Ok(kvec)
}

/// Summary used by the `classify` command.
pub fn classify(ring: &FusionRing) -> Result<Value, ClassifyError> {
    let cd = cd_set(ring)?;
    let inv = structure::invertibles(ring)?;
    let grading = structure::universal_grading(ring)?;
    let mut out = json!({
        "ring": ring.name(),
        "rank": ring.rank(),
        "fpdim": ring.fpdim_ring()?,
        "cd": cd,
        "invertibles": inv.group.order(),
        "grading_order": grading.group.order(),
        "commutative": ring.is_commutative(),
        "pointed": inv.group.order() == ring.rank(),
    });
    if inv.group.order() == ring.rank() {
        out["gng"] = json!(false);
        return Ok(out);
    }
    let gng = is_gng(ring)?;
    out["gng"] = json!(gng);
    out["near_group"] = json!(is_near_group(ring));
    out["gty"] = json!(is_gty(ring)?);
    if gng {
        let t = gng_type(ring)?;
        out["type"] = json!({
            "G": t.group.order(),
            "Gamma": t.gamma.order(),
            "gamma": t.gamma_labels(),
            "k": t.kvec.values().collect::<Vec<_>>(),
            "kvec": t.kvec,
        });
        out["rank_dimension_formula"] = json!(check_rank_dim(ring, &t)?.pass);
    }
    Ok(out)
}
