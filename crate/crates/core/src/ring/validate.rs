use serde::Serialize;

use super::{FusionRing, ObjectVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DualInvolution,
    DualUnit,
    LeftUnit,
    RightUnit,
    Duality,
    FrobeniusReciprocity,
    Associativity,
}

impl Axiom {
    /// Evaluation order: cheap local checks first, the O(r⁴) associativity sweep last.
    pub const ALL: [Axiom; 7] = [
        Axiom::DualInvolution,
        Axiom::DualUnit,
        Axiom::LeftUnit,
        Axiom::RightUnit,
        Axiom::FrobeniusReciprocity,
        Axiom::Duality,
        Axiom::Associativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::DualInvolution => "dual_involution",
            Axiom::DualUnit => "dual_unit",
            Axiom::LeftUnit => "left_unit",
            Axiom::RightUnit => "right_unit",
            Axiom::Duality => "duality",
            Axiom::FrobeniusReciprocity => "frobenius_reciprocity",
            Axiom::Associativity => "associativity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub pass: bool,
    /// First violating index tuple, in basis labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ring: String,
    pub pass: bool,
    pub axioms: Vec<AxiomResult>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.axioms.iter().filter(|a| !a.pass)
    }

    pub fn result(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ValidateMode {
    /// Run every axiom and report each failure.
    #[default]
    Exhaustive,
    /// Stop at the first failing axiom.
    FailFast,
}

type Violation = (Vec<usize>, String);

fn check_dual_involution(r: &FusionRing) -> Option<Violation> {
    r.basis()
        .find(|&i| r.dual(r.dual(i)) != i)
        .map(|i| (vec![i], format!("dual(dual({})) = {}", r.label(i), r.label(r.dual(r.dual(i))))))
}

fn check_dual_unit(r: &FusionRing) -> Option<Violation> {
    let u = r.unit();
    (r.dual(u) != u).then(|| (vec![u], format!("dual of unit is {}", r.label(r.dual(u)))))
}

fn check_unit(r: &FusionRing, left: bool) -> Option<Violation> {
    let u = r.unit();
    for j in r.basis() {
        let p = if left { r.product(u, j) } else { r.product(j, u) };
        if p != [(j, 1)] {
            let (a, b) = if left { (u, j) } else { (j, u) };
            let got = r.format_object(&r.tensor_simple(a, b));
            return Some((vec![a, b], format!("{} ⊗ {} = {got}", r.label(a), r.label(b))));
        }
    }
    None
}

fn check_duality(r: &FusionRing) -> Option<Violation> {
    let u = r.unit();
    for i in r.basis() {
        for j in r.basis() {
            let expected = u32::from(j == r.dual(i));
            let got = r.n(i, j, u);
            if got != expected {
                return Some((vec![i, j, u], format!("unit multiplicity {got}, expected {expected}")));
            }
        }
    }
    None
}

fn check_frobenius(r: &FusionRing) -> Option<Violation> {
    // Both moves are involutions on index triples when the dual is, so
    // checking every stored triple against its two partners covers the zeros.
    // This runs once per injected fault in fault sweeps, hence the direct walk
    // over the flat constant array.
    let rank = r.rank();
    for p in 0..rank * rank {
        let (i, j) = (p / rank, p % rank);
        for &(k, m) in &r.entries[r.offsets[p]..r.offsets[p + 1]] {
            let a = r.n(r.dual[i], k, j);
            let b = r.n(k, r.dual[j], i);
            if a != m || b != m {
                return Some((vec![i, j, k], format!("N_ij^k = {m} but N_(i*)k^j = {a} and N_k(j*)^i = {b}")));
            }
        }
    }
    None
}

fn check_associativity(r: &FusionRing) -> Option<Violation> {
    for i in r.basis() {
        for j in r.basis() {
            let ij = r.tensor_simple(i, j);
            for k in r.basis() {
                let mut left = ObjectVec::zero();
                for (m, a) in ij.iter() {
                    for &(l, b) in r.product(m, k) {
                        left.add_simple(l, a * u64::from(b));
                    }
                }
                let mut right = ObjectVec::zero();
                for &(m, a) in r.product(j, k) {
                    for &(l, b) in r.product(i, m) {
                        right.add_simple(l, u64::from(a) * u64::from(b));
                    }
                }
                if left != right {
                    let l = left
                        .support()
                        .chain(right.support())
                        .find(|&l| left.mult(l) != right.mult(l))
                        .expect("unequal objects differ somewhere");
                    return Some((
                        vec![i, j, k, l],
                        format!(
                            "(X_i X_j) X_k has {} copies of X_l, X_i (X_j X_k) has {}",
                            left.mult(l),
                            right.mult(l)
                        ),
                    ));
                }
            }
        }
    }
    None
}

fn run(r: &FusionRing, axiom: Axiom) -> Option<Violation> {
    match axiom {
        Axiom::DualInvolution => check_dual_involution(r),
        Axiom::DualUnit => check_dual_unit(r),
        Axiom::LeftUnit => check_unit(r, true),
        Axiom::RightUnit => check_unit(r, false),
        Axiom::Duality => check_duality(r),
        Axiom::FrobeniusReciprocity => check_frobenius(r),
        Axiom::Associativity => check_associativity(r),
    }
}

/// Checks every fusion-ring axiom and reports each failure with a witness.
pub fn validate(ring: &FusionRing) -> ValidationReport {
    validate_with(ring, ValidateMode::Exhaustive)
}

pub fn validate_with(ring: &FusionRing, mode: ValidateMode) -> ValidationReport {
    let mut axioms = Vec::with_capacity(Axiom::ALL.len());
    for axiom in Axiom::ALL {
        let violation = run(ring, axiom);
        let failed = violation.is_some();
        axioms.push(match violation {
            None => AxiomResult { axiom, pass: true, witness: None, detail: None },
            Some((idx, detail)) => AxiomResult {
                axiom,
                pass: false,
                witness: Some(idx.into_iter().map(|i| ring.label(i).to_string()).collect()),
                detail: Some(detail),
            },
        });
        if failed && mode == ValidateMode::FailFast {
            break;
        }
    }
    let pass = axioms.iter().all(|a| a.pass);
    ValidationReport { ring: ring.name().to_string(), pass, axioms }
}
