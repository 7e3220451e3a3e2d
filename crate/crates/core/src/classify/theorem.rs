use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::{gng_type, is_gng, is_gty, CheckReport, ClassifyError};
use crate::ring::FusionRing;
use crate::structure::{self, restrict, StructureError, SubringHandle};

/// Restricts a non-pointed subring to a standalone ring and tests it for GNG.
pub fn gng_subring_check(ring: &FusionRing, sub: &SubringHandle) -> Result<bool, ClassifyError> {
    let sub = SubringHandle::from_members(ring, sub.members()).map_err(|e| match e {
        StructureError::NotClosed(why) => ClassifyError::NotClosed(why),
        other => other.into(),
    })?;
    if sub.members().iter().all(|&i| ring.is_invertible(i)) {
        return Err(ClassifyError::NotPointedPrecondition);
    }
    let standalone = restrict(ring, &sub, format!("{}|sub", ring.name()))?;
    is_gng(&standalone)
}

/// Structure of a GNG ring with nonzero k-vector:
/// the adjoint subring is GNG with trivial grading, non-pointed subrings
/// match subgroups of `U(C)`, and every component is `δ ⊗ C_ad`.
pub fn check_structure_theorem(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let t = gng_type(ring)?;
    if t.kvec_is_zero() {
        return Err(ClassifyError::Precondition("k-vector is zero".into()));
    }
    let mut report = CheckReport::new("structure-theorem");
    let ad = structure::adjoint_subring(ring);
    let ad_ring = restrict(ring, &ad, format!("adjoint({})", ring.name()))?;
    let ad_gng = is_gng(&ad_ring).unwrap_or(false);
    let ad_trivial = structure::universal_grading(&ad_ring)?.is_trivial();
    report.require(ad_gng && ad_trivial, || json!({"adjoint_gng": ad_gng, "adjoint_grading_trivial": ad_trivial}));

    let grading = structure::universal_grading(ring)?;
    let u = &grading.group;
    let subgroups = u.all_subgroups();
    let mut lattice: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for h in &subgroups {
        let members: Vec<usize> = h
            .members()
            .iter()
            .flat_map(|&c| grading.components[c].iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let closed = SubringHandle::from_members(ring, &members);
        let non_pointed = members.iter().any(|&i| !ring.is_invertible(i));
        let labels: Vec<String> = h.members().iter().map(|&c| u.label(c).to_string()).collect();
        report.require(closed.is_ok() && non_pointed, || json!({"subgroup": labels, "closed": closed.is_ok()}));
        lattice.insert(members, labels);
    }
    report.require(
        lattice.len() == subgroups.len(),
        || json!({"distinct_subrings": lattice.len(), "subgroups": subgroups.len()}),
    );
    for x in ring.basis().filter(|&i| !ring.is_invertible(i)) {
        let generated = structure::subring_closure(ring, &[x]);
        report.require(
            lattice.contains_key(generated.members()),
            || json!({"generator": ring.label(x), "closure": generated.labels(ring)}),
        );
    }

    let ad_set: BTreeSet<usize> = ad.members().iter().copied().collect();
    for comp in &grading.components {
        let invertibles: Vec<usize> = comp.iter().copied().filter(|&i| ring.is_invertible(i)).collect();
        report.require(
            !invertibles.is_empty() && comp.len() == ad.rank(),
            || json!({"component": comp.iter().map(|&i| ring.label(i)).collect::<Vec<_>>()}),
        );
        let comp_set: BTreeSet<usize> = comp.iter().copied().collect();
        for &delta in &invertibles {
            let translated: Option<BTreeSet<usize>> =
                ad_set.iter().map(|&a| ring.tensor_simple(delta, a).as_simple()).collect();
            report.require(translated.as_ref() == Some(&comp_set), || {
                json!({"delta": ring.label(delta), "component": comp.iter().map(|&i| ring.label(i)).collect::<Vec<_>>()})
            });
        }
    }

    Ok(report
        .detail("grading_order", u.order())
        .detail("subgroups", subgroups.len())
        .detail("non_pointed_graded_subrings", lattice.len())
        .detail("adjoint_rank", ad.rank()))
}

/// `|U(C)| = 2 [G:Γ]` for generalized Tambara–Yamagami rings.
pub fn check_gty_grading(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    if !is_gty(ring)? {
        return Err(ClassifyError::Precondition("ring is not GTY".into()));
    }
    let t = gng_type(ring)?;
    let u = structure::universal_grading(ring)?.group.order();
    let expected = 2 * t.index();
    let mut report = CheckReport::new("gty-grading-order");
    report.require(u == expected, || json!({"grading_order": u, "expected": expected}));
    Ok(report.detail("grading_order", u).detail("index", t.index()))
}
