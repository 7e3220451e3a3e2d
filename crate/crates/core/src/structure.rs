//! Structural invariants: invertible objects, their action on the basis,
//! pointed and adjoint subrings, commutators and the universal grading.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::exactreal::RealValue;
use crate::groups::{GroupTable, Subgroup};
use crate::ring::{FusionRing, ObjectVec, RingError};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum StructureError {
    #[error("grading is inconsistent: {0}")]
    GradingInconsistency(String),
    #[error("basis subset is not a subring: {0}")]
    NotClosed(String),
    #[error("invertible objects do not form a group: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The group `G(C)` of invertible simples.
///
/// Group element `a` is the basis element `embedding[a]` and carries the same
/// label; elements are listed in basis order, so the unit comes first only
/// when it is basis element zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invertibles {
    pub group: GroupTable,
    pub embedding: Vec<usize>,
}

impl Invertibles {
    /// Group element for a basis index, if that simple is invertible.
    pub fn element_of(&self, basis_index: usize) -> Option<usize> {
        self.embedding.iter().position(|&b| b == basis_index)
    }
}

pub fn invertibles(ring: &FusionRing) -> Result<Invertibles, StructureError> {
    let embedding = ring.invertible_indices();
    let pos: BTreeMap<usize, usize> = embedding.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let mut rows = Vec::with_capacity(embedding.len());
    for &x in &embedding {
        let mut row = Vec::with_capacity(embedding.len());
        for &y in &embedding {
            let c = ring.tensor_simple(x, y).as_simple().and_then(|k| pos.get(&k).copied()).ok_or_else(|| {
                StructureError::NotAGroup(format!("{} ⊗ {} is not invertible", ring.label(x), ring.label(y)))
            })?;
            row.push(c);
        }
        rows.push(row);
    }
    let labels = embedding.iter().map(|&b| ring.label(b).to_string()).collect();
    let identity = *pos.get(&ring.unit()).ok_or_else(|| StructureError::NotAGroup("unit is not invertible".into()))?;
    let group = GroupTable::from_table(labels, rows, identity).map_err(|e| StructureError::NotAGroup(e.to_string()))?;
    Ok(Invertibles { group, embedding })
}

/// Left tensor action of `G(C)` on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub invertibles: Invertibles,
    /// `act[a][i]` is the basis index of `g_a ⊗ X_i`.
    pub act: Vec<Vec<usize>>,
    /// Orbits as sorted basis index lists, ordered by least element.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer of every basis element, as a subgroup of `invertibles.group`.
    pub stabilizers: Vec<Subgroup>,
}

impl ActionData {
    pub fn orbit_of(&self, i: usize) -> &[usize] {
        self.orbits.iter().find(|o| o.contains(&i)).expect("orbits cover the basis")
    }
}

pub fn action(ring: &FusionRing) -> Result<ActionData, StructureError> {
    let inv = invertibles(ring)?;
    let mut act = Vec::with_capacity(inv.embedding.len());
    for &g in &inv.embedding {
        let row = ring
            .basis()
            .map(|i| {
                ring.tensor_simple(g, i).as_simple().ok_or_else(|| {
                    StructureError::NotAGroup(format!("{} ⊗ {} is not simple", ring.label(g), ring.label(i)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        act.push(row);
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; ring.rank()];
    for i in ring.basis() {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = act.iter().map(|row| row[i]).collect();
        for &k in &orbit {
            seen[k] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    let stabilizers = ring
        .basis()
        .map(|i| {
            let fixing: Vec<usize> = (0..act.len()).filter(|&a| act[a][i] == i).collect();
            inv.group.subgroup_generated(&fixing).expect("group elements")
        })
        .collect();
    Ok(ActionData { invertibles: inv, act, orbits, stabilizers })
}

/// A basis subset closed under products, duals and containing the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubringHandle {
    members: Vec<usize>,
}

impl SubringHandle {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn rank(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn labels<'a>(&self, ring: &'a FusionRing) -> Vec<&'a str> {
        self.members.iter().map(|&i| ring.label(i)).collect()
    }

    /// Accepts an explicit subset only if it is already closed.
    pub fn from_members(ring: &FusionRing, members: &[usize]) -> Result<Self, StructureError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= ring.rank()) {
            return Err(RingError::IndexOutOfRange { index: bad, rank: ring.rank() }.into());
        }
        if !set.contains(&ring.unit()) {
            return Err(StructureError::NotClosed(format!("missing unit {}", ring.label(ring.unit()))));
        }
        for &i in &set {
            if !set.contains(&ring.dual(i)) {
                return Err(StructureError::NotClosed(format!("missing dual of {}", ring.label(i))));
            }
            for &j in &set {
                if let Some(&(k, _)) = ring.product(i, j).iter().find(|(k, _)| !set.contains(k)) {
                    return Err(StructureError::NotClosed(format!(
                        "{} ⊗ {} contains {}",
                        ring.label(i),
                        ring.label(j),
                        ring.label(k)
                    )));
                }
            }
        }
        Ok(SubringHandle { members: set.into_iter().collect() })
    }

    pub fn is_whole(&self, ring: &FusionRing) -> bool {
        self.members.len() == ring.rank()
    }
}

/// Smallest subring containing `seed`. Out-of-range indices are ignored.
pub fn subring_closure(ring: &FusionRing, seed: &[usize]) -> SubringHandle {
    let mut set: BTreeSet<usize> = seed.iter().copied().filter(|&i| i < ring.rank()).collect();
    set.insert(ring.unit());
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        let mut add = |k: usize, set: &mut BTreeSet<usize>| {
            if set.insert(k) {
                fresh.push(k);
            }
        };
        for &i in &frontier {
            add(ring.dual(i), &mut set);
            let current: Vec<usize> = set.iter().copied().collect();
            for j in current {
                for &(k, _) in ring.product(i, j).iter().chain(ring.product(j, i)) {
                    add(k, &mut set);
                }
            }
        }
        frontier = fresh;
    }
    SubringHandle { members: set.into_iter().collect() }
}

pub fn pointed_subring(ring: &FusionRing) -> SubringHandle {
    subring_closure(ring, &ring.invertible_indices())
}

/// Subring generated by every summand of every `X ⊗ X*`.
pub fn adjoint_subring(ring: &FusionRing) -> SubringHandle {
    let seed: BTreeSet<usize> = ring.basis().flat_map(|i| ring.self_decomp(i).support().collect::<Vec<_>>()).collect();
    subring_closure(ring, &seed.into_iter().collect::<Vec<_>>())
}

/// Simples `X` with `X ⊗ X*` supported in `b`, before taking the closure.
pub fn commutator_set(ring: &FusionRing, b: &SubringHandle) -> Vec<usize> {
    ring.basis().filter(|&i| ring.self_decomp(i).support().all(|k| b.contains(k))).collect()
}

pub fn commutator_subring(ring: &FusionRing, b: &SubringHandle) -> SubringHandle {
    subring_closure(ring, &commutator_set(ring, b))
}

/// Copy of a subring as a standalone ring, keeping labels and basis order.
pub fn restrict(ring: &FusionRing, sub: &SubringHandle, name: impl Into<String>) -> Result<FusionRing, RingError> {
    let pos: BTreeMap<usize, usize> = sub.members().iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let labels = sub.members().iter().map(|&i| ring.label(i).to_string()).collect();
    let dual = sub.members().iter().map(|&i| pos[&ring.dual(i)]).collect();
    let mut constants = Vec::new();
    for &i in sub.members() {
        for &j in sub.members() {
            for &(k, m) in ring.product(i, j) {
                let k = *pos.get(&k).ok_or_else(|| RingError::Format("subset is not closed".into()))?;
                constants.push((pos[&i], pos[&j], k, m));
            }
        }
    }
    FusionRing::new(name, labels, pos[&ring.unit()], dual, constants)
}

/// The universal grading `C = ⊕_{g ∈ U(C)} C_g`.
///
/// Components are indexed like the elements of `group`, and each one is
/// named after its least basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    pub group: GroupTable,
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    pub trivial: usize,
    member_labels: Vec<Vec<String>>,
}

impl GradingData {
    pub fn is_trivial(&self) -> bool {
        self.group.order() == 1
    }

    pub fn component_label(&self, c: usize) -> &str {
        self.group.label(c)
    }
}

impl Serialize for GradingData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Components<'a>(&'a GradingData);
        impl Serialize for Components<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.components.len()))?;
                for (c, labels) in self.0.member_labels.iter().enumerate() {
                    map.serialize_entry(self.0.group.label(c), labels)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("group", &self.group)?;
        map.serialize_entry("components", &Components(self))?;
        map.serialize_entry("trivial", self.group.label(self.trivial))?;
        map.end()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    // Keep the smaller index as root so roots are the canonical representatives.
    if ra < rb {
        parent[rb] = ra;
    } else if rb < ra {
        parent[ra] = rb;
    }
}

pub fn universal_grading(ring: &FusionRing) -> Result<GradingData, StructureError> {
    let ad = adjoint_subring(ring);
    let r = ring.rank();
    let mut parent: Vec<usize> = (0..r).collect();
    for i in 0..r {
        for &a in ad.members() {
            for &(k, _) in ring.product(i, a) {
                union(&mut parent, i, k);
            }
        }
    }
    let roots: Vec<usize> = (0..r).map(|i| find(&mut parent, i)).collect();
    for i in 0..r {
        for &a in ad.members() {
            if let Some(&(k, _)) = ring.product(a, i).iter().find(|&&(k, _)| roots[k] != roots[i]) {
                return Err(StructureError::GradingInconsistency(format!(
                    "left tensoring {} by {} reaches {} in another class",
                    ring.label(i),
                    ring.label(a),
                    ring.label(k)
                )));
            }
        }
    }

    let reps: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let comp_index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(c, &rep)| (rep, c)).collect();
    let component_of: Vec<usize> = roots.iter().map(|rt| comp_index[rt]).collect();
    let mut components = vec![Vec::new(); reps.len()];
    for i in 0..r {
        components[component_of[i]].push(i);
    }

    let n = reps.len();
    let mut rows = vec![vec![usize::MAX; n]; n];
    for g in 0..n {
        for h in 0..n {
            for &i in &components[g] {
                for &j in &components[h] {
                    let prod = ring.product(i, j);
                    if prod.is_empty() {
                        return Err(StructureError::GradingInconsistency(format!(
                            "{} ⊗ {} is zero",
                            ring.label(i),
                            ring.label(j)
                        )));
                    }
                    for &(k, _) in prod {
                        let c = component_of[k];
                        if rows[g][h] == usize::MAX {
                            rows[g][h] = c;
                        } else if rows[g][h] != c {
                            return Err(StructureError::GradingInconsistency(format!(
                                "product of components {} and {} is not homogeneous",
                                ring.label(reps[g]),
                                ring.label(reps[h])
                            )));
                        }
                    }
                }
            }
        }
    }
    let labels = reps.iter().map(|&rep| ring.label(rep).to_string()).collect();
    let trivial = component_of[ring.unit()];
    let group = GroupTable::from_table(labels, rows, trivial)
        .map_err(|e| StructureError::GradingInconsistency(format!("component product: {e}")))?;
    if components[trivial] != ad.members() {
        return Err(StructureError::GradingInconsistency("trivial component differs from the adjoint subring".into()));
    }
    let member_labels = components.iter().map(|c| c.iter().map(|&i| ring.label(i).to_string()).collect()).collect();
    Ok(GradingData { group, components, component_of, trivial, member_labels })
}

/// `Σ FPdim(X)²` over each graded component, in component order.
pub fn graded_component_dims(grading: &GradingData, ring: &FusionRing) -> Result<Vec<RealValue>, RingError> {
    let dims = ring.fpdims()?;
    Ok(grading
        .components
        .iter()
        .map(|c| RealValue::sum(&c.iter().map(|&i| dims[i].square()).collect::<Vec<_>>()))
        .collect())
}

/// `Σ FPdim(X)²` over an arbitrary basis subset.
pub fn subset_dim(ring: &FusionRing, members: &[usize]) -> Result<RealValue, RingError> {
    let v: ObjectVec = members.iter().map(|&i| (i, 1)).collect();
    let dims = ring.fpdims()?;
    Ok(RealValue::sum(&v.support().map(|i| dims[i].square()).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::QuadraticReal;
    use crate::ring::tests::{fib, psu};

    pub(crate) fn ising() -> FusionRing {
        // 1, g, X with g² = 1, gX = Xg = X, X² = 1 + g.
        FusionRing::new(
            "ising",
            vec!["1".into(), "g".into(), "X".into()],
            0,
            vec![0, 1, 2],
            [
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 2, 2, 1),
                (1, 0, 1, 1),
                (2, 0, 2, 1),
                (1, 1, 0, 1),
                (1, 2, 2, 1),
                (2, 1, 2, 1),
                (2, 2, 0, 1),
                (2, 2, 1, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn invertibles_and_action() {
        let p = psu();
        let inv = invertibles(&p).unwrap();
        assert_eq!(inv.group.order(), 2);
        assert_eq!(inv.group.labels(), ["1", "d"]);
        let act = action(&p).unwrap();
        assert_eq!(act.orbit_of(2), &[2, 3]);
        assert!(act.stabilizers[2].is_trivial());
        assert_eq!(invertibles(&fib()).unwrap().group.order(), 1);
        let ising_act = action(&ising()).unwrap();
        assert_eq!(ising_act.stabilizers[2].order(), 2);
        assert_eq!(ising_act.orbits, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn subrings() {
        let f = fib();
        assert_eq!(pointed_subring(&f).members(), &[0]);
        assert_eq!(subring_closure(&f, &[1]).members(), &[0, 1]);
        assert_eq!(subring_closure(&f, &[]).members(), &[0]);
        let is = ising();
        assert_eq!(adjoint_subring(&is).members(), &[0, 1]);
        assert!(adjoint_subring(&psu()).is_whole(&psu()));
        let pt = pointed_subring(&is);
        assert!(commutator_subring(&is, &pt).is_whole(&is));
        let whole = subring_closure(&is, &[2]);
        assert!(commutator_subring(&is, &whole).is_whole(&is));
        assert!(SubringHandle::from_members(&is, &[0, 2]).is_err());
        assert_eq!(SubringHandle::from_members(&is, &[0, 1]).unwrap(), pt);
    }

    #[test]
    fn gradings() {
        let is = ising();
        let g = universal_grading(&is).unwrap();
        assert_eq!(g.group.order(), 2);
        assert_eq!(g.components, vec![vec![0, 1], vec![2]]);
        let dims = graded_component_dims(&g, &is).unwrap();
        assert!(dims.iter().all(|d| d.exact() == Some(&QuadraticReal::from_int(2))));
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["components"]["X"], serde_json::json!(["X"]));
        assert_eq!(json["trivial"], "1");

        assert!(universal_grading(&psu()).unwrap().is_trivial());
        let fg = universal_grading(&fib()).unwrap();
        assert!(fg.is_trivial());
        let five = QuadraticReal::from_int(5);
        let expect =
            five.checked_add(&QuadraticReal::sqrt(5)).unwrap().checked_div(&QuadraticReal::from_int(2)).unwrap();
        assert_eq!(graded_component_dims(&fg, &fib()).unwrap()[0].exact(), Some(&expect));
    }

    #[test]
    fn restriction_is_a_ring() {
        let is = ising();
        let sub = restrict(&is, &adjoint_subring(&is), "ising_ad").unwrap();
        assert_eq!(sub.rank(), 2);
        assert!(crate::ring::validate(&sub).pass);
    }
}
