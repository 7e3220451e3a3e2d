//! Finite groups as explicit multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

/// Largest group handled by the isomorphism search.
pub const MAX_ISOMORPHISM_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("table must be {n}x{n}")]
    BadShape { n: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("table is not a Latin square at row/column {0:?}")]
    NotLatin(String),
    #[error("{0:?} is not a two-sided identity")]
    NotIdentity(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("subgroup is not normal: {0} conjugates {1} outside it")]
    NotNormal(String, String),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("size {size} exceeds the limit {limit}")]
    SizeLimit { size: usize, limit: usize },
}

/// A finite group given by its full multiplication table over indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Element subset of a group that is closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl GroupTable {
    /// Validates a table: Latin square, two-sided identity, associativity.
    /// Inverses then exist automatically.
    pub fn from_table(labels: Vec<String>, rows: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) || identity >= n {
            return Err(GroupError::BadShape { n });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[table[a * n + b]] = true;
                col[table[b * n + a]] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(GroupError::NotLatin(labels[a].clone()));
            }
        }
        for a in 0..n {
            if table[identity * n + a] != a || table[a * n + identity] != a {
                return Err(GroupError::NotIdentity(labels[identity].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative(
                            labels[a].clone(),
                            labels[b].clone(),
                            labels[c].clone(),
                        ));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("Latin rows contain the identity"))
            .collect();
        Ok(GroupTable { labels, table, identity, inverses })
    }

    /// Builds a table from a multiplication closure; panics if the result is not a group.
    fn from_fn(labels: Vec<String>, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = labels.len();
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        GroupTable::from_table(labels, rows, identity).expect("constructor produces a group")
    }

    /// `Z_n` with elements labelled `0..n-1`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        Ok(Self::from_fn((0..n).map(|i| i.to_string()).collect(), 0, |a, b| (a + b) % n))
    }

    /// Elements labelled `(a,b)`, ordered lexicographically by index.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let nb = b.order();
        let labels = a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("({x},{y})"))).collect();
        Self::from_fn(labels, a.identity * nb + b.identity, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
    }

    /// `S_n` for `n <= 5`, elements in one-line notation (`"213"`), composed right to left.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > 5 {
            return Err(GroupError::SizeLimit { size: n, limit: 5 });
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        // Lexicographic enumeration: identity first.
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let labels = perms.iter().map(|p| p.iter().map(|&x| (x + 1).to_string()).collect::<String>()).collect();
        Ok(Self::from_fn(labels, 0, |a, b| {
            let composed: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index[&composed]
        }))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order one")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, GroupError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| GroupError::UnknownElement(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![self.identity] }
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.order()) {
            return Err(GroupError::UnknownElement(bad.to_string()));
        }
        let mut members = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup { members: members.into_iter().collect() })
    }

    pub fn subgroup_generated_by_labels(&self, gens: &[&str]) -> Result<Subgroup, GroupError> {
        let idx = gens.iter().map(|g| self.index_of(g)).collect::<Result<Vec<_>, _>>()?;
        self.subgroup_generated(&idx)
    }

    /// Accepts a subset only if it already is a subgroup.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup, GroupError> {
        let h = self.subgroup_generated(members)?;
        let given: BTreeSet<usize> = members.iter().copied().chain([self.identity]).collect();
        if h.members.len() == given.len() {
            Ok(h)
        } else {
            Err(GroupError::NotSubgroup)
        }
    }

    /// Normality by checking every conjugate `g h g⁻¹`.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h).is_none()
    }

    fn normality_witness(&self, h: &Subgroup) -> Option<(usize, usize)> {
        for g in self.elements() {
            for &x in h.members() {
                if !h.contains(self.mul(self.mul(g, x), self.inverse(g))) {
                    return Some((g, x));
                }
            }
        }
        None
    }

    /// Left cosets `gH`, each sorted, listed by least element.
    pub fn cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.members().iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// `G/H` for normal `H`, with the projection `G -> G/H`.
    pub fn quotient(&self, h: &Subgroup) -> Result<(GroupTable, Vec<usize>), GroupError> {
        if let Some((g, x)) = self.normality_witness(h) {
            return Err(GroupError::NotNormal(self.labels[g].clone(), self.labels[x].clone()));
        }
        let cosets = self.cosets(h);
        let mut proj = vec![0; self.order()];
        for (ci, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = ci;
            }
        }
        let labels = cosets
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|&x| self.labels[x].as_str()).collect::<Vec<_>>().join(",")))
            .collect();
        let q = Self::from_fn(labels, proj[self.identity], |a, b| proj[self.mul(cosets[a][0], cosets[b][0])]);
        Ok((q, proj))
    }

    /// Every subgroup, found by joining cyclic subgroups until nothing new appears.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> =
            self.elements().map(|g| self.subgroup_generated(&[g]).expect("element in range")).collect();
        let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let current: Vec<Subgroup> = found.iter().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                for b in &current {
                    let gens: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
                    let j = self.subgroup_generated(&gens).expect("elements in range");
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        found.into_iter().collect()
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    /// A small generating set, greedily preferring high-order elements.
    fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for a in by_order {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.subgroup_generated(&gens).expect("elements in range");
            }
        }
        gens
    }

    /// An isomorphism `self -> other` as an index map, if one exists.
    pub fn find_isomorphism(&self, other: &GroupTable) -> Result<Option<Vec<usize>>, GroupError> {
        for g in [self, other] {
            if g.order() > MAX_ISOMORPHISM_ORDER {
                return Err(GroupError::SizeLimit { size: g.order(), limit: MAX_ISOMORPHISM_ORDER });
            }
        }
        if self.order() != other.order() || self.order_profile() != other.order_profile() {
            return Ok(None);
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        Ok(self.extend_images(other, &gens, &mut images))
    }

    fn extend_images(&self, other: &GroupTable, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.homomorphism_from(other, gens, images);
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for y in other.elements() {
            if other.element_order(y) != ord {
                continue;
            }
            images.push(y);
            if let Some(map) = self.extend_images(other, gens, images) {
                return Some(map);
            }
            images.pop();
        }
        None
    }

    /// Extends generator images along words; `None` if inconsistent or not bijective.
    fn homomorphism_from(&self, other: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let hit: BTreeSet<usize> = map.iter().copied().collect();
        if hit.len() != other.order() || hit.contains(&usize::MAX) {
            return None;
        }
        let preserves =
            self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        preserves.then_some(map)
    }

    pub fn is_isomorphic(&self, other: &GroupTable) -> Result<bool, GroupError> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            elements: self.labels.clone(),
            identity: self.labels[self.identity].clone(),
            table: self
                .elements()
                .map(|a| self.elements().map(|b| self.labels[self.mul(a, b)].clone()).collect())
                .collect(),
        }
    }
}

/// Exchange format: `{"elements": [...], "identity": label, "table": [[label]]}`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

impl TryFrom<GroupFile> for GroupTable {
    type Error = GroupError;

    fn try_from(f: GroupFile) -> Result<Self, GroupError> {
        let index: HashMap<&str, usize> = f.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| GroupError::UnknownElement(l.to_string()));
        let rows = f
            .table
            .iter()
            .map(|r| r.iter().map(|l| look(l)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let identity = look(&f.identity)?;
        GroupTable::from_table(f.elements.clone(), rows, identity)
    }
}

impl Serialize for GroupTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        GroupTable::try_from(GroupFile::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}
