use std::collections::BTreeMap;

/// A finite direct sum of simples: basis index -> multiplicity.
///
/// Zero multiplicities are never stored, so equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectVec(BTreeMap<usize, u64>);

impl ObjectVec {
    pub fn zero() -> Self {
        ObjectVec(BTreeMap::new())
    }

    pub fn simple(i: usize) -> Self {
        ObjectVec(BTreeMap::from([(i, 1)]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn add_simple(&mut self, i: usize, m: u64) {
        if m > 0 {
            *self.0.entry(i).or_insert(0) += m;
        }
    }

    pub fn add(&self, other: &ObjectVec) -> ObjectVec {
        let mut out = self.clone();
        for (i, m) in other.iter() {
            out.add_simple(i, m);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(&i, &m)| (i, m))
    }

    /// Basis indices with nonzero multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    /// Number of simple summands counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.values().sum()
    }

    /// A single simple with multiplicity one?
    pub fn as_simple(&self) -> Option<usize> {
        match self.0.iter().next() {
            Some((&i, &1)) if self.0.len() == 1 => Some(i),
            _ => None,
        }
    }
}

impl FromIterator<(usize, u64)> for ObjectVec {
    fn from_iter<T: IntoIterator<Item = (usize, u64)>>(iter: T) -> Self {
        let mut v = ObjectVec::zero();
        for (i, m) in iter {
            v.add_simple(i, m);
        }
        v
    }
}
