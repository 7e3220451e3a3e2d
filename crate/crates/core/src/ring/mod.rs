//! Fusion rings: a distinguished basis with unit, duality and non-negative
//! structure constants `N_ij^k`, where `X_i ⊗ X_j = Σ_k N_ij^k X_k`.

mod io;
mod object;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::exactreal::{perron_root, ExactError, RealValue};

pub use io::RingFile;
pub use object::ObjectVec;
pub use validate::{validate, validate_with, Axiom, AxiomResult, ValidateMode, ValidationReport};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RingError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("dual map must assign exactly one dual to every basis element")]
    BadDual,
    #[error("structure constant ({0}, {1}, {2}) given twice")]
    DuplicateConstant(String, String, String),
    #[error("ring file: {0}")]
    Format(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A based ring with non-negative integer structure constants.
///
/// Constants are stored sparsely: only `(i, j, k)` with `N_ij^k >= 1` are
/// kept, grouped per ordered pair `(i, j)` and sorted by `k`. The groups sit
/// back to back in one array, with `offsets[i * rank + j]` marking where the
/// row of `(i, j)` starts.
#[derive(Clone)]
pub struct FusionRing {
    name: String,
    labels: Arc<[String]>,
    unit: usize,
    dual: Vec<usize>,
    entries: Vec<(usize, u32)>,
    offsets: Vec<usize>,
    fpdims: OnceLock<Result<Vec<RealValue>, ExactError>>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRing")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("unit", &self.unit)
            .field("dual", &self.dual)
            .field("nonzero", &self.nonzero_count())
            .finish()
    }
}

impl PartialEq for FusionRing {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.labels == other.labels
            && self.unit == other.unit
            && self.dual == other.dual
            && self.offsets == other.offsets
            && self.entries == other.entries
    }
}

impl FusionRing {
    /// Builds a ring from index triples `(i, j, k, m)`. Zero multiplicities are dropped.
    ///
    /// Only structural well-formedness is checked here; the fusion axioms are
    /// the job of [`validate`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        constants: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self, RingError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(RingError::EmptyBasis);
        }
        let mut seen = HashMap::with_capacity(rank);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(RingError::DuplicateLabel(l.clone()));
            }
        }
        let check = |index: usize| {
            if index < rank {
                Ok(index)
            } else {
                Err(RingError::IndexOutOfRange { index, rank })
            }
        };
        check(unit)?;
        if dual.len() != rank {
            return Err(RingError::BadDual);
        }
        for &d in &dual {
            check(d)?;
        }
        let mut sorted = BTreeMap::new();
        for (i, j, k, m) in constants {
            check(i)?;
            check(j)?;
            check(k)?;
            if m == 0 {
                continue;
            }
            if sorted.insert((i, j, k), m).is_some() {
                return Err(RingError::DuplicateConstant(labels[i].clone(), labels[j].clone(), labels[k].clone()));
            }
        }
        let mut offsets = vec![0; rank * rank + 1];
        let mut entries = Vec::with_capacity(sorted.len());
        for ((i, j, k), m) in sorted {
            offsets[i * rank + j + 1] += 1;
            entries.push((k, m));
        }
        for p in 1..offsets.len() {
            offsets[p] += offsets[p - 1];
        }
        Ok(FusionRing {
            name: name.into(),
            labels: labels.into(),
            unit,
            dual,
            entries,
            offsets,
            fpdims: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn basis(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    /// Sparse product `X_i ⊗ X_j` as `(k, N_ij^k)` pairs sorted by `k`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        let p = i * self.rank() + j;
        &self.entries[self.offsets[p]..self.offsets[p + 1]]
    }

    /// `N_ij^k`, zero when absent.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let row = self.product(i, j);
        row.binary_search_by_key(&k, |&(c, _)| c).map_or(0, |p| row[p].1)
    }

    /// All nonzero constants in lexicographic `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let r = self.rank();
        (0..r * r).flat_map(move |p| self.product(p / r, p % r).iter().map(move |&(k, m)| (p / r, p % r, k, m)))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Same ring with one constant replaced; used for fault injection.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, m: u32) -> Result<Self, RingError> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        let p = i * self.rank() + j;
        let start = self.offsets[p];
        let mut entries = self.entries.clone();
        let mut offsets = self.offsets.clone();
        let shift = |offsets: &mut [usize], grow: bool| {
            for o in &mut offsets[p + 1..] {
                if grow {
                    *o += 1
                } else {
                    *o -= 1
                }
            }
        };
        match (self.product(i, j).binary_search_by_key(&k, |&(c, _)| c), m) {
            (Ok(pos), 0) => {
                entries.remove(start + pos);
                shift(&mut offsets, false);
            }
            (Ok(pos), m) => entries[start + pos].1 = m,
            (Err(_), 0) => {}
            (Err(pos), m) => {
                entries.insert(start + pos, (k, m));
                shift(&mut offsets, true);
            }
        }
        Ok(FusionRing {
            name: self.name.clone(),
            labels: self.labels.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            entries,
            offsets,
            fpdims: OnceLock::new(),
        })
    }

    fn check_index(&self, i: usize) -> Result<(), RingError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(RingError::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Bilinear extension of the structure constants to arbitrary objects.
    pub fn tensor(&self, u: &ObjectVec, v: &ObjectVec) -> Result<ObjectVec, RingError> {
        for (i, _) in u.iter().chain(v.iter()) {
            self.check_index(i)?;
        }
        let mut out = ObjectVec::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                for &(k, m) in self.product(i, j) {
                    out.add_simple(k, a * b * u64::from(m));
                }
            }
        }
        Ok(out)
    }

    /// `X_i ⊗ X_j` as an object.
    pub fn tensor_simple(&self, i: usize, j: usize) -> ObjectVec {
        self.product(i, j).iter().map(|&(k, m)| (k, u64::from(m))).collect()
    }

    /// `X_i ⊗ X_i*`.
    pub fn self_decomp(&self, i: usize) -> ObjectVec {
        self.tensor_simple(i, self.dual(i))
    }

    /// Multiplicity of the simple `i` in `v`, i.e. `dim Hom(X_i, v)`.
    pub fn hom_mult(&self, i: usize, v: &ObjectVec) -> u64 {
        v.mult(i)
    }

    /// Invertible simples: those with `X ⊗ X* = 1`.
    pub fn is_invertible(&self, i: usize) -> bool {
        let p = self.product(i, self.dual(i));
        p.len() == 1 && p[0] == (self.unit, 1)
    }

    pub fn invertible_indices(&self) -> Vec<usize> {
        self.basis().filter(|&i| self.is_invertible(i)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.basis().all(|i| self.basis().all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Matrix of left multiplication by `X_i`: entry `[k][j] = N_ij^k`.
    #[allow(clippy::needless_range_loop)]
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let r = self.rank();
        let mut m = vec![vec![0u64; r]; r];
        for j in 0..r {
            for &(k, c) in self.product(i, j) {
                m[k][j] = u64::from(c);
            }
        }
        m
    }

    fn fpdims_cached(&self) -> Result<&[RealValue], ExactError> {
        self.fpdims
            .get_or_init(|| self.basis().map(|i| perron_root(&self.left_matrix(i))).collect())
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Frobenius-Perron dimension of `X_i`: the Perron root of its left multiplication matrix.
    pub fn fpdim_simple(&self, i: usize) -> Result<RealValue, RingError> {
        self.check_index(i)?;
        Ok(self.fpdims_cached()?[i].clone())
    }

    pub fn fpdims(&self) -> Result<Vec<RealValue>, RingError> {
        Ok(self.fpdims_cached()?.to_vec())
    }

    /// `Σ_i FPdim(X_i)²`.
    pub fn fpdim_ring(&self) -> Result<RealValue, RingError> {
        let squares: Vec<RealValue> = self.fpdims_cached()?.iter().map(RealValue::square).collect();
        Ok(RealValue::sum(&squares))
    }

    /// FPdim of an arbitrary object.
    pub fn fpdim_object(&self, v: &ObjectVec) -> Result<RealValue, RingError> {
        let dims = self.fpdims_cached()?;
        let terms: Vec<RealValue> = v.iter().map(|(i, m)| dims[i].scale(m as i64)).collect();
        Ok(RealValue::sum(&terms))
    }

    /// Renders an object with this ring's labels, e.g. `1 + X + 2*Y`.
    pub fn format_object(&self, v: &ObjectVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, m)| if m == 1 { self.labels[i].clone() } else { format!("{m}*{}", self.labels[i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn simple(&self, label: &str) -> Result<ObjectVec, RingError> {
        self.index_of(label).map(ObjectVec::simple).ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }
}

/// A constants-preserving bijection `a -> b` between two rings' bases, if one exists.
///
/// Backtracking over candidate images, pruned by dual structure and the
/// multiset shape of each element's self product.
pub fn find_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() || a.nonzero_count() != b.nonzero_count() {
        return None;
    }
    let signature = |ring: &FusionRing, i: usize| {
        let mut sq: Vec<u32> = ring.product(i, i).iter().map(|&(_, m)| m).collect();
        sq.sort_unstable();
        let mut sd: Vec<u32> = ring.self_decomp(i).iter().map(|(_, m)| m as u32).collect();
        sd.sort_unstable();
        (i == ring.unit(), ring.dual(i) == i, sq, sd)
    };
    let sig_a: Vec<_> = a.basis().map(|i| signature(a, i)).collect();
    let sig_b: Vec<_> = b.basis().map(|i| signature(b, i)).collect();
    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];

    fn consistent(a: &FusionRing, b: &FusionRing, map: &[usize], upto: usize) -> bool {
        let x = upto;
        let fx = map[x];
        if map[a.dual(x)] != usize::MAX && map[a.dual(x)] != b.dual(fx) {
            return false;
        }
        for y in 0..=upto {
            let fy = map[y];
            for (p, q, fp, fq) in [(x, y, fx, fy), (y, x, fy, fx)] {
                for &(k, m) in a.product(p, q) {
                    if map[k] != usize::MAX && b.n(fp, fq, map[k]) != m {
                        return false;
                    }
                }
                let assigned = a.product(p, q).iter().filter(|&&(k, _)| map[k] != usize::MAX).count();
                let image_assigned =
                    b.product(fp, fq).iter().filter(|&&(k, _)| map.iter().take(upto + 1).any(|&v| v == k)).count();
                if assigned != image_assigned {
                    return false;
                }
            }
        }
        true
    }

    fn search<S: PartialEq>(
        a: &FusionRing,
        b: &FusionRing,
        sig_a: &[S],
        sig_b: &[S],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        if x == a.rank() {
            // Pruning only sees pairs touching the newest element; confirm the whole table.
            return a.constants().all(|(i, j, k, m)| b.n(map[i], map[j], map[k]) == m);
        }
        for y in 0..b.rank() {
            if used[y] || sig_a[x] != sig_b[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && search(a, b, sig_a, sig_b, map, used, x + 1) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if search(a, b, &sig_a, &sig_b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}
