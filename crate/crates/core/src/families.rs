//! Constructors for the standard families of fusion rings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::groups::{GroupError, GroupFile, GroupTable};
use crate::ring::{validate, Axiom, FusionRing, RingError};
use crate::structure::{self, adjoint_subring, restrict, StructureError};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("construction requires an abelian group")]
    UnsupportedNonabelian,
    #[error("result is not associative, witness {0:?}")]
    NotAssociative(Vec<String>),
    #[error("constructed ring fails {axiom}: {detail}")]
    InvalidRing { axiom: &'static str, detail: String },
    #[error("post-construction check failed: {0}")]
    AssertionFailure(String),
    #[error("bad family parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Rejects a freshly built ring unless every axiom holds.
fn checked(ring: FusionRing) -> Result<FusionRing, FamilyError> {
    let report = validate(&ring);
    if let Some(fail) = report.failures().next() {
        let witness = fail.witness.clone().unwrap_or_default();
        if fail.axiom == Axiom::Associativity {
            return Err(FamilyError::NotAssociative(witness));
        }
        return Err(FamilyError::InvalidRing {
            axiom: fail.axiom.name(),
            detail: fail.detail.clone().unwrap_or_default(),
        });
    }
    Ok(ring)
}

/// The group ring of `G`.
pub fn pointed(g: &GroupTable) -> Result<FusionRing, FamilyError> {
    let constants = g.elements().flat_map(|a| g.elements().map(move |b| (a, b, g.mul(a, b), 1)));
    let dual = g.elements().map(|a| g.inverse(a)).collect();
    checked(FusionRing::new("pointed", g.labels().to_vec(), g.identity(), dual, constants)?)
}

/// `G ∪ {X}` with `X ⊗ X = Σ g + κ X`.
pub fn near_group(g: &GroupTable, kappa: u32) -> Result<FusionRing, FamilyError> {
    let n = g.order();
    let x = n;
    let mut labels = g.labels().to_vec();
    if labels.iter().any(|l| l == "X") {
        return Err(FamilyError::BadParameter("group label X collides with the non-invertible simple".into()));
    }
    labels.push("X".into());
    let mut constants: Vec<(usize, usize, usize, u32)> =
        g.elements().flat_map(|a| g.elements().map(move |b| (a, b, g.mul(a, b), 1))).collect();
    for a in g.elements() {
        constants.push((a, x, x, 1));
        constants.push((x, a, x, 1));
        constants.push((x, x, a, 1));
    }
    constants.push((x, x, x, kappa));
    let mut dual: Vec<usize> = g.elements().map(|a| g.inverse(a)).collect();
    dual.push(x);
    checked(FusionRing::new("near_group", labels, g.identity(), dual, constants)?)
}

pub fn tambara_yamagami(g: &GroupTable) -> Result<FusionRing, FamilyError> {
    Ok(near_group(g, 0)?.with_name("tambara_yamagami"))
}

/// Generalized Tambara–Yamagami ring over abelian `G` with stabilizer `Γ` and twist `u`.
///
/// Basis: `G`, then one `X_s` per coset `s ∈ G/Γ` (labelled by its least
/// element). Rules: `g ⊗ X_s = X_s ⊗ g = X_{gs}` and `X_s ⊗ X_t` is the sum of
/// the coset `s·t·u`.
pub fn gty(g: &GroupTable, gamma_gens: &[usize], twist: usize) -> Result<FusionRing, FamilyError> {
    if !g.is_abelian() {
        return Err(FamilyError::UnsupportedNonabelian);
    }
    if twist >= g.order() {
        return Err(GroupError::UnknownElement(twist.to_string()).into());
    }
    let gamma = g.subgroup_generated(gamma_gens)?;
    let (q, proj) = g.quotient(&gamma)?;
    let cosets = g.cosets(&gamma);
    let n = g.order();
    let x = |s: usize| n + s;
    let mut labels = g.labels().to_vec();
    labels.extend(cosets.iter().map(|c| format!("X_{}", g.label(c[0]))));
    let u = proj[twist];
    let mut constants = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            constants.push((a, b, g.mul(a, b), 1));
        }
        for s in q.elements() {
            let gs = q.mul(proj[a], s);
            constants.push((a, x(s), x(gs), 1));
            constants.push((x(s), a, x(gs), 1));
        }
    }
    for s in q.elements() {
        for t in q.elements() {
            for &h in &cosets[q.mul(q.mul(s, t), u)] {
                constants.push((x(s), x(t), h, 1));
            }
        }
    }
    let mut dual: Vec<usize> = g.elements().map(|a| g.inverse(a)).collect();
    dual.extend(q.elements().map(|s| x(q.mul(q.inverse(s), q.inverse(u)))));
    let ring = FusionRing::new("gty", labels, g.identity(), dual, constants)?;
    checked(ring).map_err(|e| match e {
        FamilyError::NotAssociative(w) => {
            FamilyError::AssertionFailure(format!("abelian GTY ring not associative at {w:?}"))
        }
        other => other,
    })
}

/// `X ⊗ X = 1 + X`.
pub fn fibonacci() -> FusionRing {
    FusionRing::new(
        "fibonacci",
        vec!["1".into(), "X".into()],
        0,
        vec![0, 1],
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
    )
    .expect("well-formed")
}

/// Extension of the Fibonacci ring by `G`: simples `d_g` and `Y_g` with
/// `Y_g ⊗ Y_h = d_gh + Y_gh` and `d_g ⊗ Y_h = Y_gh`, `Y_h ⊗ d_g = Y_hg`.
pub fn fib_extension(g: &GroupTable) -> Result<FusionRing, FamilyError> {
    let n = g.order();
    let y = |a: usize| n + a;
    let mut labels: Vec<String> = g.labels().iter().map(|l| format!("d_{l}")).collect();
    labels.extend(g.labels().iter().map(|l| format!("Y_{l}")));
    let mut constants = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            constants.push((a, b, ab, 1));
            constants.push((a, y(b), y(ab), 1));
            constants.push((y(a), b, y(ab), 1));
            constants.push((y(a), y(b), ab, 1));
            constants.push((y(a), y(b), y(ab), 1));
        }
    }
    let dual: Vec<usize> = (0..2 * n).map(|i| if i < n { g.inverse(i) } else { y(g.inverse(i - n)) }).collect();
    checked(FusionRing::new("fib_extension", labels, g.identity(), dual, constants)?)
}

/// Verlinde truncation for `SU(2)_k`; labels are twice the spin, `0..=k`.
pub fn su2_level(k: u32) -> Result<FusionRing, FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadParameter("level must be at least 1".into()));
    }
    let k = k as usize;
    let mut constants = Vec::new();
    for a in 0..=k {
        for b in 0..=k {
            let hi = (a + b).min(2 * k - a - b);
            let mut c = a.abs_diff(b);
            while c <= hi {
                constants.push((a, b, c, 1));
                c += 2;
            }
        }
    }
    let labels = (0..=k).map(|a| a.to_string()).collect();
    checked(FusionRing::new(format!("su2_level({k})"), labels, 0, (0..=k).collect(), constants)?)
}

/// The adjoint subring as a standalone ring.
pub fn adjoint_extract(ring: &FusionRing) -> Result<FusionRing, FamilyError> {
    let ad = adjoint_subring(ring);
    Ok(restrict(ring, &ad, format!("adjoint({})", ring.name()))?)
}

/// Rank 4: `1, delta, X, Y` with `delta ⊗ X = Y`, `X ⊗ X = Y ⊗ Y = 1 + X + Y`
/// and `X ⊗ Y = delta + X + Y`.
pub fn psu2_6() -> FusionRing {
    let (one, delta, x, y) = (0, 1, 2, 3);
    let mut constants = Vec::new();
    for a in 0..4 {
        constants.push((one, a, a, 1));
        if a != one {
            constants.push((a, one, a, 1));
        }
    }
    constants.extend([(delta, delta, one, 1), (delta, x, y, 1), (delta, y, x, 1), (x, delta, y, 1), (y, delta, x, 1)]);
    for (a, b, g) in [(x, x, one), (y, y, one), (x, y, delta), (y, x, delta)] {
        constants.extend([(a, b, g, 1), (a, b, x, 1), (a, b, y, 1)]);
    }
    let labels = ["1", "delta", "X", "Y"].map(String::from).to_vec();
    FusionRing::new("psu2_6", labels, one, vec![0, 1, 2, 3], constants).expect("well-formed")
}

/// `N`-Ising ring: GTY over `Z_2 × Z_{2^{N-1}}` with `Γ` the first factor and
/// twist the generator of the second.
pub fn n_ising(n: u32) -> Result<FusionRing, FamilyError> {
    if !(1..=16).contains(&n) {
        return Err(FamilyError::BadParameter(format!("N = {n} outside 1..=16")));
    }
    let half = 1usize << (n - 1);
    let g = GroupTable::direct_product(&GroupTable::cyclic(2)?, &GroupTable::cyclic(half)?);
    let gamma = g.index_of("(1,0)")?;
    let twist = g.index_of(&format!("(0,{})", 1 % half))?;
    let ring = gty(&g, &[gamma], twist)?.with_name(format!("n_ising({n})"));

    let fail = |msg: String| Err(FamilyError::AssertionFailure(msg));
    let inv = structure::invertibles(&ring)?;
    if !inv.group.is_isomorphic(&g)? {
        return fail("invertibles are not Z2 x Z_{2^(N-1)}".into());
    }
    let non_inv: Vec<usize> = ring.basis().filter(|&i| !ring.is_invertible(i)).collect();
    if non_inv.len() != half {
        return fail(format!("{} non-invertible simples, expected {half}", non_inv.len()));
    }
    let sqrt2 = crate::exactreal::QuadraticReal::sqrt(2);
    for &i in &non_inv {
        if ring.fpdim_simple(i)?.exact() != Some(&sqrt2) {
            return fail(format!("FPdim({}) is not sqrt(2)", ring.label(i)));
        }
    }
    let grading = structure::universal_grading(&ring)?;
    if grading.group.order() != 2 * half || !grading.group.is_cyclic() {
        return fail(format!("universal grading group of order {} is not Z_{}", grading.group.order(), 2 * half));
    }
    let self_dual = non_inv.iter().any(|&i| ring.dual(i) == i);
    if self_dual != (n == 1) {
        return fail(format!("self-dual non-invertible present: {self_dual}"));
    }
    Ok(ring)
}

/// Componentwise product; basis elements are labelled `(a,b)`.
pub fn deligne_product(a: &FusionRing, b: &FusionRing) -> Result<FusionRing, FamilyError> {
    let rb = b.rank();
    let idx = |i: usize, j: usize| i * rb + j;
    let labels = a.basis().flat_map(|i| b.basis().map(move |j| format!("({},{})", a.label(i), b.label(j)))).collect();
    let dual = a.basis().flat_map(|i| b.basis().map(move |j| idx(a.dual(i), b.dual(j)))).collect();
    let mut constants = Vec::new();
    for i1 in a.basis() {
        for j1 in a.basis() {
            for &(k1, m1) in a.product(i1, j1) {
                for i2 in b.basis() {
                    for j2 in b.basis() {
                        for &(k2, m2) in b.product(i2, j2) {
                            constants.push((idx(i1, i2), idx(j1, j2), idx(k1, k2), m1 * m2));
                        }
                    }
                }
            }
        }
    }
    let name = format!("product({},{})", a.name(), b.name());
    checked(FusionRing::new(name, labels, idx(a.unit(), b.unit()), dual, constants)?)
}

/// A finite group named by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Product { factors: Vec<GroupSpec> },
    Table { elements: Vec<String>, identity: String, table: Vec<Vec<String>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupTable, GroupError> {
        match self {
            GroupSpec::Cyclic { n } => GroupTable::cyclic(*n),
            GroupSpec::Symmetric { n } => GroupTable::symmetric(*n),
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or(GroupError::Empty)?.build()?;
                it.try_fold(first, |acc, f| Ok(GroupTable::direct_product(&acc, &f.build()?)))
            }
            GroupSpec::Table { elements, identity, table } => GroupTable::try_from(GroupFile {
                elements: elements.clone(),
                identity: identity.clone(),
                table: table.clone(),
            }),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { n } => write!(f, "Z{n}"),
            GroupSpec::Symmetric { n } => write!(f, "S{n}"),
            GroupSpec::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Table { elements, .. } => write!(f, "table[{}]", elements.len()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = FamilyError;

    /// `Z3`, `S3`, `Z2xZ4`, `trivial`.
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(GroupSpec::Cyclic { n: 1 });
        }
        let parts: Vec<&str> = s.split('x').collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| p.parse()).collect::<Result<Vec<_>, _>>()?;
            return Ok(GroupSpec::Product { factors });
        }
        let bad = || FamilyError::BadParameter(format!("unknown group {s:?}"));
        let (head, n) = s.split_at(1.min(s.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match head {
            "Z" if n >= 1 => Ok(GroupSpec::Cyclic { n }),
            "S" if (1..=5).contains(&n) => Ok(GroupSpec::Symmetric { n }),
            _ => Err(bad()),
        }
    }
}

/// A request to build one family member.
///
/// JSON form: `{"family": "fib_extension", "group": {"type": "cyclic", "n": 3}}`.
/// Shorthand form: `fib_extension(Z3)`, `near_group(Z2,1)`, `gty(Z4,2,0)`,
/// `product(fibonacci,pointed(Z5))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Pointed {
        group: GroupSpec,
    },
    TambaraYamagami {
        group: GroupSpec,
    },
    NearGroup {
        group: GroupSpec,
        kappa: u32,
    },
    /// `gamma` lists generator labels of `Γ`; `twist` is any element of the twist coset.
    Gty {
        group: GroupSpec,
        gamma: Vec<String>,
        twist: String,
    },
    Fibonacci,
    FibExtension {
        group: GroupSpec,
    },
    Su2Level {
        k: u32,
    },
    #[serde(rename = "psu2_6")]
    Psu26,
    NIsing {
        n: u32,
    },
    Adjoint {
        of: Box<FamilySpec>,
    },
    Product {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<FusionRing, FamilyError> {
        let ring = match self {
            FamilySpec::Pointed { group } => pointed(&group.build()?)?,
            FamilySpec::TambaraYamagami { group } => tambara_yamagami(&group.build()?)?,
            FamilySpec::NearGroup { group, kappa } => near_group(&group.build()?, *kappa)?,
            FamilySpec::Gty { group, gamma, twist } => {
                let g = group.build()?;
                let gens = gamma.iter().map(|l| g.index_of(l)).collect::<Result<Vec<_>, _>>()?;
                gty(&g, &gens, g.index_of(twist)?)?
            }
            FamilySpec::Fibonacci => fibonacci(),
            FamilySpec::FibExtension { group } => fib_extension(&group.build()?)?,
            FamilySpec::Su2Level { k } => su2_level(*k)?,
            FamilySpec::Psu26 => psu2_6(),
            FamilySpec::NIsing { n } => n_ising(*n)?,
            FamilySpec::Adjoint { of } => adjoint_extract(&of.build()?)?,
            FamilySpec::Product { left, right } => deligne_product(&left.build()?, &right.build()?)?,
        };
        Ok(ring.with_name(self.to_string()))
    }

    /// Reads either the JSON form or the shorthand form.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let t = text.trim();
        if t.starts_with('{') {
            serde_json::from_str(t).map_err(|e| FamilyError::BadParameter(e.to_string()))
        } else {
            t.parse()
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Pointed { group } => write!(f, "pointed({group})"),
            FamilySpec::TambaraYamagami { group } => write!(f, "tambara_yamagami({group})"),
            FamilySpec::NearGroup { group, kappa } => write!(f, "near_group({group},{kappa})"),
            FamilySpec::Gty { group, gamma, twist } => write!(f, "gty({group},{},{twist})", gamma.join("+")),
            FamilySpec::Fibonacci => f.write_str("fibonacci"),
            FamilySpec::FibExtension { group } => write!(f, "fib_extension({group})"),
            FamilySpec::Su2Level { k } => write!(f, "su2_level({k})"),
            FamilySpec::Psu26 => f.write_str("psu2_6"),
            FamilySpec::NIsing { n } => write!(f, "n_ising({n})"),
            FamilySpec::Adjoint { of } => write!(f, "adjoint({of})"),
            FamilySpec::Product { left, right } => write!(f, "product({left},{right})"),
        }
    }
}

/// Splits `a,(b,c),d` at top-level commas.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let bad = |msg: &str| FamilyError::BadParameter(format!("{msg}: {s:?}"));
        let (head, args) = match s.find('(') {
            Some(open) if s.ends_with(')') => (&s[..open], split_args(&s[open + 1..s.len() - 1])),
            Some(_) => return Err(bad("unbalanced parentheses")),
            None => (s, Vec::new()),
        };
        let int = |a: &str| a.parse::<u32>().map_err(|_| bad("expected an integer"));
        let one_group = |args: &[&str]| match args {
            [g] => g.parse::<GroupSpec>(),
            _ => Err(bad("expected one group argument")),
        };
        Ok(match (head, args.as_slice()) {
            ("fibonacci", []) => FamilySpec::Fibonacci,
            ("psu2_6", []) => FamilySpec::Psu26,
            ("pointed", a) => FamilySpec::Pointed { group: one_group(a)? },
            ("tambara_yamagami" | "ty", a) => FamilySpec::TambaraYamagami { group: one_group(a)? },
            ("fib_extension", a) => FamilySpec::FibExtension { group: one_group(a)? },
            ("near_group", [g, k]) => FamilySpec::NearGroup { group: g.parse()?, kappa: int(k)? },
            ("gty", [g, gamma, twist]) => FamilySpec::Gty {
                group: g.parse()?,
                gamma: gamma.split('+').map(|x| x.trim().to_string()).collect(),
                twist: twist.to_string(),
            },
            ("su2_level", [k]) => FamilySpec::Su2Level { k: int(k)? },
            ("n_ising", [n]) => FamilySpec::NIsing { n: int(n)? },
            ("adjoint", [of]) => FamilySpec::Adjoint { of: Box::new(of.parse()?) },
            ("product", [l, r]) => FamilySpec::Product { left: Box::new(l.parse()?), right: Box::new(r.parse()?) },
            _ => return Err(bad("unknown family")),
        })
    }
}
