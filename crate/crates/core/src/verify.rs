//! The verification suite: every structural check over a corpus of rings,
//! plus the ring-independent searches.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{self, CheckReport, ClassifyError};
use crate::corpus::CorpusEntry;
use crate::exactreal::RealValue;
use crate::families;
use crate::ring::{find_isomorphism, validate, FusionRing};
use crate::structure;

/// Check identifiers accepted by `--only`, in execution order.
pub const CHECK_IDS: &[&str] = &[
    "axioms",
    "fpdims",
    "grading",
    "stabilizers",
    "rank-dimension",
    "structure-theorem",
    "fib-extension",
    "exact-factorization",
    "gty-detectors",
    "gty-grading",
    "cosine-search",
    "multiplicity-bound",
    "verlinde",
];

/// Legacy spellings accepted by `--only`, mapped to their check id.
pub const CHECK_ALIASES: &[(&str, &str)] = &[("thm4.5", "exact-factorization")];

const GLOBAL_CHECKS: &[&str] = &["cosine-search", "multiplicity-bound", "verlinde"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub check: String,
    pub subject: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub details: serde_json::Map<String, Value>,
}

impl Entry {
    fn from_report(subject: &str, r: CheckReport) -> Self {
        let status = if r.pass { Status::Pass } else { Status::Fail };
        Entry { check: r.check, subject: subject.to_string(), status, witness: r.witness, details: r.details }
    }

    fn error(check: &str, subject: &str, err: impl ToString) -> Self {
        Entry {
            check: check.to_string(),
            subject: subject.to_string(),
            status: Status::Fail,
            witness: Some(json!({"error": err.to_string()})),
            details: Default::default(),
        }
    }

    fn skip(check: &str, subject: &str, why: &str) -> Self {
        let mut details = serde_json::Map::new();
        details.insert("reason".into(), json!(why));
        Entry { check: check.to_string(), subject: subject.to_string(), status: Status::Skip, witness: None, details }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub corpus: String,
    pub rings: usize,
    pub summary: Summary,
    pub failures: Vec<String>,
    pub results: Vec<Entry>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// Canonical JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Restrict to these check ids; empty means all.
    pub only: Vec<String>,
    /// Worker threads for the per-ring fan-out; `None` or 1 runs on the caller.
    pub jobs: Option<usize>,
}

impl Options {
    fn wants(&self, id: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|o| o == id)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

fn wrap(check: &str, subject: &str, r: Result<CheckReport, ClassifyError>) -> Entry {
    match r {
        Ok(mut report) => {
            report.check = check.to_string();
            Entry::from_report(subject, report)
        }
        Err(e) => Entry::error(check, subject, e),
    }
}

/// `d_i d_j = Σ_k N_ij^k d_k` for every pair of simples.
fn fpdim_character(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let dims = ring.fpdims()?;
    let mut report = CheckReport::new("fpdims");
    for i in ring.basis() {
        for j in ring.basis() {
            let lhs = dims[i].mul(&dims[j]);
            let terms: Vec<RealValue> = ring.product(i, j).iter().map(|&(k, m)| dims[k].scale(i64::from(m))).collect();
            let rhs = RealValue::sum(&terms);
            report.require(
                classify::same_real(&lhs, &rhs),
                || json!({"i": ring.label(i), "j": ring.label(j), "lhs": lhs, "rhs": rhs}),
            );
        }
    }
    let exact = dims.iter().filter(|d| d.is_exact()).count();
    Ok(report.detail("dims", &dims).detail("exact", exact).detail("fpdim", ring.fpdim_ring()?))
}

/// Universal grading: trivial component is the adjoint subring, components
/// have equal dimension and `FPdim(C) = |U| FPdim(C_ad)`.
fn grading_check(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let g = structure::universal_grading(ring)?;
    let ad = structure::adjoint_subring(ring);
    let dims = structure::graded_component_dims(&g, ring)?;
    let mut report = CheckReport::new("grading");
    report.require(g.components[g.trivial] == ad.members(), || json!({"trivial_component": g.components[g.trivial]}));
    report.require(dims.iter().all(|d| classify::same_real(d, &dims[0])), || json!({"component_dims": dims}));
    let total = ring.fpdim_ring()?;
    let predicted = dims[g.trivial].scale(g.group.order() as i64);
    report.require(classify::same_real(&total, &predicted), || json!({"fpdim": total, "predicted": predicted}));
    Ok(report
        .detail("order", g.group.order())
        .detail("abelian", g.group.is_abelian())
        .detail("component_dim", &dims[g.trivial])
        .detail("adjoint", ad.labels(ring)))
}

/// Stabilizers conjugate along the action, and invertible summands of
/// `X ⊗ X*` have multiplicity one.
fn stabilizer_check(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let act = structure::action(ring)?;
    let grp = &act.invertibles.group;
    let mut report = CheckReport::new("stabilizers");
    for a in grp.elements() {
        for i in ring.basis() {
            let moved = act.act[a][i];
            let mut conj: Vec<usize> =
                act.stabilizers[i].members().iter().map(|&s| grp.mul(grp.mul(a, s), grp.inverse(a))).collect();
            conj.sort_unstable();
            report.require(
                conj == act.stabilizers[moved].members(),
                || json!({"g": grp.label(a), "simple": ring.label(i)}),
            );
        }
    }
    for i in ring.basis() {
        let sd = ring.self_decomp(i);
        for &b in &act.invertibles.embedding {
            report.require(sd.mult(b) <= 1, || json!({"simple": ring.label(i), "invertible": ring.label(b)}));
        }
    }
    Ok(report.detail("orbits", act.orbits.len()).detail("invertibles", grp.order()))
}

fn gty_detectors(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let a = classify::gty_by_kvec(ring)?;
    let b = classify::gty_by_grading(ring)?;
    let mut report = CheckReport::new("gty-detectors");
    report.require(a == b, || json!({"kvec": a, "grading": b}));
    Ok(report.detail("gty", a))
}

fn factorization_check(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    let f = classify::fibonacci_component(ring)?;
    let pt = structure::pointed_subring(ring);
    let ok = classify::exact_factorization(ring, &f, &pt);
    let mut report = CheckReport::new("exact-factorization");
    report.require(ok, || json!({"fibonacci": f.labels(ring), "pointed": pt.labels(ring)}));
    Ok(report.detail("fibonacci_rank", f.rank()).detail("pointed_rank", pt.rank()))
}

/// All applicable checks for one corpus entry.
fn ring_checks(entry: &CorpusEntry, opts: &Options) -> Vec<Entry> {
    let name = entry.name.as_str();
    let ring = match &entry.ring {
        Ok(r) => r,
        Err(e) => return vec![Entry::error("load", name, e)],
    };
    let mut out = Vec::new();
    let report = validate(ring);
    if opts.wants("axioms") {
        let mut r = CheckReport::new("axioms");
        if let Some(f) = report.failures().next() {
            r.require(false, || json!({"axiom": f.axiom.name(), "indices": f.witness, "detail": f.detail}));
        }
        out.push(Entry::from_report(name, r.detail("rank", ring.rank()).detail("nonzero", ring.nonzero_count())));
    }
    let dependent: Vec<&str> =
        CHECK_IDS.iter().copied().filter(|c| *c != "axioms" && !GLOBAL_CHECKS.contains(c) && opts.wants(c)).collect();
    if !report.pass {
        out.extend(dependent.iter().map(|c| Entry::skip(c, name, "ring fails the fusion axioms")));
        return out;
    }

    let pointed = ring.basis().all(|i| ring.is_invertible(i));
    let gng_type = if pointed { None } else { classify::gng_type(ring).ok() };
    let fib = classify::fibonacci_component(ring).is_ok();
    let gty = classify::is_gty(ring).unwrap_or(false);
    for check in dependent {
        let entry = match check {
            "fpdims" => wrap(check, name, fpdim_character(ring)),
            "grading" => wrap(check, name, grading_check(ring)),
            "stabilizers" => wrap(check, name, stabilizer_check(ring)),
            "rank-dimension" => match &gng_type {
                Some(t) => wrap(check, name, classify::check_rank_dim(ring, t)),
                None => Entry::skip(check, name, "not a generalized near-group ring"),
            },
            "structure-theorem" => match &gng_type {
                Some(t) if !t.kvec_is_zero() => wrap(check, name, classify::check_structure_theorem(ring)),
                _ => Entry::skip(check, name, "needs a generalized near-group ring with nonzero k-vector"),
            },
            "fib-extension" if fib => wrap(check, name, classify::classify_fib_extension(ring)),
            "exact-factorization" if fib => wrap(check, name, factorization_check(ring)),
            "fib-extension" | "exact-factorization" => Entry::skip(check, name, "adjoint subring is not Fibonacci"),
            "gty-detectors" => wrap(check, name, gty_detectors(ring)),
            "gty-grading" if gty => wrap(check, name, classify::check_gty_grading(ring)),
            "gty-grading" => Entry::skip(check, name, "not a generalized Tambara-Yamagami ring"),
            other => unreachable!("unhandled check {other}"),
        };
        out.push(entry);
    }
    out
}

fn global_checks(opts: &Options) -> Vec<Entry> {
    let mut out = Vec::new();
    if opts.wants("cosine-search") {
        for bound in [10u32, 25, 50] {
            let subject = format!("bound={bound}");
            let r = classify::lemma41_search(bound).map(|res| {
                let mut r = CheckReport::new("cosine-search");
                let ok = res.pairs == [[3, 5]] && res.triples.is_empty();
                r.require(ok, || json!(res));
                r.detail("pairs", &res.pairs).detail("triples", &res.triples)
            });
            out.push(wrap("cosine-search", &subject, r));
        }
    }
    if opts.wants("multiplicity-bound") {
        let sweep = classify::multiplicity_sweep(128);
        let mut r = CheckReport::new("multiplicity-bound");
        r.require(sweep.violations.is_empty(), || json!({"violations": sweep.violations}));
        r.require(sweep.equality_witnesses.contains(&vec![2, 2]), || json!({"missing_equality": [2, 2]}));
        let r = r
            .detail("vectors_checked", sweep.vectors_checked)
            .detail("equality_witnesses", sweep.equality_witnesses.len());
        out.push(Entry::from_report("max_square_sum=128", r));
    }
    if opts.wants("verlinde") {
        let r = families::su2_level(6).and_then(|s| families::adjoint_extract(&s)).map(|ad| {
            let iso = find_isomorphism(&ad, &families::psu2_6());
            let mut r = CheckReport::new("verlinde");
            r.require(iso.is_some(), || json!({"adjoint_rank": ad.rank()}));
            let map: Option<Vec<(String, String)>> = iso.map(|m| {
                m.iter()
                    .enumerate()
                    .map(|(i, &j)| (ad.label(i).to_string(), families::psu2_6().label(j).to_string()))
                    .collect()
            });
            r.detail("map", map)
        });
        out.push(match r {
            Ok(report) => Entry::from_report("adjoint(su2_level(6)) vs psu2_6", report),
            Err(e) => Entry::error("verlinde", "adjoint(su2_level(6)) vs psu2_6", e),
        });
    }
    out
}

/// Runs the suite over `entries`. Results are ordered by ring name, then by
/// check id order, with the ring-independent checks last.
pub fn run(corpus: &str, entries: &[CorpusEntry], opts: &Options) -> Result<SuiteReport, VerifyError> {
    let mut only = Vec::with_capacity(opts.only.len());
    for o in &opts.only {
        let id = CHECK_ALIASES.iter().find(|(alias, _)| alias == o).map_or(o.as_str(), |(_, id)| id);
        if !CHECK_IDS.contains(&id) {
            return Err(VerifyError::UnknownCheck(o.clone()));
        }
        only.push(id.to_string());
    }
    let opts = &Options { only, jobs: opts.jobs };
    let mut sorted: Vec<&CorpusEntry> = entries.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let per_ring: Vec<Vec<Entry>> = match opts.jobs {
        Some(n) if n > 1 => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| VerifyError::Pool(e.to_string()))?;
            pool.install(|| sorted.par_iter().map(|e| ring_checks(e, opts)).collect())
        }
        _ => sorted.iter().map(|e| ring_checks(e, opts)).collect(),
    };
    let mut results: Vec<Entry> = per_ring.into_iter().flatten().collect();
    results.extend(global_checks(opts));
    let count = |s: Status| results.iter().filter(|e| e.status == s).count();
    let summary = Summary {
        total: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
    };
    let failures =
        results.iter().filter(|e| e.status == Status::Fail).map(|e| format!("{}:{}", e.check, e.subject)).collect();
    Ok(SuiteReport { corpus: corpus.to_string(), rings: entries.len(), summary, failures, results })
}
