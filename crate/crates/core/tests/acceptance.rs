//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails or exceeds its time budget.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuskit::classify::{self, category_type, exact_factorization, fibonacci_component};
use fuskit::corpus;
use fuskit::exactreal::{QuadraticReal, RealValue};
use fuskit::families::{self, *};
use fuskit::groups::GroupTable;
use fuskit::ring::{find_isomorphism, validate, validate_with, FusionRing, ValidateMode};
use fuskit::structure;
use fuskit::verify::{self, Options};

type Outcome = Result<String, String>;

/// Id, title, check and optional time budget.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn z(n: usize) -> GroupTable {
    GroupTable::cyclic(n).unwrap()
}

fn fib_groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("Z2", z(2)),
        ("Z3", z(3)),
        ("Z4", z(4)),
        ("Z2xZ2", GroupTable::direct_product(&z(2), &z(2))),
        ("Z6", z(6)),
        ("S3", GroupTable::symmetric(3).unwrap()),
    ]
}

fn q(text: &str) -> RealValue {
    text.parse::<QuadraticReal>().unwrap().into()
}

fn exact_eq(actual: &RealValue, expected: &RealValue, float: f64) -> Result<(), String> {
    ensure!(actual.is_exact(), "{actual} was not recognized exactly");
    ensure!(actual == expected, "{actual} != {expected}");
    ensure!((actual.to_f64() - float).abs() <= 1e-9, "{actual} is not within 1e-9 of {float}");
    Ok(())
}

/// Every mutation of one structure constant: each stored value moved by one
/// in both directions, and each absent triple raised to one.
fn single_constant_faults(ring: &FusionRing) -> Vec<(usize, usize, usize, u32)> {
    let r = ring.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                match ring.n(i, j, k) {
                    0 => out.push((i, j, k, 1)),
                    m => {
                        out.push((i, j, k, m - 1));
                        out.push((i, j, k, m + 1));
                    }
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let rings = corpus::builtin().map_err(err)?;
    ensure!(rings.len() >= 12, "corpus has only {} rings", rings.len());
    let names: BTreeSet<&str> = rings.iter().map(|r| r.name()).collect();
    for required in [
        "fibonacci",
        "tambara_yamagami(Z2)",
        "tambara_yamagami(Z4)",
        "tambara_yamagami(Z8)",
        "near_group(Z2,1)",
        "psu2_6",
        "fib_extension(S3)",
        "n_ising(5)",
        "su2_level(6)",
        "adjoint(su2_level(6))",
    ] {
        ensure!(names.contains(required), "corpus lacks {required}");
    }
    ensure!(names.iter().filter(|n| n.starts_with("product(")).count() >= 3, "fewer than three Deligne products");
    ensure!(names.iter().any(|n| n.starts_with("gty(")), "no gty instance");
    for ring in &rings {
        let report = validate(ring);
        ensure!(report.pass, "{} fails validation: {:?}", ring.name(), report.failures().next());
    }

    let mut injected = 0usize;
    let mut escapes = Vec::new();
    let mut unexplained = Vec::new();
    for ring in &rings {
        for (i, j, k, m) in single_constant_faults(ring) {
            injected += 1;
            let mutated = ring.with_constant(i, j, k, m).map_err(err)?;
            if validate_with(&mutated, ValidateMode::FailFast).pass {
                let fixed = (ring.dual(i), k, j) == (i, j, k) && (k, ring.dual(j), i) == (i, j, k);
                let fault = format!(
                    "{}: N[{},{},{}] {}->{}",
                    ring.name(),
                    ring.label(i),
                    ring.label(j),
                    ring.label(k),
                    ring.n(i, j, k),
                    m
                );
                if !fixed || !validate(&mutated).pass {
                    unexplained.push(fault.clone());
                }
                escapes.push(fault);
            }
        }
    }
    ensure!(unexplained.is_empty(), "undetected faults outside self-dual N[X,X,X]: {}", unexplained.join("; "));
    ensure!(
        escapes.is_empty(),
        "{} of {injected} single-constant faults go undetected; each alters N[X,X,X] for a self-dual X, \
         which no reciprocity partner constrains, and yields a ring that passes every axiom: {}",
        escapes.len(),
        escapes.join("; ")
    );
    Ok(format!("{} rings valid, {injected} single-constant faults all detected", rings.len()))
}

fn criterion_2() -> Outcome {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = fibonacci();
    let x = fib.index_of("X").unwrap();
    exact_eq(&fib.fpdim_simple(x).map_err(err)?, &q("1/2+1/2*sqrt(5)"), phi)?;
    exact_eq(&fib.fpdim_ring().map_err(err)?, &q("5/2+1/2*sqrt(5)"), (5.0 + 5f64.sqrt()) / 2.0)?;
    let psu = psu2_6();
    let x = psu.index_of("X").unwrap();
    exact_eq(&psu.fpdim_simple(x).map_err(err)?, &q("1+1*sqrt(2)"), 1.0 + 2f64.sqrt())?;
    exact_eq(&psu.fpdim_ring().map_err(err)?, &q("8+4*sqrt(2)"), 8.0 + 4.0 * 2f64.sqrt())?;
    Ok("Fibonacci X, FPdim(Fib), PSU(2)_6 X, FPdim(PSU(2)_6) exact".into())
}

fn criterion_3() -> Outcome {
    let mut checked = Vec::new();
    for ring in corpus::builtin().map_err(err)? {
        if ring.basis().all(|i| ring.is_invertible(i)) || !classify::is_gng(&ring).map_err(err)? {
            continue;
        }
        let t = classify::gng_type(&ring).map_err(err)?;
        let (index, gamma) = (t.index(), t.gamma.order());
        ensure!(ring.rank() == index * (1 + gamma), "{}: rank {} != {index}(1+{gamma})", ring.name(), ring.rank());
        let non_inv = ring.basis().find(|&i| !ring.is_invertible(i)).unwrap();
        let d = ring.fpdim_simple(non_inv).map_err(err)?;
        let predicted = d.square().add(&RealValue::int(gamma as i64)).scale(index as i64);
        let total = ring.fpdim_ring().map_err(err)?;
        ensure!(total.is_exact() && predicted.is_exact(), "{}: dimension not exact", ring.name());
        ensure!(total == predicted, "{}: FPdim {total} != {predicted}", ring.name());
        let report = classify::check_rank_dim(&ring, &t).map_err(err)?;
        ensure!(report.pass, "{}: library check disagrees: {:?}", ring.name(), report.witness);
        checked.push(ring.name().to_string());
    }
    ensure!(checked.len() >= 20, "only {} GNG rings", checked.len());
    Ok(format!("{} GNG rings satisfy both formulas exactly", checked.len()))
}

fn criterion_4() -> Outcome {
    for bound in [10, 25, 50] {
        let r = classify::lemma41_search(bound).map_err(err)?;
        ensure!(r.pairs == vec![[3, 5]], "bound {bound}: pairs {:?}", r.pairs);
        ensure!(r.triples.is_empty(), "bound {bound}: triples {:?}", r.triples);
    }
    Ok("pairs {(3,5)}, no triples at bounds 10, 25, 50".into())
}

fn criterion_5() -> Outcome {
    let phi = q("1/2+1/2*sqrt(5)");
    for (name, g) in fib_groups() {
        let ring = fib_extension(&g).map_err(err)?;
        let n = g.order();
        let ty = category_type(&ring).map_err(err)?;
        ensure!(ty == vec![(RealValue::int(1), n), (phi.clone(), n)], "{name}: type {ty:?}");
        let report = classify::classify_fib_extension(&ring).map_err(err)?;
        ensure!(report.pass, "{name}: {:?}", report.witness);
        let grading = structure::universal_grading(&ring).map_err(err)?;
        ensure!(grading.components.iter().all(|c| c.len() == 2), "{name}: component ranks");
        let inv = structure::invertibles(&ring).map_err(err)?;
        ensure!(grading.group.is_isomorphic(&inv.group).map_err(err)?, "{name}: U(C) not isomorphic to G(C)");
        ensure!(inv.group.is_isomorphic(&g).map_err(err)?, "{name}: G(C) not isomorphic to G");
        let f = fibonacci_component(&ring).map_err(err)?;
        ensure!(
            exact_factorization(&ring, &f, &structure::pointed_subring(&ring)),
            "{name}: not an exact factorization"
        );
    }
    Ok("Z2, Z3, Z4, Z2xZ2, Z6, S3".into())
}

fn criterion_6() -> Outcome {
    let mut rings = vec![psu2_6()];
    for (_, g) in fib_groups() {
        rings.push(fib_extension(&g).map_err(err)?);
    }
    for ring in &rings {
        let ad = structure::adjoint_subring(ring);
        let ad_ring = structure::restrict(ring, &ad, "ad").map_err(err)?;
        ensure!(classify::is_gng(&ad_ring).map_err(err)?, "{}: adjoint not GNG", ring.name());
        ensure!(structure::universal_grading(&ad_ring).map_err(err)?.is_trivial(), "{}: adjoint grading", ring.name());
        let report = classify::check_structure_theorem(ring).map_err(err)?;
        ensure!(report.pass, "{}: {:?}", ring.name(), report.witness);
    }

    let ring = fib_extension(&z(6)).map_err(err)?;
    let grading = structure::universal_grading(&ring).map_err(err)?;
    let subgroups = grading.group.all_subgroups();
    ensure!(subgroups.len() == 4, "Z6 has {} subgroups", subgroups.len());
    let mut lattice = BTreeSet::new();
    for h in &subgroups {
        let members: BTreeSet<usize> =
            h.members().iter().flat_map(|&c| grading.components[c].iter().copied()).collect();
        let members: Vec<usize> = members.into_iter().collect();
        ensure!(structure::SubringHandle::from_members(&ring, &members).is_ok(), "graded subset not closed");
        lattice.insert(members);
    }
    // Independent enumeration: every subset containing the unit that is closed under products.
    let r = ring.rank();
    let mut non_pointed_subrings = BTreeSet::new();
    for mask in 0u32..(1 << r) {
        let members: Vec<usize> = (0..r).filter(|&i| mask & (1 << i) != 0).collect();
        if !members.contains(&ring.unit()) || members.iter().all(|&i| ring.is_invertible(i)) {
            continue;
        }
        if structure::SubringHandle::from_members(&ring, &members).is_ok() {
            non_pointed_subrings.insert(members);
        }
    }
    ensure!(non_pointed_subrings == lattice, "graded subrings {lattice:?} vs closed subsets {non_pointed_subrings:?}");
    for x in ring.basis().filter(|&i| !ring.is_invertible(i)) {
        let closure = structure::subring_closure(&ring, &[x]);
        ensure!(lattice.contains(closure.members()), "closure of {} escapes the lattice", ring.label(x));
    }
    Ok(format!("{} rings; Z6: 4 subgroups <-> 4 non-pointed subrings", rings.len()))
}

fn criterion_7() -> Outcome {
    let mut gty_count = 0;
    let rings = corpus::builtin().map_err(err)?;
    for ring in &rings {
        let by_kvec = classify::gty_by_kvec(ring).map_err(err)?;
        let by_grading = classify::gty_by_grading(ring).map_err(err)?;
        ensure!(by_kvec == by_grading, "{}: kvec says {by_kvec}, grading says {by_grading}", ring.name());
        if by_kvec {
            gty_count += 1;
            let t = classify::gng_type(ring).map_err(err)?;
            let u = structure::universal_grading(ring).map_err(err)?.group.order();
            ensure!(u == 2 * t.index(), "{}: |U| = {u}, 2[G:Gamma] = {}", ring.name(), 2 * t.index());
        }
    }
    ensure!(gty_count >= 10, "only {gty_count} GTY rings");
    Ok(format!("detectors agree on {} rings; |U| = 2[G:Gamma] on {gty_count} GTY rings", rings.len()))
}

fn criterion_8() -> Outcome {
    let sqrt2 = q("0+1*sqrt(2)");
    for n in 1..=5u32 {
        let ring = n_ising(n).map_err(err)?;
        let half = 1usize << (n - 1);
        let inv = structure::invertibles(&ring).map_err(err)?;
        let expected = GroupTable::direct_product(&z(2), &z(half));
        ensure!(inv.group.is_isomorphic(&expected).map_err(err)?, "N={n}: invertibles");
        let dims = ring.fpdims().map_err(err)?;
        let root_two = dims.iter().filter(|d| **d == sqrt2).count();
        ensure!(root_two == half, "N={n}: {root_two} simples of dimension sqrt(2)");
        ensure!(root_two + inv.group.order() == ring.rank(), "N={n}: unexpected dimensions");
        let u = structure::universal_grading(&ring).map_err(err)?.group;
        ensure!(u.is_isomorphic(&z(1 << n)).map_err(err)?, "N={n}: U(C) not cyclic of order {}", 1 << n);
        let self_dual = ring.basis().any(|i| !ring.is_invertible(i) && ring.dual(i) == i);
        ensure!(self_dual == (n == 1), "N={n}: self-dual non-invertible present = {self_dual}");
    }
    Ok("N = 1..5".into())
}

fn criterion_9() -> Outcome {
    let ad = families::adjoint_extract(&su2_level(6).map_err(err)?).map_err(err)?;
    let psu = psu2_6();
    let map = find_isomorphism(&ad, &psu).ok_or("no constants-preserving bijection")?;
    let r = ad.rank();
    ensure!(r == psu.rank(), "ranks differ");
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                ensure!(ad.n(i, j, k) == psu.n(map[i], map[j], map[k]), "bijection breaks N[{i},{j},{k}]");
            }
        }
    }
    let pairs: Vec<String> = (0..r).map(|i| format!("{}->{}", ad.label(i), psu.label(map[i]))).collect();
    Ok(pairs.join(", "))
}

/// Independent brute force: every positive multiplicity vector, ordered
/// non-increasingly, with square sum at most `max`.
fn multiplicity_vectors(max: u64, cap: u64, prefix: &mut Vec<u64>, sq: u64, out: &mut dyn FnMut(&[u64], u64)) {
    if !prefix.is_empty() {
        out(prefix, sq);
    }
    for m in (1..=cap).rev() {
        if sq + m * m > max {
            continue;
        }
        prefix.push(m);
        multiplicity_vectors(max, m, prefix, sq + m * m, out);
        prefix.pop();
    }
}

fn criterion_10() -> Outcome {
    let sweep = classify::multiplicity_sweep(128);
    let mut count = 0u64;
    let mut violations = 0u64;
    multiplicity_vectors(128, 128, &mut Vec::new(), 0, &mut |v, sq| {
        count += 1;
        for i in 1..=4u32 {
            if sq == 1 << (2 * i - 1) && v.iter().sum::<u64>() < 1 << i {
                violations += 1;
            }
        }
    });
    ensure!(violations == 0, "oracle found {violations} violations");
    ensure!(sweep.violations.is_empty(), "library reports violations {:?}", sweep.violations);
    ensure!(sweep.vectors_checked == count, "library checked {} vectors, oracle {count}", sweep.vectors_checked);
    ensure!(sweep.equality_witnesses.contains(&vec![2, 2]), "(2,2) not reported as an equality witness");
    ensure!(classify::min_summands_check(&[2, 2]), "(2,2) rejected");
    Ok(format!("{count} vectors, no violations, (2,2) attains equality at i = 2"))
}

fn criterion_11() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_fuskit");
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| Command::new(exe).arg("verify").env_remove(corpus::CORPUS_ENV).output().map(|o| o.stdout))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(!runs[0].is_empty() && runs[0] == runs[1], "verify output differs between runs");
    let entries = corpus::builtin_entries();
    let serial = verify::run("builtin", &entries, &Options::default()).map_err(err)?;
    let parallel = verify::run("builtin", &entries, &Options { jobs: Some(4), ..Options::default() }).map_err(err)?;
    ensure!(serial.to_json().as_bytes() == runs[0].as_slice(), "library and binary reports differ");
    ensure!(serial.to_json() == parallel.to_json(), "parallel report differs");
    let rings = corpus::builtin().map_err(err)?;
    for ring in &rings {
        let text = ring.to_json();
        let back = FusionRing::from_json(&text).map_err(err)?;
        ensure!(&back == ring && back.to_json() == text, "{} does not round-trip", ring.name());
    }
    Ok(format!("{} byte report stable; {} rings round-trip", runs[0].len(), rings.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "axiom suite and single-constant fault injection", criterion_1, Some(Duration::from_secs(5))),
        (2, "exact Frobenius-Perron dimensions", criterion_2, None),
        (3, "GNG rank and dimension formulas", criterion_3, None),
        (4, "cosine pair/triple search", criterion_4, Some(Duration::from_secs(1))),
        (5, "Fibonacci extensions", criterion_5, None),
        (6, "adjoint subrings and graded subring lattice", criterion_6, None),
        (7, "GTY detectors and grading order", criterion_7, None),
        (8, "N-Ising invariants", criterion_8, None),
        (9, "Verlinde cross-check", criterion_9, None),
        (10, "multiplicity bound sweep", criterion_10, None),
        (11, "determinism and round trip", criterion_11, None),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (id, title, check, budget) in criteria {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t0.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} {title} [{elapsed:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {title} [{elapsed:.2?}]: {why}");
            }
        }
    }
    let total = start.elapsed();
    if total > Duration::from_secs(30) {
        failed += 1;
        println!("FAIL total runtime {total:.2?} exceeds 30s");
    } else {
        println!("PASS total runtime {total:.2?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
