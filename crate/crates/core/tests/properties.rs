//! Invariants of the family constructors and structural algorithms, checked
//! exhaustively over small parameters or by property-based sampling.

use fuskit::classify::{self, exact_factorization, fibonacci_component};
use fuskit::exactreal::RealValue;
use fuskit::families::{self, *};
use fuskit::groups::GroupTable;
use fuskit::ring::{find_isomorphism, validate, FusionRing};
use fuskit::structure::{self, SubringHandle};
use proptest::prelude::*;
use std::sync::OnceLock;

fn z(n: usize) -> GroupTable {
    GroupTable::cyclic(n).unwrap()
}

/// Every abelian group of order at most 16, as products of cyclic groups.
fn abelian_groups() -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = (1..=16).map(z).collect();
    for (a, b) in [(2, 2), (2, 4), (2, 6), (3, 3), (2, 8), (4, 4)] {
        out.push(GroupTable::direct_product(&z(a), &z(b)));
    }
    out.push(GroupTable::direct_product(&GroupTable::direct_product(&z(2), &z(2)), &z(2)));
    out.push(GroupTable::direct_product(&GroupTable::direct_product(&z(2), &z(2)), &z(4)));
    out.push(GroupTable::direct_product(
        &GroupTable::direct_product(&GroupTable::direct_product(&z(2), &z(2)), &z(2)),
        &z(2),
    ));
    out
}

#[test]
fn gty_type_and_counts_for_every_small_abelian_group() {
    for g in abelian_groups() {
        for gamma in g.all_subgroups() {
            let (_, proj) = g.quotient(&gamma).unwrap();
            let mut seen_twists = std::collections::BTreeSet::new();
            for twist in g.elements() {
                if !seen_twists.insert(proj[twist]) {
                    continue;
                }
                let ring = gty(&g, gamma.members(), twist).unwrap();
                assert!(validate(&ring).pass);
                if gamma.is_trivial() {
                    // Each X_g squares to a single invertible, so the ring is pointed.
                    assert!(ring.basis().all(|i| ring.is_invertible(i)));
                    assert!(!classify::is_gty(&ring).unwrap());
                    continue;
                }
                let t = classify::gng_type(&ring).unwrap();
                assert_eq!(t.group.order(), g.order());
                assert!(t.group.is_isomorphic(&g).unwrap());
                assert_eq!(t.gamma.order(), gamma.order());
                assert!(t.kvec_is_zero());
                assert!(classify::check_rank_dim(&ring, &t).unwrap().pass);
                assert!(classify::is_gty(&ring).unwrap());
                assert!(classify::check_gty_grading(&ring).unwrap().pass);
            }
        }
    }
}

fn fib_groups() -> Vec<GroupTable> {
    vec![z(2), z(3), z(4), GroupTable::direct_product(&z(2), &z(2)), GroupTable::symmetric(3).unwrap(), z(6)]
}

#[test]
fn fibonacci_extensions_factor_and_grade_by_their_invertibles() {
    for g in fib_groups() {
        let ring = fib_extension(&g).unwrap();
        assert!(classify::classify_fib_extension(&ring).unwrap().pass);
        let f = fibonacci_component(&ring).unwrap();
        assert!(exact_factorization(&ring, &f, &structure::pointed_subring(&ring)));
        let u = structure::universal_grading(&ring).unwrap().group;
        assert!(u.is_isomorphic(&g).unwrap());
        assert!(classify::check_structure_theorem(&ring).unwrap().pass);
        assert_eq!(ring.is_commutative(), g.is_abelian());
    }
}

#[test]
fn fib_extension_by_z2_closures() {
    let ring = fib_extension(&z(2)).unwrap();
    let ye = ring.index_of("Y_0").unwrap();
    let closure = structure::subring_closure(&ring, &[ye]);
    assert_eq!(closure.labels(&ring), ["d_0", "Y_0"]);
    let pt = structure::pointed_subring(&ring);
    assert_eq!(structure::commutator_subring(&ring, &pt), pt);
    let comps = structure::universal_grading(&ring).unwrap();
    for c in &comps.components {
        assert_eq!(c.iter().filter(|&&i| ring.is_invertible(i)).count(), 1);
    }
}

#[test]
fn deligne_products_multiply_dimensions_and_adjoints() {
    let pairs = [
        (fibonacci(), pointed(&z(5)).unwrap()),
        (psu2_6(), pointed(&z(3)).unwrap()),
        (fibonacci(), fibonacci()),
        (tambara_yamagami(&z(2)).unwrap(), psu2_6()),
    ];
    for (a, b) in pairs {
        let p = deligne_product(&a, &b).unwrap();
        assert_eq!(p.rank(), a.rank() * b.rank());
        let lhs = p.fpdim_ring().unwrap();
        let rhs = a.fpdim_ring().unwrap().mul(&b.fpdim_ring().unwrap());
        assert!(lhs.is_exact() && rhs.is_exact());
        assert_eq!(lhs, rhs);
        let ad_a = structure::adjoint_subring(&a);
        let ad_b = structure::adjoint_subring(&b);
        let rb = b.rank();
        let expected: Vec<usize> =
            ad_a.members().iter().flat_map(|&i| ad_b.members().iter().map(move |&j| i * rb + j)).collect();
        assert_eq!(structure::adjoint_subring(&p).members(), expected.as_slice());
    }
    let fz5 = deligne_product(&fibonacci(), &pointed(&z(5)).unwrap()).unwrap();
    let t = classify::gng_type(&fz5).unwrap();
    assert!(t.gamma.is_trivial());
    let psu3 = deligne_product(&psu2_6(), &pointed(&z(3)).unwrap()).unwrap();
    let ad = families::adjoint_extract(&psu3).unwrap();
    assert!(find_isomorphism(&ad, &psu2_6()).is_some());
}

#[test]
fn unit_of_deligne_product() {
    for r in [fibonacci(), psu2_6(), fib_extension(&GroupTable::symmetric(3).unwrap()).unwrap()] {
        let p = deligne_product(&r, &pointed(&z(1)).unwrap()).unwrap();
        assert!(find_isomorphism(&p, &r).is_some());
    }
}

fn corpus() -> &'static [FusionRing] {
    static CORPUS: OnceLock<Vec<FusionRing>> = OnceLock::new();
    CORPUS.get_or_init(|| fuskit::corpus::builtin().unwrap())
}

#[test]
fn structural_invariants_on_the_corpus() {
    for ring in corpus() {
        assert!(validate(ring).pass, "{}", ring.name());
        let act = structure::action(ring).unwrap();
        let grp = &act.invertibles.group;
        for a in grp.elements() {
            for i in ring.basis() {
                let mut conj: Vec<usize> =
                    act.stabilizers[i].members().iter().map(|&s| grp.mul(grp.mul(a, s), grp.inverse(a))).collect();
                conj.sort_unstable();
                assert_eq!(conj, act.stabilizers[act.act[a][i]].members());
            }
        }
        for i in ring.basis() {
            let sd = ring.self_decomp(i);
            assert!(act.invertibles.embedding.iter().all(|&b| sd.mult(b) <= 1));
        }
        let inv_set: Vec<usize> = act.orbits.iter().filter(|o| ring.is_invertible(o[0])).flatten().copied().collect();
        assert_eq!(inv_set, act.invertibles.embedding);

        let g = structure::universal_grading(ring).unwrap();
        let ad = structure::adjoint_subring(ring);
        assert_eq!(g.components[g.trivial], ad.members());
        assert!(g.components.iter().all(|c| !c.is_empty()));
        for (x, cx) in g.components.iter().enumerate() {
            for (y, cy) in g.components.iter().enumerate() {
                let target = g.group.mul(x, y);
                for &i in cx {
                    for &j in cy {
                        assert!(ring.product(i, j).iter().all(|&(k, _)| g.component_of[k] == target));
                    }
                }
            }
        }
        let dims = structure::graded_component_dims(&g, ring).unwrap();
        let total = ring.fpdim_ring().unwrap();
        let predicted = dims[g.trivial].scale(g.group.order() as i64);
        assert!(total.approx_eq(&predicted, 1e-9), "{}", ring.name());
        assert!(dims.iter().all(|d| d.approx_eq(&dims[0], 1e-9)));

        for handle in [structure::pointed_subring(ring), ad.clone()] {
            assert_eq!(SubringHandle::from_members(ring, handle.members()).unwrap(), handle);
        }
        assert!(classify::is_gty(ring).is_ok());
    }
}

#[test]
fn gng_corpus_rings_satisfy_rank_dimension_formula() {
    for ring in corpus() {
        if ring.basis().all(|i| ring.is_invertible(i)) || !classify::is_gng(ring).unwrap() {
            continue;
        }
        let t = classify::gng_type(ring).unwrap();
        let r = classify::check_rank_dim(ring, &t).unwrap();
        assert!(r.pass, "{}: {r:?}", ring.name());
        if !t.kvec_is_zero() {
            let ad = families::adjoint_extract(ring).unwrap();
            assert!(structure::universal_grading(&ad).unwrap().is_trivial());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_closed_and_idempotent(idx in 0usize..42, seed in proptest::collection::vec(0usize..40, 0..4)) {
        let rings = corpus();
        let ring = &rings[idx % rings.len()];
        let seed: Vec<usize> = seed.into_iter().map(|s| s % ring.rank()).collect();
        let h = structure::subring_closure(ring, &seed);
        prop_assert!(SubringHandle::from_members(ring, h.members()).is_ok());
        for &s in &seed {
            prop_assert!(h.contains(s));
        }
        prop_assert_eq!(&structure::subring_closure(ring, h.members()), &h);
    }

    #[test]
    fn fpdim_is_a_character(idx in 0usize..42, i in 0usize..64, j in 0usize..64) {
        let rings = corpus();
        let ring = &rings[idx % rings.len()];
        let (i, j) = (i % ring.rank(), j % ring.rank());
        let dims = ring.fpdims().unwrap();
        let lhs = dims[i].mul(&dims[j]);
        let terms: Vec<RealValue> = ring.product(i, j).iter().map(|&(k, m)| dims[k].scale(i64::from(m))).collect();
        prop_assert!(lhs.approx_eq(&RealValue::sum(&terms), 1e-9));
    }

    #[test]
    fn json_round_trip_is_identity(idx in 0usize..42) {
        let rings = corpus();
        let ring = &rings[idx % rings.len()];
        let text = ring.to_json();
        let back = FusionRing::from_json(&text).unwrap();
        prop_assert_eq!(&back, ring);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn gty_over_cyclic_groups(n in 2usize..=16, d in 2usize..=16, u in 0usize..16) {
        let g = z(n);
        let gamma_gen = (n / gcd(n, d)) % n;
        prop_assume!(gcd(n, d) > 1);
        let ring = gty(&g, &[gamma_gen], u % n).unwrap();
        let t = classify::gng_type(&ring).unwrap();
        prop_assert!(classify::check_rank_dim(&ring, &t).unwrap().pass);
        prop_assert_eq!(structure::universal_grading(&ring).unwrap().group.order(), 2 * t.index());
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
