use std::collections::BTreeSet;

use serde_json::json;

use super::{same_real, CheckReport, ClassifyError};
use crate::exactreal::{QuadraticReal, RealValue};
use crate::ring::{FusionRing, ObjectVec};
use crate::structure::{self, SubringHandle};

/// Golden ratio `(1+√5)/2`.
pub(crate) fn phi() -> RealValue {
    RealValue::Exact(QuadraticReal::from_parts(1, 2, 1, 2, 5))
}

/// Dimensions with their multiplicities, ascending: `(d_0, n_0; d_1, n_1; ...)`.
pub fn category_type(ring: &FusionRing) -> Result<Vec<(RealValue, usize)>, ClassifyError> {
    let mut dims = ring.fpdims()?;
    dims.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<(RealValue, usize)> = Vec::new();
    for d in dims {
        match out.last_mut() {
            Some((last, n)) if same_real(last, &d) => *n += 1,
            _ => out.push((d, 1)),
        }
    }
    Ok(out)
}

fn format_type(t: &[(RealValue, usize)]) -> String {
    let parts: Vec<String> = t.iter().map(|(d, n)| format!("{d},{n}")).collect();
    format!("({})", parts.join(";"))
}

/// The trivial graded component, provided it is a Fibonacci ring.
pub fn fibonacci_component(ring: &FusionRing) -> Result<SubringHandle, ClassifyError> {
    let ad = structure::adjoint_subring(ring);
    let not_fib = |why: String| Err(ClassifyError::NotFibExtension(why));
    let [one, y] = ad.members() else {
        return not_fib(format!("adjoint subring has rank {}", ad.rank()));
    };
    let (x, unit) = if *one == ring.unit() { (*y, *one) } else { (*one, *y) };
    let expected: ObjectVec = [(unit, 1), (x, 1)].into_iter().collect();
    if ring.tensor_simple(x, x) != expected {
        return not_fib(format!(
            "{} ⊗ {} = {}",
            ring.label(x),
            ring.label(x),
            ring.format_object(&ring.tensor_simple(x, x))
        ));
    }
    Ok(ad)
}

/// Component ranks, dimension type `(1,n; φ,n)` and `U(C) ≅ G(C)`.
pub fn classify_fib_extension(ring: &FusionRing) -> Result<CheckReport, ClassifyError> {
    fibonacci_component(ring)?;
    let grading = structure::universal_grading(ring)?;
    let inv = structure::invertibles(ring)?;
    let n = inv.group.order();
    let dims = ring.fpdims()?;
    let mut report = CheckReport::new("fib-extension");

    let one = RealValue::int(1);
    for comp in &grading.components {
        let ok = comp.len() == 2 && {
            let mut d: Vec<&RealValue> = comp.iter().map(|&i| &dims[i]).collect();
            d.sort_by(|a, b| a.total_cmp(b));
            same_real(d[0], &one) && same_real(d[1], &phi())
        };
        report.require(ok, || json!({"component": comp.iter().map(|&i| ring.label(i)).collect::<Vec<_>>()}));
    }

    let t = category_type(ring)?;
    let type_ok = t.len() == 2 && same_real(&t[0].0, &one) && same_real(&t[1].0, &phi()) && t[0].1 == n && t[1].1 == n;
    report.require(type_ok, || json!({"type": format_type(&t), "n": n}));

    let iso = grading.group.is_isomorphic(&inv.group)?;
    report.require(iso, || json!({"grading_order": grading.group.order(), "invertibles": n}));

    Ok(report
        .detail("type", format_type(&t))
        .detail("n", n)
        .detail("grading_order", grading.group.order())
        .detail("component_ranks", grading.components.iter().map(Vec::len).collect::<Vec<_>>())
        .detail("grading_isomorphic_to_invertibles", iso))
}

/// Every simple is uniquely `X ⊗ Y` with `X ∈ A`, `Y ∈ B`, and `A ∩ B` is trivial.
pub fn exact_factorization(ring: &FusionRing, a: &SubringHandle, b: &SubringHandle) -> bool {
    let shared = a.members().iter().filter(|&&i| b.contains(i)).count();
    if shared != 1 {
        return false;
    }
    let mut hit = BTreeSet::new();
    for &x in a.members() {
        for &y in b.members() {
            match ring.tensor_simple(x, y).as_simple() {
                Some(k) if hit.insert(k) => {}
                _ => return false,
            }
        }
    }
    hit.len() == ring.rank()
}
