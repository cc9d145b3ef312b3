//! Named small groups and surjections used across the test suites and the
//! command line.

use std::sync::Arc;

use crate::extension::Extension;
use crate::group::{FiniteGroup, StandardGroup, Subgroup};

fn arc(s: StandardGroup) -> Arc<FiniteGroup> {
    Arc::new(s.build().expect("standard group builds"))
}

fn product(a: StandardGroup, b: StandardGroup) -> StandardGroup {
    StandardGroup::DirectProduct(vec![a, b])
}

fn quotient(g: Arc<FiniteGroup>, n: Subgroup) -> Extension {
    Extension::from_quotient(&g, &n).expect("corpus subgroup is normal")
}

fn by_generators(g: Arc<FiniteGroup>, gens: &[usize]) -> Extension {
    let n = g.normal_closure(gens);
    quotient(g, n)
}

/// Surjections `B -> A` covering central and non-central, split and
/// non-split cases.
pub fn extensions() -> Vec<(&'static str, Extension)> {
    use StandardGroup::*;
    let q8 = arc(Quaternion8);
    let d4 = arc(Dihedral(4));
    let s3 = arc(Symmetric(3));
    let a4 = arc(Alternating(4));
    let s4 = arc(Symmetric(4));
    let v4_in_s4 = {
        let a4 = s4.derived_subgroup();
        let involutions: Vec<usize> = a4.elements().iter().copied().filter(|&x| s4.element_order(x) <= 2).collect();
        s4.subgroup_generated(&involutions)
    };
    vec![
        ("Q8 -> C2xC2", quotient(q8.clone(), q8.center())),
        ("S3 -> C2", quotient(s3.clone(), s3.derived_subgroup())),
        ("D4 -> C2xC2", quotient(d4.clone(), d4.center())),
        ("C4 -> C2", by_generators(arc(Cyclic(4)), &[2])),
        // the C2 factor of C2 x C3 is {0, 1}
        ("C2xC3 -> C3", by_generators(arc(product(Cyclic(2), Cyclic(3))), &[1])),
        // (0, 1) in C4 x C2 has index 4
        ("C4xC2 -> C4", by_generators(arc(product(Cyclic(4), Cyclic(2))), &[4])),
        ("C3 -> C3", Extension::identity(arc(Cyclic(3)))),
        ("A4 -> C3", quotient(a4.clone(), a4.derived_subgroup())),
        ("S4 -> S3", quotient(s4, v4_in_s4)),
        ("D4 -> C2", by_generators(d4, &[1])),
        ("Q8 -> C2", by_generators(q8, &[1])),
        ("S3 -> 1", quotient(s3.clone(), s3.whole())),
        ("C8 -> C4", by_generators(arc(Cyclic(8)), &[4])),
        // (0, 2) in C2 x C4 has index 4
        ("C2xC4 -> C2xC2", by_generators(arc(product(Cyclic(2), Cyclic(4))), &[4])),
        ("C2xC2 -> C2", by_generators(arc(Klein4), &[1])),
    ]
}

/// Groups of order at most 24.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    use StandardGroup::*;
    let mut specs: Vec<StandardGroup> = (1..=8).map(Cyclic).collect();
    specs.extend([
        Klein4,
        Symmetric(3),
        Dihedral(4),
        Quaternion8,
        Alternating(4),
        product(Cyclic(2), Cyclic(4)),
        product(Cyclic(2), Cyclic(3)),
        product(Cyclic(3), Cyclic(3)),
        Dihedral(5),
        Dihedral(6),
        product(Cyclic(4), Cyclic(4)),
        StandardGroup::DirectProduct(vec![Cyclic(2), Cyclic(2), Cyclic(2)]),
        product(Cyclic(2), Quaternion8),
        product(Symmetric(3), Cyclic(2)),
        product(Cyclic(2), Alternating(4)),
        Symmetric(4),
    ]);
    specs.into_iter().map(|s| (s.label(), s.build().expect("standard group builds"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shapes() {
        let exts = extensions();
        assert!(exts.len() >= 12);
        let orders: Vec<(usize, usize)> = exts.iter().map(|(_, e)| (e.dom().order(), e.cod().order())).collect();
        assert_eq!(orders[0], (8, 4));
        assert_eq!(orders[8], (24, 6));
        assert!(exts.iter().any(|(_, e)| e.is_split()));
        assert!(exts.iter().any(|(_, e)| !e.is_split()));
        assert!(small_groups().iter().all(|(_, g)| g.order() <= 24));
    }
}
