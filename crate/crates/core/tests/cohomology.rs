use std::sync::Arc;

use hopfbench::cohomology::{stem_kernel_limit, CohomologyH2};
use hopfbench::{
    enumerate_central_extensions, extension_from_cocycle, find_stem_extension, h2, h2_cohomology, hopf_quotient,
    universal_central_extension, Cocycle2, Error, FgAbelianGroup, FiniteGroup, Reflector, StandardGroup,
};
use num_bigint::BigInt;

/// Order of `H^2(G, Z/n)` counted as normalized cocycles over normalized
/// coboundaries.
fn brute_force_h2_order(g: &FiniteGroup, n: u64) -> u64 {
    let nonid: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let m = nonid.len();
    let slots = m * m;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in nonid.iter().enumerate() {
        pos[x] = i;
    }
    let value = |f: &[u64], x: usize, y: usize| -> u64 {
        if x == g.identity() || y == g.identity() {
            0
        } else {
            f[pos[x] * m + pos[y]]
        }
    };
    let mut f = vec![0u64; slots];
    let mut cocycles = 0u64;
    loop {
        let ok = g.elements().all(|a| {
            g.elements().all(|b| {
                g.elements().all(|c| {
                    (value(&f, a, b) + value(&f, g.mul(a, b), c)) % n == (value(&f, b, c) + value(&f, a, g.mul(b, c))) % n
                })
            })
        });
        cocycles += u64::from(ok);
        let mut i = 0;
        while i < slots {
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == slots {
            break;
        }
    }
    let mut coboundaries = std::collections::HashSet::new();
    let mut phi = vec![0u64; m];
    loop {
        let at = |x: usize| if x == g.identity() { 0 } else { phi[pos[x]] };
        let d: Vec<u64> = nonid
            .iter()
            .flat_map(|&x| nonid.iter().map(move |&y| (x, y)))
            .map(|(x, y)| (at(x) + at(y) + n - at(g.mul(x, y))) % n)
            .collect();
        coboundaries.insert(d);
        let mut i = 0;
        while i < m {
            phi[i] += 1;
            if phi[i] < n {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    cocycles / coboundaries.len() as u64
}

fn build(s: StandardGroup) -> FiniteGroup {
    s.build().unwrap()
}

fn involutions(g: &FiniteGroup) -> usize {
    g.elements().filter(|&x| g.element_order(x) == 2).count()
}

#[test]
fn cohomology_orders_match_brute_force() {
    let cases = [
        (StandardGroup::Cyclic(2), 2, 2),
        (StandardGroup::Cyclic(2), 3, 1),
        (StandardGroup::Cyclic(3), 2, 1),
        (StandardGroup::Cyclic(3), 3, 3),
        (StandardGroup::Cyclic(4), 2, 2),
        (StandardGroup::Klein4, 2, 8),
    ];
    for (s, n, expected) in cases {
        let g = build(s.clone());
        let brute = brute_force_h2_order(&g, n);
        let (h, reps) = h2_cohomology(&g, &FgAbelianGroup::cyclic(n)).unwrap();
        assert_eq!(brute, expected, "{} with Z/{n}", s.label());
        assert_eq!(h.order(), Some(BigInt::from(brute)), "{} with Z/{n}", s.label());
        assert_eq!(reps.len() as u64, brute);
    }
}

#[test]
fn representatives_are_classified_back() {
    let g = Arc::new(build(StandardGroup::Dihedral(4)));
    let a = FgAbelianGroup::from_invariants(&[2, 2], 0);
    let h = CohomologyH2::new(g.clone(), &a).unwrap();
    for class in h.classes() {
        let c = h.cocycle(&class);
        assert_eq!(h.class_of(&c).unwrap(), class);
    }
    let (single, _) = h2_cohomology(&g, &FgAbelianGroup::cyclic(2)).unwrap();
    assert_eq!(single, FgAbelianGroup::from_invariants(&[2, 2, 2], 0));
    assert_eq!(h.class_count(), 64);
}

#[test]
fn non_cocycles_are_rejected() {
    let g = Arc::new(build(StandardGroup::Cyclic(3)));
    let a = FgAbelianGroup::cyclic(3);
    // c(x, y) = x, not normalized
    let bad = Cocycle2::from_fn(g.clone(), &a, |x, _| vec![x as u64 % 3]);
    assert!(matches!(bad, Err(Error::InvalidCocycle(_))));
    // normalized but breaks the identity
    let one = g.generators()[0];
    let bad = Cocycle2::from_fn(g, &a, |x, y| vec![u64::from(x == one && y == one)]);
    assert!(matches!(bad, Err(Error::InvalidCocycle(_))));
}

#[test]
fn klein_four_extensions_by_z2() {
    let v4 = build(StandardGroup::Klein4);
    let exts = enumerate_central_extensions(&v4, &FgAbelianGroup::cyclic(2)).unwrap();
    assert_eq!(exts.len(), 8);
    let counts: Vec<usize> = exts.iter().map(|e| involutions(e.middle())).collect();
    // C2^3, C4 x C2, D4, Q8
    assert!(counts.iter().all(|c| [7, 3, 5, 1].contains(c)));
    assert!(counts.contains(&1) && counts.contains(&5) && counts.contains(&7));
    let abelian = exts.iter().filter(|e| e.middle().is_abelian()).count();
    assert_eq!(abelian, 4);
    assert_eq!(exts.iter().filter(|e| e.is_stem()).count(), 4);
}

#[test]
fn c3_by_z2_is_only_c6() {
    let c3 = build(StandardGroup::Cyclic(3));
    let exts = enumerate_central_extensions(&c3, &FgAbelianGroup::cyclic(2)).unwrap();
    assert_eq!(exts.len(), 1);
    assert!(exts[0].middle().elements().any(|x| exts[0].middle().element_order(x) == 6));
}

#[test]
fn cocycle_middle_group_has_kernel_in_centre() {
    let s3 = Arc::new(build(StandardGroup::Symmetric(3)));
    let h = CohomologyH2::new(s3, &FgAbelianGroup::cyclic(2)).unwrap();
    for class in h.classes() {
        let e = extension_from_cocycle(&h.cocycle(&class)).unwrap();
        let k = e.extension.kernel();
        assert_eq!(k.order(), 2);
        assert!(k.is_subset_of(&e.middle().center()));
    }
}

#[test]
fn stem_kernels_are_the_multiplier() {
    for s in [
        StandardGroup::Klein4,
        StandardGroup::Alternating(4),
        StandardGroup::Dihedral(4),
        StandardGroup::Quaternion8,
        StandardGroup::Symmetric(3),
        StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(2), StandardGroup::Cyclic(4)]),
    ] {
        let g = build(s.clone());
        let m = h2(&g).unwrap();
        let stem = find_stem_extension(&g).unwrap();
        assert!(stem.is_stem(), "{}", s.label());
        assert_eq!(BigInt::from(stem.extension.kernel().order()), m.order().unwrap(), "{}", s.label());
        assert_eq!(hopf_quotient(&stem.extension, Reflector::Abelianization), m, "{}", s.label());
        assert_eq!(stem_kernel_limit(&g).unwrap(), m, "{}", s.label());
    }
}

#[test]
fn universal_extension_needs_a_perfect_group() {
    assert_eq!(universal_central_extension(&build(StandardGroup::Symmetric(3))).unwrap_err(), Error::NotPerfect);
    let t = universal_central_extension(&FiniteGroup::trivial()).unwrap();
    assert_eq!(t.middle().order(), 1);
}
