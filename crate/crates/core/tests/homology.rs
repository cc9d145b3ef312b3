use std::sync::Arc;

use hopfbench::corpus;
use hopfbench::homology::{connecting_delta2, five_term, h1, h2, induced_h1, induced_h2, BarComplex, SecondHomology};
use hopfbench::{Extension, FgAbelianGroup, FiniteGroup, GroupHom, IntMatrix, StandardGroup};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reduced(mut m: IntMatrix, target: &FgAbelianGroup) -> IntMatrix {
    m.reduce_columns(target.torsion());
    m
}

fn random_section(f: &Extension, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let (a, b) = (f.cod(), f.dom());
    a.elements()
        .map(|x| {
            if x == a.identity() {
                return b.identity();
            }
            let fibre: Vec<usize> = b.elements().filter(|&y| f.map().apply(y) == x).collect();
            *fibre.choose(rng).unwrap()
        })
        .collect()
}

#[test]
fn first_homology_is_the_abelianisation() {
    for (name, g) in corpus::small_groups() {
        let (ab, _, _) = Arc::new(g.clone()).abelianization();
        assert_eq!(h1(&g).unwrap(), ab, "{name}");
    }
}

#[test]
fn restricted_relations_give_the_full_h2() {
    for s in [StandardGroup::Symmetric(3), StandardGroup::Quaternion8, StandardGroup::Dihedral(4), StandardGroup::Klein4] {
        let g = s.build().unwrap();
        let full = BarComplex::new(Arc::new(g.clone())).unwrap().h2_full();
        assert_eq!(h2(&g).unwrap(), full, "{}", s.label());
    }
}

#[test]
fn delta2_does_not_depend_on_the_section() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, f) in corpus::extensions() {
        let seq = five_term(&f).unwrap();
        let base = reduced(seq.delta2.clone(), &seq.ki1f);
        for _ in 0..5 {
            let s = random_section(&f, &mut rng);
            let d = reduced(connecting_delta2(&f, &s).unwrap(), &seq.ki1f);
            assert_eq!(d, base, "{name}");
        }
    }
}

#[test]
fn delta2_is_injective_when_h2b_vanishes() {
    let mut seen = 0;
    for (name, f) in corpus::extensions() {
        let seq = five_term(&f).unwrap();
        if seq.h2b.is_trivial() {
            assert!(seq.maps()[1].is_injective(), "{name}");
            seen += 1;
        }
    }
    assert!(seen >= 5);
}

#[test]
fn quaternion_sequence_has_known_groups() {
    let (_, f) = corpus::extensions().into_iter().find(|(n, _)| *n == "Q8 -> C2xC2").unwrap();
    let report = five_term(&f).unwrap().report();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["H2B"], serde_json::json!([]));
    assert_eq!(json["H2A"], serde_json::json!(["2"]));
    assert_eq!(json["KI1f"], serde_json::json!(["2"]));
    assert_eq!(json["H1B"], serde_json::json!(["2", "2"]));
    assert_eq!(json["exact"], serde_json::json!([true, true, true]));
}

/// `C4 x C4 -> G/N1 -> G/N2` for `N1 < N2`.
fn quotient_chain() -> (GroupHom, GroupHom) {
    let g = Arc::new(StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(4), StandardGroup::Cyclic(4)]).build().unwrap());
    let squares: Vec<usize> = g.elements().map(|x| g.mul(x, x)).collect();
    let n2 = g.subgroup_generated(&squares);
    let first = *g.generators().iter().find(|&&x| g.element_order(x) == 4).unwrap();
    let n1 = g.subgroup_generated(&[g.mul(first, first)]);
    let (q1, rho1) = g.quotient(&n1).unwrap();
    let (_, rho2) = q1.quotient(&rho1.image_of(&n2)).unwrap();
    (rho1, rho2)
}

#[test]
fn induced_maps_are_functorial() {
    let (f, g) = quotient_chain();
    let gf = f.then(&g).unwrap();
    let (h1_target, h2_target) = (h1(g.cod()).unwrap(), h2(g.cod()).unwrap());

    let composed1 = &induced_h1(&f).unwrap() * &induced_h1(&g).unwrap();
    assert_eq!(reduced(composed1, &h1_target), reduced(induced_h1(&gf).unwrap(), &h1_target));
    let composed2 = &induced_h2(&f).unwrap() * &induced_h2(&g).unwrap();
    assert_eq!(reduced(composed2, &h2_target), reduced(induced_h2(&gf).unwrap(), &h2_target));

    // Z/4 -> Z/2 on multipliers
    assert_eq!(h2(f.dom()).unwrap(), FgAbelianGroup::cyclic(4));
    assert_eq!(h2_target, FgAbelianGroup::cyclic(2));
    assert!(!reduced(induced_h2(&gf).unwrap(), &h2_target).is_zero());
}

#[test]
fn identity_induces_identity() {
    for (name, g) in corpus::small_groups().into_iter().take(14) {
        let g = Arc::new(g);
        let h = h2(&g).unwrap();
        let m = reduced(induced_h2(&GroupHom::identity(g.clone())).unwrap(), &h);
        assert_eq!(m, IntMatrix::identity(h.generator_count()), "{name}");
    }
}

#[test]
fn generator_chains_are_cycles_of_the_right_order() {
    for s in [StandardGroup::Klein4, StandardGroup::Dihedral(4), StandardGroup::Alternating(4)] {
        let g = Arc::new(s.build().unwrap());
        let sh = SecondHomology::new(g.clone()).unwrap();
        let group = sh.group();
        let idx = hopfbench::homology::BarIndex::new(g.clone());
        for (i, chain) in sh.generator_chains().iter().take(sh.torsion_len()).enumerate() {
            let mut boundary: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for ((x, y), c) in chain {
                for (j, v) in idx.d2(*x, *y) {
                    *boundary.entry(j).or_default() += c * BigInt::from(v);
                }
            }
            assert!(boundary.values().all(|v| *v == BigInt::from(0)), "{}", s.label());
            let ints: Vec<(usize, i64)> = chain
                .iter()
                .map(|((x, y), c)| (idx.two(*x, *y).unwrap(), i64::try_from(c).unwrap()))
                .collect();
            let coords = sh.cycle_coords(&ints);
            let mut unit = vec![BigInt::from(0); coords.len()];
            unit[i] = BigInt::from(1);
            let order = &group.torsion()[i];
            let normalise = |v: Vec<BigInt>| -> Vec<BigInt> {
                v.into_iter().zip(group.torsion()).map(|(a, m)| num_integer::Integer::mod_floor(&a, m)).collect()
            };
            assert_eq!(normalise(coords), unit, "{} generator {i} of order {order}", s.label());
        }
    }
}

#[test]
fn trivial_group_has_no_homology() {
    let t = FiniteGroup::trivial();
    assert!(h1(&t).unwrap().is_trivial() && h2(&t).unwrap().is_trivial());
}
