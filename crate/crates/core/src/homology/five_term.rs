//! Induced maps on `H_1`, `H_2`, the connecting map `δ²` and the five-term
//! exact sequence of an extension `f: B -> A`:
//!
//! ```text
//! H_2 B --H_2 f--> H_2 A --δ²--> K/[K,B] --γ¹--> H_1 B --H_1 f--> H_1 A --> 0
//! ```
//!
//! All matrices use the row convention: row `i` is the image of canonical
//! generator `i` of the source, in canonical coordinates of the target.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bar::{FirstHomology, SecondHomology};
use crate::extension::{Extension, Reflector};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::linalg::{is_exact_at, reduce_coords, AbHom, FgAbelianGroup, IntMatrix, PresentedAbGroup};
use crate::{Error, Result};

fn matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    IntMatrix::from_big_rows(cols, rows)
}

fn h1_map(src: &FirstHomology, dst: &FirstHomology, f: &GroupHom) -> IntMatrix {
    let rows = src
        .generator_chains()
        .iter()
        .map(|chain| {
            let mut c = vec![BigInt::zero(); dst.group().generator_count()];
            for (x, k) in chain {
                for (ci, v) in c.iter_mut().zip(dst.class_of(f.apply(*x))) {
                    *ci += k * v;
                }
            }
            reduce_coords(dst.group(), &mut c);
            c
        })
        .collect();
    matrix(rows, dst.group().generator_count())
}

fn h2_map(src: &SecondHomology, dst: &SecondHomology, f: &GroupHom) -> IntMatrix {
    let rows = src
        .generator_chains()
        .iter()
        .take(src.torsion_len())
        .map(|chain| {
            let image: Vec<(usize, i64)> = chain
                .iter()
                .filter_map(|((g, h), k)| {
                    let k = i64::try_from(k).expect("small chain coefficient");
                    dst.index.two(f.apply(*g), f.apply(*h)).map(|i| (i, k))
                })
                .collect();
            dst.cycle_coords(&image)
        })
        .collect();
    matrix(rows, dst.torsion_len())
}

/// `H_1 f` on canonical bases.
pub fn induced_h1(f: &GroupHom) -> Result<IntMatrix> {
    let src = FirstHomology::new(f.dom().clone())?;
    let dst = FirstHomology::new(f.cod().clone())?;
    Ok(h1_map(&src, &dst, f))
}

/// `H_2 f` on canonical bases, from `[g|h] -> [f g|f h]`.
pub fn induced_h2(f: &GroupHom) -> Result<IntMatrix> {
    let src = SecondHomology::new(f.dom().clone())?;
    let dst = SecondHomology::new(f.cod().clone())?;
    Ok(h2_map(&src, &dst, f))
}

/// `K / [K, B]` for a normal subgroup `K` of `B`, with coordinates.
#[derive(Debug, Clone)]
pub struct CentralQuotient {
    pub group: FgAbelianGroup,
    /// Coordinates of each element of `B`, `None` outside `K`.
    coords: Vec<Option<Vec<BigInt>>>,
    /// Elements of `K` representing the canonical generators.
    pub representatives: Vec<usize>,
}

impl CentralQuotient {
    pub fn new(b: &FiniteGroup, k: &Subgroup) -> Self {
        let (kg, emb) = b.subgroup_as_group(k);
        let kg = Arc::new(kg);
        let mut pos = vec![usize::MAX; b.order()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let kb = Reflector::Abelianization.central_part(b, k);
        let inner = kg.subgroup_generated(&kb.elements().iter().map(|&x| pos[x]).collect::<Vec<_>>());
        let (q, proj) = kg.quotient(&inner).expect("[K,B] is normal in K");
        let ac = q.abelian_coordinates().expect("K/[K,B] is abelian");
        let mut coords = vec![None; b.order()];
        for (i, &x) in emb.iter().enumerate() {
            coords[x] = Some(ac.coords[proj.apply(i)].clone());
        }
        let representatives = ac
            .basis
            .iter()
            .map(|&t| emb[kg.elements().find(|&i| proj.apply(i) == t).expect("projection is onto")])
            .collect();
        Self { group: ac.invariants, coords, representatives }
    }

    /// Coordinates of an element of `K`.
    pub fn coords(&self, x: usize) -> Option<&[BigInt]> {
        self.coords[x].as_deref()
    }
}

fn check_section(f: &Extension, section: &[usize]) -> Result<()> {
    let (b, a) = (f.dom(), f.cod());
    if section.len() != a.order() {
        return Err(Error::BadSection(format!("expected {} values, got {}", a.order(), section.len())));
    }
    if section[a.identity()] != b.identity() {
        return Err(Error::BadSection("identity must map to identity".into()));
    }
    for (x, &s) in section.iter().enumerate() {
        if s >= b.order() || f.map().apply(s) != x {
            return Err(Error::BadSection(format!("value at {x} is not a preimage")));
        }
    }
    Ok(())
}

fn delta2_with(h2a: &SecondHomology, kq: &CentralQuotient, f: &Extension, section: &[usize]) -> Result<IntMatrix> {
    check_section(f, section)?;
    let b = f.dom();
    let a = f.cod();
    let rows = h2a
        .generator_chains()
        .iter()
        .take(h2a.torsion_len())
        .map(|chain| {
            let mut c = vec![BigInt::zero(); kq.group.generator_count()];
            for ((x, y), n) in chain {
                let lift = b.mul(b.mul(section[*x], section[*y]), b.inv(section[a.mul(*x, *y)]));
                let v = kq.coords(lift).expect("lifting defect lies in the kernel");
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci += n * vi;
                }
            }
            reduce_coords(&kq.group, &mut c);
            c
        })
        .collect();
    Ok(matrix(rows, kq.group.generator_count()))
}

/// `δ²: H_2 A -> K/[K,B]`, sending a cycle `sum n (a|a')` to the class of
/// `prod (s(a) s(a') s(a a')^-1)^n`.
pub fn connecting_delta2(f: &Extension, section: &[usize]) -> Result<IntMatrix> {
    let h2a = SecondHomology::new(f.cod().clone())?;
    let kq = CentralQuotient::new(f.dom(), f.kernel());
    delta2_with(&h2a, &kq, f, section)
}

/// `γ¹: K/[K,B] -> H_1 B`, induced by the inclusion of the kernel.
fn gamma1_with(kq: &CentralQuotient, h1b: &FirstHomology) -> IntMatrix {
    let rows = kq.representatives.iter().map(|&k| h1b.class_of(k)).collect();
    matrix(rows, h1b.group().generator_count())
}

/// The five groups and four maps of the sequence.
#[derive(Debug, Clone)]
pub struct FiveTermSequence {
    pub h2b: FgAbelianGroup,
    pub h2a: FgAbelianGroup,
    /// `K[I_1 f] = K / [K, B]`.
    pub ki1f: FgAbelianGroup,
    pub h1b: FgAbelianGroup,
    pub h1a: FgAbelianGroup,
    pub h2f: IntMatrix,
    pub delta2: IntMatrix,
    pub gamma1: IntMatrix,
    pub h1f: IntMatrix,
}

pub fn five_term(f: &Extension) -> Result<FiveTermSequence> {
    let (b, a) = (f.dom().clone(), f.cod().clone());
    let h2b = SecondHomology::new(b.clone())?;
    let h2a = SecondHomology::new(a.clone())?;
    let h1b = FirstHomology::new(b)?;
    let h1a = FirstHomology::new(a)?;
    let kq = CentralQuotient::new(f.dom(), f.kernel());
    Ok(FiveTermSequence {
        h2f: h2_map(&h2b, &h2a, f.map()),
        delta2: delta2_with(&h2a, &kq, f, &f.section())?,
        gamma1: gamma1_with(&kq, &h1b),
        h1f: h1_map(&h1b, &h1a, f.map()),
        h2b: h2b.group(),
        h2a: h2a.group(),
        ki1f: kq.group,
        h1b: h1b.group().clone(),
        h1a: h1a.group().clone(),
    })
}

/// Exactness at `H_2 A`, `K[I_1 f]`, `H_1 B`, and surjectivity onto `H_1 A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exactness {
    pub exact: [bool; 3],
    pub surjective_end: bool,
}

impl Exactness {
    pub fn holds(&self) -> bool {
        self.exact.iter().all(|&e| e) && self.surjective_end
    }
}

impl FiveTermSequence {
    fn hom(src: &FgAbelianGroup, dst: &FgAbelianGroup, m: &IntMatrix) -> AbHom {
        AbHom::new(PresentedAbGroup::from_group(src), PresentedAbGroup::from_group(dst), m.clone())
    }

    /// The four maps as homomorphisms of presented groups.
    pub fn maps(&self) -> [AbHom; 4] {
        [
            Self::hom(&self.h2b, &self.h2a, &self.h2f),
            Self::hom(&self.h2a, &self.ki1f, &self.delta2),
            Self::hom(&self.ki1f, &self.h1b, &self.gamma1),
            Self::hom(&self.h1b, &self.h1a, &self.h1f),
        ]
    }

    pub fn check_exactness(&self) -> Exactness {
        let [m0, m1, m2, m3] = self.maps();
        Exactness {
            exact: [is_exact_at(&m0, &m1), is_exact_at(&m1, &m2), is_exact_at(&m2, &m3)],
            surjective_end: m3.is_surjective(),
        }
    }

    pub fn report(&self) -> FiveTermReport {
        let inv = |g: &FgAbelianGroup| g.torsion().iter().map(|d| d.to_string()).collect();
        let e = self.check_exactness();
        FiveTermReport {
            h2b: inv(&self.h2b),
            h2a: inv(&self.h2a),
            ki1f: inv(&self.ki1f),
            h1b: inv(&self.h1b),
            h1a: inv(&self.h1a),
            exact: e.exact,
            surjective_end: e.surjective_end,
        }
    }
}

/// Serialized form: invariant factors of each group, and exactness flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveTermReport {
    #[serde(rename = "H2B")]
    pub h2b: Vec<String>,
    #[serde(rename = "H2A")]
    pub h2a: Vec<String>,
    #[serde(rename = "KI1f")]
    pub ki1f: Vec<String>,
    #[serde(rename = "H1B")]
    pub h1b: Vec<String>,
    #[serde(rename = "H1A")]
    pub h1a: Vec<String>,
    pub exact: [bool; 3],
    pub surjective_end: bool,
}

/// Convenience for [`FiveTermSequence::check_exactness`].
pub fn check_exactness(seq: &FiveTermSequence) -> Exactness {
    seq.check_exactness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::StandardGroup;

    fn arc(s: StandardGroup) -> Arc<FiniteGroup> {
        Arc::new(s.build().unwrap())
    }

    fn q8_mod_center() -> Extension {
        let q8 = arc(StandardGroup::Quaternion8);
        Extension::from_quotient(&q8, &q8.center()).unwrap()
    }

    #[test]
    fn q8_over_klein() {
        let f = q8_mod_center();
        let seq = five_term(&f).unwrap();
        assert!(seq.h2b.is_trivial());
        assert_eq!(seq.h2a, FgAbelianGroup::cyclic(2));
        assert_eq!(seq.ki1f, FgAbelianGroup::cyclic(2));
        assert_eq!(seq.h1b, FgAbelianGroup::from_invariants(&[2, 2], 0));
        assert_eq!(seq.delta2, IntMatrix::from_rows(1, &[[1]]));
        assert!(seq.check_exactness().holds());
    }

    #[test]
    fn identity_extension_is_exact() {
        let f = Extension::identity(arc(StandardGroup::Dihedral(4)));
        let seq = five_term(&f).unwrap();
        assert!(seq.ki1f.is_trivial());
        assert!(seq.check_exactness().holds());
        assert_eq!(seq.h1f, IntMatrix::identity(2));
    }

    #[test]
    fn sign_of_s3() {
        let s3 = arc(StandardGroup::Symmetric(3));
        let f = Extension::from_quotient(&s3, &s3.derived_subgroup()).unwrap();
        let r = five_term(&f).unwrap().report();
        assert_eq!(r.h1b, vec!["2"]);
        assert!(r.h2a.is_empty() && r.ki1f.is_empty());
        assert_eq!(r.exact, [true; 3]);
        assert!(r.surjective_end);
    }

    #[test]
    fn split_central_has_zero_delta() {
        let g = arc(StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(4), StandardGroup::Cyclic(2)]));
        // kernel is the C2 factor: elements (0, b) have index 4 b
        let k = g.subgroup_generated(&[4]);
        let f = Extension::from_quotient(&g, &k).unwrap();
        assert!(connecting_delta2(&f, &f.section()).unwrap().is_zero());
    }

    #[test]
    fn bad_sections_are_rejected() {
        let f = q8_mod_center();
        let mut s = f.section();
        s[0] = 1;
        assert!(matches!(connecting_delta2(&f, &s), Err(Error::BadSection(_))));
        let mut s = f.section();
        s[1] = f.dom().identity();
        assert!(matches!(connecting_delta2(&f, &s), Err(Error::BadSection(_))));
    }

    #[test]
    fn induced_maps() {
        let c2 = arc(StandardGroup::Cyclic(2));
        let v4 = arc(StandardGroup::Klein4);
        let inc = GroupHom::from_generator_images(c2.clone(), v4, &[1]).unwrap();
        assert!(induced_h2(&inc).unwrap().rows() == 0);
        let id = GroupHom::identity(arc(StandardGroup::Cyclic(6)));
        assert_eq!(induced_h1(&id).unwrap(), IntMatrix::identity(1));
    }
}
