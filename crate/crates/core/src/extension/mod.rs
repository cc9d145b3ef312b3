//! Extensions (surjective homomorphisms) relative to a reflector.
//!
//! A reflector `I` sends a group `G` to `G / J G`, where `J G` is the
//! kernel of the unit `η_G`. The three supported reflectors are
//! abelianisation (`J G = [G, G]`), the identity (`J G = 1`) and the zero
//! reflector (`J G = G`).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{pullback, FiniteGroup, GroupHom, Pullback, Subgroup};
use crate::linalg::FgAbelianGroup;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reflector {
    Abelianization,
    Identity,
    Zero,
}

impl Reflector {
    pub const ALL: [Reflector; 3] = [Reflector::Abelianization, Reflector::Identity, Reflector::Zero];

    /// `J G`, the kernel of the unit at `G`.
    pub fn radical(&self, g: &FiniteGroup) -> Subgroup {
        match self {
            Reflector::Abelianization => g.derived_subgroup(),
            Reflector::Identity => g.trivial_subgroup(),
            Reflector::Zero => g.whole(),
        }
    }

    /// The unit `η_G: G -> I G`.
    pub fn unit(&self, g: &Arc<FiniteGroup>) -> (Arc<FiniteGroup>, GroupHom) {
        g.quotient(&self.radical(g)).expect("radical is normal")
    }

    /// Whether `g` lies in the subcategory the reflector lands in.
    pub fn contains(&self, g: &FiniteGroup) -> bool {
        match self {
            Reflector::Abelianization => g.is_abelian(),
            Reflector::Identity => true,
            Reflector::Zero => g.order() == 1,
        }
    }

    /// The normal subgroup of `b` killed by centralising an extension with
    /// kernel `k`: `[K, B]`, `1` or `K`.
    pub fn central_part(&self, b: &FiniteGroup, k: &Subgroup) -> Subgroup {
        match self {
            Reflector::Abelianization => b.commutator_subgroup_pair(k, &b.whole()),
            Reflector::Identity => b.trivial_subgroup(),
            Reflector::Zero => k.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Reflector::Abelianization => "abelianization",
            Reflector::Identity => "identity",
            Reflector::Zero => "zero",
        }
    }
}

/// A surjective homomorphism `f: B -> A` with its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    map: GroupHom,
    kernel: Subgroup,
}

impl Extension {
    pub fn new(map: GroupHom) -> Result<Self> {
        if !map.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let kernel = map.kernel();
        Ok(Self { map, kernel })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        Self::new(GroupHom::identity(g)).expect("identity is onto")
    }

    /// `G -> G / N`.
    pub fn from_quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Self> {
        Self::new(g.quotient(n)?.1)
    }

    pub fn map(&self) -> &GroupHom {
        &self.map
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn dom(&self) -> &Arc<FiniteGroup> {
        self.map.dom()
    }

    pub fn cod(&self) -> &Arc<FiniteGroup> {
        self.map.cod()
    }

    /// A set-theoretic section sending the identity to the identity.
    pub fn section(&self) -> Vec<usize> {
        self.map.preimages().expect("extension is onto")
    }

    /// Whether some section is a homomorphism. Brute force over the choices
    /// of generator lifts.
    pub fn is_split(&self) -> bool {
        let a = self.cod();
        let gens = a.generators();
        let fibres: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| self.dom().elements().filter(|&x| self.map.apply(x) == g).collect())
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&fibres).map(|(&c, f)| f[c]).collect();
            if GroupHom::from_generator_images(a.clone(), self.dom().clone(), &images).is_ok() {
                return true;
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return false;
                }
                choice[i] += 1;
                if choice[i] < fibres[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// Quotient of `f` by a normal subgroup `n` of `B` contained in `K[f]`,
/// returned with the quotient map `B -> B / n`.
fn quotient_over(f: &Extension, n: &Subgroup) -> (Extension, GroupHom) {
    let (q, rho) = f.dom().quotient(n).expect("normal subgroup");
    let images: Vec<usize> = rho.preimages().unwrap().into_iter().map(|b| f.map.apply(b)).collect();
    let map = GroupHom::new(q, f.cod().clone(), images).expect("n lies in the kernel");
    (Extension::new(map).expect("still onto"), rho)
}

/// Centralisation `I₁ f: B / [K, B] -> A` (abelianisation), `f` itself
/// (identity) or `B / K -> A` (zero), with the quotient map `ρ: B -> B / ·`.
pub fn centralise(f: &Extension, r: Reflector) -> (Extension, GroupHom) {
    let n = r.central_part(f.dom(), f.kernel());
    quotient_over(f, &n)
}

/// Centralisation through the kernel pair: build `R[f]` as a pullback,
/// intersect `J R[f]` with the kernel of the first projection, push the
/// result along the second projection and quotient by it.
pub fn centralise_via_kernel_pair(f: &Extension, r: Reflector) -> Result<(Extension, GroupHom)> {
    let Pullback { group: rf, pr1, pr2, .. } = pullback(f.map(), f.map())?;
    let j = r.radical(&rf);
    let j1 = pr1.kernel().intersection(&j);
    let pushed = pr2.image_of(&j1);
    Ok(quotient_over(f, &pushed))
}

/// `I f: I B -> I A`, the reflection of both ends.
pub fn reflect(f: &Extension, r: Reflector) -> (GroupHom, GroupHom, GroupHom) {
    let (ib, eta_b) = r.unit(f.dom());
    let (ia, eta_a) = r.unit(f.cod());
    let images: Vec<usize> = eta_b.preimages().unwrap().into_iter().map(|b| eta_a.apply(f.map.apply(b))).collect();
    let i_f = GroupHom::new(ib, ia, images).expect("units are natural");
    (i_f, eta_b, eta_a)
}

/// Trivialisation data of an extension.
#[derive(Debug, Clone)]
pub struct Trivialisation {
    /// `T₁ f: T₁[f] -> A`, the pullback of `I f` along `η_A`.
    pub extension: Extension,
    /// `r¹_f`: from the domain of the centralisation to `T₁[f]`.
    pub comparison: GroupHom,
    /// The composite `B -> T₁[f]`, `b -> (f(b), η_B(b))`.
    pub unit_comparison: GroupHom,
    /// The centralisation the comparison starts from.
    pub centralisation: Extension,
}

pub fn trivialise(f: &Extension, r: Reflector) -> Result<Trivialisation> {
    let (i_f, eta_b, eta_a) = reflect(f, r);
    let pb = pullback(&eta_a, &i_f)?;
    let extension = Extension::new(pb.pr1.clone()).expect("pullback of an onto map along a map is onto");
    let unit_comparison = pb
        .factor(f.map(), &eta_b)
        .expect("(f, η_B) is a cone over (η_A, I f)");
    let (centralisation, rho) = centralise(f, r);
    let images: Vec<usize> = rho.preimages().unwrap().into_iter().map(|b| unit_comparison.apply(b)).collect();
    let comparison = GroupHom::new(rho.cod().clone(), pb.group.clone(), images).map_err(|_| {
        Error::InvariantViolated("comparison does not factor through the centralisation".into())
    })?;
    Ok(Trivialisation { extension, comparison, unit_comparison, centralisation })
}

/// Central relative to `r`: `[K, B] = 1`, always, or `K = 1`.
pub fn is_central(f: &Extension, r: Reflector) -> bool {
    r.central_part(f.dom(), f.kernel()).is_trivial()
}

/// Whether `B -> T₁[f]` is an isomorphism.
pub fn is_trivial(f: &Extension, r: Reflector) -> Result<bool> {
    Ok(trivialise(f, r)?.unit_comparison.is_isomorphism())
}

/// `(J B ∩ K[f]) / J₁[f]` with `J₁[f]` the subgroup killed by
/// centralisation; for abelianisation `([B, B] ∩ K) / [K, B]`.
pub fn hopf_quotient(f: &Extension, r: Reflector) -> FgAbelianGroup {
    let b = f.dom();
    let num = r.radical(b).intersection(f.kernel());
    let den = r.central_part(b, f.kernel());
    let (ng, emb) = b.subgroup_as_group(&num);
    let ng = Arc::new(ng);
    let den_in_num: Vec<usize> = emb.iter().enumerate().filter(|(_, &x)| den.contains(x)).map(|(i, _)| i).collect();
    let den_sub = ng.subgroup_generated(&den_in_num);
    let (q, _) = ng.quotient(&den_sub).expect("J₁ is normal in B");
    q.abelian_invariants().expect("Hopf quotient is abelian")
}

/// Commutative square of extensions
///
/// ```text
///   B' --top--> B
///   |           |
///  left       right
///   v           v
///   A' -bottom-> A
/// ```
#[derive(Debug, Clone)]
pub struct ExtensionSquare {
    pub top: GroupHom,
    pub bottom: GroupHom,
    pub left: GroupHom,
    pub right: GroupHom,
}

impl ExtensionSquare {
    pub fn commutes(&self) -> bool {
        match (GroupHom::compose(&self.right, &self.top), GroupHom::compose(&self.bottom, &self.left)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// The comparison `B' -> A' ×_A B`.
    pub fn comparison(&self) -> Result<(Pullback, GroupHom)> {
        let pb = pullback(&self.bottom, &self.right)?;
        let cmp = pb.factor(&self.left, &self.top).ok_or(Error::NotCommutative)?;
        Ok((pb, cmp))
    }
}

/// All four sides and the comparison to the pullback are surjective.
pub fn is_double_extension(sq: &ExtensionSquare) -> Result<bool> {
    if !sq.commutes() {
        return Err(Error::NotCommutative);
    }
    let sides = [&sq.top, &sq.bottom, &sq.left, &sq.right];
    if !sides.iter().all(|h| h.is_surjective()) {
        return Ok(false);
    }
    Ok(sq.comparison()?.1.is_surjective())
}

/// Classification used by reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    Trivial,
    CentralNotTrivial,
    NonCentral,
}

pub fn classify(f: &Extension, r: Reflector) -> Result<ExtensionKind> {
    Ok(if is_trivial(f, r)? {
        ExtensionKind::Trivial
    } else if is_central(f, r) {
        ExtensionKind::CentralNotTrivial
    } else {
        ExtensionKind::NonCentral
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::StandardGroup;

    fn arc(s: StandardGroup) -> Arc<FiniteGroup> {
        Arc::new(s.build().unwrap())
    }

    fn q8_onto_v4() -> Extension {
        let q8 = arc(StandardGroup::Quaternion8);
        Extension::from_quotient(&q8, &q8.center()).unwrap()
    }

    fn sign() -> Extension {
        let s3 = arc(StandardGroup::Symmetric(3));
        Extension::from_quotient(&s3, &s3.derived_subgroup()).unwrap()
    }

    fn c6_onto_c3() -> Extension {
        let c6 = arc(StandardGroup::Cyclic(6));
        let two = c6.subgroup_generated(&[3]);
        Extension::from_quotient(&c6, &two).unwrap()
    }

    #[test]
    fn centralisation_examples() {
        let (c, _) = centralise(&sign(), Reflector::Abelianization);
        assert_eq!((c.dom().order(), c.cod().order()), (2, 2));
        assert!(c.kernel().is_trivial());
        let (c, _) = centralise(&q8_onto_v4(), Reflector::Abelianization);
        assert_eq!(c.dom().order(), 8);
        for f in [sign(), q8_onto_v4()] {
            let (c, _) = centralise(&f, Reflector::Identity);
            assert_eq!(c.map().images(), f.map().images());
        }
    }

    #[test]
    fn kernel_pair_route_agrees() {
        for f in [sign(), q8_onto_v4(), c6_onto_c3(), Extension::identity(arc(StandardGroup::Cyclic(3)))] {
            for r in Reflector::ALL {
                let (a, rho_a) = centralise(&f, r);
                let (b, rho_b) = centralise_via_kernel_pair(&f, r).unwrap();
                assert_eq!(rho_a.kernel(), rho_b.kernel(), "{r:?}");
                assert_eq!(a.kernel().order(), b.kernel().order());
            }
        }
    }

    #[test]
    fn trivialisation_examples() {
        let t = trivialise(&sign(), Reflector::Abelianization).unwrap();
        assert_eq!(t.extension.dom().order(), 2);
        assert!(t.comparison.is_isomorphism());
        assert!(is_trivial(&c6_onto_c3(), Reflector::Abelianization).unwrap());
        let t = trivialise(&c6_onto_c3(), Reflector::Abelianization).unwrap();
        assert_eq!(t.extension.dom().order(), 6);
        assert!(!is_trivial(&q8_onto_v4(), Reflector::Abelianization).unwrap());
        let one = Extension::identity(Arc::new(FiniteGroup::trivial()));
        assert!(is_trivial(&one, Reflector::Abelianization).unwrap());
        assert!(trivialise(&q8_onto_v4(), Reflector::Abelianization).unwrap().comparison.is_surjective());
    }

    #[test]
    fn centrality_and_hopf_quotient() {
        assert!(is_central(&q8_onto_v4(), Reflector::Abelianization));
        assert!(!is_central(&sign(), Reflector::Abelianization));
        assert_eq!(hopf_quotient(&q8_onto_v4(), Reflector::Abelianization), FgAbelianGroup::cyclic(2));
        assert!(hopf_quotient(&sign(), Reflector::Abelianization).is_trivial());
        let id = Extension::identity(arc(StandardGroup::Quaternion8));
        assert!(hopf_quotient(&id, Reflector::Abelianization).is_trivial());
        assert_eq!(classify(&sign(), Reflector::Abelianization).unwrap(), ExtensionKind::NonCentral);
        assert_eq!(classify(&q8_onto_v4(), Reflector::Abelianization).unwrap(), ExtensionKind::CentralNotTrivial);
        assert_eq!(classify(&c6_onto_c3(), Reflector::Abelianization).unwrap(), ExtensionKind::Trivial);
    }

    #[test]
    fn hopf_quotient_is_kernel_of_comparison() {
        for f in [sign(), q8_onto_v4(), c6_onto_c3()] {
            let t = trivialise(&f, Reflector::Abelianization).unwrap();
            let h = hopf_quotient(&f, Reflector::Abelianization);
            assert_eq!(num_bigint::BigInt::from(t.comparison.kernel().order()), h.order().unwrap());
        }
    }

    #[test]
    fn double_extensions() {
        let g = arc(StandardGroup::Symmetric(3));
        let id = GroupHom::identity(g.clone());
        let sq = ExtensionSquare { top: id.clone(), bottom: id.clone(), left: id.clone(), right: id };
        assert!(is_double_extension(&sq).unwrap());

        let f = sign();
        let c2 = f.cod().clone();
        let idc = GroupHom::identity(c2.clone());
        // B' = S3 ×_C2 S3 itself: comparison is the identity
        let pb = pullback(f.map(), f.map()).unwrap();
        let sq = ExtensionSquare { top: pb.pr2.clone(), bottom: f.map().clone(), left: pb.pr1.clone(), right: f.map().clone() };
        assert!(is_double_extension(&sq).unwrap());

        // pullback along an identity: C2 ×_C2 S3 ≅ S3
        let sq = ExtensionSquare { top: GroupHom::identity(f.dom().clone()), bottom: idc.clone(), left: f.map().clone(), right: f.map().clone() };
        assert!(is_double_extension(&sq).unwrap());

        // over the trivial group the pullback is C2 x C2, but S3 only
        // reaches the diagonal
        let one = Arc::new(FiniteGroup::trivial());
        let to_one = GroupHom::trivial(c2.clone(), one);
        let sq = ExtensionSquare { top: f.map().clone(), bottom: to_one.clone(), left: f.map().clone(), right: to_one };
        assert!(!is_double_extension(&sq).unwrap());

        let bad = ExtensionSquare { top: f.map().clone(), bottom: idc.clone(), left: GroupHom::trivial(f.dom().clone(), c2), right: idc };
        assert_eq!(is_double_extension(&bad), Err(Error::NotCommutative));
    }

    #[test]
    fn split_detection() {
        assert!(sign().is_split());
        assert!(c6_onto_c3().is_split());
        assert!(!q8_onto_v4().is_split());
    }
}
