use std::collections::VecDeque;
use std::sync::Arc;

use super::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::linalg::FgAbelianGroup;
use crate::{Error, Result};

/// Homomorphism between finite groups, stored as the full element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: Arc<FiniteGroup>,
    cod: Arc<FiniteGroup>,
    images: Vec<u32>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupHom {
    /// Checks multiplicativity on `x * s` for every element `x` and every
    /// generator `s` of the domain, which implies it everywhere.
    pub fn new(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != dom.order() || images.iter().any(|&y| y >= cod.order()) {
            return Err(Error::NotAHomomorphism(format!(
                "expected {} images in 0..{}",
                dom.order(),
                cod.order()
            )));
        }
        if images[dom.identity()] != cod.identity() {
            return Err(Error::NotAHomomorphism("identity not preserved".into()));
        }
        for s in dom.generators() {
            for x in dom.elements() {
                if images[dom.mul(x, s)] != cod.mul(images[x], images[s]) {
                    return Err(Error::NotAHomomorphism(format!("f({x} * {s}) != f({x}) * f({s})")));
                }
            }
        }
        Ok(Self::new_unchecked(dom, cod, images))
    }

    pub(crate) fn new_unchecked(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        Self { dom, cod, images: images.into_iter().map(|x| x as u32).collect() }
    }

    /// Extends images of the domain's generators to a homomorphism.
    pub fn from_generator_images(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        let gens = dom.generators();
        if gens.len() != images.len() || images.iter().any(|&y| y >= cod.order()) {
            return Err(Error::NotAHomomorphism(format!("expected {} generator images", gens.len())));
        }
        let mut map = vec![usize::MAX; dom.order()];
        map[dom.identity()] = cod.identity();
        let mut queue = VecDeque::from([dom.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = dom.mul(x, s);
                let fy = cod.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                }
            }
        }
        Self::new(dom, cod, map)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let images = g.elements().collect();
        Self::new_unchecked(g.clone(), g, images)
    }

    /// The map sending everything to the identity.
    pub fn trivial(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>) -> Self {
        let images = vec![cod.identity(); dom.order()];
        Self::new_unchecked(dom, cod, images)
    }

    pub fn dom(&self) -> &Arc<FiniteGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroup> {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `g ∘ f`: first `f`, then `g`.
    pub fn compose(g: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
        if !same_group(&f.cod, &g.dom) {
            return Err(Error::DomainMismatch("codomain of the first map is not the domain of the second"));
        }
        let images = f.images.iter().map(|&x| g.apply(x as usize)).collect();
        Ok(Self::new_unchecked(f.dom.clone(), g.cod.clone(), images))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        Self::compose(next, self)
    }

    pub fn kernel(&self) -> Subgroup {
        let id = self.cod.identity();
        let els = self.dom.elements().filter(|&x| self.apply(x) == id).collect();
        Subgroup::from_elements(self.dom.order(), els)
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<usize> = self.dom.generators().iter().map(|&s| self.apply(s)).collect();
        self.cod.subgroup_generated(&gens)
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.dom.subgroup_generators(h).iter().map(|&s| self.apply(s)).collect();
        self.cod.subgroup_generated(&gens)
    }

    /// Full preimage of a subgroup of the codomain.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let els = self.dom.elements().filter(|&x| h.contains(self.apply(x))).collect();
        Subgroup::from_elements(self.dom.order(), els)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    /// Some preimage of every codomain element, or `None` if not onto.
    /// The identity is sent to the identity.
    pub fn preimages(&self) -> Option<Vec<usize>> {
        let mut s = vec![usize::MAX; self.cod.order()];
        s[self.cod.identity()] = self.dom.identity();
        for x in self.dom.elements() {
            let y = self.apply(x);
            if s[y] == usize::MAX {
                s[y] = x;
            }
        }
        (!s.contains(&usize::MAX)).then_some(s)
    }

    /// Restriction to a subgroup of the domain, as a map out of that
    /// subgroup viewed as a group.
    pub fn restrict(&self, h: &Subgroup) -> (GroupHom, GroupHom) {
        let (hg, emb) = self.dom.subgroup_as_group(h);
        let hg = Arc::new(hg);
        let incl = GroupHom::new_unchecked(hg.clone(), self.dom.clone(), emb.clone());
        let res = GroupHom::new_unchecked(hg, self.cod.clone(), emb.iter().map(|&x| self.apply(x)).collect());
        (res, incl)
    }

    /// Whether `self` is a homomorphism (full double loop).
    pub fn is_multiplicative(&self) -> bool {
        self.dom.elements().all(|a| {
            self.dom.elements().all(|b| self.apply(self.dom.mul(a, b)) == self.cod.mul(self.apply(a), self.apply(b)))
        })
    }
}

impl FiniteGroup {
    /// Quotient by a normal subgroup. Element 0 of the quotient is the
    /// coset of the identity.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        let order = std::iter::once(self.identity()).chain(self.elements().filter(|&x| x != self.identity()));
        for x in order {
            if coset[x] != usize::MAX {
                continue;
            }
            for &k in n.elements() {
                coset[self.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)] as u32;
            }
        }
        let mut gens: Vec<u32> = self.generators().iter().map(|&g| coset[g] as u32).filter(|&c| c != 0).collect();
        gens.dedup();
        let q = Arc::new(FiniteGroup::from_table_unchecked(m, table, 0, Some(gens)));
        let proj = GroupHom::new_unchecked(self.clone(), q.clone(), coset);
        Ok((q, proj))
    }

    /// `G / [G, G]` with its invariants and the quotient map.
    pub fn abelianization(self: &Arc<Self>) -> (FgAbelianGroup, Arc<FiniteGroup>, GroupHom) {
        let (q, proj) = self.quotient(&self.derived_subgroup()).expect("derived subgroup is normal");
        let inv = q.abelian_invariants().expect("abelianization is abelian");
        (inv, q, proj)
    }
}

/// Pullback `P = {(b, c) : f(b) = g(c)}` of two maps with common codomain.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub group: Arc<FiniteGroup>,
    pub pr1: GroupHom,
    pub pr2: GroupHom,
    /// `pairs[i]` is the element `(b, c)` of index `i`.
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    /// Index of the pair `(b, c)`, if it lies in the pullback.
    pub fn index_of(&self, b: usize, c: usize) -> Option<usize> {
        self.pairs.binary_search(&(b, c)).ok()
    }

    /// The unique map from a cone `(u: X -> B, v: X -> C)` into `P`.
    pub fn factor(&self, u: &GroupHom, v: &GroupHom) -> Option<GroupHom> {
        if !same_group(u.dom(), v.dom()) {
            return None;
        }
        let images: Option<Vec<usize>> = u.dom().elements().map(|x| self.index_of(u.apply(x), v.apply(x))).collect();
        Some(GroupHom::new_unchecked(u.dom().clone(), self.group.clone(), images?))
    }
}

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    pullback_with_cap(f, g, DEFAULT_ORDER_CAP)
}

pub fn pullback_with_cap(f: &GroupHom, g: &GroupHom, cap: usize) -> Result<Pullback> {
    if !same_group(f.cod(), g.cod()) {
        return Err(Error::DomainMismatch("pullback of maps with different codomains"));
    }
    let (b, c) = (f.dom(), g.dom());
    // fibres of g over each codomain element
    let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); f.cod().order()];
    for y in c.elements() {
        fibre[g.apply(y)].push(y);
    }
    let size: usize = b.elements().map(|x| fibre[f.apply(x)].len()).sum();
    if size > cap {
        return Err(Error::OrderLimitExceeded { what: "pullback", size, cap });
    }
    // pairs sorted lexicographically
    let mut pairs = Vec::with_capacity(size);
    for x in b.elements() {
        for &y in &fibre[f.apply(x)] {
            pairs.push((x, y));
        }
    }
    let mut index = vec![u32::MAX; b.order() * c.order()];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index[x * c.order() + y] = i as u32;
    }
    let n = pairs.len();
    let mut table = vec![0u32; n * n];
    for (i, &(x1, y1)) in pairs.iter().enumerate() {
        for (j, &(x2, y2)) in pairs.iter().enumerate() {
            table[i * n + j] = index[b.mul(x1, x2) * c.order() + c.mul(y1, y2)];
        }
    }
    let id = index[b.identity() * c.order() + c.identity()] as usize;
    let group = Arc::new(FiniteGroup::from_table_unchecked(n, table, id, None));
    let pr1 = GroupHom::new_unchecked(group.clone(), b.clone(), pairs.iter().map(|p| p.0).collect());
    let pr2 = GroupHom::new_unchecked(group.clone(), c.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { group, pr1, pr2, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::StandardGroup;

    fn build(s: StandardGroup) -> Arc<FiniteGroup> {
        Arc::new(s.build().unwrap())
    }

    fn sign(s3: &Arc<FiniteGroup>, c2: &Arc<FiniteGroup>) -> GroupHom {
        // generators of S3: a transposition and a 3-cycle
        GroupHom::from_generator_images(s3.clone(), c2.clone(), &[1, 0]).unwrap()
    }

    #[test]
    fn kernel_image_compose() {
        let s3 = build(StandardGroup::Symmetric(3));
        let c2 = build(StandardGroup::Cyclic(2));
        let f = sign(&s3, &c2);
        assert!(f.is_multiplicative());
        let k = f.kernel();
        assert_eq!(k.order(), 3);
        assert!(k.elements().iter().all(|&x| s3.element_order(x) != 2));
        assert!(f.is_surjective());
        assert!(GroupHom::identity(s3.clone()).kernel().is_trivial());
        assert!(GroupHom::trivial(s3.clone(), c2.clone()).image().is_trivial());
        let id = GroupHom::identity(c2.clone());
        assert_eq!(GroupHom::compose(&id, &f).unwrap(), f);
        assert!(matches!(GroupHom::compose(&f, &id), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn bad_generator_images_rejected() {
        let c4 = build(StandardGroup::Cyclic(4));
        let c3 = build(StandardGroup::Cyclic(3));
        assert!(GroupHom::from_generator_images(c4, c3, &[1]).is_err());
    }

    #[test]
    fn quotients() {
        let q8 = build(StandardGroup::Quaternion8);
        let (v, proj) = q8.quotient(&q8.center()).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.abelian_invariants().unwrap(), FgAbelianGroup::from_invariants(&[2, 2], 0));
        assert_eq!(proj.kernel(), q8.center());
        assert!(proj.is_multiplicative());
        let (same, p) = q8.quotient(&q8.trivial_subgroup()).unwrap();
        assert_eq!(same.order(), 8);
        assert!(p.is_isomorphism());
        let (triv, _) = q8.quotient(&q8.whole()).unwrap();
        assert_eq!(triv.order(), 1);
        let s3 = build(StandardGroup::Symmetric(3));
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(s3.quotient(&s3.subgroup_generated(&[t])).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn abelianizations() {
        let s3 = build(StandardGroup::Symmetric(3));
        assert_eq!(s3.abelianization().0, FgAbelianGroup::cyclic(2));
        let c6 = build(StandardGroup::Cyclic(6));
        assert_eq!(c6.abelianization().0, FgAbelianGroup::cyclic(6));
        let a5 = build(StandardGroup::Alternating(5));
        assert!(a5.abelianization().0.is_trivial());
    }

    #[test]
    fn pullbacks() {
        let s3 = build(StandardGroup::Symmetric(3));
        let c2 = build(StandardGroup::Cyclic(2));
        let f = sign(&s3, &c2);
        let p = pullback(&f, &f).unwrap();
        assert_eq!(p.group.order(), 18);
        assert!(p.pr1.is_multiplicative() && p.pr2.is_multiplicative());
        // jointly injective
        let mut seen: Vec<(usize, usize)> = p.group.elements().map(|x| (p.pr1.apply(x), p.pr2.apply(x))).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 18);

        let id = GroupHom::identity(c2.clone());
        let along_id = pullback(&f, &id).unwrap();
        assert_eq!(along_id.group.order(), 6);
        assert!(along_id.pr1.is_isomorphism());

        let one = build(StandardGroup::Cyclic(1));
        let c3 = build(StandardGroup::Cyclic(3));
        let prod = pullback(&GroupHom::trivial(c2.clone(), one.clone()), &GroupHom::trivial(c3, one)).unwrap();
        assert_eq!(prod.group.order(), 6);
        assert!(prod.group.is_abelian());

        // universal property against the diagonal cone
        let diag = p.factor(&GroupHom::identity(s3.clone()), &GroupHom::identity(s3.clone())).unwrap();
        assert!(diag.is_multiplicative());
        assert!(diag.is_injective());
        // pullback of a surjection is a surjection
        assert!(along_id.pr2.is_surjective());
    }
}
