use super::FiniteGroup;

/// Subgroup of a [`FiniteGroup`] stored as its sorted element set.
///
/// The parent group is not stored; operations take it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_elements(parent_order: usize, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { parent_order, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let els = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_elements(self.parent_order, els)
    }

    /// Membership mask indexed by element.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent_order];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }
}

impl FiniteGroup {
    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.order(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self.order(), vec![self.identity()])
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_elements(self.order(), self.closure(gens))
    }

    /// Subgroup generated by `candidates`, adding a candidate as generator
    /// only when it is not already inside.
    fn generate_incrementally(&self, candidates: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        for c in candidates {
            if !inside[c] {
                gens.push(c);
                for y in self.closure(&gens) {
                    inside[y] = true;
                }
            }
        }
        Subgroup::from_elements(self.order(), self.elements().filter(|&x| inside[x]).collect())
    }

    /// A short generating list of `h`.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        for &c in h.elements() {
            if !inside[c] {
                gens.push(c);
                for y in self.closure(&gens) {
                    inside[y] = true;
                }
            }
        }
        gens
    }

    /// `[H, K]`, generated by the commutators `h k h^-1 k^-1`.
    pub fn commutator_subgroup_pair(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut comms = Vec::new();
        for &a in h.elements() {
            for &b in k.elements() {
                let c = self.commutator(a, b);
                if !std::mem::replace(&mut seen[c], true) {
                    comms.push(c);
                }
            }
        }
        self.generate_incrementally(comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup_pair(&w, &w)
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut conj = Vec::new();
        for &x in s {
            for g in self.elements() {
                let c = self.conjugate(g, x);
                if !std::mem::replace(&mut seen[c], true) {
                    conj.push(c);
                }
            }
        }
        self.generate_incrementally(conj)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.subgroup_generators(h);
        self.generators().iter().all(|&g| gens.iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    pub fn is_subgroup(&self, els: &[usize]) -> bool {
        let mut mask = vec![false; self.order()];
        for &x in els {
            mask[x] = true;
        }
        mask[self.identity()] && els.iter().all(|&a| els.iter().all(|&b| mask[self.mul(a, b)]))
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let els = self.elements().filter(|&x| gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g))).collect();
        Subgroup::from_elements(self.order(), els)
    }

    /// Elements commuting with every element of `h`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(h);
        let els = self.elements().filter(|&x| gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g))).collect();
        Subgroup::from_elements(self.order(), els)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().is_whole()
    }

    /// Whether every pair of elements of `h` commutes.
    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = self.subgroup_generators(h);
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup `h` as a group in its own right, with the inclusion
    /// as element list (`embedding[i]` is the parent element of index `i`).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let els = h.elements().to_vec();
        let n = els.len();
        let mut pos = vec![u32::MAX; self.order()];
        for (i, &x) in els.iter().enumerate() {
            pos[x] = i as u32;
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                table[i * n + j] = pos[self.mul(a, b)];
            }
        }
        let id = pos[self.identity()] as usize;
        (FiniteGroup::from_table_unchecked(n, table, id, None), els)
    }
}
