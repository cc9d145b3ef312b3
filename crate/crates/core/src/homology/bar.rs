//! Normalized bar complex of a finite group with trivial integer
//! coefficients.
//!
//! Basis of `C_k`: tuples `[g_1|...|g_k]` of non-identity elements.
//! Boundaries, with tuples containing the identity read as zero:
//!
//! ```text
//! d[g]       = 0
//! d[g|h]     = [h] - [gh] + [g]
//! d[g|h|k]   = [h|k] - [gh|k] + [g|hk] - [g|h]
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::FiniteGroup;
use crate::linalg::{normalize_sparse, FgAbelianGroup, IntMatrix, SparseCokernel, SparseVec};
use crate::{Error, Result};

/// Order cap for building the full complex up to degree 3.
pub const BAR_ORDER_CAP: usize = 64;
/// Order cap for the second homology through generator-restricted relations.
pub const H2_ORDER_CAP: usize = 660;

/// Largest dense boundary matrix handed out, in entries.
const DENSE_ENTRY_CAP: usize = 1 << 22;

/// Indexing of normalized bar tuples.
#[derive(Debug, Clone)]
pub struct BarIndex {
    pub group: Arc<FiniteGroup>,
    /// Non-identity elements in increasing order.
    pub nonid: Vec<usize>,
    /// Position of each element in `nonid`; `usize::MAX` for the identity.
    pub pos: Vec<usize>,
}

impl BarIndex {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let nonid: Vec<usize> = group.elements().filter(|&x| x != group.identity()).collect();
        let mut pos = vec![usize::MAX; group.order()];
        for (i, &x) in nonid.iter().enumerate() {
            pos[x] = i;
        }
        Self { group, nonid, pos }
    }

    /// Rank of `C_1`.
    pub fn m(&self) -> usize {
        self.nonid.len()
    }

    /// Index of `[g]`, `None` for the identity.
    pub fn one(&self, g: usize) -> Option<usize> {
        (g != self.group.identity()).then(|| self.pos[g])
    }

    /// Index of `[g|h]`, `None` if either is the identity.
    pub fn two(&self, g: usize, h: usize) -> Option<usize> {
        Some(self.one(g)? * self.m() + self.one(h)?)
    }

    /// The pair `(g, h)` of basis element `i` of `C_2`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (self.nonid[i / self.m()], self.nonid[i % self.m()])
    }

    pub fn d2(&self, g: usize, h: usize) -> SparseVec {
        let gr = &self.group;
        let mut v = Vec::with_capacity(3);
        let mut push = |x: Option<usize>, c: i64| {
            if let Some(i) = x {
                v.push((i, c));
            }
        };
        push(self.one(h), 1);
        push(self.one(gr.mul(g, h)), -1);
        push(self.one(g), 1);
        normalize_sparse(v)
    }

    pub fn d3(&self, g: usize, h: usize, k: usize) -> SparseVec {
        let gr = &self.group;
        let mut v = Vec::with_capacity(4);
        let mut push = |x: Option<usize>, c: i64| {
            if let Some(i) = x {
                v.push((i, c));
            }
        };
        push(self.two(h, k), 1);
        push(self.two(gr.mul(g, h), k), -1);
        push(self.two(g, gr.mul(h, k)), 1);
        push(self.two(g, h), -1);
        normalize_sparse(v)
    }

    /// `d` of all of `C_2`, row `i` for basis element `i`.
    pub fn boundary2(&self) -> Vec<SparseVec> {
        (0..self.m() * self.m()).map(|i| {
            let (g, h) = self.pair(i);
            self.d2(g, h)
        }).collect()
    }

    /// `d[g|h|s]` for all `g, h` and `s` among the group's generators.
    ///
    /// These span the image of `d_3`: if a function on `C_2` kills them,
    /// the identity `d d [g|h|k|s] = 0` propagates the vanishing from `k`
    /// to `k s`, hence to every `k`.
    pub fn restricted_boundary3(&self) -> Vec<SparseVec> {
        let gens = self.group.generators();
        let mut rows = Vec::with_capacity(self.m() * self.m() * gens.len());
        for &g in &self.nonid {
            for &h in &self.nonid {
                for &s in &gens {
                    let r = self.d3(g, h, s);
                    if !r.is_empty() {
                        rows.push(r);
                    }
                }
            }
        }
        rows
    }

    /// 2-chain `sum c [g|h]` as a sparse vector.
    pub fn chain2(&self, terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> SparseVec {
        normalize_sparse(terms.into_iter().filter_map(|((g, h), c)| self.two(g, h).map(|i| (i, c))).collect())
    }
}

/// Normalized bar complex in degrees 1 to 3, boundaries stored sparsely.
#[derive(Debug, Clone)]
pub struct BarComplex {
    pub index: BarIndex,
    /// Rows of `d_2` and `d_3` (row `i` is the boundary of basis element `i`).
    d2: Vec<SparseVec>,
    d3: Vec<SparseVec>,
}

impl BarComplex {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::with_cap(group, BAR_ORDER_CAP)
    }

    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::OrderLimitExceeded { what: "bar complex", size: group.order(), cap });
        }
        let index = BarIndex::new(group);
        let m = index.m();
        let d2 = index.boundary2();
        let mut d3 = Vec::with_capacity(m * m * m);
        for &g in &index.nonid {
            for &h in &index.nonid {
                for &k in &index.nonid {
                    d3.push(index.d3(g, h, k));
                }
            }
        }
        Ok(Self { index, d2, d3 })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.index.group
    }

    /// Rank of `C_k` for `k <= 3`.
    pub fn rank(&self, k: usize) -> usize {
        self.index.m().pow(k as u32)
    }

    pub fn boundary_sparse(&self, k: usize) -> &[SparseVec] {
        match k {
            2 => &self.d2,
            3 => &self.d3,
            _ => &[],
        }
    }

    /// Dense `d_k: C_k -> C_(k-1)` (`|C_k| x |C_(k-1)|`), for `1 <= k <= 3`.
    pub fn boundary(&self, k: usize) -> Result<IntMatrix> {
        assert!((1..=3).contains(&k), "degree out of range");
        let (rows, cols) = (self.rank(k), self.rank(k - 1));
        if rows * cols > DENSE_ENTRY_CAP {
            return Err(Error::OrderLimitExceeded { what: "dense boundary entries", size: rows * cols, cap: DENSE_ENTRY_CAP });
        }
        // C_0 = Z and d_1 = 0
        let cols = if k == 1 { 1 } else { cols };
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, r) in self.boundary_sparse(k).iter().enumerate() {
            for &(j, c) in r {
                m[(i, j)] += c;
            }
        }
        Ok(m)
    }

    /// Whether `d_2 d_3 = 0`, checked on the sparse rows.
    pub fn is_complex(&self) -> bool {
        self.d3.iter().all(|r| {
            let mut acc: SparseVec = Vec::new();
            for &(i, c) in r {
                crate::linalg::sparse_axpy(&mut acc, c, &self.d2[i]);
            }
            acc.is_empty()
        })
    }

    /// `H_2` as `ker d_2 / im d_3` using all of `d_3`.
    pub fn h2_full(&self) -> FgAbelianGroup {
        let coker = SparseCokernel::new(self.rank(2), &self.d3);
        finite_part(&coker.group)
    }
}

fn finite_part(g: &FgAbelianGroup) -> FgAbelianGroup {
    FgAbelianGroup::from_cyclic_factors(g.torsion())
}

/// `H_1` as the cokernel of `d_2` with coordinates for 1-chains.
#[derive(Debug, Clone)]
pub struct FirstHomology {
    pub index: BarIndex,
    coker: SparseCokernel,
}

impl FirstHomology {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        check_h2_cap(&group)?;
        let index = BarIndex::new(group);
        // d[g|s] for generators s span the image of d_2
        let gens = index.group.generators();
        let rels: Vec<SparseVec> = index
            .nonid
            .iter()
            .flat_map(|&g| gens.iter().map(move |&s| (g, s)))
            .map(|(g, s)| index.d2(g, s))
            .filter(|r| !r.is_empty())
            .collect();
        let coker = SparseCokernel::new(index.m(), &rels);
        Ok(Self { index, coker })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.coker.group
    }

    /// Coordinates of the class of `[g]`.
    pub fn class_of(&self, g: usize) -> Vec<BigInt> {
        match self.index.one(g) {
            Some(i) => self.coker.generator_coords(i).to_vec(),
            None => vec![BigInt::zero(); self.coker.group.generator_count()],
        }
    }

    /// Representative 1-chains of the canonical generators, as
    /// `(element, coefficient)` pairs.
    pub fn generator_chains(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.coker
            .generators()
            .iter()
            .map(|g| g.iter().map(|(i, c)| (self.index.nonid[*i], c.clone())).collect())
            .collect()
    }
}

/// `H_2` with coordinates for 2-chains, from the cokernel of `d_3`.
///
/// `coker d_3 = H_2 ⊕ Z^r`: the torsion coordinates come first, and the
/// torsion generators are represented by cycles.
#[derive(Debug, Clone)]
pub struct SecondHomology {
    pub index: BarIndex,
    coker: SparseCokernel,
    torsion_len: usize,
}

pub(crate) fn check_h2_cap(g: &FiniteGroup) -> Result<()> {
    if g.order() > H2_ORDER_CAP {
        return Err(Error::OrderLimitExceeded { what: "second homology", size: g.order(), cap: H2_ORDER_CAP });
    }
    Ok(())
}

impl SecondHomology {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        check_h2_cap(&group)?;
        let index = BarIndex::new(group);
        let coker = SparseCokernel::new(index.m() * index.m(), &index.restricted_boundary3());
        let torsion_len = coker.group.torsion().len();
        Ok(Self { index, coker, torsion_len })
    }

    /// `H_2` in invariant-factor form.
    pub fn group(&self) -> FgAbelianGroup {
        finite_part(&self.coker.group)
    }

    /// The whole cokernel of `d_3`.
    pub fn cokernel(&self) -> &FgAbelianGroup {
        &self.coker.group
    }

    pub fn torsion_len(&self) -> usize {
        self.torsion_len
    }

    /// Cokernel coordinates of `[g|h]` (torsion part first).
    pub fn pair_coords(&self, g: usize, h: usize) -> Vec<BigInt> {
        match self.index.two(g, h) {
            Some(i) => self.coker.generator_coords(i).to_vec(),
            None => vec![BigInt::zero(); self.coker.group.generator_count()],
        }
    }

    /// `H_2` coordinates of a 2-cycle.
    pub fn cycle_coords(&self, chain: &[(usize, i64)]) -> Vec<BigInt> {
        let mut c = self.coker.coordinates_i64(chain);
        debug_assert!(c[self.torsion_len..].iter().all(Zero::is_zero), "not a cycle");
        c.truncate(self.torsion_len);
        c
    }

    /// Representatives of all canonical generators of `coker d_3` as
    /// 2-chains `((g, h), coefficient)`; the first `torsion_len` are cycles
    /// generating `H_2`.
    pub fn generator_chains(&self) -> Vec<Vec<((usize, usize), BigInt)>> {
        self.coker
            .generators()
            .iter()
            .map(|g| g.iter().map(|(i, c)| (self.index.pair(*i), c.clone())).collect())
            .collect()
    }
}

/// `H_1(G; Z)` from the bar complex.
pub fn h1(g: &FiniteGroup) -> Result<FgAbelianGroup> {
    Ok(FirstHomology::new(Arc::new(g.clone()))?.group().clone())
}

/// `H_2(G; Z)`, the Schur multiplier, from the bar complex.
pub fn h2(g: &FiniteGroup) -> Result<FgAbelianGroup> {
    Ok(SecondHomology::new(Arc::new(g.clone()))?.group())
}
