//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`. Every group built here carries a list of
//! generators: the declared ones for permutation and standard groups, a
//! greedy generating set otherwise.

mod abelian;
mod hom;
mod io;
mod standard;
mod subgroup;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::linalg::FgAbelianGroup;
use crate::{Axiom, Error, Result};

pub use abelian::AbelianCoordinates;
pub use hom::{pullback, pullback_with_cap, GroupHom, Pullback};
pub use io::{parse_group_json, parse_group_json_with_cap, parse_hom_json, parse_hom_json_with_cap, GroupSpec, HomSpec};
pub use standard::StandardGroup;
pub use subgroup::Subgroup;

/// Default cap on the order of groups produced by closure and pullback.
pub const DEFAULT_ORDER_CAP: usize = 5000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: u32,
    generators: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[a][b] = a * b`).
    ///
    /// Associativity is checked with Light's test against a generating set,
    /// which is exhaustive once the other axioms hold.
    pub fn from_multiplication_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup(Axiom::Shape));
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let mut seen = vec![false; n];
        for i in 0..n {
            for lane in [(0..n).map(|j| flat[i * n + j]).collect::<Vec<_>>(), (0..n).map(|j| flat[j * n + i]).collect()] {
                seen.iter_mut().for_each(|s| *s = false);
                for x in lane {
                    if std::mem::replace(&mut seen[x as usize], true) {
                        return Err(Error::NotAGroup(Axiom::LatinSquare));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x))
            .ok_or(Error::NotAGroup(Axiom::Identity))?;
        let mut inverses = vec![0u32; n];
        for (x, inv) in inverses.iter_mut().enumerate() {
            let y = (0..n).find(|&y| flat[x * n + y] as usize == identity).unwrap();
            if flat[y * n + x] as usize != identity {
                return Err(Error::NotAGroup(Axiom::Inverse));
            }
            *inv = y as u32;
        }
        let mut g = Self { order: n, table: flat, inverses, identity: identity as u32, generators: Vec::new() };
        g.generators = g.greedy_generators();
        for &s in &g.generators {
            for x in 0..n {
                let xs = g.mul(x, s as usize);
                for y in 0..n {
                    if g.mul(xs, y) != g.mul(x, g.mul(s as usize, y)) {
                        return Err(Error::NotAGroup(Axiom::Associativity));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds a group from a table already known to be a group table.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<u32>, identity: usize, generators: Option<Vec<u32>>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0u32; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inverses[x] = row.iter().position(|&y| y as usize == identity).expect("group table") as u32;
        }
        let mut g = Self { order, table, inverses, identity: identity as u32, generators: Vec::new() };
        g.generators = match generators {
            Some(gs) => gs,
            None => g.greedy_generators(),
        };
        g
    }

    /// Closure of permutations of `0..degree` under composition.
    ///
    /// Products compose left to right: `(p * q)(i) = q(p(i))`. Element 0 is
    /// the identity; the returned labels are the permutations in element
    /// order, and the generators of the group are the given permutations.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        for g in generators {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree && g.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::NotAPermutation { degree, images: g.clone() });
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
        let mut index = std::collections::HashMap::new();
        let mut perms: Vec<Vec<usize>> = vec![(0..degree).collect()];
        index.insert(perms[0].clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose(&perms[x], g);
                if !index.contains_key(&y) {
                    if perms.len() == cap {
                        return Err(Error::OrderLimitExceeded { what: "permutation closure", size: cap + 1, cap });
                    }
                    index.insert(y.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(y);
                }
            }
        }
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&perms[a], &perms[b])] as u32;
            }
        }
        let gens = generators.iter().map(|g| index[g] as u32).collect();
        Ok((Self::from_table_unchecked(n, table, 0, Some(gens)), perms))
    }

    pub fn trivial() -> Self {
        Self::from_table_unchecked(1, vec![0], 0, Some(Vec::new()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }

    /// Raw table row of `a` (`row[b] = a * b`).
    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..].iter().all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize))
        })
    }

    /// Elements reachable from the identity by right multiplication with
    /// `gens`, in breadth-first order.
    pub(crate) fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity()] = true;
        let mut out = vec![self.identity()];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity()] = true;
        let mut covered = 1;
        for x in self.elements() {
            if covered == self.order {
                break;
            }
            if !inside[x] {
                gens.push(x);
                inside.iter_mut().for_each(|b| *b = false);
                let c = self.closure(&gens);
                covered = c.len();
                for y in c {
                    inside[y] = true;
                }
            }
        }
        gens.into_iter().map(|g| g as u32).collect()
    }

    /// Invariant factors of an abelian group, read off from the number of
    /// solutions of `x^(p^j) = 1`.
    pub fn abelian_invariants(&self) -> Result<FgAbelianGroup> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let orders: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        let mut factors = Vec::new();
        for (p, e) in crate::linalg::factorize(&BigInt::from(self.order)) {
            let p: usize = p.try_into().unwrap();
            // log_p #{x : x^(p^j) = 1}
            let logs: Vec<u32> = (0..=e)
                .map(|j| {
                    let count = orders.iter().filter(|&&o| p.pow(j) % o == 0).count();
                    count.ilog(p)
                })
                .collect();
            // number of cyclic p-factors of order >= p^j
            let at_least: Vec<u32> = (1..=e as usize).map(|j| logs[j] - logs[j - 1]).collect();
            for j in 1..=e as usize {
                let exact = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
                for _ in 0..exact {
                    factors.push(BigInt::from(p.pow(j as u32)));
                }
            }
        }
        Ok(FgAbelianGroup::from_cyclic_factors(&factors))
    }

    /// Multiset of element orders, sorted; a cheap isomorphism invariant.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut table = vec![0u32; n * m * n * m];
        let idx = |a: usize, b: usize| a + n * b;
        for a1 in 0..n {
            for b1 in 0..m {
                let x = idx(a1, b1);
                for a2 in 0..n {
                    for b2 in 0..m {
                        table[x * n * m + idx(a2, b2)] = idx(self.mul(a1, a2), other.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        let mut gens: Vec<u32> = self.generators.iter().map(|&g| idx(g as usize, other.identity()) as u32).collect();
        gens.extend(other.generators.iter().map(|&g| idx(self.identity(), g as usize) as u32));
        Self::from_table_unchecked(n * m, table, idx(self.identity(), other.identity()), Some(gens))
    }
}

/// Whether two abelian groups are isomorphic.
pub fn are_isomorphic_abelian(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(g.abelian_invariants()? == h.abelian_invariants()?)
}
