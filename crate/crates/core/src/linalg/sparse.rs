//! Cokernels of large sparse relation matrices.
//!
//! Generators with a unit coefficient in some relation are eliminated by
//! substitution (shortest relation first, rarest generator first); what is
//! left is a small dense system handed to the Smith reduction. Coefficients
//! are tracked in `i64` with overflow checks and the whole computation is
//! redone over `BigInt` if any intermediate value overflows.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::abelian::{reduce_coords, FgAbelianGroup};
use super::snf::SmithWork;
use super::IntMatrix;

/// Sparse integer vector as `(index, coefficient)` pairs, sorted by index,
/// without zero coefficients.
pub type SparseVec = Vec<(usize, i64)>;

/// Adds `k * b` into the sparse accumulator `a`.
pub fn sparse_axpy(a: &mut SparseVec, k: i64, b: &[(usize, i64)]) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k * b[j].1));
            j += 1;
        } else {
            let v = a[i].1 + k * b[j].1;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *a = out;
}

/// Sorts and merges duplicate indices, dropping zeros.
pub fn normalize_sparse(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
        if out.last().is_some_and(|l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `a - k * b`, or `None` on overflow.
    fn sub_mul(a: &Self, k: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(a: &Self, k: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(k.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(a: &Self, k: &Self, b: &Self) -> Option<Self> {
        Some(a - k * b)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

type Row<T> = Vec<(u32, T)>;

/// `a - k * b` on sorted sparse rows.
fn row_sub_mul<T: Coeff>(a: &Row<T>, k: &T, b: &Row<T>) -> Result<Row<T>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, T::sub_mul(&zero, k, &b[j].1).ok_or(Overflow)?));
            j += 1;
        } else {
            let v = T::sub_mul(&a[i].1, k, &b[j].1).ok_or(Overflow)?;
            if !v.is_nil() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

struct Eliminated<T> {
    /// `(generator, expression)` in elimination order; the generator equals
    /// the expression in terms of generators alive at that moment.
    subs: Vec<(u32, Row<T>)>,
    /// Relations left after unit elimination, over surviving generators.
    residual: Vec<Row<T>>,
    survivors: Vec<u32>,
}

fn eliminate_units<T: Coeff>(n_gens: usize, relations: &[SparseVec]) -> Result<Eliminated<T>, Overflow> {
    let mut rows: Vec<Option<Row<T>>> = relations
        .iter()
        .map(|r| {
            let row: Row<T> = r.iter().filter(|e| e.1 != 0).map(|&(c, v)| (c as u32, T::from_i64(v))).collect();
            (!row.is_empty()).then_some(row)
        })
        .collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_gens];
    let mut heap = BinaryHeap::new();
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
            }
            heap.push(Reverse((r.len(), i as u32)));
        }
    }
    let mut eliminated = vec![false; n_gens];
    let mut subs = Vec::new();

    while let Some(Reverse((len, ri))) = heap.pop() {
        let ri = ri as usize;
        let Some(row) = &rows[ri] else { continue };
        if row.len() != len {
            continue;
        }
        let pivot = row
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(c, _)| col_rows[*c as usize].len())
            .map(|(c, v)| (*c, v.clone()));
        let Some((x, u)) = pivot else { continue };
        let row = rows[ri].take().unwrap();
        // x = -u * (rest)
        let expr: Row<T> =
            row.iter().filter(|(c, _)| *c != x).map(|(c, v)| (*c, T::mul(&u, v).unwrap().neg())).collect();
        let users = std::mem::take(&mut col_rows[x as usize]);
        for &other in &users {
            let other = other as usize;
            if other == ri {
                continue;
            }
            let Some(orow) = &rows[other] else { continue };
            let Ok(pos) = orow.binary_search_by_key(&x, |e| e.0) else { continue };
            let a = orow[pos].1.clone();
            let k = T::mul(&a, &u).ok_or(Overflow)?;
            let new_row = row_sub_mul(orow, &k, &row)?;
            for &(c, _) in &new_row {
                if orow.binary_search_by_key(&c, |e| e.0).is_err() {
                    col_rows[c as usize].push(other as u32);
                }
            }
            if new_row.is_empty() {
                rows[other] = None;
            } else {
                heap.push(Reverse((new_row.len(), other as u32)));
                rows[other] = Some(new_row);
            }
        }
        eliminated[x as usize] = true;
        subs.push((x, expr));
        // drop stale references occasionally so occurrence counts stay useful
        for &(c, _) in &row {
            let list = &mut col_rows[c as usize];
            if list.len() > 64 {
                list.retain(|&r| rows[r as usize].as_ref().is_some_and(|rr| rr.binary_search_by_key(&c, |e| e.0).is_ok()));
            }
        }
    }

    let residual = rows.into_iter().flatten().collect();
    let survivors = (0..n_gens as u32).filter(|&c| !eliminated[c as usize]).collect();
    Ok(Eliminated { subs, residual, survivors })
}

/// `Z^n_gens / span(relations)` with a coordinate map and generator
/// representatives, computed by sparse elimination.
#[derive(Debug, Clone)]
pub struct SparseCokernel {
    pub group: FgAbelianGroup,
    /// `coords[j]`: canonical coordinates of original generator `j`.
    coords: Vec<Vec<BigInt>>,
    /// Canonical generators as sparse combinations of original generators.
    generators: Vec<Vec<(usize, BigInt)>>,
}

impl SparseCokernel {
    pub fn new(n_gens: usize, relations: &[SparseVec]) -> Self {
        match eliminate_units::<i64>(n_gens, relations) {
            Ok(e) => Self::finish(n_gens, e),
            Err(Overflow) => match eliminate_units::<BigInt>(n_gens, relations) {
                Ok(e) => Self::finish(n_gens, e),
                Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
            },
        }
    }

    fn finish<T: Coeff>(n_gens: usize, e: Eliminated<T>) -> Self {
        let g = e.survivors.len();
        let mut dense_index = vec![usize::MAX; n_gens];
        for (k, &s) in e.survivors.iter().enumerate() {
            dense_index[s as usize] = k;
        }
        let mut seen = HashSet::new();
        let mut dense_rows = Vec::new();
        for r in &e.residual {
            let mut v = vec![BigInt::zero(); g];
            for (c, x) in r {
                v[dense_index[*c as usize]] = x.to_big();
            }
            if seen.insert(v.clone()) {
                dense_rows.push(v);
            }
        }
        let m = IntMatrix::from_big_rows(g, dense_rows);
        let mut w = SmithWork::new(&m, false, true);
        w.run();
        let diag: Vec<BigInt> =
            (0..m.rows().min(g)).map(|i| w.s[(i, i)].clone()).take_while(|d| !d.is_zero()).collect();
        let rank = diag.len();
        let keep: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).chain(rank..g).collect();
        let torsion = (0..rank).filter(|&i| !diag[i].is_one()).map(|i| diag[i].clone()).collect();
        let group = FgAbelianGroup::from_smith_diagonal(torsion, g - rank);
        let v = w.v.unwrap();
        let v_inv = w.v_inv.unwrap();

        let mut coords: Vec<Vec<BigInt>> = vec![Vec::new(); n_gens];
        for (k, &s) in e.survivors.iter().enumerate() {
            let mut c: Vec<BigInt> = keep.iter().map(|&j| v[(k, j)].clone()).collect();
            reduce_coords(&group, &mut c);
            coords[s as usize] = c;
        }
        for (x, expr) in e.subs.iter().rev() {
            let mut c = vec![BigInt::zero(); keep.len()];
            for (y, k) in expr {
                let kb = k.to_big();
                for (ci, yi) in c.iter_mut().zip(&coords[*y as usize]) {
                    *ci += &kb * yi;
                }
            }
            reduce_coords(&group, &mut c);
            coords[*x as usize] = c;
        }
        debug_assert!(coords.iter().all(|c| c.len() == keep.len()));

        let generators = keep
            .iter()
            .map(|&j| {
                (0..g)
                    .filter(|&k| !v_inv[(j, k)].is_zero())
                    .map(|k| (e.survivors[k] as usize, v_inv[(j, k)].clone()))
                    .collect()
            })
            .collect();
        Self { group, coords, generators }
    }

    pub fn generator_coords(&self, j: usize) -> &[BigInt] {
        &self.coords[j]
    }

    /// Canonical coordinates of a sparse vector over the original generators.
    pub fn coordinates<'a, I>(&self, v: I) -> Vec<BigInt>
    where
        I: IntoIterator<Item = (usize, &'a BigInt)>,
    {
        let mut c = vec![BigInt::zero(); self.group.generator_count()];
        for (j, k) in v {
            for (ci, x) in c.iter_mut().zip(&self.coords[j]) {
                *ci += k * x;
            }
        }
        reduce_coords(&self.group, &mut c);
        c
    }

    pub fn coordinates_i64(&self, v: &[(usize, i64)]) -> Vec<BigInt> {
        let big: Vec<(usize, BigInt)> = v.iter().map(|&(j, k)| (j, BigInt::from(k))).collect();
        self.coordinates(big.iter().map(|(j, k)| (*j, k)))
    }

    pub fn generators(&self) -> &[Vec<(usize, BigInt)>] {
        &self.generators
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::abelian::cokernel;
    use proptest::prelude::*;

    fn dense(n: usize, rels: &[SparseVec]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rels
            .iter()
            .map(|r| {
                let mut v = vec![0; n];
                for &(c, x) in r {
                    v[c] += x;
                }
                v
            })
            .collect();
        IntMatrix::from_rows(n, &rows)
    }

    #[test]
    fn cyclic_relations() {
        // x0 = x1 = x2, 6 x0 = 0
        let rels = vec![vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 6)]];
        let c = SparseCokernel::new(3, &rels);
        assert_eq!(c.group, FgAbelianGroup::cyclic(6));
        let a = c.generator_coords(0).to_vec();
        assert_eq!(a, c.generator_coords(2).to_vec());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // x1 = 2^40 x0, x2 = 2^40 x1, 0 = x2 - ... forces large coefficients
        let big = 1i64 << 40;
        let rels = vec![vec![(0, big), (1, -1)], vec![(1, big), (2, -1)], vec![(2, 1), (3, -1)], vec![(3, 3)]];
        let c = SparseCokernel::new(4, &rels);
        assert_eq!(c.group, cokernel(&dense(4, &rels)));
    }

    proptest! {
        #[test]
        fn agrees_with_dense_smith(entries in proptest::collection::vec((0usize..6, 0usize..5, -3i64..4), 0..30)) {
            let mut rels: Vec<SparseVec> = vec![Vec::new(); 6];
            for (r, c, x) in entries {
                rels[r].push((c, x));
            }
            let rels: Vec<SparseVec> = rels.into_iter().map(normalize_sparse).collect();
            let c = SparseCokernel::new(5, &rels);
            prop_assert_eq!(&c.group, &cokernel(&dense(5, &rels)));
            // relations vanish in coordinates; generators have unit coordinates
            for r in &rels {
                prop_assert!(c.coordinates_i64(r).iter().all(Zero::is_zero));
            }
            for (i, gen) in c.generators().iter().enumerate() {
                let coords = c.coordinates(gen.iter().map(|(j, k)| (*j, k)));
                for (j, x) in coords.iter().enumerate() {
                    prop_assert_eq!(x, &BigInt::from((i == j) as i64));
                }
            }
        }
    }
}
