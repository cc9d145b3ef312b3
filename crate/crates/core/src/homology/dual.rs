//! Second homology by counting: the size of `H^2(G, Z/p^j)` pins down the
//! `p`-primary part of `H_2(G)` through universal coefficients, without any
//! integral Smith form.
//!
//! Modulo `p^j` the complex `C_3 -> C_2 -> C_1` gives
//! `j*N_2 - log|im d_3| - log|im d_2| = sum_i min(j, a_i) + sum_i min(j, b_i)`
//! where `p^(a_i)` and `p^(b_i)` run over the `p`-primary factors of `H_2`
//! and `H_1`. The differences in `j` count factors of exponent at least `j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::bar::{check_h2_cap, BarIndex};
use crate::group::FiniteGroup;
use crate::linalg::{elementary_to_invariant, factorize, FgAbelianGroup, ModSpan, SparseVec};
use crate::Result;

fn span_log(cols: usize, p: u64, j: u32, rows: &[SparseVec]) -> u64 {
    let mut span = ModSpan::new(cols, p, j);
    for r in rows {
        let m = span.reduce(r);
        span.insert(m);
    }
    span.log_size()
}

/// Multiplicities `n[j]` (`j >= 1`) of `p`-primary factors `Z/p^j` in
/// `H_2 ⊕ H_1`, given the relation rows of both boundaries.
fn primary_counts(idx: &BarIndex, d3: &[SparseVec], d2: &[SparseVec], p: u64, e: u32) -> Vec<u64> {
    let (m, n2) = (idx.m(), (idx.m() * idx.m()) as u64);
    // s[j] = sum over factors of min(j, exponent); s[0] = 0
    let mut s = vec![0u64];
    for j in 1..=e {
        s.push(j as u64 * n2 - span_log(m * m, p, j, d3) - span_log(m, p, j, d2));
    }
    // at_least[j] = number of factors of exponent >= j
    let at_least: Vec<u64> = (1..=e as usize).map(|j| s[j] - s[j - 1]).collect();
    (0..e as usize).map(|j| at_least[j] - at_least.get(j + 1).copied().unwrap_or(0)).collect()
}

/// `H_2(G; Z)` by the dual counting route.
pub fn h2_dual(g: &FiniteGroup) -> Result<FgAbelianGroup> {
    check_h2_cap(g)?;
    let g = Arc::new(g.clone());
    let idx = BarIndex::new(g.clone());
    let d3 = idx.restricted_boundary3();
    let gens = g.generators();
    let d2: Vec<SparseVec> = idx
        .nonid
        .iter()
        .flat_map(|&x| gens.iter().map(move |&s| (x, s)))
        .map(|(x, s)| idx.d2(x, s))
        .filter(|r| !r.is_empty())
        .collect();
    let ab = g.abelianization().0;
    let ab_primary = ab.elementary_divisors();

    let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for (p, e) in factorize(&BigInt::from(g.order())) {
        let pu = p.to_u64().expect("prime fits u64");
        let mut counts = primary_counts(&idx, &d3, &d2, pu, e);
        // remove the abelianization's share
        for q in &ab_primary {
            if let Some(j) = prime_power_exponent(q, &p) {
                counts[j as usize - 1] -= 1;
            }
        }
        let exps: Vec<u32> =
            counts.iter().enumerate().flat_map(|(j, &n)| std::iter::repeat_n(j as u32 + 1, n as usize)).collect();
        if !exps.is_empty() {
            primary.insert(p, exps);
        }
    }
    Ok(FgAbelianGroup::from_cyclic_factors(&elementary_to_invariant(primary)))
}

/// `j` with `q = p^j`, if `q` is a power of `p`.
fn prime_power_exponent(q: &BigInt, p: &BigInt) -> Option<u32> {
    let mut q = q.clone();
    let mut j = 0;
    while &q % p == BigInt::from(0) {
        q /= p;
        j += 1;
    }
    (q == BigInt::from(1) && j > 0).then_some(j)
}
