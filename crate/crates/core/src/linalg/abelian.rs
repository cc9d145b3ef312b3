use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{hermite_normal_form, kernel_lattice, smith_invariants, SmithWork};
use super::IntMatrix;

/// Finitely generated abelian group `Z/d_1 x ... x Z/d_r x Z^free_rank` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`. Two groups
/// are isomorphic iff their values are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        Self { torsion: Vec::new(), free_rank: rank }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_factors(&[BigInt::from(n)])
    }

    /// Invariant factors given as machine integers; entries equal to 1 are
    /// dropped. Panics if the list is not a divisibility chain.
    pub fn from_invariants(torsion: &[u64], free_rank: usize) -> Self {
        let t: Vec<BigInt> = torsion.iter().filter(|&&d| d != 1).map(|&d| BigInt::from(d)).collect();
        assert!(t.iter().all(|d| d >= &BigInt::from(2)), "invariant factor 0 is not torsion");
        for w in t.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "not a divisibility chain: {torsion:?}");
        }
        Self { torsion: t, free_rank }
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `Z/n_i` (with
    /// `n_i = 0` meaning `Z`).
    pub fn from_cyclic_factors(orders: &[BigInt]) -> Self {
        let mut free_rank = 0;
        // prime -> exponents of the primary components
        let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&n.magnitude().clone().into()) {
                primary.entry(p).or_default().push(e);
            }
        }
        let mut torsion = elementary_to_invariant(primary);
        torsion.retain(|d| !d.is_one());
        Self { torsion, free_rank }
    }

    /// Diagonal of a Smith form with the unit entries already removed.
    pub(crate) fn from_smith_diagonal(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        Self { torsion, free_rank }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Invariant factors as machine integers (panics beyond `u64`).
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("invariant factor fits u64")).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Number of cyclic generators (torsion then free).
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Orders of the canonical generators, `0` standing for infinite order.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    /// Canonical relation matrix: diagonal with the torsion invariants.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.generator_count();
        IntMatrix::diagonal(self.torsion.len(), n, &self.torsion)
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> Self {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_factors(&orders)
    }

    /// Elementary divisors `(p, p^k)` of the torsion part, ascending.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for d in &self.torsion {
            for (p, e) in factorize(d) {
                out.push(num_traits::pow(p, e as usize));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Trial-division factorization; invariant factors met in practice are small.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub(crate) fn elementary_to_invariant(primary: BTreeMap<BigInt, Vec<u32>>) -> Vec<BigInt> {
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut torsion = vec![BigInt::one(); len];
    for (p, mut exps) in primary {
        exps.sort_unstable();
        // largest exponents go to the last invariant factors
        let offset = len - exps.len();
        for (k, e) in exps.into_iter().enumerate() {
            torsion[offset + k] *= num_traits::pow(p.clone(), e as usize);
        }
    }
    torsion
}

/// Abelian group given by generators and relations: `Z^n / rowspan(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedAbGroup {
    generator_count: usize,
    relations: IntMatrix,
}

impl PresentedAbGroup {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), generator_count, "relation width must equal generator count");
        Self { generator_count, relations }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(0, n))
    }

    pub fn from_group(g: &FgAbelianGroup) -> Self {
        Self::new(g.generator_count(), g.relation_matrix())
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn structure(&self) -> FgAbelianGroup {
        cokernel(&self.relations)
    }

    /// Whether `v` lies in the relation lattice.
    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        lattice_contains(&self.relations, v)
    }

    /// Whether the map `x -> x * m` into `target` sends every relation of
    /// `self` to zero, i.e. is well defined on the quotient.
    pub fn maps_relations_into(&self, m: &IntMatrix, target: &PresentedAbGroup) -> bool {
        assert_eq!((m.rows(), m.cols()), (self.generator_count, target.generator_count));
        let img = &self.relations * m;
        let ok = img.row_iter().all(|r| target.is_zero(r));
        ok
    }
}

/// `Z^cols / rowspan(m)` in invariant-factor form.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let inv = smith_invariants(m);
    let free_rank = m.cols() - inv.len();
    let torsion = inv.into_iter().filter(|d| !d.is_one()).collect();
    FgAbelianGroup { torsion, free_rank }
}

/// A cokernel together with canonical generators and a coordinate map.
///
/// `generators` has one row per canonical generator (torsion first, then
/// free), expressed in the original coordinates. `coords` is the
/// `cols x generator_count` matrix sending an original basis vector to its
/// canonical coordinates; torsion coordinates are reduced into `[0, d_i)`.
#[derive(Debug, Clone)]
pub struct CokernelBasis {
    pub group: FgAbelianGroup,
    pub generators: IntMatrix,
    pub coords: IntMatrix,
}

impl CokernelBasis {
    /// Canonical coordinates of a vector in the original coordinates.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.coords.apply(v);
        reduce_coords(&self.group, &mut c);
        c
    }
}

pub(crate) fn reduce_coords(group: &FgAbelianGroup, c: &mut [BigInt]) {
    for (x, d) in c.iter_mut().zip(group.torsion()) {
        *x = x.mod_floor(d);
    }
}

pub fn cokernel_with_basis(m: &IntMatrix) -> CokernelBasis {
    let mut w = SmithWork::new(m, false, true);
    w.run();
    let n = m.cols();
    let diag: Vec<BigInt> =
        (0..m.rows().min(n)).map(|i| w.s[(i, i)].clone()).take_while(|d| !d.is_zero()).collect();
    let rank = diag.len();
    let keep: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).chain(rank..n).collect();
    let torsion = (0..rank).filter(|&i| !diag[i].is_one()).map(|i| diag[i].clone()).collect();
    let group = FgAbelianGroup::from_smith_diagonal(torsion, n - rank);
    let generators = w.v_inv.unwrap().select_rows(&keep);
    let mut coords = w.v.unwrap().select_cols(&keep);
    coords.reduce_columns(&group.generator_orders());
    CokernelBasis { group, generators, coords }
}

/// Membership of `v` in the row lattice of `m`.
pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let target = IntMatrix::from_big_rows(m.cols(), vec![v.to_vec()]);
    super::snf::solve_left(m, &target).is_some()
}

/// Homomorphism between two presented abelian groups, `x -> x * matrix`.
#[derive(Debug, Clone)]
pub struct AbHom {
    pub source: PresentedAbGroup,
    pub target: PresentedAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: PresentedAbGroup, target: PresentedAbGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), source.generator_count());
        assert_eq!(matrix.cols(), target.generator_count());
        Self { source, target, matrix }
    }

    pub fn is_well_defined(&self) -> bool {
        self.source.maps_relations_into(&self.matrix, &self.target)
    }

    /// Preimage lattice `{x in Z^n : x * matrix in relations(target)}`, in HNF.
    /// Contains the source relations whenever the map is well defined.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let stacked = self.matrix.vstack(self.target.relations());
        let k = kernel_lattice(&stacked);
        let proj = k.column_block(0, self.source.generator_count());
        hermite_normal_form(&proj.vstack(self.source.relations()))
    }

    /// Image lattice in target coordinates (including target relations), in HNF.
    pub fn image_lattice(&self) -> IntMatrix {
        hermite_normal_form(&self.matrix.vstack(self.target.relations()))
    }

    pub fn kernel(&self) -> FgAbelianGroup {
        let k = self.kernel_lattice();
        quotient_of_lattices(&k, self.source.relations())
    }

    pub fn image(&self) -> FgAbelianGroup {
        let im = self.image_lattice();
        quotient_of_lattices(&im, self.target.relations())
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        cokernel(&self.image_lattice())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.row_iter().all(|r| self.target.is_zero(r))
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AbHom) -> AbHom {
        AbHom::new(self.source.clone(), next.target.clone(), &self.matrix * &next.matrix)
    }
}

/// `outer / inner` for row lattices `inner ⊆ outer` of the same ambient rank.
pub fn quotient_of_lattices(outer: &IntMatrix, inner: &IntMatrix) -> FgAbelianGroup {
    let basis = hermite_normal_form(outer);
    if basis.rows() == 0 {
        return FgAbelianGroup::trivial();
    }
    let c = super::snf::solve_left(&basis, inner).expect("inner lattice not contained in outer lattice");
    cokernel(&c)
}

/// Whether `im(first) == ker(second)` for composable maps.
pub fn is_exact_at(first: &AbHom, second: &AbHom) -> bool {
    first.image_lattice() == second.kernel_lattice()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(t: &[u64], r: usize) -> FgAbelianGroup {
        FgAbelianGroup::from_invariants(t, r)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(2, &[[2, 0], [0, 3]])), g(&[6], 0));
        assert_eq!(cokernel(&IntMatrix::zeros(0, 2)), g(&[], 2));
        assert!(cokernel(&IntMatrix::identity(3)).is_trivial());
    }

    #[test]
    fn cokernel_of_diag_2_3_matches_enumeration() {
        // Z^2 / <(2,0),(0,3)>: the classes are (a mod 2, b mod 3); the element
        // (1,1) has order lcm(2,3) = 6 and there are 6 classes, so cyclic.
        let classes: Vec<(i64, i64)> = (0..2).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let order_of = |(a, b): (i64, i64)| (1..=6).find(|k| (k * a) % 2 == 0 && (k * b) % 3 == 0).unwrap();
        assert_eq!(classes.len(), 6);
        assert_eq!(classes.iter().map(|&c| order_of(c)).max(), Some(6));
        assert_eq!(cokernel(&IntMatrix::from_rows(2, &[[2, 0], [0, 3]])), g(&[6], 0));
    }

    #[test]
    fn normalization_from_cyclic_factors() {
        let f = |v: &[i64]| FgAbelianGroup::from_cyclic_factors(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(f(&[2, 3]), g(&[6], 0));
        assert_eq!(f(&[4, 6, 1, 0]), g(&[2, 12], 1));
        assert_eq!(f(&[2, 2, 2]), g(&[2, 2, 2], 0));
        assert!(f(&[1, 1]).is_trivial());
        assert_eq!(g(&[2, 12], 1).to_string(), "Z/2 x Z/12 x Z");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn cokernel_basis_coordinates() {
        let m = IntMatrix::from_rows(3, &[[2, 4, 0], [0, 6, 0]]);
        let cb = cokernel_with_basis(&m);
        assert_eq!(cb.group, g(&[2, 6], 1));
        // relations map to zero, generators map to unit vectors
        for r in m.row_iter() {
            assert!(cb.coordinates(r).iter().all(Zero::is_zero));
        }
        for (i, gen) in cb.generators.row_iter().enumerate() {
            let c = cb.coordinates(gen);
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x, &BigInt::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn hom_kernel_image_and_exactness() {
        // Z/4 --x2--> Z/4 --x2--> Z/4 is exact in the middle
        let z4 = PresentedAbGroup::from_group(&g(&[4], 0));
        let m = IntMatrix::from_rows(1, &[[2]]);
        let f = AbHom::new(z4.clone(), z4.clone(), m.clone());
        let h = AbHom::new(z4.clone(), z4.clone(), m);
        assert!(f.is_well_defined());
        assert_eq!(f.kernel(), g(&[2], 0));
        assert_eq!(f.image(), g(&[2], 0));
        assert!(is_exact_at(&f, &h));
        let id = AbHom::new(z4.clone(), z4, IntMatrix::identity(1));
        assert!(!is_exact_at(&id, &f));
        assert!(id.is_surjective() && id.is_injective());
    }
}
