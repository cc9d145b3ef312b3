use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::homology::SecondHomology;
use crate::linalg::{cokernel_with_basis, CokernelBasis, FgAbelianGroup, IntMatrix};
use crate::{Error, Result};

/// Largest number of cohomology classes enumerated at once.
pub const CLASS_CAP: usize = 4096;

/// A finite abelian coefficient group `Z/e_1 x ... x Z/e_L`, elements as
/// coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    pub group: FgAbelianGroup,
    pub orders: Vec<u64>,
}

impl Coefficients {
    pub fn new(group: &FgAbelianGroup) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::Unsupported("infinite coefficient group".into()));
        }
        let orders = group.torsion().iter().map(|d| d.to_u64().expect("small coefficient group")).collect();
        Ok(Self { group: group.clone(), orders })
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), e)| (x + y) % e).collect()
    }

    /// Mixed-radix index of an element, first coordinate fastest.
    pub fn index(&self, a: &[u64]) -> usize {
        a.iter().zip(&self.orders).rev().fold(0, |acc, (&x, &e)| acc * e as usize + x as usize)
    }

    pub fn element(&self, mut i: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&e| {
                let x = i % e as usize;
                i /= e as usize;
                x as u64
            })
            .collect()
    }

    fn reduce(&self, a: &[BigInt]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, &e)| x.mod_floor(&BigInt::from(e)).to_u64().unwrap()).collect()
    }
}

/// Normalized 2-cocycle `G x G -> A` with trivial action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    group: Arc<FiniteGroup>,
    coeff: Coefficients,
    /// `values[(g * n + h) * L + l]`.
    values: Vec<u64>,
}

impl Cocycle2 {
    /// Checks normalization and the cocycle identity
    /// `c(g,h) + c(gh,k) = c(h,k) + c(g,hk)`. It suffices to check `k` in a
    /// generating set: the identities for `k` and `s` imply the one for `ks`.
    pub fn from_fn(group: Arc<FiniteGroup>, coeff: &FgAbelianGroup, f: impl Fn(usize, usize) -> Vec<u64>) -> Result<Self> {
        let coeff = Coefficients::new(coeff)?;
        let n = group.order();
        let mut values = Vec::with_capacity(n * n * coeff.len());
        for g in group.elements() {
            for h in group.elements() {
                let v = f(g, h);
                if v.len() != coeff.len() || v.iter().zip(&coeff.orders).any(|(x, e)| x >= e) {
                    return Err(Error::InvalidCocycle(format!("value at ({g}, {h}) is not an element of the coefficients")));
                }
                values.extend(v);
            }
        }
        let c = Self { group, coeff, values };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(group: Arc<FiniteGroup>, coeff: &FgAbelianGroup) -> Result<Self> {
        let l = coeff.generator_count();
        Self::from_fn(group, coeff, |_, _| vec![0; l])
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let e = g.identity();
        for x in g.elements() {
            if self.value(e, x).iter().chain(self.value(x, e)).any(|&v| v != 0) {
                return Err(Error::InvalidCocycle(format!("not normalized at {x}")));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                for s in g.generators() {
                    let lhs = self.coeff.add(self.value(a, b), self.value(g.mul(a, b), s));
                    let rhs = self.coeff.add(self.value(b, s), self.value(a, g.mul(b, s)));
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle(format!("cocycle identity fails at ({a}, {b}, {s})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeff
    }

    pub fn value(&self, g: usize, h: usize) -> &[u64] {
        let l = self.coeff.len();
        let i = (g * self.group.order() + h) * l;
        &self.values[i..i + l]
    }

    /// Value table as nested lists, `table[g][h]`.
    pub fn table(&self) -> Vec<Vec<Vec<u64>>> {
        self.group.elements().map(|g| self.group.elements().map(|h| self.value(g, h).to_vec()).collect()).collect()
    }
}

/// `H^2(G, A)` with trivial action, by universal coefficients:
/// `H^2(G, A) = Hom(H_2 G, A) ⊕ Ext(H_1 G, A)`.
///
/// Cocycles are functions on `coker d_3 = H_2 ⊕ Z^r`. A class is given by
/// the values `τ_k` on the torsion generators and `a_i` on the free ones;
/// coboundaries move the `a_i` by `φ(d F_i)` for `φ ∈ A^(n-1)`.
#[derive(Debug, Clone)]
pub struct CohomologyH2 {
    homology: SecondHomology,
    coeff: Coefficients,
    /// Torsion invariants `t_k` of `H_2`.
    t: Vec<u64>,
    /// `A^r` modulo coboundaries is `coker(D) ⊗ A` with `D` the transpose
    /// of the boundaries of the free generators.
    ext: CokernelBasis,
    ext_orders: Vec<u64>,
    components: Vec<Component>,
    pub group: FgAbelianGroup,
}

#[derive(Debug, Clone, Copy)]
enum Component {
    /// `Hom(Z/t_k, Z/e_l)`, generated by `1 -> e_l / d`.
    Hom { k: usize, l: usize, d: u64 },
    /// `Z/d_i ⊗ Z/e_l`.
    Ext { i: usize, l: usize, d: u64 },
}

impl Component {
    fn order(&self) -> u64 {
        match *self {
            Component::Hom { d, .. } | Component::Ext { d, .. } => d,
        }
    }
}

impl CohomologyH2 {
    pub fn new(group: Arc<FiniteGroup>, coeff: &FgAbelianGroup) -> Result<Self> {
        let coeff = Coefficients::new(coeff)?;
        let size = group.order().saturating_mul(coeff.size());
        if size > DEFAULT_ORDER_CAP {
            return Err(Error::OrderLimitExceeded { what: "|G|*|A|", size, cap: DEFAULT_ORDER_CAP });
        }
        let homology = SecondHomology::new(group)?;
        let tl = homology.torsion_len();
        let t: Vec<u64> = homology.cokernel().torsion().iter().map(|d| d.to_u64().unwrap()).collect();
        let chains = homology.generator_chains();
        let m = homology.index.m();
        let free = &chains[tl..];
        debug_assert_eq!(free.len(), m, "finite H_1 makes d_2 of full rank");
        // D[j][i] = coefficient of [x_j] in d F_i
        let mut d = IntMatrix::zeros(m, free.len());
        for (i, chain) in free.iter().enumerate() {
            for ((g, h), c) in chain {
                for (j, v) in homology.index.d2(*g, *h) {
                    d[(j, i)] += c * v;
                }
            }
        }
        let ext = cokernel_with_basis(&d);
        let ext_orders: Vec<u64> = ext.group.generator_orders().iter().map(|x| x.to_u64().unwrap()).collect();
        let mut components = Vec::new();
        for (k, &tk) in t.iter().enumerate() {
            for (l, &el) in coeff.orders.iter().enumerate() {
                let d = tk.gcd(&el);
                if d > 1 {
                    components.push(Component::Hom { k, l, d });
                }
            }
        }
        for (i, &di) in ext_orders.iter().enumerate() {
            for (l, &el) in coeff.orders.iter().enumerate() {
                let d = if di == 0 { el } else { di.gcd(&el) };
                if d > 1 {
                    components.push(Component::Ext { i, l, d });
                }
            }
        }
        let orders: Vec<BigInt> = components.iter().map(|c| BigInt::from(c.order())).collect();
        let group = FgAbelianGroup::from_cyclic_factors(&orders);
        Ok(Self { homology, coeff, t, ext, ext_orders, components, group })
    }

    pub fn h2_group(&self) -> FgAbelianGroup {
        self.homology.group()
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeff
    }

    /// Orders of the cyclic components class coordinates refer to.
    pub fn component_orders(&self) -> Vec<u64> {
        self.components.iter().map(Component::order).collect()
    }

    /// Number of classes.
    pub fn class_count(&self) -> usize {
        self.components.iter().map(|c| c.order() as usize).product()
    }

    /// Class coordinates with the `Hom` part an isomorphism `H_2 -> A`,
    /// when `A` has the invariants of `H_2`, and zero `Ext` part.
    pub fn identity_hom_class(&self) -> Option<Vec<u64>> {
        if self.t != self.coeff.orders {
            return None;
        }
        Some(
            self.components
                .iter()
                .map(|c| match *c {
                    Component::Hom { k, l, .. } if k == l => 1,
                    _ => 0,
                })
                .collect(),
        )
    }

    /// All classes in mixed-radix order, first component fastest.
    pub fn classes(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let orders = self.component_orders();
        (0..self.class_count()).map(move |mut i| {
            orders
                .iter()
                .map(|&d| {
                    let x = i % d as usize;
                    i /= d as usize;
                    x as u64
                })
                .collect()
        })
    }

    /// Representative cocycle of a class.
    pub fn cocycle(&self, class: &[u64]) -> Cocycle2 {
        assert_eq!(class.len(), self.components.len());
        let tl = self.homology.torsion_len();
        let l = self.coeff.len();
        // values on the canonical generators of coker d_3
        let mut on_gens = vec![vec![BigInt::from(0); l]; tl + self.homology.index.m()];
        let ext_gens: Vec<Vec<BigInt>> = self.ext.generators.to_rows();
        for (c, &x) in self.components.iter().zip(class) {
            match *c {
                Component::Hom { k, l, d } => on_gens[k][l] += BigInt::from(x * (self.coeff.orders[l] / d)),
                Component::Ext { i, l, .. } => {
                    for (r, g) in ext_gens[i].iter().enumerate() {
                        on_gens[tl + r][l] += g * x;
                    }
                }
            }
        }
        let group = self.homology.index.group.clone();
        let coeff = &self.coeff;
        let values = |g: usize, h: usize| -> Vec<u64> {
            let coords = self.homology.pair_coords(g, h);
            let mut v = vec![BigInt::from(0); l];
            for (x, gen) in coords.iter().zip(&on_gens) {
                for (vi, gi) in v.iter_mut().zip(gen) {
                    *vi += x * gi;
                }
            }
            coeff.reduce(&v)
        };
        Cocycle2::from_fn(group, &coeff.group, values).expect("functions on coker d_3 are cocycles")
    }

    /// Class coordinates of a cocycle over the same group and coefficients.
    pub fn class_of(&self, c: &Cocycle2) -> Result<Vec<u64>> {
        if c.coeff != self.coeff || c.group.order() != self.homology.index.group.order() {
            return Err(Error::DomainMismatch("cocycle over a different group or coefficients"));
        }
        let l = self.coeff.len();
        let tl = self.homology.torsion_len();
        let on_gens: Vec<Vec<BigInt>> = self
            .homology
            .generator_chains()
            .iter()
            .map(|chain| {
                let mut v = vec![BigInt::from(0); l];
                for ((g, h), k) in chain {
                    for (vi, x) in v.iter_mut().zip(c.value(*g, *h)) {
                        *vi += k * x;
                    }
                }
                v
            })
            .collect();
        let ext_coords: Vec<Vec<BigInt>> = (0..l)
            .map(|li| {
                let a: Vec<BigInt> = on_gens[tl..].iter().map(|v| v[li].clone()).collect();
                self.ext.coordinates(&a)
            })
            .collect();
        Ok(self
            .components
            .iter()
            .map(|comp| match *comp {
                Component::Hom { k, l, d } => {
                    let e = self.coeff.orders[l];
                    let v = on_gens[k][l].mod_floor(&BigInt::from(e)).to_u64().unwrap();
                    debug_assert_eq!(v % (e / d), 0);
                    v / (e / d)
                }
                Component::Ext { i, l, d } => ext_coords[l][i].mod_floor(&BigInt::from(d)).to_u64().unwrap(),
            })
            .collect())
    }

    /// Orders of the canonical generators of `coker(D) = H_1`.
    pub fn h1_orders(&self) -> &[u64] {
        &self.ext_orders
    }
}

/// `H^2(G, A)` and one normalized cocycle per class.
pub fn h2_cohomology(g: &FiniteGroup, a: &FgAbelianGroup) -> Result<(FgAbelianGroup, Vec<Cocycle2>)> {
    let h = CohomologyH2::new(Arc::new(g.clone()), a)?;
    if h.class_count() > CLASS_CAP {
        return Err(Error::OrderLimitExceeded { what: "cohomology classes", size: h.class_count(), cap: CLASS_CAP });
    }
    let reps = h.classes().map(|c| h.cocycle(&c)).collect();
    Ok((h.group.clone(), reps))
}
