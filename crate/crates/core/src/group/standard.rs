use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::{Error, Result};

/// Named groups with canonical tables. Element 0 is always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardGroup {
    /// `Z/n`, element `k` is the k-th power of the generator 1.
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`; element `i + n j` is
    /// `r^i s^j`.
    Dihedral(usize),
    /// `{±1, ±i, ±j, ±k}`; elements `0..4` are `1, i, j, k`, `4..8` their
    /// negatives. Generated by `i, j`.
    Quaternion8,
    Symmetric(usize),
    Alternating(usize),
    Klein4,
    DirectProduct(Vec<StandardGroup>),
}

impl StandardGroup {
    pub fn build(&self) -> Result<FiniteGroup> {
        match *self {
            StandardGroup::Cyclic(n) => {
                check_order("cyclic", n)?;
                if n == 0 {
                    return Err(Error::Unsupported("cyclic group of order 0".into()));
                }
                let table = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
                let gens = if n > 1 { vec![1] } else { vec![] };
                Ok(FiniteGroup::from_table_unchecked(n, table, 0, Some(gens)))
            }
            StandardGroup::Dihedral(n) => {
                if n == 0 {
                    return Err(Error::Unsupported("dihedral group with n = 0".into()));
                }
                check_order("dihedral", 2 * n)?;
                let m = 2 * n;
                let mut table = vec![0u32; m * m];
                for a in 0..m {
                    for b in 0..m {
                        let (i, j) = (a % n, a / n);
                        let (k, l) = (b % n, b / n);
                        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                        table[a * m + b] = (rot + n * ((j + l) % 2)) as u32;
                    }
                }
                let gens = if n > 1 { vec![1, n as u32] } else { vec![n as u32] };
                Ok(FiniteGroup::from_table_unchecked(m, table, 0, Some(gens)))
            }
            StandardGroup::Quaternion8 => {
                // unit products: (sign flip, result) for 1, i, j, k
                const UNITS: [[(bool, u32); 4]; 4] = [
                    [(false, 0), (false, 1), (false, 2), (false, 3)],
                    [(false, 1), (true, 0), (false, 3), (true, 2)],
                    [(false, 2), (true, 3), (true, 0), (false, 1)],
                    [(false, 3), (false, 2), (true, 1), (true, 0)],
                ];
                let mut table = vec![0u32; 64];
                for a in 0..8 {
                    for b in 0..8 {
                        let (flip, u) = UNITS[a % 4][b % 4];
                        let neg = (a >= 4) ^ (b >= 4) ^ flip;
                        table[a * 8 + b] = u + if neg { 4 } else { 0 };
                    }
                }
                Ok(FiniteGroup::from_table_unchecked(8, table, 0, Some(vec![1, 2])))
            }
            StandardGroup::Klein4 => {
                let table = (0..16u32).map(|x| (x / 4) ^ (x % 4)).collect();
                Ok(FiniteGroup::from_table_unchecked(4, table, 0, Some(vec![1, 2])))
            }
            StandardGroup::Symmetric(n) => {
                if n > 7 {
                    return Err(Error::Unsupported(format!("symmetric group of degree {n}")));
                }
                let mut gens = Vec::new();
                if n >= 2 {
                    let mut t: Vec<usize> = (0..n).collect();
                    t.swap(0, 1);
                    gens.push(t);
                }
                if n >= 3 {
                    gens.push((0..n).map(|i| (i + 1) % n).collect());
                }
                Ok(FiniteGroup::from_permutations(n, &gens, DEFAULT_ORDER_CAP)?.0)
            }
            StandardGroup::Alternating(n) => {
                if n > 7 {
                    return Err(Error::Unsupported(format!("alternating group of degree {n}")));
                }
                let gens: Vec<Vec<usize>> = (2..n)
                    .map(|k| {
                        let mut p: Vec<usize> = (0..n).collect();
                        // 3-cycle 0 -> 1 -> k -> 0
                        p[0] = 1;
                        p[1] = k;
                        p[k] = 0;
                        p
                    })
                    .collect();
                Ok(FiniteGroup::from_permutations(n, &gens, DEFAULT_ORDER_CAP)?.0)
            }
            StandardGroup::DirectProduct(ref factors) => {
                let mut g = FiniteGroup::trivial();
                for f in factors {
                    let h = f.build()?;
                    check_order("direct product", g.order() * h.order())?;
                    g = g.direct_product(&h);
                }
                Ok(g)
            }
        }
    }

    /// Short name such as `C4`, `D4`, `Q8`, `S3`, `A5`, `C2xC2`.
    pub fn label(&self) -> String {
        match self {
            StandardGroup::Cyclic(n) => format!("C{n}"),
            StandardGroup::Dihedral(n) => format!("D{n}"),
            StandardGroup::Quaternion8 => "Q8".into(),
            StandardGroup::Symmetric(n) => format!("S{n}"),
            StandardGroup::Alternating(n) => format!("A{n}"),
            StandardGroup::Klein4 => "V4".into(),
            StandardGroup::DirectProduct(fs) => fs.iter().map(StandardGroup::label).collect::<Vec<_>>().join("x"),
        }
    }
}

fn check_order(what: &'static str, size: usize) -> Result<()> {
    if size > DEFAULT_ORDER_CAP {
        Err(Error::OrderLimitExceeded { what, size, cap: DEFAULT_ORDER_CAP })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_associative(g: &FiniteGroup) -> bool {
        g.elements().all(|a| g.elements().all(|b| g.elements().all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
    }

    #[test]
    fn tables_are_groups() {
        for s in [
            StandardGroup::Cyclic(1),
            StandardGroup::Cyclic(6),
            StandardGroup::Dihedral(3),
            StandardGroup::Dihedral(4),
            StandardGroup::Quaternion8,
            StandardGroup::Klein4,
            StandardGroup::Symmetric(4),
            StandardGroup::Alternating(4),
            StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(2), StandardGroup::Cyclic(3)]),
        ] {
            let g = s.build().unwrap();
            assert!(brute_associative(&g), "{s:?}");
            assert!(FiniteGroup::from_multiplication_table(&g.table()).is_ok());
            assert_eq!(g.subgroup_generated(&g.generators()).order(), g.order(), "{s:?} generators");
            assert_eq!(g.identity(), 0);
        }
    }

    #[test]
    fn orders_and_shapes() {
        let c4 = StandardGroup::Cyclic(4).build().unwrap();
        assert_eq!((c4.order(), c4.generators().len()), (4, 1));
        let v = StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(2), StandardGroup::Cyclic(2)]).build().unwrap();
        assert_eq!(v.order_statistics(), StandardGroup::Klein4.build().unwrap().order_statistics());
        let q8 = StandardGroup::Quaternion8.build().unwrap();
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
        assert_eq!(q8.order_statistics(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        let d4 = StandardGroup::Dihedral(4).build().unwrap();
        assert_eq!(d4.order_statistics(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        assert_eq!(StandardGroup::Symmetric(5).build().unwrap().order(), 120);
        assert_eq!(StandardGroup::Alternating(5).build().unwrap().order(), 60);
        assert!(StandardGroup::Symmetric(9).build().is_err());
    }
}
