use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::FiniteGroup;
use crate::linalg::{cokernel_with_basis, FgAbelianGroup, IntMatrix};
use crate::{Error, Result};

/// An explicit isomorphism between an abelian [`FiniteGroup`] and its
/// invariant-factor form.
#[derive(Debug, Clone)]
pub struct AbelianCoordinates {
    pub invariants: FgAbelianGroup,
    /// Element realizing each canonical generator.
    pub basis: Vec<usize>,
    /// `coords[x]` are the canonical coordinates of element `x`, reduced.
    pub coords: Vec<Vec<BigInt>>,
}

impl AbelianCoordinates {
    /// Element with the given coordinates.
    pub fn element(&self, g: &FiniteGroup, coords: &[BigInt]) -> usize {
        let mut x = g.identity();
        for (&b, c) in self.basis.iter().zip(coords) {
            x = g.mul(x, g.pow(b, c.to_i64().expect("small coordinate")));
        }
        x
    }
}

impl FiniteGroup {
    /// Coordinates on an abelian group. The relation lattice of the
    /// generators is read off the Cayley graph: every edge `x -> x s`
    /// closes a cycle with the breadth-first tree.
    pub fn abelian_coordinates(&self) -> Result<AbelianCoordinates> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let gens = self.generators();
        let k = gens.len();
        let mut word: Vec<Option<Vec<i64>>> = vec![None; self.order()];
        word[self.identity()] = Some(vec![0; k]);
        let mut queue = std::collections::VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if word[y].is_none() {
                    let mut w = word[x].clone().unwrap();
                    w[i] += 1;
                    word[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let word: Vec<Vec<i64>> = word.into_iter().map(Option::unwrap).collect();
        let mut rels = Vec::new();
        for x in self.elements() {
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                let mut r = word[x].clone();
                r[i] += 1;
                for (a, b) in r.iter_mut().zip(&word[y]) {
                    *a -= b;
                }
                if r.iter().any(|&v| v != 0) {
                    rels.push(r);
                }
            }
        }
        let cb = cokernel_with_basis(&IntMatrix::from_rows(k, &rels));
        let basis: Vec<usize> = cb
            .generators
            .row_iter()
            .map(|row| {
                let mut x = self.identity();
                for (&s, c) in gens.iter().zip(row) {
                    x = self.mul(x, self.pow(s, c.to_i64().expect("small coordinate")));
                }
                x
            })
            .collect();
        let coords = word
            .iter()
            .map(|w| cb.coordinates(&w.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()))
            .collect();
        Ok(AbelianCoordinates { invariants: cb.group, basis, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::StandardGroup;

    #[test]
    fn coordinates_are_an_isomorphism() {
        for s in [
            StandardGroup::Cyclic(1),
            StandardGroup::Cyclic(12),
            StandardGroup::Klein4,
            StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(4), StandardGroup::Cyclic(6)]),
        ] {
            let g = s.build().unwrap();
            let ac = g.abelian_coordinates().unwrap();
            assert_eq!(ac.invariants, g.abelian_invariants().unwrap());
            let orders = ac.invariants.generator_orders();
            for a in g.elements() {
                assert_eq!(ac.element(&g, &ac.coords[a]), a);
                for b in g.elements() {
                    let sum: Vec<BigInt> =
                        ac.coords[a].iter().zip(&ac.coords[b]).zip(&orders).map(|((x, y), d)| (x + y) % d).collect();
                    assert_eq!(sum, ac.coords[g.mul(a, b)]);
                }
            }
        }
    }
}
