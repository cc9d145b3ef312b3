use num_bigint::BigInt;

use super::abelian::{cokernel_with_basis, FgAbelianGroup, PresentedAbGroup};
use super::snf::{hermite_normal_form, kernel_lattice, solve_left};
use super::IntMatrix;
use crate::{Error, Result};

/// Arrow `source -> target` of an [`AbDiagram`], `x -> x * matrix`.
#[derive(Debug, Clone)]
pub struct AbArrow {
    pub source: usize,
    pub target: usize,
    pub matrix: IntMatrix,
}

/// Finite diagram of presented abelian groups. Arrows need not be closed
/// under composition: a cone over the generated category is the same thing
/// as a cone over the generating arrows.
#[derive(Debug, Clone, Default)]
pub struct AbDiagram {
    objects: Vec<PresentedAbGroup>,
    arrows: Vec<AbArrow>,
}

impl AbDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, g: PresentedAbGroup) -> usize {
        self.objects.push(g);
        self.objects.len() - 1
    }

    /// Adds an arrow after checking its shape and that it respects relations.
    pub fn add_arrow(&mut self, source: usize, target: usize, matrix: IntMatrix) -> Result<()> {
        let (s, t) = match (self.objects.get(source), self.objects.get(target)) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(Error::ShapeMismatch(format!("arrow {source} -> {target} names a missing object"))),
        };
        if matrix.rows() != s.generator_count() || matrix.cols() != t.generator_count() {
            return Err(Error::ShapeMismatch(format!(
                "arrow {source} -> {target} has shape {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                s.generator_count(),
                t.generator_count()
            )));
        }
        if !s.maps_relations_into(&matrix, t) {
            return Err(Error::InvariantViolated(format!("arrow {source} -> {target} does not preserve relations")));
        }
        self.arrows.push(AbArrow { source, target, matrix });
        Ok(())
    }

    pub fn objects(&self) -> &[PresentedAbGroup] {
        &self.objects
    }

    pub fn arrows(&self) -> &[AbArrow] {
        &self.arrows
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.objects.len() + 1);
        let mut acc = 0;
        off.push(0);
        for o in &self.objects {
            acc += o.generator_count();
            off.push(acc);
        }
        off
    }
}

/// Limit of an [`AbDiagram`] with its cone.
///
/// The limit has canonical generators (torsion first, then free); `legs[i]`
/// is the `generator_count x n_i` matrix of the leg into object `i`.
#[derive(Debug, Clone)]
pub struct LimitCone {
    pub group: FgAbelianGroup,
    pub legs: Vec<IntMatrix>,
    /// Canonical generators as vectors in the product `Z^(n_1 + ... + n_k)`.
    generators: IntMatrix,
    /// Relations of the product of the objects.
    product_relations: IntMatrix,
}

impl LimitCone {
    /// The unique map from a test cone into the limit.
    ///
    /// `cone_legs[i]` is an `m x n_i` matrix from `Z^m` (any presentation of
    /// the apex) into object `i`. Returns the `m x generator_count` factoring
    /// matrix, or `None` if the legs do not form a cone.
    pub fn factor(&self, diagram: &AbDiagram, cone_legs: &[IntMatrix]) -> Option<IntMatrix> {
        if cone_legs.len() != diagram.objects.len() {
            return None;
        }
        let m = cone_legs.first().map_or(0, IntMatrix::rows);
        for a in &diagram.arrows {
            let lhs = &cone_legs[a.source] * &a.matrix;
            let rhs = &cone_legs[a.target];
            let diff = difference(&lhs, rhs);
            if !diff.row_iter().all(|r| diagram.objects[a.target].is_zero(r)) {
                return None;
            }
        }
        let total = *diagram.offsets().last().unwrap();
        let mut joined = IntMatrix::zeros(m, 0);
        for l in cone_legs {
            joined = joined.hstack(l);
        }
        if joined.cols() != total {
            return None;
        }
        // joined rows are compatible families; write them modulo product
        // relations in the canonical generators
        let gens_and_rel = self.generators.vstack(&self.product_relations);
        let sol = solve_left(&gens_and_rel, &joined)?;
        let mut u = sol.column_block(0, self.generators.rows());
        u.reduce_columns(&self.group.generator_orders());
        Some(u)
    }
}

fn difference(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut d = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            d[(i, j)] -= &b[(i, j)];
        }
    }
    d
}

/// Limit of a finite diagram of abelian groups, computed as the subgroup of
/// compatible families in the product of the objects.
///
/// A family `(x_i)` is compatible when `x_s * M - x_t` lies in the relation
/// lattice of `t` for every arrow `(s, t, M)`. Lifting to the free product
/// `Z^N`, the compatible lifts form a lattice `X` containing the product
/// relations `R`, and the limit is `X / R`. The empty diagram has the
/// trivial group as limit.
pub fn limit_of_diagram(d: &AbDiagram) -> LimitCone {
    let off = d.offsets();
    let total = off[off.len() - 1];

    // unknowns: x in Z^total, then one coefficient vector per arrow for the
    // target relations; equations: x_s M - x_t + y R_t = 0 per arrow
    let rel_counts: Vec<usize> = d.arrows.iter().map(|a| d.objects[a.target].relations().rows()).collect();
    let eq_width: usize = d.arrows.iter().map(|a| d.objects[a.target].generator_count()).sum();
    let unknowns = total + rel_counts.iter().sum::<usize>();
    let mut system = IntMatrix::zeros(unknowns, eq_width);
    let mut col = 0;
    let mut rel_row = total;
    for (a, &rc) in d.arrows.iter().zip(&rel_counts) {
        let nt = d.objects[a.target].generator_count();
        for i in 0..a.matrix.rows() {
            for j in 0..nt {
                system[(off[a.source] + i, col + j)] += &a.matrix[(i, j)];
            }
        }
        for j in 0..nt {
            system[(off[a.target] + j, col + j)] -= BigInt::from(1);
        }
        let rel = d.objects[a.target].relations();
        for r in 0..rc {
            for j in 0..nt {
                system[(rel_row + r, col + j)] = rel[(r, j)].clone();
            }
        }
        rel_row += rc;
        col += nt;
    }
    let compatible = if d.arrows.is_empty() {
        IntMatrix::identity(total)
    } else {
        hermite_normal_form(&kernel_lattice(&system).column_block(0, total))
    };

    let mut product_relations = IntMatrix::zeros(0, 0);
    for o in &d.objects {
        product_relations = product_relations.direct_sum(o.relations());
    }

    if compatible.rows() == 0 {
        return LimitCone {
            group: FgAbelianGroup::trivial(),
            legs: d.objects.iter().map(|o| IntMatrix::zeros(0, o.generator_count())).collect(),
            generators: IntMatrix::zeros(0, total),
            product_relations,
        };
    }
    let coeffs = solve_left(&compatible, &product_relations).expect("product relations are compatible families");
    let cb = cokernel_with_basis(&coeffs);
    let generators = &cb.generators * &compatible;
    let legs = (0..d.objects.len()).map(|i| generators.column_block(off[i], off[i + 1])).collect();
    LimitCone { group: cb.group, legs, generators, product_relations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> PresentedAbGroup {
        PresentedAbGroup::free(1)
    }

    #[test]
    fn empty_diagram_is_trivial() {
        let l = limit_of_diagram(&AbDiagram::new());
        assert!(l.group.is_trivial());
        assert!(l.legs.is_empty());
    }

    #[test]
    fn identity_arrow_gives_object() {
        let mut d = AbDiagram::new();
        let k = PresentedAbGroup::new(2, IntMatrix::from_rows(2, &[[4, 0]]));
        let i = d.add_object(k.clone());
        d.add_arrow(i, i, IntMatrix::identity(2)).unwrap();
        let l = limit_of_diagram(&d);
        assert_eq!(l.group, k.structure());
        assert_eq!(l.legs[0].rows(), 2);
    }

    #[test]
    fn multiplication_by_nk_plus_one_has_no_fixed_points() {
        for n in 2..6i64 {
            let mut d = AbDiagram::new();
            let i = d.add_object(z());
            for k in 1..=3 {
                d.add_arrow(i, i, IntMatrix::from_rows(1, &[[n * k + 1]])).unwrap();
            }
            assert!(limit_of_diagram(&d).group.is_trivial());
        }
    }

    #[test]
    fn initial_object_shape_gives_value_there() {
        // a -> b, a -> c, b -> c commuting: initial object a = Z/6
        let mut d = AbDiagram::new();
        let a = d.add_object(PresentedAbGroup::new(1, IntMatrix::from_rows(1, &[[6]])));
        let b = d.add_object(PresentedAbGroup::new(1, IntMatrix::from_rows(1, &[[3]])));
        let c = d.add_object(PresentedAbGroup::new(1, IntMatrix::from_rows(1, &[[3]])));
        d.add_arrow(a, b, IntMatrix::from_rows(1, &[[1]])).unwrap();
        d.add_arrow(a, c, IntMatrix::from_rows(1, &[[2]])).unwrap();
        d.add_arrow(b, c, IntMatrix::from_rows(1, &[[2]])).unwrap();
        let l = limit_of_diagram(&d);
        assert_eq!(l.group, FgAbelianGroup::cyclic(6));
    }

    #[test]
    fn legs_form_a_cone_and_are_jointly_injective() {
        let mut d = AbDiagram::new();
        let a = d.add_object(PresentedAbGroup::new(2, IntMatrix::from_rows(2, &[[4, 0], [0, 6]])));
        let b = d.add_object(PresentedAbGroup::new(1, IntMatrix::from_rows(1, &[[2]])));
        d.add_arrow(a, b, IntMatrix::from_rows(1, &[[1], [1]])).unwrap();
        d.add_arrow(a, b, IntMatrix::from_rows(1, &[[1], [0]])).unwrap();
        let l = limit_of_diagram(&d);
        // families with y even: Z/4 x Z/3
        assert_eq!(l.group, FgAbelianGroup::cyclic(12));
        for ar in d.arrows() {
            let lhs = &l.legs[ar.source] * &ar.matrix;
            let diff = difference(&lhs, &l.legs[ar.target]);
            assert!(diff.row_iter().all(|r| d.objects()[ar.target].is_zero(r)));
        }
        // joint injectivity: the only element killed by all legs is zero
        let joint = l.legs[0].hstack(&l.legs[1]);
        let prod = d.objects()[0].relations().direct_sum(d.objects()[1].relations());
        let hom = crate::linalg::AbHom::new(
            PresentedAbGroup::from_group(&l.group),
            PresentedAbGroup::new(3, prod),
            joint,
        );
        assert!(hom.is_injective());
    }

    #[test]
    fn factor_through_limit() {
        let mut d = AbDiagram::new();
        let a = d.add_object(PresentedAbGroup::new(1, IntMatrix::from_rows(1, &[[8]])));
        d.add_arrow(a, a, IntMatrix::from_rows(1, &[[5]])).unwrap();
        let l = limit_of_diagram(&d);
        // fixed points of x -> 5x on Z/8: 4x = 0, so {0, 2, 4, 6} = Z/4
        assert_eq!(l.group, FgAbelianGroup::cyclic(4));
        // test cone Z -> Z/8, 1 -> 2
        let u = l.factor(&d, &[IntMatrix::from_rows(1, &[[2]])]).expect("cone factors");
        assert_eq!((&u * &l.legs[0])[(0, 0)].clone() % 8, BigInt::from(2));
        // 1 -> 1 is not a cone (5 != 1 mod 8)
        assert!(l.factor(&d, &[IntMatrix::from_rows(1, &[[1]])]).is_none());
    }
}
