//! The relator module `R/[R,F]` of a presentation and the action of the
//! endomorphisms `a_i -> a_i prod_j r_j^(α_ij)` of `F` over the group.
//!
//! Relator classes are central modulo `[R, F]`, so substituting
//! `a_i k_i` for `a_i` multiplies the class of `r` by `prod_i k_i^(e_i)` with
//! `e_i` the exponent sums of `r`. On `Z^m / L` (row vectors) the
//! endomorphism `α` therefore acts by `I + E α`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::word::{exponent_matrix, Presentation};
use crate::group::FiniteGroup;
use crate::linalg::{
    kernel_lattice, lattice_contains, limit_of_diagram, quotient_of_lattices, AbDiagram, FgAbelianGroup, IntMatrix,
    PresentedAbGroup,
};
use crate::{Error, Result};

/// `R/[R,F]` presented as `Z^m / L` on the relator classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorModule {
    presentation: Presentation,
    exponents: IntMatrix,
    lattice: IntMatrix,
}

impl RelatorModule {
    /// Checks `L E = 0`: a relation among relator classes lies in `[F, F]`.
    pub fn new(presentation: Presentation, lattice: IntMatrix) -> Result<Self> {
        let m = Self::unchecked(presentation, lattice)?;
        if !(&m.lattice * &m.exponents).is_zero() {
            return Err(Error::InvariantViolated("relator lattice does not vanish in the abelianized free group".into()));
        }
        Ok(m)
    }

    /// Without the `L E = 0` check, for degenerate comparisons.
    pub fn unchecked(presentation: Presentation, lattice: IntMatrix) -> Result<Self> {
        let m = presentation.relator_count();
        if lattice.cols() != m {
            return Err(Error::ShapeMismatch(format!("lattice has {} columns for {m} relators", lattice.cols())));
        }
        let exponents = exponent_matrix(&presentation);
        Ok(Self { presentation, exponents, lattice })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// `E`, `m x n`.
    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }

    /// `L`, rows are relations among relator classes.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn relator_count(&self) -> usize {
        self.presentation.relator_count()
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.generator_count()
    }

    /// `Z^m / L`.
    pub fn as_group(&self) -> PresentedAbGroup {
        PresentedAbGroup::new(self.relator_count(), self.lattice.clone())
    }

    /// The elementary endomorphisms `α = e_ij`.
    pub fn elementary_family(&self) -> Vec<EndomorphismSpec> {
        let (n, m) = (self.generator_count(), self.relator_count());
        (0..n).flat_map(|i| (0..m).map(move |j| EndomorphismSpec::elementary(n, m, i, j))).collect()
    }
}

/// `a_i -> a_i prod_j r_j^(alpha[i][j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphismSpec {
    pub alpha: IntMatrix,
}

impl EndomorphismSpec {
    pub fn new(alpha: IntMatrix) -> Self {
        Self { alpha }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self { alpha: IntMatrix::zeros(n, m) }
    }

    pub fn elementary(n: usize, m: usize, i: usize, j: usize) -> Self {
        let mut alpha = IntMatrix::zeros(n, m);
        alpha[(i, j)] = BigInt::from(1);
        Self { alpha }
    }

    /// `self` followed by `next`: `α + β + α E β`.
    pub fn then(&self, next: &EndomorphismSpec, exponents: &IntMatrix) -> EndomorphismSpec {
        let cross = &(&self.alpha * exponents) * &next.alpha;
        let mut alpha = self.alpha.clone();
        for i in 0..alpha.rows() {
            for j in 0..alpha.cols() {
                alpha[(i, j)] += &next.alpha[(i, j)] + &cross[(i, j)];
            }
        }
        EndomorphismSpec { alpha }
    }

    /// Images of the generators as words.
    pub fn generator_images(&self, p: &Presentation) -> Vec<super::Word> {
        (0..p.generator_count())
            .map(|i| {
                let mut w = super::Word::generator(i);
                for (j, r) in p.relators().iter().enumerate() {
                    let k = self.alpha[(i, j)].to_i64().expect("small exponent");
                    w = w.concat(&r.pow(k));
                }
                w
            })
            .collect()
    }
}

/// `I + E α`, acting on row vectors of relator classes.
pub fn endo_action(module: &RelatorModule, e: &EndomorphismSpec) -> Result<IntMatrix> {
    let (n, m) = (module.generator_count(), module.relator_count());
    if e.alpha.rows() != n || e.alpha.cols() != m {
        return Err(Error::ShapeMismatch(format!(
            "alpha is {}x{}, expected {n}x{m}",
            e.alpha.rows(),
            e.alpha.cols()
        )));
    }
    let mut a = &module.exponents * &e.alpha;
    for i in 0..m {
        a[(i, i)] += 1;
    }
    Ok(a)
}

/// Elements of `Z^m / L` fixed by every endomorphism of the family, as the
/// limit of the one-object diagram whose arrows are the actions.
pub fn fixed_subgroup(module: &RelatorModule, family: &[EndomorphismSpec]) -> Result<FgAbelianGroup> {
    let mut d = AbDiagram::new();
    let o = d.add_object(module.as_group());
    for e in family {
        d.add_arrow(o, o, endo_action(module, e)?)?;
    }
    Ok(limit_of_diagram(&d).group)
}

/// Exponent of `Z^m / L`, zero if it is infinite.
fn module_exponent(module: &RelatorModule) -> BigInt {
    let g = module.as_group().structure();
    if g.is_finite() {
        g.torsion().last().cloned().unwrap_or_else(|| BigInt::from(1))
    } else {
        BigInt::zero()
    }
}

/// Row lattice of `{v : v E ∈ ε Z^n}` in `Z^m`, `ε` the exponent of the
/// module. Fixedness under `e_ij` says `(v E)_i` annihilates the module.
pub fn hopf_kernel_lattice(module: &RelatorModule) -> IntMatrix {
    let (n, m) = (module.generator_count(), module.relator_count());
    let eps = module_exponent(module);
    let mut stacked = module.exponents.clone();
    if !eps.is_zero() {
        let mut scaled = IntMatrix::identity(n);
        for i in 0..n {
            scaled[(i, i)] = eps.clone();
        }
        stacked = stacked.vstack(&scaled);
    }
    kernel_lattice(&stacked).column_block(0, m)
}

/// `{v ∈ Z^m/L : v fixed by all endomorphisms}`; for a presentation of a
/// finite group this is the kernel of `Z^m / L -> Z^n` given by `E`, the
/// Hopf quotient `(R ∩ [F,F]) / [R,F]`.
pub fn hopf_kernel(module: &RelatorModule) -> Result<FgAbelianGroup> {
    if !(&module.lattice * &module.exponents).is_zero() {
        return Err(Error::InvariantViolated("L E is not zero".into()));
    }
    Ok(quotient_of_lattices(&hopf_kernel_lattice(module), &module.lattice))
}

/// Whether `e` fixes every element of the Hopf kernel, i.e. `v (I + E α) - v ∈ L`.
pub fn acts_trivially_on_hopf_kernel(module: &RelatorModule, e: &EndomorphismSpec) -> Result<bool> {
    let a = endo_action(module, e)?;
    let k = hopf_kernel_lattice(module);
    let fixed = k.row_iter().all(|v| {
        let image = a.apply(v);
        let diff: Vec<BigInt> = image.iter().zip(v).map(|(x, y)| x - y).collect();
        lattice_contains(&module.lattice, &diff)
    });
    Ok(fixed)
}

/// Outcome of comparing a relator lattice with bar-resolution homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    /// Generators map into the group, relators evaluate to the identity
    /// and the images generate.
    pub presents_group: bool,
    pub hopf_kernel: String,
    pub h2: String,
    pub module_free_rank: usize,
    pub generator_count: usize,
    pub consistent: bool,
}

/// Checks a proposed `L` against `H_2(G)`: the Hopf kernel must be `H_2`
/// and `Z^m / L` must have free rank `n`.
pub fn validate_relator_lattice(
    p: &Presentation,
    lattice: &IntMatrix,
    g: &FiniteGroup,
    images: &[usize],
) -> Result<LatticeReport> {
    let presents_group = images.len() == p.generator_count()
        && images.iter().all(|&x| x < g.order())
        && p.relators().iter().all(|r| r.evaluate(images, g.identity(), |a, b| g.mul(*a, *b), |a| g.inv(*a)) == g.identity())
        && g.subgroup_generated(images).is_whole();
    let h2 = crate::homology::SecondHomology::new(Arc::new(g.clone()))?.group();
    let module = RelatorModule::unchecked(p.clone(), lattice.clone())?;
    let lattice_ok = (lattice * module.exponents()).is_zero();
    let hk = if lattice_ok { Some(hopf_kernel(&module)?) } else { None };
    let module_free_rank = module.as_group().structure().free_rank();
    let consistent =
        presents_group && hk.as_ref() == Some(&h2) && module_free_rank == p.generator_count();
    Ok(LatticeReport {
        presents_group,
        hopf_kernel: hk.map_or_else(|| "undefined (L E != 0)".into(), |h| h.to_string()),
        h2: h2.to_string(),
        module_free_rank,
        generator_count: p.generator_count(),
        consistent,
    })
}
