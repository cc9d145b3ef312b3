//! Presentations with known relator lattices.
//!
//! When `H_2 = 0` the module `R/[R,F]` embeds in `F_ab` through `E`, so `L`
//! is the kernel lattice of `E`. Otherwise `L` is the sublattice of that
//! kernel of index `|H_2|` cut out by the identities among the relators;
//! for `⟨a,b | a^n, b^n, [a,b]⟩` this is `z^n = 1` with `z = [a,b]`.

use crate::group::{FiniteGroup, StandardGroup};
use crate::linalg::IntMatrix;
use crate::Result;

use super::module::RelatorModule;
use super::word::{parse_presentation, Presentation};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
    pub lattice: IntMatrix,
    pub group: StandardGroup,
}

impl CatalogEntry {
    fn new(name: String, text: &str, lattice: IntMatrix, group: StandardGroup) -> Self {
        let presentation = parse_presentation(text).expect("catalog presentation parses");
        Self { name, presentation, lattice, group }
    }

    pub fn module(&self) -> RelatorModule {
        RelatorModule::new(self.presentation.clone(), self.lattice.clone()).expect("catalog lattice is valid")
    }

    /// Images of the generators in [`CatalogEntry::group`] satisfying the
    /// relators and generating the group.
    pub fn generator_images(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        let g = self.group.build()?;
        let images = find_generator_images(&self.presentation, &g).expect("catalog group satisfies its presentation");
        Ok((g, images))
    }
}

/// `⟨a | a^n⟩`.
pub fn cyclic(n: u32) -> CatalogEntry {
    CatalogEntry::new(format!("cyclic {n}"), &format!("gens: a; rels: a^{n}"), IntMatrix::zeros(0, 1), StandardGroup::Cyclic(n as usize))
}

/// `⟨a, b | a^n, b^n, [a, b]⟩` with `L = {n z}`.
pub fn cyclic_square(n: u32) -> CatalogEntry {
    CatalogEntry::new(
        format!("cyclic_square {n}"),
        &format!("gens: a b; rels: a^{n}, b^{n}, [a,b]"),
        IntMatrix::from_rows(3, &[[0, 0, n as i64]]),
        StandardGroup::DirectProduct(vec![StandardGroup::Cyclic(n as usize), StandardGroup::Cyclic(n as usize)]),
    )
}

pub fn quaternion8() -> CatalogEntry {
    CatalogEntry::new("quaternion8".into(), "gens: a b; rels: a^2 b^-2, b a b^-1 a", IntMatrix::zeros(0, 2), StandardGroup::Quaternion8)
}

pub fn symmetric3() -> CatalogEntry {
    CatalogEntry::new(
        "symmetric3".into(),
        "gens: a b; rels: a^3, b^2, (ab)^2",
        IntMatrix::from_rows(3, &[[2, 3, -3]]),
        StandardGroup::Symmetric(3),
    )
}

pub fn dihedral4() -> CatalogEntry {
    CatalogEntry::new(
        "dihedral4".into(),
        "gens: a b; rels: a^4, b^2, (ab)^2",
        IntMatrix::from_rows(3, &[[2, 4, -4]]),
        StandardGroup::Dihedral(4),
    )
}

pub fn alternating4() -> CatalogEntry {
    CatalogEntry::new(
        "alternating4".into(),
        "gens: a b; rels: a^3, b^2, (ab)^3",
        IntMatrix::from_rows(3, &[[4, 6, -4]]),
        StandardGroup::Alternating(4),
    )
}

/// Every catalog presentation.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (2..=8).map(cyclic).collect();
    out.extend((2..=5).map(cyclic_square));
    out.extend([quaternion8(), symmetric3(), dihedral4(), alternating4()]);
    out
}

/// Looks a catalog entry up by name, e.g. `cyclic_square 3` or `dihedral4`.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let mut parts = name.split_whitespace();
    let head = parts.next()?;
    let arg = parts.next().map(str::parse::<u32>);
    match (head, arg) {
        ("cyclic", Some(Ok(n))) if n >= 1 => Some(cyclic(n)),
        ("cyclic_square", Some(Ok(n))) if n >= 1 => Some(cyclic_square(n)),
        ("quaternion8", None) => Some(quaternion8()),
        ("symmetric3", None) => Some(symmetric3()),
        ("dihedral4", None) => Some(dihedral4()),
        ("alternating4", None) => Some(alternating4()),
        _ => None,
    }
}

/// Searches assignments of generators to group elements that satisfy the
/// relators and generate the group, in lexicographic order.
pub fn find_generator_images(p: &Presentation, g: &FiniteGroup) -> Option<Vec<usize>> {
    let n = p.generator_count();
    let total = g.order().checked_pow(n as u32)?;
    (0..total).find_map(|mut i| {
        let images: Vec<usize> = (0..n)
            .map(|_| {
                let x = i % g.order();
                i /= g.order();
                x
            })
            .collect();
        let ok = p
            .relators()
            .iter()
            .all(|r| r.evaluate(&images, g.identity(), |a, b| g.mul(*a, *b), |a| g.inv(*a)) == g.identity())
            && g.subgroup_generated(&images).is_whole();
        ok.then_some(images)
    })
}
