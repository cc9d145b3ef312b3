use std::sync::Arc;

use crate::extension::Extension;
use crate::group::{FiniteGroup, GroupHom, DEFAULT_ORDER_CAP};
use crate::linalg::{limit_of_diagram, AbDiagram, FgAbelianGroup, IntMatrix, PresentedAbGroup};
use crate::{Error, Result};

use super::cocycle::{Coefficients, CohomologyH2, Cocycle2, CLASS_CAP};

/// Central extension `A -> E -> G` built from a cocycle.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    pub extension: Extension,
    pub cocycle: Cocycle2,
    /// `kernel_embedding[i]` is the element `(a, 1)` of `E` for the
    /// coefficient element with mixed-radix index `i`.
    pub kernel_embedding: Vec<usize>,
}

impl CentralExtension {
    pub fn middle(&self) -> &Arc<FiniteGroup> {
        self.extension.dom()
    }

    /// Whether the kernel lies in the derived subgroup of the middle group.
    pub fn is_stem(&self) -> bool {
        self.extension.kernel().is_subset_of(&self.middle().derived_subgroup())
    }
}

/// `E = A x G` as a set with `(a, g)(a', g') = (a + a' + c(g, g'), g g')`.
/// Element `(a, g)` has index `index(a) + |A| g`.
pub fn extension_from_cocycle(c: &Cocycle2) -> Result<CentralExtension> {
    let g = c.group();
    let coeff: &Coefficients = c.coefficients();
    let (na, ng) = (coeff.size(), g.order());
    let n = na * ng;
    if n > DEFAULT_ORDER_CAP {
        return Err(Error::OrderLimitExceeded { what: "extension order", size: n, cap: DEFAULT_ORDER_CAP });
    }
    let elems: Vec<Vec<u64>> = (0..na).map(|i| coeff.element(i)).collect();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a, p) = (x % na, x / na);
        for y in 0..n {
            let (b, q) = (y % na, y / na);
            let s = coeff.add(&coeff.add(&elems[a], &elems[b]), c.value(p, q));
            table[x * n + y] = (coeff.index(&s) + na * g.mul(p, q)) as u32;
        }
    }
    let identity = na * g.identity();
    let mut gens: Vec<u32> = g.generators().iter().map(|&s| (na * s) as u32).collect();
    for l in 0..coeff.len() {
        let mut unit = vec![0; coeff.len()];
        unit[l] = 1;
        gens.push((coeff.index(&unit) + identity) as u32);
    }
    let e = Arc::new(FiniteGroup::from_table_unchecked(n, table, identity, Some(gens)));
    let proj = GroupHom::new(e, g.clone(), (0..n).map(|x| x / na).collect())?;
    Ok(CentralExtension {
        extension: Extension::new(proj)?,
        cocycle: c.clone(),
        kernel_embedding: (0..na).map(|i| i + identity).collect(),
    })
}

/// One central extension of `G` by `A` per class of `H^2(G, A)`.
pub fn enumerate_central_extensions(g: &FiniteGroup, a: &FgAbelianGroup) -> Result<Vec<CentralExtension>> {
    let h = CohomologyH2::new(Arc::new(g.clone()), a)?;
    if h.class_count() > CLASS_CAP {
        return Err(Error::OrderLimitExceeded { what: "cohomology classes", size: h.class_count(), cap: CLASS_CAP });
    }
    h.classes().map(|c| extension_from_cocycle(&h.cocycle(&c))).collect()
}

/// A stem extension of `G` with kernel `H_2(G)`.
///
/// Classes of `H^2(G, H_2 G)` are tried in order, starting with the one
/// whose `Hom` part is the identity and whose `Ext` part is zero, then in
/// mixed-radix order; the first with kernel inside `[E, E]` is returned.
pub fn find_stem_extension(g: &FiniteGroup) -> Result<CentralExtension> {
    let g = Arc::new(g.clone());
    let a = crate::homology::SecondHomology::new(g.clone())?.group();
    let h = CohomologyH2::new(g, &a)?;
    let first = h.identity_hom_class();
    let candidates = first.clone().into_iter().chain(h.classes().filter(|c| Some(c) != first.as_ref()));
    for class in candidates.take(CLASS_CAP) {
        let ext = extension_from_cocycle(&h.cocycle(&class))?;
        if ext.is_stem() {
            return Ok(ext);
        }
    }
    Err(Error::NotFound(format!("no stem extension among the first {CLASS_CAP} classes")))
}

/// Universal central extension of a perfect group: a stem extension whose
/// middle group is perfect.
pub fn universal_central_extension(g: &FiniteGroup) -> Result<CentralExtension> {
    if !g.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let ext = find_stem_extension(g)?;
    if !ext.middle().is_perfect() {
        return Err(Error::InvariantViolated("stem cover of a perfect group is not perfect".into()));
    }
    Ok(ext)
}

/// Homomorphisms `E -> A` into a finite abelian group, as element maps,
/// found by trying all images of the generators.
pub(crate) fn homs_to_abelian(e: &FiniteGroup, a: &Coefficients) -> Result<Vec<Vec<Vec<u64>>>> {
    let gens = e.generators();
    let total = (a.size() as u128).pow(gens.len() as u32);
    if total > CLASS_CAP as u128 {
        return Err(Error::OrderLimitExceeded { what: "homomorphism candidates", size: total as usize, cap: CLASS_CAP });
    }
    let mut out = Vec::new();
    'candidates: for mut i in 0..total as usize {
        let images: Vec<Vec<u64>> = gens
            .iter()
            .map(|_| {
                let x = a.element(i % a.size());
                i /= a.size();
                x
            })
            .collect();
        let mut value: Vec<Option<Vec<u64>>> = vec![None; e.order()];
        value[e.identity()] = Some(vec![0; a.len()]);
        let mut queue = std::collections::VecDeque::from([e.identity()]);
        while let Some(x) = queue.pop_front() {
            let vx = value[x].clone().unwrap();
            for (s, img) in gens.iter().zip(&images) {
                let y = e.mul(x, *s);
                let vy = a.add(&vx, img);
                match &value[y] {
                    None => {
                        value[y] = Some(vy);
                        queue.push_back(y);
                    }
                    Some(v) if *v != vy => continue 'candidates,
                    Some(_) => {}
                }
            }
        }
        out.push(value.into_iter().map(Option::unwrap).collect());
    }
    Ok(out)
}

/// Limit of the kernels in a finite piece of the diagram of central
/// extensions of `G` under the stem extension: the stem extension, the
/// split extension `G x H_2 G`, the morphisms over `G` from the first to
/// the second, and the endomorphisms of the first. Should be `H_2 G`.
pub fn stem_kernel_limit(g: &FiniteGroup) -> Result<FgAbelianGroup> {
    let stem = find_stem_extension(g)?;
    let coeff = stem.cocycle.coefficients().clone();
    let obj = PresentedAbGroup::from_group(&coeff.group);
    let mut diagram = AbDiagram::new();
    let k_stem = diagram.add_object(obj.clone());
    let k_split = diagram.add_object(obj);
    let l = coeff.len();
    // morphisms over G out of the stem extension are x -> (χ(x), f(x)) and
    // x -> x χ(x) for homomorphisms χ: E -> A
    for chi in homs_to_abelian(stem.middle(), &coeff)? {
        let rows: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut unit = vec![0; l];
                unit[i] = 1;
                chi[stem.kernel_embedding[coeff.index(&unit)]].iter().map(|&v| v as i64).collect()
            })
            .collect();
        let to_split = IntMatrix::from_rows(l, &rows);
        let mut endo = to_split.clone();
        for i in 0..l {
            endo[(i, i)] += 1;
        }
        diagram.add_arrow(k_stem, k_split, to_split)?;
        diagram.add_arrow(k_stem, k_stem, endo)?;
    }
    Ok(limit_of_diagram(&diagram).group)
}
