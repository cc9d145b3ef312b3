//! Exact computational group homology in low degrees.
//!
//! The crate computes centralisations and trivialisations of group
//! extensions relative to a reflector (abelianisation, identity or zero),
//! Hopf quotients, second homology of finite groups through the normalized
//! bar resolution, the five-term exact sequence of an extension, central
//! extensions from 2-cocycles (stem covers, universal central extensions),
//! and second homology as the common fixed points of the endomorphisms of a
//! free presentation.
//!
//! All arithmetic is exact. Integer matrices use arbitrary precision and
//! every abelian group is reported in invariant-factor normal form.

pub mod cohomology;
pub mod corpus;
pub mod extension;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod satellite;

mod error;

pub use error::{Axiom, Error, Result};

pub use cohomology::{
    enumerate_central_extensions, extension_from_cocycle, find_stem_extension, h2_cohomology,
    universal_central_extension, CentralExtension, Cocycle2,
};
pub use extension::{
    centralise, centralise_via_kernel_pair, hopf_quotient, is_central, is_double_extension,
    is_trivial, trivialise, Extension, ExtensionSquare, Reflector,
};
pub use group::{FiniteGroup, GroupHom, StandardGroup, Subgroup};
pub use homology::{connecting_delta2, five_term, h1, h2, h2_dual, BarComplex, FiveTermSequence};
pub use linalg::{FgAbelianGroup, IntMatrix, PresentedAbGroup};
pub use satellite::{EndomorphismSpec, Presentation, RelatorModule, Word};
