//! Second homology as fixed points of the endomorphisms of a presentation
//! acting on its relator module.

pub mod catalog;
mod module;
mod word;

pub use module::{
    acts_trivially_on_hopf_kernel, endo_action, fixed_subgroup, hopf_kernel, hopf_kernel_lattice,
    validate_relator_lattice, EndomorphismSpec, LatticeReport, RelatorModule,
};
pub use word::{exponent_matrix, parse_presentation, Presentation, Word};
