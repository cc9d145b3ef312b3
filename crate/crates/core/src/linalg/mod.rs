//! Exact integer linear algebra and finitely generated abelian groups.
//!
//! Matrices act on row vectors: an `a x b` matrix is the map `Z^a -> Z^b`,
//! `v -> v * M`, and the cokernel of `M` is `Z^b / rowspan(M)`.

mod abelian;
mod chain;
mod limit;
mod matrix;
mod modular;
mod snf;
mod sparse;

pub use abelian::{
    cokernel, cokernel_with_basis, is_exact_at, lattice_contains, quotient_of_lattices, AbHom, CokernelBasis,
    FgAbelianGroup, PresentedAbGroup,
};
pub(crate) use abelian::{elementary_to_invariant, factorize, reduce_coords};
pub use chain::chain_homology;
pub use limit::{limit_of_diagram, AbArrow, AbDiagram, LimitCone};
pub use matrix::IntMatrix;
pub use modular::{ModRow, ModSpan};
pub use snf::{hermite_normal_form, kernel_lattice, rank, smith_invariants, smith_normal_form, solve_left, SmithForm};
pub use sparse::{normalize_sparse, sparse_axpy, SparseCokernel, SparseVec};
