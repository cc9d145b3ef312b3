//! Central extensions of finite groups from 2-cocycles with trivial action.

mod central;
mod cocycle;

pub use central::{
    enumerate_central_extensions, extension_from_cocycle, find_stem_extension, stem_kernel_limit,
    universal_central_extension, CentralExtension,
};
pub use cocycle::{h2_cohomology, Coefficients, Cocycle2, CohomologyH2, CLASS_CAP};
