//! Integral homology of finite groups in degrees 1 and 2.

mod bar;
mod dual;
mod five_term;

pub use bar::{h1, h2, BarComplex, BarIndex, FirstHomology, SecondHomology, BAR_ORDER_CAP, H2_ORDER_CAP};
pub use dual::h2_dual;
pub use five_term::{
    check_exactness, connecting_delta2, five_term, induced_h1, induced_h2, CentralQuotient, Exactness, FiveTermReport,
    FiveTermSequence,
};
