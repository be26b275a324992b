//! Generalized hypergeometric series engine, exact terminating sums, Legendre
//! polynomials and the derivative machinery the residual checks are built on.

mod exact;
mod identities;
mod jet;
mod legendre;
mod params;
mod pochhammer;
mod series;
mod special;

pub use exact::{pfq_terminating_exact, rational, whipple_4f3_exact};
pub use identities::{contiguous_3f2_residual, whipple_4f3_residual, BALANCE_TOLERANCE};
pub use jet::{power_composite_jet, Jet};
pub use legendre::legendre_p;
pub use params::{EvalResult, PfqParams, Residual};
pub use pochhammer::pochhammer;
pub use series::{default_tolerance, pfq, pfq_derivative, pfq_jet, MAX_TERMS};
