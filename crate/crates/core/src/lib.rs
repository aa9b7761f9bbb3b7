//! Exact-arithmetic engine for logarithmic constant-term identities,
//! Virasoro Verma-module singular vectors and W-algebra spectrum data.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere. The crate is organized around:
//!
//! * [`exact`] — rational scalars, factorials, harmonic numbers, binomials
//!   (rational and symbolic-t), exact Lagrange interpolation;
//! * [`laurent`] — sparse multivariate Laurent polynomials with windowed
//!   (exponent-feasibility pruned) multiplication;
//! * [`ct`] — the residue/constant-term quantities F, E_{k,p}, G~_p, Dyson
//!   and log-Dyson constant terms, with two independent strategies;
//! * [`identities`] — closed forms, constant fitting and verdicts;
//! * [`virasoro`] — Verma-module arithmetic, the degree-5 singular vector
//!   and the fusion indicial polynomial;
//! * [`spectrum`] — central charges, conformal weights, Zhu-algebra
//!   polynomials and module tables.

pub mod ct;
pub mod error;
pub mod exact;
pub mod identities;
pub mod laurent;
pub mod spectrum;
pub mod virasoro;

pub use ct::{CTProblem, CTResult, Limits, Strategy, TMode, Value, ENGINE_VERSION};
pub use exact::{Rat, TPoly};
pub use laurent::{ExpVec, FactorSpec, SparseLaurent, TExponent, Window};
