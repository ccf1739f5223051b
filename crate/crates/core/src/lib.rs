//! Random alternating-matrix model for ranks and Shafarevich-Tate groups of
//! elliptic curves.
//!
//! A curve of height `H` is modelled by a uniformly random alternating
//! integer matrix `A` of dimension `n` near `eta(H)` with entries bounded by
//! `X(H)`, where `X^eta ~ H^(1/12)`. The corank of `A` stands in for the
//! Mordell-Weil rank and the torsion of `coker A` for Sha.
//!
//! * [`linalg`]: exact rank, Pfaffian, Smith form and cokernels.
//! * [`groups`]: abelian and symplectic p-groups with their limiting measures.
//! * [`model`]: the curve family, the calibrated sampler and surveys.
//! * [`counting`]: exhaustive counts of alternating matrices by rank and the
//!   lattice identities behind them.
//! * [`calibration`]: discriminants, real periods and the divisor bound.
//!
//! Exact kernels are generic over [`scalar::ExactInt`]; numeric code over
//! [`scalar::Real`]. The aliases below fix the usual choices.

pub mod calibration;
pub mod counting;
pub mod groups;
pub mod linalg;
pub mod model;
pub mod primes;
pub mod rng;
pub mod scalar;

pub use num_bigint::BigInt;

/// Arbitrary-precision integer used by the model.
pub type Int = BigInt;
pub type IntMatrix = linalg::IntegerMatrix<Int>;
pub type AltMatrix = linalg::AlternatingMatrix<Int>;
pub type Cokernel = linalg::CokernelStructure<Int>;
pub type Measure = groups::MeasureValue<f64>;
pub type Period = calibration::PeriodResult<f64>;

/// Version string recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
