//! Finite abelian and symplectic p-groups and the limiting measures on them.

mod abelian;
mod measures;
mod symplectic;

use thiserror::Error;

pub use abelian::{groups_up_to, partitions, AbelianPGroup};
pub use measures::{
    cl_constant, cl_measure, delaunay_measure, hall_eta, square_cyclic_density, MeasureValue,
};

pub use symplectic::{
    symplectic_aut_order, symplectic_aut_order_brute, symplectic_aut_order_formula,
    symplectic_groups_up_to, SymplecticPGroup, DEFAULT_BRUTE_FORCE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed group label {0:?}")]
    BadLabel(String),
    #[error("group {0} is not of the form J x J^dual")]
    NotSymplectic(String),
    #[error("group {label} exceeds the brute-force size cap {cap}")]
    UnsupportedSize { label: String, cap: u64 },
}
