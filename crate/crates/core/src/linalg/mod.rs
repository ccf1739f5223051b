//! Exact integer linear algebra: rank, determinant, Pfaffian, Smith normal
//! form and cokernel structure.

mod alternating;
mod bareiss;
mod cokernel;
mod local;
mod matrix;
mod pfaffian;
mod smith;

use thiserror::Error;

pub use alternating::{upper_len, AlternatingMatrix};
pub use bareiss::{alternating_rank_auto, determinant, hadamard_fits, rank};
pub use cokernel::{
    cokernel, cokernel_of, cokernel_p_part, is_perfect_square, kernel_rank, torsion_order_big,
    CokernelStructure,
};
pub use local::{alternating_p_part_local, local_valuations, max_precision, PadicMatrix};
pub use matrix::IntegerMatrix;
pub use pfaffian::pfaffian;
pub use smith::{smith_divisors, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p-adic precision exhausted at p = {p}, k = {k}")]
    PrecisionExhausted { p: u64, k: u32 },
}
