use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("cyclic order {0} is not 2 or 4")]
    InvalidOrder(i64),
    #[error("cyclic orders {0:?} are not in canonical order (all 4s before all 2s)")]
    NonCanonicalOrders(Vec<u8>),
    #[error("matrix is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    MatrixShape { rows: usize, cols: usize, found_rows: usize, found_cols: usize },
    #[error("entry ({row}, {col}) = {value} is not well defined from an order-2 generator into an order-4 generator")]
    IllDefinedEntry { row: usize, col: usize, value: i64 },

    #[error("objects do not match: {0}")]
    ObjectMismatch(String),
    #[error("under-category base mismatch: {0}")]
    BaseMismatch(String),
    #[error("triangle does not commute: {0}")]
    TriangleFails(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("oracle bound exceeded: {needed} candidates, bound {bound}")]
    BoundExceeded { needed: u128, bound: u128 },

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
