//! Exact linear algebra on the orthogonal and symplectic spaces, and the
//! geometric side of the Pieri formula: Schubert conditions, the forms cutting
//! out the lines, local coordinates and triple intersections.

pub mod algebraic;
pub mod coords;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod lines;
pub mod random;
pub mod reconstruct;
pub mod space;
pub mod upoly;

use thiserror::Error;

use crate::shapes::ShapeError;

pub use algebraic::AlgNum;
pub use coords::{local_coords, sigma_tau, solve_isotropy};
pub use field::{q, q_frac, Field, Q};
pub use forms::{z_forms, FormSystem};
pub use linalg::Subspace;
pub use lines::{lines_in_k, triple_intersect, Line};
pub use reconstruct::{decompose, reconstruct_from_line, symplectic_projection, Decomposition};
pub use space::{Space, Variant};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("expected a subspace of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("vector length {found} does not match the ambient dimension {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("shape not supported here: {0}")]
    ShapeNotSupported(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("input is not general: {0}")]
    NotGeneral(String),
    #[error("the vector does not lie on the zero locus of the forms")]
    VNotInZ,
    #[error("membership check failed: {0}")]
    MembershipFailed(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("pivot is a zero divisor")]
    ZeroDivisor(Option<UPoly>),
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
