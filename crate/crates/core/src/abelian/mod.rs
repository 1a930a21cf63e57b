//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, bounded complexes and their homology.

mod complex;
pub mod group;
mod matrix;
pub mod snf;

use thiserror::Error;

pub use complex::{homology, BoundedComplex, Homology};
pub use group::{
    annihilator_subgroup, kernel_of_map, l_torsion, subgroup_generated, tensor, FgAbGroup,
    GroupElement, Subgroup,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_integer, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree {degree} outside the complex range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("d^{next} ∘ d^{0} is not zero", next = .0 + 1)]
    NotAComplex(i64),
    #[error("cochain in degree {0} is not a cocycle")]
    NotACocycle(i64),
    #[error("pairing is not bilinear: {0}")]
    NotBilinear(String),
    #[error("assignment does not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
