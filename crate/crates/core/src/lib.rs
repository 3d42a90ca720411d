//! Exact computations for local Lie groups given by polynomial frames:
//! connection, torsion and curvatures, the Janet and Chevalley–Eilenberg
//! complexes, torsion characteristic classes, and gauge deformations.

pub mod char_classes;
pub mod deformation;
pub mod error;
pub mod gen;
pub mod index;
pub mod io;
pub mod jet;
pub mod library;
pub mod lie_algebra;
pub mod linalg;
pub mod matrix;
pub mod parallelism;
pub mod poly;
pub mod rational;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use jet::TJet;
pub use lie_algebra::{AlgebraicCochain, CohomologyReport, StructureConstants};
pub use linalg::RatMatrix;
pub use matrix::PolyMatrix;
pub use parallelism::{Connection, Curvature, Frame, Torsion};
pub use poly::Poly;
pub use rational::Rational;
pub use tensor::{alternate_first, TensorField, VectorForm};
