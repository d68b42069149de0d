//! Computer algebra for mod 2 obstructions to realizing cohomology classes.
//!
//! The modules build on each other: [`steenrod`] reduces words in the
//! Steenrod squares to the admissible basis, [`algebra`] holds truncated
//! polynomial algebras with an unstable action, [`models`] instantiates the
//! cohomology of `K(Z/2,k)`, `BO(k)` and `MO(k)`, [`bockstein`] computes
//! `Sq^1`-cohomology and obstruction certificates, and [`series`] compares
//! growth of graded dimensions. [`oracle`] is an independent check on the
//! Adem and Wu formulas.

pub mod algebra;
pub mod bockstein;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod series;
pub mod spec;
pub mod steenrod;

pub use algebra::{AlgebraElement, DegreeBasis, GeneratorSpec, Monomial, PresentedAlgebra};
pub use bockstein::{beta_certificate, browder_prediction, e2_dimensions, ObstructionCertificate};
pub use models::{bo_algebra, em_algebra, EilenbergMacLane, ThomModule};
pub use series::PoincareSeries;
pub use steenrod::{adem_reduce, SqWord, SteenrodElement};
