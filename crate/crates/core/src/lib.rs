//! Partition categories, the interpolated Deligne category `Rep(S_t)`, and
//! modified traces on its non-semisimple specializations.

pub mod diagrams;
pub mod error;
pub mod graded;
pub mod knots;
pub mod linalg;
pub mod modtrace;
pub mod morphisms;
pub mod oracle;
pub mod perm;
pub mod scalars;

pub use diagrams::{DiagramClass, PartitionDiagram, Side, Vertex};
pub use error::{Error, Result};
pub use graded::{GradedMorphism, GradedObject};
pub use knots::{parse_tangle, TangleWord};
pub use modtrace::{AmbidexterityReport, CoefficientMode, EndMnElement, VerifyOptions};
pub use morphisms::{Morphism, RetractObject};
pub use oracle::{check_homomorphism, realize, SparseMatrix};
pub use perm::Perm;
pub use scalars::{Assignment, Coeff, QLaurent, Rational, TPoly};
