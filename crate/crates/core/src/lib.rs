//! Exact finite-field machinery for pencils of plane curves over GF(q).
//!
//! The crate builds the projective plane PG(2,q), evaluates homogeneous
//! polynomials given as expression DAGs, classifies point sets as blocking
//! or not, and realizes arbitrary partitions of the plane as the point sets
//! of the members of a pencil `<F, G>`.

pub mod blocking;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod pencil;
pub mod plane;
pub mod pointset;
pub mod poly;
pub mod random;

pub use error::{Error, Result};
pub use gf::{Elem, ExtCtx, FieldCtx, FieldDescriptor};
pub use pencil::{classify_pencil, Partition, Pencil, PencilReport};
pub use plane::{Plane, ProjLine, ProjParam, ProjPoint};
pub use pointset::PointSet;
