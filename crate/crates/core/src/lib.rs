//! LCD and self-dual codes built from weighing matrices, designs and orbit
//! matrices, together with the finite-field and linear-algebra machinery
//! they need.

pub mod build;
pub mod code;
pub mod construct;
pub mod decode;
pub mod distance;
pub mod error;
pub mod format;
pub mod gfq;
pub mod matq;
pub mod orbit;
pub mod tables;

pub use error::{Error, Result};
pub use gfq::{Field, FieldCtx, FieldElement};
pub use matq::{FqMatrix, IntMatrix, Matrix, RationalMatrix};
