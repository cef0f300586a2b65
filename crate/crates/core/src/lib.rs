//! Exact symbolic engine for the tautological ring of powers of a surface.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: expressions in point, divisor, canonical, Chern and diagonal
//!   classes on `S^N`, with a terminating rewriting system producing normal
//!   forms.
//! * [`cohom`]: evaluation of those expressions in the rational cohomology of
//!   `S^N` through Künneth tensors. This is the homological oracle that every
//!   ring-level identity is checked against.
//! * [`corr`]: correspondences between powers of the surface.
//! * [`ck`]: Chow–Künneth projectors for `S`, `S^m` and symmetric quotients,
//!   with the multiplicativity and bigrading checks.
//! * [`hilb`]: set-partition combinatorics, the formal decomposition of the
//!   motive of `S^[n]` and Betti/Euler number cross-checks.
//! * [`dsl`] and [`report`]: text formats shared with the command-line tool.

pub mod ck;
pub mod cohom;
pub mod corr;
pub mod dsl;
pub mod error;
pub mod hilb;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod ring;
pub mod surface;

pub use error::{Error, Result};
pub use rational::Q;
pub use ring::{Generator, Monomial, TautExpr};
pub use surface::{Mode, SurfaceModel};
