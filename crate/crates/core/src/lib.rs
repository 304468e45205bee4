//! Primitive linear batch codes over F2 built from finite geometry.
//!
//! Information symbols are identified with the points of a vector space over
//! GF(q). Parity checks are XORs of the information bits lying on selected
//! affine subspaces: lines of the affine plane AG(2, q) for the randomized
//! construction, and cosets of a nice collection of ℓ-dimensional subspaces
//! of GF(q)^(2ℓ+1) for the explicit one.
//!
//! Modules, bottom-up:
//! - [`field`]: arithmetic in GF(q) for prime powers q.
//! - [`linalg`]: vectors, ranks, subspaces and cosets over GF(q).
//! - [`geometry`]: the affine plane and nice subspace collections.
//! - [`code`]: batch codes, recovering sets, greedy serving and verification.
//! - [`bounds`]: closed-form redundancy bounds and plot data.
//! - [`io`]: text file formats for codes and collections.

pub mod bounds;
pub mod code;
mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod multiset;

pub use error::{Error, Result};
