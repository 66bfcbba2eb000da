//! Exact-arithmetic workbench for root systems and biclosed sets.
//!
//! The crate constructs finite, untwisted-affine, twisted, and
//! non-crystallographic root systems and decides, with exact certificates,
//! the convexity-style predicates on sets of positive roots: closed,
//! coclosed, biclosed, convex, separable. On top of those sit the
//! incremental biclosed-extension algorithm, lattice operations on biclosed
//! families, cleanliness verdicts for order ideals, suitable-order
//! certification, and folding maps between root systems.
//!
//! Everything is decided over ℚ or ℚ(√5); there is no floating point in any
//! decision path. A negative answer always comes with a finite witness that
//! re-verifies by exact arithmetic, and a positive answer with a separating
//! functional.

pub mod exactnum;
pub mod geometry;
pub mod lp;
pub mod rootsys;

pub use exactnum::{QuadScalar, Scalar, Sign};
pub use rootsys::{AnySystem, RootSystem, SystemSpec};
