//! Exact arithmetic for the invariants behind superspecial loci of
//! orthogonal Shimura varieties.
//!
//! - [`padic`]: square classes, Hilbert symbols, Hasse–Witt invariants.
//! - [`lattice`]: Gram-matrix `Z_p`-lattices, duals, vertex types.
//! - [`global`]: invariant profiles over all places of `Q` and reciprocity.
//! - [`weyl`]: extended affine Weyl groups of types `B̃_m` and `D̃_m`,
//!   admissible sets and Ekedahl–Oort combinatorics.
//! - [`finite_geometry`]: quadratic spaces over `F_{p^k}` and the
//!   Deligne–Lusztig point sets `S_Λ`.
//! - [`mass`]: Bernoulli numbers, `ζ(1-2r)`, `L(1-m, χ)` and the
//!   superspecial mass.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

pub mod arith;
pub mod error;
pub mod finite_geometry;
pub mod global;
pub mod lattice;
pub mod mass;
pub mod matrix;
pub mod padic;
pub mod rational;
pub mod weyl;

pub use error::{Error, Result};
pub use padic::{DiagonalForm, Place, Sign, SquareClass};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/local_invariants.md")]
    mod local_invariants {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/global.md")]
    mod global {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/finite_geometry.md")]
    mod finite_geometry {}
    #[doc = include_str!("../../../book/src/mass.md")]
    mod mass {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
