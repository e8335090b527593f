//! Quadratic spaces over finite fields and the point sets `S_Λ`.
//!
//! A space is defined over `F_p` by a symmetric matrix `M` with
//! `Q(x) = xᵀ M x`; its points over `F_{p^k}` are enumerated exhaustively
//! with subspaces kept in reduced row echelon form. Frobenius acts on
//! coordinates.

mod field;
mod space;

pub use field::{is_irreducible, monic_irreducibles, Elem, FiniteField};
pub use space::{
    frobenius_orbits, orientations, s_lambda_points, witt_index, Extension, FiniteQuadSpace, Limits, SpaceKind,
    Subspace,
};
