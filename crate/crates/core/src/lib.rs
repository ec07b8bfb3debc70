//! Exact computation with representations of cyclic quivers.
//!
//! The crate builds the complete zoo of indecomposable representations of
//! the cyclic quiver `K(g,h)` — string (walk) and band modules — together
//! with the finite component quivers that organize them (post-projective
//! grid, pre-injective mirror, tubes), the functor realizing every vertex
//! and arrow of those quivers as explicit matrices, and a checker that
//! verifies the defining relations of the glued quiver by exact matrix
//! identities.
//!
//! Everything is exact: arithmetic happens over a prime field or over the
//! rationals with arbitrary-precision fractions. With the default
//! `parallel` feature, independent relation instances are checked on a
//! rayon worker pool; results are merged deterministically.

pub mod components;
pub mod decompose;
pub mod exec;
pub mod field;
pub mod functor;
pub mod matrix;
pub mod quiver;
pub mod relations;
pub mod rep;

pub use field::{Elem, Field};
pub use matrix::Mat;
pub use quiver::{classify_walk, int_moddiv, ComponentId, CyclicQuiver, KArrow, Walk};
pub use rep::{band_rep, hom_basis, hom_dim, is_iso, walk_rep, BandSpec, Morphism, Representation};
