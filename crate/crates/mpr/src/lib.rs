//! Multigraded free resolutions and multipersistent homology of
//! multifiltered simplicial complexes.
//!
//! A multifiltration assigns to each grade `v` in `N^r` a subcomplex `X_v`,
//! increasing along the componentwise partial order and stationary past a
//! finite grid bound. Its chain spaces assemble into modules over the
//! polynomial ring `k[x_1, ..., x_r]`, and this crate computes with them
//! using exact arithmetic only:
//!
//! * decomposition of each chain module into monomial ideals, with the
//!   corresponding syzygy binomials ([`chains`]);
//! * Hilbert functions, minimal generators, kernels, minimal presentations
//!   and Betti numbers of grid-represented modules ([`grid`]);
//! * Taylor resolutions of monomial ideals, comparison-theorem lifts,
//!   mapping cones resolving boundary modules, and the iterated cone
//!   resolving each multipersistent homology module ([`resolution`]);
//! * the one-critical pathway through labelled complexes and their
//!   multigraded cellular chain complexes ([`onecrit`]).
//!
//! Coefficients live in an exact [`field::Field`]: arbitrary-precision
//! rationals by default, or a prime field `F_p`. All pipelines are
//! deterministic; identical inputs produce identical outputs.

pub mod chains;
pub mod cli;
pub mod degree;
pub mod field;
pub mod filtration;
pub mod graded;
pub mod grid;
pub mod matrix;
pub mod onecrit;
pub mod render;
pub mod resolution;

#[cfg(test)]
pub(crate) mod testdata;
