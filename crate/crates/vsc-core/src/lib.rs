//! Exact-arithmetic engine for virtual structure constants.
//!
//! The library computes the degree-d virtual structure constants of a
//! degree-k hypersurface in CP^{N-1} by two independent routes (a
//! combinatorial recursion and an iterated-residue sum over ordered
//! partitions), checks them against a third localization route, and
//! feeds the resulting tables into B-model machinery: a Gauss-Manin
//! style ODE chain with its Givental-operator factorization, and, for
//! equivariant local geometries over CP^1, mirror maps and Yukawa
//! couplings as exact formal series.
//!
//! Everything is exact: scalars are arbitrary-precision rationals,
//! polynomials are sparse with a total-degree-lexicographic term order,
//! and every pipeline equality asserted by the test suite holds at
//! tolerance zero.

pub mod compositions;
pub mod gauss_manin;
pub mod hypersurface;
pub mod local;
pub mod mirror;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod residue;
pub mod series;

pub use poly::SparsePoly;
pub use ratfn::RationalFn;
pub use rational::Rational;
