//! Exact computation with Weierstrass groups and hyperbolic jigsaw groups:
//! Farey-style triangulation recursion, arithmeticity trace tests, killer-interval
//! coverage certificates for pseudomodularity, and the cutting-sequence /
//! continued-fraction family of algorithms.  Everything is exact: big rationals,
//! real quadratic irrationals and primitive integer matrices; no floating point
//! in any control path.

pub mod arithmeticity;
pub mod exact;
pub mod jigsaw;
pub mod pseudomodular;
pub mod sequences;
pub mod weierstrass;
