//! Farrell–Tate (co)homology data of discrete groups via torsion sub-complex
//! reduction.
//!
//! The library is organized around five pieces:
//!
//! * [`groups`] — a brute-force finite permutation-group engine (element
//!   enumeration, Sylow subgroups, normalizers, the `B'` merging criterion);
//! * [`complex`] — stabilized orbit cell complexes, extraction of the
//!   ℓ-torsion sub-complex and its reduction to a labeled graph;
//! * [`coxeter`] — Coxeter diagrams, spherical subsets, finite quotient
//!   chamber complexes, and the homology pipelines for triangle and
//!   tetrahedral groups;
//! * [`numtheory`] — exact real-quadratic arithmetic: class numbers via
//!   cycles of reduced indefinite forms, fundamental units via continued
//!   fractions, norm-representation tests;
//! * [`bianchi`] — conjugacy-class counts for `PSL_2(O_{-m})` from the
//!   number-theoretic formulae, conjugacy-classes graphs, Poincaré series,
//!   cohomology-ring summands, and the table-verification harness.

pub mod bianchi;
pub mod complex;
pub mod coxeter;
pub mod groups;
pub mod numtheory;
