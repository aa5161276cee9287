//! Exact-arithmetic tooling for the two inverse problems attached to perfect
//! cuboids.
//!
//! The inverse problems ask for rational parameters `(b, c)` such that two
//! monic cubics, whose coefficients are explicit rational functions of
//! `(b, c)`, both split over ℚ with positive roots that also satisfy three
//! auxiliary equations. This crate provides:
//!
//! * [`bipoly`]: integer polynomials in `b` and `c`, used to re-prove the
//!   symbolic identities behind the singular locus ([`identities`]);
//! * [`coefficients`]: exact evaluation of the nine coefficient formulas;
//! * [`singularity`]: classification of a point against the singular curves;
//! * [`cubic`]: a rational-root solver for monic rational cubics;
//! * [`verifier`]: the graded near-miss pipeline for a single point;
//! * [`search`]: a checkpointed, parallel, height-ordered search driver;
//! * [`cli`]: the command-line front end used by the `cuboid` binary.
//!
//! All arithmetic is exact. Rationals are [`num_rational::BigRational`]
//! values, which are always kept in lowest terms.

pub mod bipoly;
pub mod cli;
pub mod coefficients;
pub mod cubic;
pub mod factor;
pub mod identities;
pub mod rational;
pub mod search;
pub mod singularity;
pub mod verifier;

pub use bipoly::IntPoly2;
pub use coefficients::{eval_coefficients, CoefficientError, CoefficientSet, E21Form, Params};
pub use cubic::{rational_roots, CubicPoly, RootTriple};
pub use rational::Rational;
pub use singularity::{classify, SingularityClass};
pub use verifier::{grade, Verdict};
