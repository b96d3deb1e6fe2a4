//! Exact symbolic kernel for twisted differential-geometric structures over
//! rational polynomial rings.
//!
//! The base "manifold" is modeled by the ring ℚ[x₁, …, xₙ]; all geometry is
//! algebraic and all arithmetic is exact (arbitrary-precision rationals, no
//! floating point anywhere). Structure twists are invertible affine ring
//! automorphisms σ, and the modules provide, bottom-up:
//!
//! - [`ring`] — multivariate polynomials, expression parsing, affine ring
//!   automorphisms, and (σ,σ)-derivations `D(fg) = D(f)σ(g) + σ(f)D(g)`.
//! - [`exterior`] — exterior powers of free modules: multivectors,
//!   multiforms, wedge product, pairing, semilinear module maps and their
//!   inverses/adjoints, and twisted interior products.
//! - [`homlie`] — Hom-Lie algebras, their representations and duals,
//!   coadjoint actions, Hom-Lie bialgebras and their doubles.
//! - [`algebroid`] — Hom-Lie algebroids, the twisted Cartan calculus
//!   (differential, Schouten bracket, Lie derivatives), tangent/action/twist
//!   constructions, and an operator-identity verification catalog.
//! - [`poisson`] — Hom-Poisson bivectors, induced brackets, and cotangent
//!   algebroids.
//! - [`bialgebroid`] — Hom-Lie bialgebroids and the Poisson correspondence.
//! - [`courant`] — Hom-Courant algebroids, doubles of bialgebroids, and the
//!   induced Hom-Lie 2-algebras.
//!
//! Every structure exposes a `verify_*` entry point that checks its defining
//! axioms on a deterministic family of samples (basis sections multiplied by
//! monomials up to a configurable total degree) and returns a [`report::Report`]
//! with an exact counterexample witness for every failed law.
//!
//! All values are immutable; every operation returns new values, so sharing
//! across threads is safe.

pub mod error;
pub(crate) mod linalg;
pub mod report;
pub mod ring;

pub mod exterior;

pub mod homlie;

pub mod algebroid;

pub mod bialgebroid;
pub mod courant;
pub mod poisson;

pub use error::{Error, Result};
