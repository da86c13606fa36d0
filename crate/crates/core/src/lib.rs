//! Exact-arithmetic engine for the universal ordinary distribution and its
//! group cohomology.
//!
//! The crate is organized around five building blocks:
//!
//! * [`exactlin`] — integer matrices, Smith normal form, kernels, cokernels
//!   and homology of three-term sequences, all over `BigInt`.
//! * [`galois`] — the product group of the unit groups modulo a family of odd
//!   primes, its group ring, and the norm / derivative / Frobenius elements.
//! * [`distribution`] — the universal ordinary distribution of level `f`:
//!   canonical basis, symbol normalization, Galois action, order-ideal
//!   submodules and the derivative-operator family of fixed points mod `M`.
//! * [`anderson`] — the free resolution of the distribution by symbols
//!   `[a, T]`, its double-complex splitting and acyclicity checks.
//! * [`cohomology`] — Hom complexes against the periodic projective
//!   resolution of ℤ, closed-form and normal-form cohomology of the Galois
//!   group, cup products via the diagonal map, and explicit cocycle lifting.

pub mod anderson;
pub mod cohomology;
pub mod distribution;
pub mod error;
pub mod exactlin;
pub mod galois;
pub mod signs;

pub use error::EngineError;
