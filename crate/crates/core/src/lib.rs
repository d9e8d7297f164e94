//! Exact certificates for the defining ideals of unit-scale rank-one tensor
//! varieties.
//!
//! A point of the variety is an outer product `u1 x ... x ud` of mode
//! vectors, scaled so the flattened tensor has unit p-norm.  For each shape
//! and norm tag this crate builds a generator family over the rationals and
//! produces machine-checkable certificates about the ideal it generates:
//!
//! * [`groebner`]: claimed Groebner bases are re-verified by the all-pairs
//!   S-polynomial test; unclaimed families are completed by Buchberger's
//!   algorithm and then certified the same way,
//! * [`certificates`]: radicality (squarefree leading terms, or the
//!   zero-dimensional univariate criterion), algebraic independence by
//!   elimination, primality through per-variable membership polynomials
//!   that are squarefree over the parameter field, and smoothness of the
//!   base point by exact Jacobian rank,
//! * [`numeric`]: a floating-point oracle that samples variety points,
//!   checks generator residuals, rotation-orbit invariance, nuclear norms
//!   of convex combinations, and numeric Jacobian ranks against the exact
//!   results.
//!
//! All exact arithmetic is over arbitrary-precision rationals; nothing is
//! rounded until the numeric oracle deliberately does so.
//!
//! ```
//! use nuclear_ideals::certificates::primality_certificate;
//! use nuclear_ideals::certificates::PrimeVerdict;
//! use nuclear_ideals::groebner::Limits;
//! use nuclear_ideals::ideals::{build_ideal, PTag};
//! use nuclear_ideals::index::TensorShape;
//!
//! let shape = TensorShape::new(vec![2, 2]).unwrap();
//! let spec = build_ideal(&shape, PTag::PEven(1));
//! let cert = primality_certificate(&spec, &Limits::default(), false).unwrap();
//! assert_eq!(cert.verdict, PrimeVerdict::Prime);
//! assert_eq!(cert.dimension, 2);
//! ```

pub mod certificates;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod ideals;
pub mod index;
pub mod numeric;
pub mod poly;
pub mod ratfield;

pub use error::{Error, Result};
pub use ideals::{build_ideal, IdealSpec, PTag};
pub use index::{MultiIndex, TensorShape};
pub use poly::{Monomial, MonomialOrder, Polynomial};
