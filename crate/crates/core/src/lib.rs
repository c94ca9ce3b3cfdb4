//! Convex tangent spaces, normal cones and Terracini convexity for convex cones.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`linalg`]: subspaces with explicit rank tolerances and symmetric-matrix coordinates.
//! * [`solver`]: a homogeneous self-dual interior-point method for small LPs and SDPs.
//! * [`poly`]: sparse multivariate polynomials with exact rational coefficients.
//! * [`hyperbolic`]: eigenvalues, localizations and derivative relaxations of hyperbolic polynomials.
//! * [`cones`]: cone models, faces and normal cones.
//! * [`tangent`]: convex tangent spaces and the primal and dual Terracini checks.
//! * [`neighborly`]: neighborliness LPs and Veronese certificates.
//! * [`recovery`]: exact recovery experiments for linear images of cones.
//!
//! ```
//! use terracini_core::cones::ConeModel;
//! use terracini_core::tangent::is_k_terracini_primal;
//!
//! // Two rank-one PSD matrices always pass the check.
//! let cone = ConeModel::psd(3);
//! let a = terracini_core::linalg::SymVec::from_outer(&[1.0, 0.0, 0.0]);
//! let b = terracini_core::linalg::SymVec::from_outer(&[1.0, 1.0, 0.0]);
//! let v = is_k_terracini_primal(&cone, &[a.coords, b.coords]).unwrap();
//! assert!(v.passed);
//! ```
#![no_std]

extern crate alloc;

pub mod cones;
pub mod error;
pub mod hyperbolic;
pub mod linalg;
pub mod neighborly;
pub mod poly;
pub mod recovery;
pub mod rng;
pub mod solver;
pub mod tangent;

pub use error::{Error, Result};
