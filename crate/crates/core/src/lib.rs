//! Canonical differential forms on graphs.
//!
//! This crate builds the invariant forms `ω^{4k+1}_G = tr((Λ_G^{-1} dΛ_G)^{4k+1})`
//! attached to a graph `G` through its graph Laplacian, checks the algebraic
//! identities they satisfy in exact arithmetic, computes homology of the
//! graph complex `GC_2` at low loop order, and evaluates canonical period
//! integrals `∫_{σ_G} ω_G` by Monte-Carlo integration.
//!
//! | module | contents |
//! |---|---|
//! | [`graphs`] | multigraphs, contraction/deletion, cycle bases, canonical labeling, fixtures |
//! | [`polyring`] | exact sparse polynomials, polynomial matrices, scalar fields |
//! | [`laplacian`] | Λ_G, L_G, M_G, the Kirchhoff polynomial Ψ_G and Dodgson polynomials |
//! | [`forms`] | differential forms, Maurer–Cartan traces, canonical forms, identity checks |
//! | [`graphcomplex`] | GC_2 chains, differentials, strata generation, homology |
//! | [`integrate`] | canonical integrals, Stokes residuals, reference constants |
//!
//! ```
//! use graphforms::{graphs, laplacian};
//! let w3 = graphs::wheel(3).unwrap();
//! let psi = laplacian::graph_polynomial(&w3).unwrap();
//! assert_eq!(psi.len(), 16);
//! ```

pub mod error;
pub mod forms;
pub mod graphcomplex;
pub mod graphs;
pub mod integrate;
pub mod laplacian;
pub mod polyring;

pub use error::{Error, Result};
