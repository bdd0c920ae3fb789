//! Exact-arithmetic engine for differential Batalin–Vilkovisky algebras.
//!
//! * [`series`]: rational scalars, sparse vectors, truncated series in ħ and
//!   graded coordinates `t^i`.
//! * [`dbv`]: the finite and Landau–Ginzburg backends, the BV bracket,
//!   `K = Q + ħΔ`, axiom checks.
//! * [`homology`]: homology with an adapted splitting, lifting of classes to
//!   `K`-closed series, the splitting β, the obstruction grid, the Q-Δ lemma.
//! * [`qme`]: classical and quantum versal solvers, residuals, verification,
//!   observables.

pub mod dbv;
pub mod error;
pub mod examples;
pub mod homology;
pub mod linalg;
pub mod qme;
pub mod series;

pub use error::{Error, Result};
