//! Dominating sets, Roman and double Roman dominating functions on the
//! Sierpinski graphs `S(K_n, t)`.
//!
//! Vertices are words over `{1, …, n}` of length `t`; the graph is never
//! stored. [`construction`] builds the optimal dominating set `D_{n,t}`,
//! [`domination`] turns it into labelings and checks them, and [`solver`] is
//! an independent exact oracle for small instances.
//!
//! ```
//! use sdom_core::{build_d, domination, GraphParams, Limits};
//!
//! let g = GraphParams::new(3, 4)?;
//! let lim = Limits::default();
//! let d = build_d(&g, &lim)?;
//! assert_eq!(d.len(), 21);
//! assert!(domination::is_dominating(&g, &d, &lim)?);
//! let f = domination::double_roman_labeling_from_d(&g, &lim)?;
//! assert_eq!(f.weight(), 62);
//! # Ok::<(), sdom_core::Error>(())
//! ```

pub mod cli;
pub mod construction;
pub mod domination;
pub mod error;
pub mod export;
pub mod graph;
mod json;
pub mod labeling;
pub mod lemmas;
pub mod solver;
pub mod vertex_set;
pub mod word;

pub use construction::{build_d, build_d_star, cardinality_formula, construct, ell, flip};
pub use domination::{
    gamma_dr_formula, gamma_formula, gamma_r_formula, is_dominating, is_double_roman, is_roman,
    DominationReport, Variant,
};
pub use error::{Error, Result};
pub use labeling::{Labeling, Mode};
pub use solver::{Solution, SolverConfig};
pub use vertex_set::{SetKind, VertexSet};
pub use word::{GraphParams, Limits, Word};
