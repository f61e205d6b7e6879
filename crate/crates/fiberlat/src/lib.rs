//! Exact-integer combinatorics of special fibers in relatively minimal
//! fibrations of curves of genus >= 2.
//!
//! The crate models the weighted dual graph of a fiber over the residue field
//! of a discrete valuation ring: each component carries a constant-field
//! degree, a self-intersection, a canonical degree and a multiplicity, and all
//! intersection numbers are exact integers measured over the base residue
//! field. On top of that it provides:
//!
//! - validation of connected chains of (-2)-curves against the pairwise
//!   intersection constraints forced by genus >= 2, and their classification
//!   into the nine decorated diagram families (A, B, C, D, E6, E7, E8, F4,
//!   G2) with characteristic restrictions ([`chain`]);
//! - fundamental cycles of negative definite chains, computed by the
//!   increment algorithm and certified minimal by brute force ([`cycle`]);
//! - adjunction and Riemann-Roch degree bookkeeping with decidable vanishing,
//!   global-generation and Koszul-duality predicates ([`riemann_roch`]);
//! - a replay of the component-peeling induction that proves base point
//!   freeness of relative pluricanonical sheaves, recording per-step case
//!   tags and predicate evidence ([`replay`]);
//! - an exhaustive search reproducing the admissible configurations in the
//!   degenerate branch of that induction (case 5b), with machine-checkable
//!   exclusion certificates for every pruned branch ([`case5b`]).
//!
//! Everything is pure integer arithmetic; there are no tolerances anywhere.

pub mod case5b;
pub mod chain;
pub mod cycle;
pub mod error;
pub mod lattice;
pub mod replay;
pub mod riemann_roch;

pub use error::{Error, Result};
pub use lattice::{CurveClass, Divisor, Edge, FiberConfiguration, DEFAULT_SUBCURVE_CAP};
