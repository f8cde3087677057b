//! Flux homomorphisms on pure mapping class groups of infinite-genus surfaces.
//!
//! Surfaces are modelled as a finite-genus core with punctures and boundary,
//! plus finitely many arms, each a one-ended ray of handles. On such a surface
//! `S` the crate computes:
//!
//! * the separating homology `H_1^sep(Ŝ; Z)` of the filled surface, with the
//!   end-partition basis ([`homology`]);
//! * the genus ledger and the `Z`-coloring of curves in one class
//!   ([`curves`]);
//! * the action of words in Dehn twists and handle shifts on canonical curves
//!   ([`mcg`]);
//! * the flux homomorphisms `φ_v : PMap(S) → Z`, the dual handle-shift basis
//!   and the splitting of `PMap(S)` into the closure of the compactly
//!   supported subgroup and a free abelian group of handle shifts
//!   ([`engine`]).

pub mod cli;
pub mod curves;
pub mod engine;
pub mod error;
pub mod homology;
pub mod mcg;
pub mod surface;

pub use curves::{CurveShadow, Orientation};
pub use engine::{DualBasis, Factorization, FluxVector};
pub use error::{Error, Result};
pub use homology::{EndPartition, SeparatingClass};
pub use mcg::{Generator, MappingWord};
pub use surface::{SurfaceSpec, Truncation};
