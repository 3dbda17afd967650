//! Chain complexes of flows on singular surfaces.
//!
//! The crate models a continuous flow on a two-dimensional singular
//! manifold combinatorially: a list of singularities (cone, Whitney,
//! double- and triple-crossing points alongside regular ones) and the
//! connecting orbits between them. From that input it
//!
//! * builds the associated chain complex and its boundary operator
//!   ([`complex`]),
//! * runs the spectral-sequence sweeping method and the row cancellation
//!   method over the finest filtration ([`sweep`], [`cancel`]),
//! * computes the pages of the induced spectral sequence ([`pages`]), and
//! * replays the algebraic cancellation order as a family of flows ending
//!   in a minimal one ([`cancel::flow_family`]).
//!
//! The `gsflow` binary exposes the same pipeline on JSON documents.

pub mod algebra;
pub mod cancel;
pub mod complex;
pub mod document;
pub mod fixtures;
pub mod flow;
pub mod morsify;
pub mod pages;
pub mod report;
pub mod sweep;
pub mod synth;

pub use algebra::{HomologyGroup, IntMatrix};
pub use cancel::{flow_family, rca_sweep, CancellationStep, FlowFamilyResult};
pub use complex::{build_complex, finest_filtration, GsComplex};
pub use flow::{FlowSpec, Singularity};
pub use pages::{algebraic_cancellations, e_module_rank, z_module_rank};
pub use sweep::{sweep, PivotKind, PivotMark, SweepTrace};
