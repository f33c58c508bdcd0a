//! Exact combinatorics of floor diagrams on blow-ups of the plane.
//!
//! The crate computes refined (q-polynomial) counts of rational curves via
//! marked floor diagrams, assembles relative and absolute BPS polynomials,
//! and evaluates the K3 generating series. Everything is exact: coefficients
//! are arbitrary-precision integers, expansions are rational.
//!
//! Module map:
//! - [`qlaurent`]: Laurent polynomials in `q^(1/2)`, q-integers, specializations.
//! - [`diagram`]: floor diagram data model, validation, canonical keys,
//!   automorphisms, and the marking poset.
//! - [`enumerate`]: exhaustive diagram generation, marking counts, tallies.
//! - [`bps`]: relative/absolute BPS polynomials, Welschinger and
//!   Gromov-Witten specializations, stable-pairs series.
//! - [`k3series`]: truncated power series and the K3 product formulas.

pub mod bps;
pub mod diagram;
pub mod enumerate;
pub mod k3series;
pub mod qlaurent;
pub mod series;

mod par;

pub use bps::{
    abv_absolute, gw_expansion, gw_expansion_absolute, pad_class, pt_series, relative_bps,
    relative_bps_diagrams, relative_bps_result, welschinger_relative, BpsError, BpsResult,
    BpsTarget,
};
pub use diagram::{FloorDiagram, VertexKind};
pub use enumerate::{
    count_markings, enumerate_diagrams, enumerate_diagrams_cached, tally, tally_diagrams,
    CurveClass, DiagramTally, Role, Tangency,
};
pub use k3series::{check_k3_welschinger, kkv_coefficients, real_k3_coefficients, K3Check};
pub use par::with_thread_limit;
pub use qlaurent::{QLaurent, Rational, Sign};
pub use series::TruncatedSeries;

/// Largest degree the diagram generator accepts by default.
pub const MAX_DEGREE: i64 = 8;
