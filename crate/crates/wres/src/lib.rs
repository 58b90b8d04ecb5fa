//! Weighted-blowup resolution of singularities over the rationals.
//!
//! The crate computes, with exact rational arithmetic throughout:
//!
//! * the local order invariant of an ideal at a point, together with the
//!   flag of hypersurfaces of maximal contact that produces it
//!   ([`invariant`]);
//! * the unique reduced center attached to the maximal invariant and its
//!   integer weights ([`invariant::Center`]);
//! * weighted blowup charts with their cyclic group actions and total, weak,
//!   and proper transforms ([`blowup`]);
//! * a driver that iterates blowups until every chart is smooth or the ideal
//!   is principal with exceptional support ([`resolve`]);
//! * report rendering as text, JSON, or DOT ([`report`]).
//!
//! The `wres` binary exposes all of this on the command line; see the guide
//! chapters below or `wres --help`.

pub mod algebra;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod invariant;
pub mod blowup;
pub mod resolve;
pub mod report;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use error::{Error, Result};

// Guide chapters double as doc-tests: each fenced Rust snippet in book/src
// is compiled and run by `cargo test --doc`, keeping the book in sync with
// the code.
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod guide_introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod guide_polynomials {}
#[doc = include_str!("../../../book/src/invariant.md")]
pub mod guide_invariant {}
#[doc = include_str!("../../../book/src/centers-and-charts.md")]
pub mod guide_centers_and_charts {}
#[doc = include_str!("../../../book/src/resolving.md")]
pub mod guide_resolving {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod guide_cli {}
