//! Constructions and finite checks around linear-order expansions.
//!
//! * [`arith`]: truncated arithmetic coded into a bi-order and read back by
//!   fixed formulas.
//! * [`graph`]: random colored regular multigraphs built from perfect
//!   matchings, small-cycle enumeration and the edge-swap surgery that
//!   removes them.
//! * [`probe`]: the orders `⋖_k` induced on a graph by a vertex ordering,
//!   scans for a target bi-order, planting, Monte Carlo estimates and the
//!   graph-to-arithmetic pipeline.
//! * [`shatter`]: line colorings of `F_p^n`, monochromatic affine subspaces
//!   and the shattering witnesses built from them.
//! * [`generic`]: embedding a pure set into the rationals so that queued
//!   order constraints get realized.
//! * [`bounds`] and [`suite`]: the binomial tail bound and its Monte Carlo
//!   check, and the family of graphs assembled class by class.
//!
//! The guide in `book/` walks through each of these; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod arith;
pub mod biorder;
pub mod bounds;
pub mod error;
pub mod generic;
pub mod graph;
pub mod probe;
pub mod report;
pub mod rng;
pub mod shatter;
pub mod suite;

pub use biorder::BiOrder;
pub use error::{Error, Result};
pub use graph::ColoredRegularGraph;
pub use rng::SplitMix64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    struct Arithmetic;
    #[doc = include_str!("../../../book/src/graphs.md")]
    struct Graphs;
    #[doc = include_str!("../../../book/src/probes.md")]
    struct Probes;
    #[doc = include_str!("../../../book/src/shattering.md")]
    struct Shattering;
    #[doc = include_str!("../../../book/src/generic.md")]
    struct Generic;
    #[doc = include_str!("../../../book/src/bounds.md")]
    struct Bounds;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
