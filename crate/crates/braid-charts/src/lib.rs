//! Oriented braid charts of knotted surfaces: exact singularity censuses,
//! the weighted counting identities that govern them, and synthesis of
//! charts from prescribed count tables.
//!
//! A chart of degree `n` is a labeled oriented graph embedded in the
//! sphere, encoding a surface braid. Edge labels are braid-generator
//! indices in `[1, n-1]`; the vertex kinds record the singularities of the
//! projected surface:
//!
//! * **black** (univalent): a branch point; positive when its double arc
//!   points away from it;
//! * **white** (6-valent): a triple point; its six edges alternate between
//!   labels `p` and `p+1`, its index is `p+1`, and it is positive exactly
//!   when the middle incoming edge carries `p+1`;
//! * **crossing** (4-valent): two double arcs crossing in the projection,
//!   allowed only for labels at distance at least 2; not a singularity;
//! * **singular** (2-valent): an isolated transverse double point of an
//!   immersed surface; positive when both arcs point away.
//!
//! # The counting identities
//!
//! Write `B(p,±)`, `T(q,±)`, `D(r,±)` for the signed counts by index, and
//! `E(p)` for the number of double arcs of label `p`. Counting arc starts
//! and arc ends separately gives, per index,
//!
//! ```text
//! E(p) = B(p,+) + 2T(p,+) + T(p,-) + T(p+1,+) + 2T(p+1,-) + 2D(p,+)
//!      = B(p,-) + 2T(p,-) + T(p,+) + T(p+1,-) + 2T(p+1,+) + 2D(p,-)
//! ```
//!
//! whose difference is the balance equation (*). Summing (*) against any
//! integer weights `x_p` yields the theorem this crate verifies and
//! exploits everywhere: with `y_p = x_p - x_{p-1}` and `z_p = 2 x_p`,
//!
//! ```text
//! sum σ x_p B(p,σ)  +  sum δ y_q T(q,δ)  +  sum ε z_r D(r,ε)  =  0
//! ```
//!
//! exactly, on every valid chart. Specializations: constant weights give
//! the vanishing signed branch/singular total, linear and triangular
//! weights the classical index-weighted sums, and telescoping gives
//! `T(p,+) - T(p,-)` as prefix sums of the branch differences.
//!
//! All arithmetic is exact integer arithmetic; floating point appears only
//! in the SVG renderer.
//!
//! # Modules
//!
//! * [`chart`]: the data model with rotation systems, the validator (vertex
//!   templates plus per-component sphere check via face tracing), label
//!   translation, orientation reversal.
//! * [`mod@census`]: indices, signs, double-arc tracing through crossings,
//!   count tables, and the edge double-count check.
//! * [`identity`]: weight sequences, equation (*), the weighted theorem,
//!   and its corollaries.
//! * [`mod@realize`]: chart synthesis from (*)-consistent targets: minimal
//!   branch-point planning, gadget peeling, and a backtracking end-matching
//!   search that only ever builds spheres.
//! * [`generate`]: seeded random charts built from gadget soups stirred by
//!   census-preserving splice and merge moves.
//! * [`classical`]: Alexander numbering of classical knot diagrams from PD
//!   codes, with an exact winding-number cross-check.
//! * [`mod@format`]: the bit-exact chart and targets file formats.
//! * [`render`]: band layout and SVG output.
//! * [`cli`]: the `braidchart` command-line tool.
//!
//! # Quick start
//!
//! ```rust
//! use braid_charts::chart::Sign;
//! use braid_charts::{census, fixtures, validate, weighted_sum, WeightSequence};
//!
//! // a triple point with all six arcs capped by branch points
//! let chart = fixtures::sw(2, Sign::Plus, 3);
//! assert!(validate(&chart).ok());
//!
//! let table = census::census(&chart);
//! assert_eq!(table.b(1), (2, 1));
//! assert_eq!(table.t(2), (1, 0));
//!
//! // the weighted total vanishes for every adequate weight sequence
//! let weights = WeightSequence::triangular(0, 2).unwrap();
//! assert_eq!(weighted_sum(&table, &weights).unwrap(), 0);
//! ```
//!
//! Synthesis goes the other way:
//!
//! ```rust
//! use std::collections::BTreeMap;
//! use braid_charts::realize::{plan_targets, realize, verify_realization, DEFAULT_BUDGET};
//!
//! let t: BTreeMap<i64, (i64, i64)> = [(2, (2, 0))].into_iter().collect();
//! let targets = plan_targets(&t, &BTreeMap::new());
//! let result = realize(&targets, DEFAULT_BUDGET).unwrap();
//! assert!(verify_realization(&targets, &result.chart));
//! ```
//!
//! The `examples/` directory has one runnable program per capability; see
//! the README for the file formats and the CLI.

pub mod census;
pub mod chart;
pub mod classical;
pub mod cli;
pub mod dec;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod identity;
pub mod realize;
pub mod render;

pub use census::{census, check_edge_count, trace_arcs, vertex_index, vertex_sign, Census};
pub use chart::{validate, Chart, ChartBuilder, EndSide, Sign, ValidationReport, VertexKind};
pub use identity::{check_star, star_holds, weighted_sum, IdentityReport, WeightSequence};
pub use realize::{plan_targets, realize, verify_realization, Realization, TargetCounts};
pub use render::{render_svg, RenderOptions};
