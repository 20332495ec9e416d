//! Slim planar semimodular lattices and their Czédli diagrams.
//!
//! The crate builds diagrams by the grid → fork → corner-removal pipeline
//! and checks them with independent order-theoretic and geometric tests.
//! All geometry is exact: coordinates are rationals in a basis rotated by
//! 45°, so "normal" and "steep" are sign tests.
//!
//! Geometry and construction are generic over the coordinate [`Scalar`];
//! [`Rational`] (arbitrary precision) is the default used by the CLI and
//! the file format.

pub mod construction;
pub mod czedli;
pub mod faces;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod render;
pub mod s7;
pub mod scalar;
pub mod verify;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use construction::{
    find_cell, fork_extend, grid, random_script, remove_corner, run_script, ConstructionError, ConstructionScript,
    ForkOutcome, IdMap,
};
pub use czedli::{check_czedli, CzedliReport};
pub use faces::{boundary_chains, check_rectangular, enumerate_4cells, find_corners, Corner, FourCell, Side};
pub use geometry::{validate_diagram, Coord, Diagram, DiagramError, DiagramReport, EdgeClass, RawDiagram};
pub use lattice::{check_lattice, Elem, Lattice, LatticeError};
pub use s7::{find_covering_s7s, CoveringS7, S7Mode};
pub use scalar::{RationalText, Scalar};
pub use verify::{signature, verify_all, verify_diagram, Signature, Status, VerificationReport};

/// Arbitrary-precision rational, the default coordinate type.
pub type Rational = Ratio<BigInt>;
/// Machine-word rational; fine for small constructions.
pub type Rational64 = Ratio<i64>;

pub type ExactCoord = Coord<Rational>;
pub type ExactDiagram = Diagram<Rational>;
pub type ExactRawDiagram = RawDiagram<Rational>;
