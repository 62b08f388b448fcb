//! Placement and analysis of speed-up transporters — moving walkways,
//! escalators and elevators — for point sets on a line or in the plane.
//!
//! The central quantity is the *travel time* between two points when a
//! transporter may be used: walk, or walk to one end, ride at speed `v > 1`,
//! and walk on.  The crate computes travel-time diameters of point sets for
//! a fixed transporter and places transporters minimizing those diameters.
//!
//! Module map:
//! - [`geometry`]: points, speeds, walkways, travel-time distances, and the
//!   Euclidean diameter used as a building block.
//! - [`line`]: exact diameter and optimal walkway placement on a line.
//! - [`qcp`]: a small quasiconvex solver (explicit and implicit constraint
//!   families) used by the planar placement routines.
//! - [`disks`]: intersections of equal-radius disks and the planar
//!   travel-time diameter decision.
//! - [`plane`]: walkway placement in the plane — horizontal exact and
//!   arbitrary-orientation approximation.
//! - [`variants`]: one-way walkways, escalators, and elevators.
//! - [`oracle`]: brute-force reference implementations for testing.

pub mod disks;
pub mod error;
pub mod geometry;
pub mod line;
pub mod oracle;
pub mod plane;
pub mod qcp;
pub mod variants;

pub use disks::{
    diameter_2d, diameter_decision_2d, red_blue_cross_feasible, DiskIntersection,
    SuffixDiskIntersections, TravelTimeDisk,
};
pub use error::{Result, WalkwayError};
pub use geometry::{
    approx_eq, approx_le, euclidean_diameter, red_blue_partition, time_distance_1d,
    time_distance_2d, Point2, RedBlueSets, Speed, Walkway1, Walkway2, ABS_TOL, REL_TOL,
};
pub use line::{diameter_1d, locate_1d, Placement1};
pub use plane::{
    locate_approx, locate_horizontal_diameter, locate_horizontal_pairs, Placement2, PlacementH,
    SourceDestPair,
};
pub use variants::{
    elevator_locate, escalator_locate, k_elevator_diameter, unidirectional_locate,
    DominanceVector, ElevatorSet,
};
