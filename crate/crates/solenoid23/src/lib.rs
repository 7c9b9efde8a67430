//! Exact computation on the invertible extension of the times-2, times-3
//! system: the solenoid `(R x Q_2 x Q_3) / diagonal Z[1/6]`.
//!
//! Everything is exact rational arithmetic; there is no floating point in
//! any computational path. The crate provides
//!
//! - [`rational`]: arbitrary-precision rationals with 2-adic and 3-adic
//!   valuations, fractional parts and digits;
//! - [`solenoid`]: canonical points of the fundamental domain, the group
//!   law, the automorphisms multiplying by 2^a 3^b, the quotient metric
//!   and the projective-limit coordinates;
//! - [`region`]: the set algebra of finite unions of boxes (interval x
//!   2-adic coset x 3-adic coset) with Haar measure and exact images
//!   under every automorphism;
//! - [`partition`]: the uniform interval partitions, orbit refinements,
//!   finite-depth Markov and generating checks, transition matrices and
//!   closed-form atoms;
//! - [`direction`]: per-direction invariants (height, entropy, stability
//!   signature, cone classification, periodic-point counts and zeta
//!   series);
//! - [`render`]: deterministic SVG figures of box sets and of the
//!   expansive-cone gallery.

pub mod direction;
pub mod error;
pub mod partition;
pub mod rational;
pub mod region;
pub mod render;
pub mod solenoid;

pub use direction::{
    classify, entropy, height, periodic_point_count, zeta_series, Cone, DirectionClass,
    Stability, ZetaSeries,
};
pub use error::{Error, Result};
pub use partition::{
    closed_form_backward_atom, closed_form_forward_atom, generator_profile, markov_check,
    orbit_join, orbit_report, transition_matrix, xi, GeneratorProfile, GeneratorTrend,
    MarkovReport, Partition, RefinementReport, TransitionMatrix,
};
pub use rational::{Place, Prime, Rational};
pub use region::{Brick, PadicClass, Region};
pub use render::{render_boxset, render_cone_gallery, render_partition, Projection, RenderSpec};
pub use solenoid::{
    reduce_to_fundamental, wilson_backward, AdeleTriple, SolenoidPoint, WilsonTrace,
};
