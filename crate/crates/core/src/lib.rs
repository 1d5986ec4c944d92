//! Classification and simulation of non-singular Morse–Smale flows with
//! exactly two periodic orbits, one attracting and one repelling.
//!
//! Every such flow is equivalent to a model flow obtained by gluing two
//! copies of a generalized solid torus (or solid Klein bottle) along their
//! boundaries. [`gluing`] holds the data of that gluing, [`classifier`]
//! decides ambient manifolds and equivalence with certificates, [`oracle`]
//! is an exhaustive search used to cross-check the classifier, and
//! [`simulator`] realizes the model flows numerically.

pub mod classifier;
pub mod error;
pub mod gluing;
pub mod json;
pub mod oracle;
pub mod scalar;
pub mod simulator;

pub use classifier::{
    class_invariant, count_classes, flows_equivalent, manifold_of, manifolds_homeomorphic,
    orbit_twisted, representatives, ClassInvariant,
};
pub use error::{Error, Result};
pub use gluing::{
    Certificate, Gluing, GluingMatrix, HandleKind, ManifoldId, ModelFlow, Sign, SignGluing,
    SurfaceGluing,
};
pub use scalar::Scalar;

pub type ChartPoint64 = simulator::ChartPoint<f64>;
pub type ChartPoint32 = simulator::ChartPoint<f32>;
pub type BoundaryPoint64 = simulator::BoundaryPoint<f64>;
pub type Trajectory64 = simulator::Trajectory<f64>;
pub type Trajectory32 = simulator::Trajectory<f32>;
