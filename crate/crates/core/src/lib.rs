//! Toric resolutions of three-dimensional hypersurface singularities via
//! dual Newton fans, Hilbert bases and regular refinements.

pub mod catalog;
pub mod cones;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod newton;
pub mod polyparse;
pub mod profile;
pub mod refine;
pub mod valuation;

pub use cones::{hilbert_basis, Cone, HilbertBasis};
pub use error::{Error, Result};
pub use fan::Fan;
pub use lattice::Vector;
pub use newton::{dual_newton_fan, newton_polyhedron, NewtonPolyhedron};
pub use polyparse::{parse_polynomial, Polynomial};
pub use profile::{profile, AffineFunctional, Profile};
pub use catalog::{equation, verify, VerificationReport};
