//! Multivariable polynomial quotient rings over Galois rings, their chain
//! ring decompositions, and the codes they carry.

pub mod additive_f4;
pub mod ambient;
pub mod codes;
pub mod distance;
pub mod error;
pub mod galois_ring;
pub mod linalg;
pub mod polynomials;

pub use additive_f4::{build_additive, AdditiveAmbient, AdditiveCode, QuantumParams};
pub use ambient::{
    classify_ambient, decompose_ambient, verify_chain_summand, Ambient, AmbientClass, AmbientSpec, Decomposition,
    MultiPoly, SummandDescriptor,
};
pub use codes::{code_from_params, count_codes, enumerate_codes, params_from_generators, Code, CodeParams};
pub use distance::{min_distance_exhaustive, min_distance_via_quotient, quotient_code, Distance, DistanceReport};
pub use error::{Error, Result};
pub use galois_ring::{GaloisExtension, GaloisRing, GrElem};
pub use polynomials::{pir_check, PirReport, Poly};
