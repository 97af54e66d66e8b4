//! Univariate polynomials over Galois rings and their residue fields.

mod factor;
mod hensel;
mod pir;
mod poly;

pub use factor::{ff_factor, is_square_free, square_free_decomposition, square_free_part};
pub use hensel::{
    crt_idempotents, hensel_lift_pair, hensel_primary_decompose, inverse_mod, PrimaryDecomposition, PrimaryFactor,
};
pub use pir::{pir_check, PirReport, PirWitness};
pub use poly::{ff_ext_gcd, ff_gcd, Poly};
