//! Exact arithmetic in `Z_q^d`: vectors, submodules, cosets and weight data.

mod enumerator;
mod qr;
mod submodule;
mod vector;

pub use enumerator::{
    macwilliams_transform, weight_class_triple, weight_enumerator, ElementSet, WeightClassTriple,
    WeightEnumerator,
};
pub use qr::{qr17_code, qr17_generator_polynomial, quadratic_residues};
pub use submodule::{enumerate_submodule, minimum_distance, Coset, ParityCheck, Submodule, SystematicForm};
pub use vector::{all_vectors, hamming_weight, inner_product, is_prime, parse_vectors, unit_inverse, ZqVector};
pub(crate) use vector::check_modulus;
