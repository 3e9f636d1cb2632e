//! The binary quadratic-residue code of length 17.
//!
//! `x^17 - 1` splits over GF(2) into `(x + 1)` and two degree-8 factors. The
//! generator used here is `g(x) = Π_{r ∈ QR(17)} (x - α^r)` for a primitive
//! 17th root of unity `α` in GF(2^8); the product is computed in GF(2^8) and
//! must land in GF(2)[x].

use crate::error::{Error, Result};

use super::submodule::Submodule;
use super::vector::ZqVector;

/// `x^8 + x^4 + x^3 + x^2 + 1`, primitive over GF(2).
const GF256_MODULUS: u16 = 0x11d;

fn gf_mul(mut a: u8, mut b: u8) -> u8 {
    let mut acc = 0u8;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= (GF256_MODULUS & 0xff) as u8;
        }
        b >>= 1;
    }
    acc
}

fn gf_pow(a: u8, mut e: u32) -> u8 {
    let (mut base, mut acc) = (a, 1u8);
    while e != 0 {
        if e & 1 != 0 {
            acc = gf_mul(acc, base);
        }
        base = gf_mul(base, base);
        e >>= 1;
    }
    acc
}

/// Nonzero quadratic residues modulo an odd prime `p`, ascending.
pub fn quadratic_residues(p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = (1..p).map(|x| x * x % p).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Coefficients (constant term first) of the binary generator polynomial.
pub fn qr17_generator_polynomial() -> Result<Vec<u32>> {
    // β = x is primitive of order 255 = 15 · 17, so α = β^15 has order 17.
    let alpha = gf_pow(2, 15);
    let mut poly: Vec<u8> = vec![1];
    for r in quadratic_residues(17) {
        let root = gf_pow(alpha, r);
        // Multiply by (x + root); characteristic two makes minus a plus.
        let mut next = vec![0u8; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= gf_mul(c, root);
        }
        poly = next;
    }
    poly.into_iter()
        .map(|c| match c {
            0 | 1 => Ok(c as u32),
            _ => Err(Error::Precondition("generator polynomial is not binary".into())),
        })
        .collect()
}

/// The binary `[17, 9, 5]` quadratic-residue code, generated by the shifts
/// `x^i g(x)` for `i = 0..9`.
pub fn qr17_code() -> Result<Submodule> {
    let g = qr17_generator_polynomial()?;
    let n = 17;
    let k = n - (g.len() - 1);
    let rows = (0..k)
        .map(|shift| {
            let mut coords = vec![0u32; n];
            coords[shift..shift + g.len()].copy_from_slice(&g);
            ZqVector::from_residues(2, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Submodule::new(2, n, rows)
}
