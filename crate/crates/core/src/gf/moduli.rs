//! Built-in moduli.

use super::base::BaseField;
use super::field::{Field, MAX_DEGREE};
use crate::error::{Error, Result};

/// Primitive polynomials over GF(2) for m = 1..=16, as exponent lists of the
/// nonzero terms below the leading x^m.
const GF2_PRIMITIVE: [&[usize]; MAX_DEGREE] = [
    &[0],           // x + 1
    &[1, 0],        // x^2 + x + 1
    &[1, 0],        // x^3 + x + 1
    &[1, 0],        // x^4 + x + 1
    &[2, 0],        // x^5 + x^2 + 1
    &[1, 0],        // x^6 + x + 1
    &[1, 0],        // x^7 + x + 1
    &[4, 3, 2, 0],  // x^8 + x^4 + x^3 + x^2 + 1
    &[4, 0],        // x^9 + x^4 + 1
    &[3, 0],        // x^10 + x^3 + 1
    &[2, 0],        // x^11 + x^2 + 1
    &[6, 4, 1, 0],  // x^12 + x^6 + x^4 + x + 1
    &[4, 3, 1, 0],  // x^13 + x^4 + x^3 + x + 1
    &[10, 6, 1, 0], // x^14 + x^10 + x^6 + x + 1
    &[1, 0],        // x^15 + x + 1
    &[12, 3, 1, 0], // x^16 + x^12 + x^3 + x + 1
];

/// The default modulus for GF(q^m), low degree first.
///
/// For q = 2 this is the tabulated primitive polynomial. Otherwise the monic
/// polynomials of degree m are scanned in increasing packed order and the
/// first irreducible one with x primitive is returned (falling back to the
/// first irreducible one when the group order cannot be factored).
pub fn default_modulus(base: &BaseField, m: usize) -> Result<Vec<u8>> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::InvalidField(format!("m = {m} outside 1..={MAX_DEGREE}")));
    }
    let q = base.order();
    if q == 2 {
        let mut modulus = vec![0u8; m + 1];
        modulus[m] = 1;
        for &e in GF2_PRIMITIVE[m - 1] {
            modulus[e] = 1;
        }
        return Ok(modulus);
    }
    let mut first_irreducible = None;
    let count = (q as u128).saturating_pow(m as u32);
    for low in 0..count.min(1 << 24) {
        let mut modulus = Vec::with_capacity(m + 1);
        let mut v = low;
        for _ in 0..m {
            modulus.push((v % q as u128) as u8);
            v /= q as u128;
        }
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        match Field::probe_modulus(base, &modulus) {
            Some(true) => return Ok(modulus),
            Some(false) => {
                first_irreducible.get_or_insert(modulus);
            }
            None => {}
        }
    }
    first_irreducible.ok_or_else(|| Error::InvalidField(format!("no modulus found for GF({q}^{m})")))
}
