//! Slow textbook GF(2)[x] routines used to cross-check the fast paths.
//!
//! Nothing here shares code with the backends: products go through `u128`
//! schoolbook accumulation and remainders through bit-at-a-time long division.

use super::FieldSpec;

/// Schoolbook product of two GF(2)[x] polynomials, as `(hi, lo)` words.
pub fn poly_mul(a: u64, b: u64) -> (u64, u64) {
    let mut acc: u128 = 0;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u128) << i;
        }
    }
    ((acc >> 64) as u64, acc as u64)
}

/// Remainder of the 128-bit polynomial `(hi, lo)` divided by the defining
/// polynomial of `spec`.
pub fn poly_rem(hi: u64, lo: u64, spec: &FieldSpec) -> u64 {
    let q = spec.q();
    let divisor: u128 = (1u128 << q) | spec.reduction_mask() as u128;
    let mut r: u128 = ((hi as u128) << 64) | lo as u128;
    for deg in (q..128).rev() {
        if (r >> deg) & 1 == 1 {
            r ^= divisor << (deg - q);
        }
    }
    r as u64
}

/// Field product by schoolbook multiplication and long division.
pub fn field_mul(a: u64, b: u64, spec: &FieldSpec) -> u64 {
    let (hi, lo) = poly_mul(a, b);
    poly_rem(hi, lo, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        assert_eq!(poly_mul(0b011, 0b011), (0, 0b101));
        assert_eq!(poly_mul(1 << 63, 0b10), (1, 0));
        let f = FieldSpec::builtin(7).unwrap();
        assert_eq!(poly_rem(0, 1 << 7, &f), 0b11);
        assert_eq!(poly_rem(1, 0, &FieldSpec::pentanomial64()), 0x1B);
    }
}
