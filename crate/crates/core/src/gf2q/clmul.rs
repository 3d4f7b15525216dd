//! GF(2^64) multiplication by carry-less multiply and pentanomial reduction.

use super::FieldElement;

/// Low-order terms of `x^64 + x^4 + x^3 + x + 1`.
pub const PENTANOMIAL64_MASK: u64 = 0x1B;

/// 64x64 -> 128-bit carry-less product, returned as `(hi, lo)`.
///
/// Uses `PCLMULQDQ` when available and falls back to
/// [`carryless_mul_portable`], which defines the result.
#[inline(always)]
pub fn carryless_mul(a: u64, b: u64) -> (u64, u64) {
    #[cfg(all(target_arch = "x86_64", target_feature = "pclmulqdq"))]
    {
        // SAFETY: the feature is enabled at compile time.
        unsafe { x86::clmul(a, b) }
    }
    #[cfg(all(target_arch = "x86_64", not(target_feature = "pclmulqdq")))]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: presence checked just above.
            return unsafe { x86::clmul(a, b) };
        }
        carryless_mul_portable(a, b)
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        carryless_mul_portable(a, b)
    }
}

/// Shift-and-xor carry-less product.
#[inline]
pub fn carryless_mul_portable(a: u64, b: u64) -> (u64, u64) {
    let mut hi = 0u64;
    let mut lo = 0u64;
    for i in 0..64 {
        let m = ((b >> i) & 1).wrapping_neg();
        lo ^= (a << i) & m;
        if i > 0 {
            hi ^= (a >> (64 - i)) & m;
        }
    }
    (hi, lo)
}

/// Reduce a 128-bit polynomial modulo `x^64 + x^4 + x^3 + x + 1` with six
/// shifts and seven xors.
///
/// `hi * x^64 = hi * (x^4 + x^3 + x + 1)`; the bits that spill past `x^63`
/// when shifting `hi` left by 1, 3 and 4 are folded back first (the right
/// shifts by 63, 61 and 60), after which one more multiply by the low terms
/// cannot overflow.
#[inline(always)]
pub fn reduce_pentanomial64(hi: u64, lo: u64) -> FieldElement {
    let spill = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    let h = hi ^ spill;
    FieldElement(h ^ (h << 1) ^ (h << 3) ^ (h << 4) ^ lo)
}

/// Product in GF(2^64) modulo the pentanomial.
#[inline(always)]
pub fn mul_clmul64(a: FieldElement, b: FieldElement) -> FieldElement {
    let (hi, lo) = carryless_mul(a.0, b.0);
    reduce_pentanomial64(hi, lo)
}

#[cfg(target_arch = "x86_64")]
mod x86 {
    use std::arch::x86_64::{
        _mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_cvtsi64_si128, _mm_srli_si128,
    };

    #[inline]
    #[target_feature(enable = "pclmulqdq,sse2")]
    pub(super) unsafe fn clmul(a: u64, b: u64) -> (u64, u64) {
        let va = _mm_cvtsi64_si128(a as i64);
        let vb = _mm_cvtsi64_si128(b as i64);
        let p = _mm_clmulepi64_si128(va, vb, 0x00);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_srli_si128(p, 8)) as u64;
        (hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2q::{mul_naive, reference, FieldSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn carryless_examples() {
        for f in [carryless_mul, carryless_mul_portable] {
            assert_eq!(f(0b011, 0b011), (0, 0b101));
            assert_eq!(f(0xdead_beef_1234_5678, 1), (0, 0xdead_beef_1234_5678));
            assert_eq!(f(0x8000_0000_0000_0000, 0b10), (1, 0));
            assert_eq!(
                f(u64::MAX, u64::MAX),
                reference::poly_mul(u64::MAX, u64::MAX)
            );
        }
    }

    #[test]
    fn carryless_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100_000 {
            let (a, b) = (rng.random::<u64>(), rng.random::<u64>());
            let want = reference::poly_mul(a, b);
            assert_eq!(carryless_mul_portable(a, b), want);
            assert_eq!(carryless_mul(a, b), want);
        }
    }

    #[test]
    fn reduction_examples() {
        let v = 0x0123_4567_89ab_cdef;
        assert_eq!(reduce_pentanomial64(0, v), FieldElement(v));
        assert_eq!(reduce_pentanomial64(1, 0), FieldElement(0b11011));
        assert_eq!(
            mul_clmul64(FieldElement(0x8000_0000_0000_0000), FieldElement(0b10)),
            FieldElement(0x1B)
        );
        assert_eq!(
            mul_clmul64(FieldElement(v), FieldElement::ONE),
            FieldElement(v)
        );
    }

    #[test]
    fn reduction_matches_long_division() {
        let spec = FieldSpec::pentanomial64();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100_000 {
            let (hi, lo) = (rng.random::<u64>(), rng.random::<u64>());
            assert_eq!(
                reduce_pentanomial64(hi, lo).0,
                reference::poly_rem(hi, lo, &spec)
            );
            let (a, b) = (FieldElement(hi), FieldElement(lo));
            assert_eq!(mul_clmul64(a, b), mul_naive(a, b, &spec));
        }
    }
}
