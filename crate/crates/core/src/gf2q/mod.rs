//! Arithmetic in GF(2^q).
//!
//! Elements are polynomials over GF(2) of degree below `q`, stored as the low
//! `q` bits of a `u64`. Addition is xor. Multiplication is available through
//! three interchangeable backends (see [`MulBackend`]):
//!
//! * `naive`: shift-and-add with interleaved reduction, `O(q)` word operations;
//! * `lookup`: a precomputed `2^q x 2^q` product table, for `q <= 12`;
//! * `clmul`: one 64x64 carry-less multiply followed by a fixed shift/xor
//!   reduction modulo `x^64 + x^4 + x^3 + x + 1`, for `q = 64` only.
//!
//! All backends valid for a given [`FieldSpec`] produce bit-identical products.

mod backend;
mod clmul;
mod lookup;
pub mod reference;

use std::fmt;
use std::ops::{Add, AddAssign};

use rand::Rng;
use thiserror::Error;

pub use backend::{BackendKind, MulBackend};
pub(crate) use backend::{MulVisitor, Multiplier};
pub use clmul::{
    carryless_mul, carryless_mul_portable, mul_clmul64, reduce_pentanomial64, PENTANOMIAL64_MASK,
};
pub use lookup::{build_lookup_table, mul_lookup, LookupTable, MAX_LOOKUP_Q};

/// Largest `q` accepted by [`verify_primitive`].
pub const MAX_PRIMITIVITY_CHECK_Q: u32 = 26;

/// Low-order terms (`p(x) - x^q`) of the shipped primitive polynomials,
/// indexed by `q - 1` for `q` in `1..=26`.
///
/// | q  | p(x)                         | mask     |
/// |----|------------------------------|----------|
/// | 1  | x + 1                        | `0x1`    |
/// | 2  | x^2 + x + 1                  | `0x3`    |
/// | 3  | x^3 + x + 1                  | `0x3`    |
/// | 4  | x^4 + x + 1                  | `0x3`    |
/// | 5  | x^5 + x^2 + 1                | `0x5`    |
/// | 6  | x^6 + x + 1                  | `0x3`    |
/// | 7  | x^7 + x + 1                  | `0x3`    |
/// | 8  | x^8 + x^4 + x^3 + x^2 + 1    | `0x1D`   |
/// | 9  | x^9 + x^4 + 1                | `0x11`   |
/// | 10 | x^10 + x^3 + 1               | `0x9`    |
/// | 11 | x^11 + x^2 + 1               | `0x5`    |
/// | 12 | x^12 + x^6 + x^4 + x + 1     | `0x53`   |
/// | 13 | x^13 + x^4 + x^3 + x + 1     | `0x1B`   |
/// | 14 | x^14 + x^10 + x^6 + x + 1    | `0x443`  |
/// | 15 | x^15 + x + 1                 | `0x3`    |
/// | 16 | x^16 + x^12 + x^3 + x + 1    | `0x100B` |
/// | 17 | x^17 + x^3 + 1               | `0x9`    |
/// | 18 | x^18 + x^7 + 1               | `0x81`   |
/// | 19 | x^19 + x^5 + x^2 + x + 1     | `0x27`   |
/// | 20 | x^20 + x^3 + 1               | `0x9`    |
/// | 21 | x^21 + x^2 + 1               | `0x5`    |
/// | 22 | x^22 + x + 1                 | `0x3`    |
/// | 23 | x^23 + x^5 + 1               | `0x21`   |
/// | 24 | x^24 + x^7 + x^2 + x + 1     | `0x87`   |
/// | 25 | x^25 + x^3 + 1               | `0x9`    |
/// | 26 | x^26 + x^6 + x^2 + x + 1     | `0x47`   |
///
/// `q = 64` uses [`PENTANOMIAL64_MASK`] (`x^64 + x^4 + x^3 + x + 1`).
pub const PRIMITIVE_MASKS: [u64; 26] = [
    0x1, 0x3, 0x3, 0x3, 0x5, 0x3, 0x3, 0x1D, 0x11, 0x9, 0x5, 0x53, 0x1B, 0x443, 0x3, 0x100B, 0x9,
    0x81, 0x27, 0x9, 0x5, 0x3, 0x21, 0x87, 0x9, 0x47,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field width q = {0} is outside 1..=64")]
    InvalidWidth(u32),
    #[error("reduction mask {mask:#x} does not fit below x^{q}")]
    MaskOutOfRange { q: u32, mask: u64 },
    #[error("no shipped primitive polynomial for q = {0} (available: 1..=26 and 64)")]
    NoBuiltin(u32),
    #[error("lookup tables are limited to q <= {max}, got q = {q}")]
    LookupCapacity { q: u32, max: u32 },
    #[error("the clmul backend needs the q = 64 pentanomial field, got {0}")]
    ClmulField(FieldSpec),
    #[error("primitivity check is limited to q <= {max}, got q = {q}")]
    PrimitivityGuard { q: u32, max: u32 },
}

/// A binary extension field: width `q` and the defining polynomial
/// `p(x) = x^q + reduction_mask(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    q: u32,
    reduction_mask: u64,
}

impl FieldSpec {
    pub fn new(q: u32, reduction_mask: u64) -> Result<Self, FieldError> {
        if !(1..=64).contains(&q) {
            return Err(FieldError::InvalidWidth(q));
        }
        if q < 64 && reduction_mask >> q != 0 {
            return Err(FieldError::MaskOutOfRange {
                q,
                mask: reduction_mask,
            });
        }
        Ok(FieldSpec { q, reduction_mask })
    }

    /// The shipped primitive polynomial for `q` (see [`PRIMITIVE_MASKS`]).
    pub fn builtin(q: u32) -> Result<Self, FieldError> {
        match q {
            1..=26 => FieldSpec::new(q, PRIMITIVE_MASKS[q as usize - 1]),
            64 => Ok(FieldSpec::pentanomial64()),
            _ => Err(FieldError::NoBuiltin(q)),
        }
    }

    pub const fn pentanomial64() -> Self {
        FieldSpec {
            q: 64,
            reduction_mask: PENTANOMIAL64_MASK,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reduction_mask(&self) -> u64 {
        self.reduction_mask
    }

    /// All-ones mask of width `q`; every valid element satisfies `a & !m == 0`.
    pub fn element_mask(&self) -> u64 {
        if self.q == 64 {
            u64::MAX
        } else {
            (1u64 << self.q) - 1
        }
    }

    /// `2^q` as a float, for error-bound arithmetic.
    pub fn order(&self) -> f64 {
        (self.q as f64).exp2()
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.element_mask() == 0
    }

    /// Schwartz-Zippel bound `degree / 2^q` on the probability that a nonzero
    /// polynomial of the given total degree vanishes at a uniform point.
    pub fn zero_probability_bound(&self, degree: u32) -> f64 {
        degree as f64 / self.order()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) mod x^{} + {:#x}",
            self.q, self.q, self.reduction_mask
        )
    }
}

/// An element of GF(2^q): a polynomial of degree below `q`, one bit per
/// coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<u64> for FieldElement {
    fn from(v: u64) -> Self {
        FieldElement(v)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        add(self, rhs)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Field addition (and subtraction): xor of the coefficient vectors.
#[inline]
pub fn add(a: FieldElement, b: FieldElement) -> FieldElement {
    FieldElement(a.0 ^ b.0)
}

#[inline(always)]
pub(crate) fn mul_naive_raw(mut a: u64, mut b: u64, q: u32, reduction_mask: u64) -> u64 {
    let top = q - 1;
    let keep = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
    let mut r = 0u64;
    while b != 0 {
        // branch-free: the loop body is the same whatever the operand bits
        r ^= a & (b & 1).wrapping_neg();
        b >>= 1;
        let carry = (a >> top) & 1;
        a = ((a << 1) & keep) ^ (reduction_mask & carry.wrapping_neg());
    }
    r
}

/// Multiply two elements by shift-and-add, reducing modulo `p(x)` after
/// every shift.
pub fn mul_naive(a: FieldElement, b: FieldElement, spec: &FieldSpec) -> FieldElement {
    debug_assert!(spec.contains(a) && spec.contains(b));
    FieldElement(mul_naive_raw(a.0, b.0, spec.q, spec.reduction_mask))
}

/// Uniform element of the field, zero included.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, spec: &FieldSpec) -> FieldElement {
    FieldElement(rng.random::<u64>() & spec.element_mask())
}

/// True iff `p(x)` is primitive: `x` is a unit of GF(2)[x]/(p) whose
/// multiplicative order is exactly `2^q - 1`.
///
/// The order is found by walking the powers of `x`, so the cost is
/// `2^q` steps; `q` is capped at [`MAX_PRIMITIVITY_CHECK_Q`]. A reducible
/// `p` makes the unit group smaller than `2^q - 1`, so the walk returns to 1
/// early (or never, if `x | p`), and the check fails.
pub fn verify_primitive(spec: &FieldSpec) -> Result<bool, FieldError> {
    if spec.q > MAX_PRIMITIVITY_CHECK_Q {
        return Err(FieldError::PrimitivityGuard {
            q: spec.q,
            max: MAX_PRIMITIVITY_CHECK_Q,
        });
    }
    // x | p(x) means x is not a unit
    if spec.reduction_mask & 1 == 0 {
        return Ok(false);
    }
    let q = spec.q;
    let group_order = (1u64 << q) - 1;
    let high = 1u64 << q;
    let mul_x = |a: u64| {
        let s = a << 1;
        if s & high != 0 {
            (s ^ high) ^ spec.reduction_mask
        } else {
            s
        }
    };
    let x = mul_x(1);
    let mut power = x;
    let mut exponent = 1u64;
    while power != 1 {
        if exponent >= group_order {
            return Ok(false);
        }
        power = mul_x(power);
        exponent += 1;
    }
    Ok(exponent == group_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf7() -> FieldSpec {
        FieldSpec::builtin(7).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            add(FieldElement(0b1010), FieldElement(0b0110)),
            FieldElement(0b1100)
        );
        for a in 0..128u64 {
            let a = FieldElement(a);
            assert_eq!(a + FieldElement::ZERO, a);
            assert_eq!(a + a, FieldElement::ZERO);
        }
    }

    #[test]
    fn naive_examples() {
        let f = gf7();
        assert_eq!(
            mul_naive(FieldElement(0b1000000), FieldElement(0b10), &f),
            FieldElement(0b0000011)
        );
        assert_eq!(
            mul_naive(FieldElement(0b011), FieldElement(0b011), &f),
            FieldElement(0b101)
        );
        for a in 0..128 {
            assert_eq!(
                mul_naive(FieldElement(a), FieldElement::ZERO, &f),
                FieldElement::ZERO
            );
        }
    }

    #[test]
    fn naive_matches_long_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [1, 5, 7, 8, 12, 19, 26, 64] {
            let f = FieldSpec::builtin(q).unwrap();
            for _ in 0..2000 {
                let a = random_element(&mut rng, &f);
                let b = random_element(&mut rng, &f);
                let (hi, lo) = reference::poly_mul(a.0, b.0);
                let want = reference::poly_rem(hi, lo, &f);
                assert_eq!(mul_naive(a, b, &f).0, want, "q={q} a={a} b={b}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(FieldSpec::new(0, 0), Err(FieldError::InvalidWidth(0)));
        assert_eq!(FieldSpec::new(65, 0), Err(FieldError::InvalidWidth(65)));
        assert!(matches!(
            FieldSpec::new(3, 0b1000),
            Err(FieldError::MaskOutOfRange { .. })
        ));
        assert_eq!(FieldSpec::builtin(27), Err(FieldError::NoBuiltin(27)));
        assert_eq!(FieldSpec::builtin(64).unwrap().reduction_mask(), 0x1B);
    }

    #[test]
    fn primitivity_examples() {
        assert!(verify_primitive(&FieldSpec::new(3, 0b011).unwrap()).unwrap());
        // x^3 + x^2 + x + 1 = (x + 1)^3
        assert!(!verify_primitive(&FieldSpec::new(3, 0b111).unwrap()).unwrap());
        assert!(verify_primitive(&gf7()).unwrap());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5, not 15
        assert!(!verify_primitive(&FieldSpec::new(4, 0b1111).unwrap()).unwrap());
        // divisible by x
        assert!(!verify_primitive(&FieldSpec::new(4, 0b0110).unwrap()).unwrap());
        assert!(matches!(
            verify_primitive(&FieldSpec::pentanomial64()),
            Err(FieldError::PrimitivityGuard { q: 64, .. })
        ));
    }

    #[test]
    fn shipped_small_table_is_primitive() {
        for q in 1..=16 {
            let f = FieldSpec::builtin(q).unwrap();
            assert!(verify_primitive(&f).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn random_element_determinism_and_range() {
        let f = gf7();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..16).map(|_| random_element(&mut rng, &f)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..16).map(|_| random_element(&mut rng, &f)).collect()
        };
        assert_eq!(a, b);

        let f1 = FieldSpec::builtin(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = [false; 2];
        for _ in 0..200 {
            let v = random_element(&mut rng, &f1).0;
            assert!(v < 2);
            seen[v as usize] = true;
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn random_element_is_uniform() {
        let f = gf7();
        let draws = 1_000_000u64;
        let mut counts = [0u64; 128];
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..draws {
            counts[random_element(&mut rng, &f).0 as usize] += 1;
        }
        let p = 1.0 / 128.0;
        let mean = draws as f64 * p;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for (v, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - mean).abs() <= 5.0 * sigma,
                "value {v}: count {c}, expected {mean} +- {}",
                5.0 * sigma
            );
        }
    }
}
