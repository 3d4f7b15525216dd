use std::fmt;
use std::str::FromStr;

use super::clmul::{carryless_mul, reduce_pentanomial64};
use super::lookup::{build_lookup_table, Entries, LookupTable};
use super::{mul_naive_raw, FieldElement, FieldError, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Naive,
    Lookup,
    Clmul,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::Naive, BackendKind::Lookup, BackendKind::Clmul];

    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Naive => "naive",
            BackendKind::Lookup => "lookup",
            BackendKind::Clmul => "clmul",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(BackendKind::Naive),
            "lookup" => Ok(BackendKind::Lookup),
            "clmul" => Ok(BackendKind::Clmul),
            other => Err(format!(
                "unknown backend `{other}` (expected naive, lookup or clmul)"
            )),
        }
    }
}

/// A field multiplier. Immutable once built; a lookup table can be shared
/// between threads behind an `Arc`.
#[derive(Clone, Debug)]
pub enum MulBackend {
    Naive(FieldSpec),
    Lookup(LookupTable),
    Clmul64,
}

impl MulBackend {
    pub fn naive(spec: FieldSpec) -> Self {
        MulBackend::Naive(spec)
    }

    pub fn lookup(spec: &FieldSpec) -> Result<Self, FieldError> {
        build_lookup_table(spec).map(MulBackend::Lookup)
    }

    pub fn clmul64(spec: &FieldSpec) -> Result<Self, FieldError> {
        if *spec != FieldSpec::pentanomial64() {
            return Err(FieldError::ClmulField(*spec));
        }
        Ok(MulBackend::Clmul64)
    }

    pub fn build(kind: BackendKind, spec: &FieldSpec) -> Result<Self, FieldError> {
        match kind {
            BackendKind::Naive => Ok(MulBackend::naive(*spec)),
            BackendKind::Lookup => MulBackend::lookup(spec),
            BackendKind::Clmul => MulBackend::clmul64(spec),
        }
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            MulBackend::Naive(_) => BackendKind::Naive,
            MulBackend::Lookup(_) => BackendKind::Lookup,
            MulBackend::Clmul64 => BackendKind::Clmul,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            MulBackend::Naive(spec) => *spec,
            MulBackend::Lookup(t) => *t.spec(),
            MulBackend::Clmul64 => FieldSpec::pentanomial64(),
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self {
            MulBackend::Naive(spec) => {
                FieldElement(mul_naive_raw(a.0, b.0, spec.q(), spec.reduction_mask()))
            }
            MulBackend::Lookup(t) => FieldElement(t.get(a.0, b.0)),
            MulBackend::Clmul64 => {
                let (hi, lo) = carryless_mul(a.0, b.0);
                reduce_pentanomial64(hi, lo)
            }
        }
    }

    /// Hand a monomorphic multiplier to `visitor`, so hot loops are compiled
    /// once per backend instead of matching on every product.
    pub(crate) fn dispatch<V: MulVisitor>(&self, visitor: V) -> V::Output {
        match self {
            MulBackend::Naive(spec) => visitor.visit(NaiveMul {
                q: spec.q(),
                mask: spec.reduction_mask(),
            }),
            MulBackend::Lookup(t) => {
                // the table length becomes a constant, so indexing needs no bounds check
                macro_rules! fixed {
                    ($entries:expr, $($q:literal),*) => {
                        match t.spec().q() {
                            $($q => visitor.visit(TableMul::<_, { 1 << (2 * $q) }> {
                                table: $entries.as_ref().try_into().expect("table has 4^q entries"),
                                q: $q,
                            }),)*
                            q => unreachable!("no lookup table for q = {q}"),
                        }
                    };
                }
                match &t.entries {
                    Entries::Narrow(e) => fixed!(e, 1, 2, 3, 4, 5, 6, 7, 8),
                    Entries::Wide(e) => fixed!(e, 9, 10, 11, 12),
                }
            }
            MulBackend::Clmul64 => visitor.visit(ClmulMul),
        }
    }
}

/// Multiplication specialised for one backend. `scale` pre-processes an
/// operand that will be multiplied many times (a table row offset, for
/// lookup).
pub(crate) trait Multiplier {
    type Scaled: Copy + Default;

    fn scale(&self, a: u64) -> Self::Scaled;
    fn mul_scaled(&self, a: Self::Scaled, b: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
}

pub(crate) trait MulVisitor {
    type Output;

    fn visit<M: Multiplier>(self, m: M) -> Self::Output;
}

struct NaiveMul {
    q: u32,
    mask: u64,
}

impl Multiplier for NaiveMul {
    type Scaled = u64;

    #[inline(always)]
    fn scale(&self, a: u64) -> u64 {
        a
    }

    #[inline(always)]
    fn mul_scaled(&self, a: u64, b: u64) -> u64 {
        mul_naive_raw(a, b, self.q, self.mask)
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_naive_raw(a, b, self.q, self.mask)
    }
}

/// `N = 4^q` entries. Operands are field elements, so masking the index
/// with `N - 1` never changes it.
struct TableMul<'a, T, const N: usize> {
    table: &'a [T; N],
    q: u32,
}

impl<T: Copy + Into<u64>, const N: usize> Multiplier for TableMul<'_, T, N> {
    type Scaled = usize;

    #[inline(always)]
    fn scale(&self, a: u64) -> usize {
        (a << self.q) as usize
    }

    #[inline(always)]
    fn mul_scaled(&self, row: usize, b: u64) -> u64 {
        self.table[(row | b as usize) & (N - 1)].into()
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.table[((a << self.q) | b) as usize & (N - 1)].into()
    }
}

struct ClmulMul;

impl Multiplier for ClmulMul {
    type Scaled = u64;

    #[inline(always)]
    fn scale(&self, a: u64) -> u64 {
        a
    }

    #[inline(always)]
    fn mul_scaled(&self, a: u64, b: u64) -> u64 {
        self.mul(a, b)
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let (hi, lo) = carryless_mul(a, b);
        reduce_pentanomial64(hi, lo).0
    }
}
