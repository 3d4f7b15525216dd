//! Full multiplication tables for small fields.

use std::time::{Duration, Instant};

use super::{mul_naive_raw, FieldElement, FieldError, FieldSpec};

/// Largest `q` for which a lookup table may be built (`4^12 * 2` bytes = 32 MiB).
pub const MAX_LOOKUP_Q: u32 = 12;

#[derive(Clone, Debug)]
pub(crate) enum Entries {
    Narrow(Box<[u8]>),
    Wide(Box<[u16]>),
}

/// Row-major product table: entry `a * 2^q + b` holds `a * b`, stored in the
/// narrowest unsigned type that holds `q` bits.
#[derive(Clone, Debug)]
pub struct LookupTable {
    spec: FieldSpec,
    pub(crate) entries: Entries,
    build_time: Duration,
}

impl LookupTable {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        match &self.entries {
            Entries::Narrow(t) => t.len(),
            Entries::Wide(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Table footprint in bytes, `4^q * ceil(q / 8)`.
    pub fn size_bytes(&self) -> usize {
        match &self.entries {
            Entries::Narrow(t) => t.len(),
            Entries::Wide(t) => t.len() * 2,
        }
    }

    pub fn build_time(&self) -> Duration {
        self.build_time
    }

    #[inline(always)]
    pub fn get(&self, a: u64, b: u64) -> u64 {
        let i = ((a << self.spec.q()) | b) as usize;
        match &self.entries {
            Entries::Narrow(t) => t[i] as u64,
            Entries::Wide(t) => t[i] as u64,
        }
    }

    /// Overwrite one entry with a wrong product. Fault injection for
    /// self-tests; never used on a live path.
    #[doc(hidden)]
    pub fn corrupt_entry(&mut self, a: u64, b: u64) {
        let i = ((a << self.spec.q()) | b) as usize;
        let mask = self.spec.element_mask();
        match &mut self.entries {
            Entries::Narrow(t) => t[i] = ((t[i] as u64 ^ 1) & mask) as u8,
            Entries::Wide(t) => t[i] = ((t[i] as u64 ^ 1) & mask) as u16,
        }
    }
}

/// Precompute every product of the field with the naive multiplier.
pub fn build_lookup_table(spec: &FieldSpec) -> Result<LookupTable, FieldError> {
    let q = spec.q();
    if q > MAX_LOOKUP_Q {
        return Err(FieldError::LookupCapacity {
            q,
            max: MAX_LOOKUP_Q,
        });
    }
    let start = Instant::now();
    let size = 1u64 << q;
    let products = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .map(|(a, b)| mul_naive_raw(a, b, q, spec.reduction_mask()));
    let entries = if q <= 8 {
        Entries::Narrow(products.map(|p| p as u8).collect())
    } else {
        Entries::Wide(products.map(|p| p as u16).collect())
    };
    Ok(LookupTable {
        spec: *spec,
        entries,
        build_time: start.elapsed(),
    })
}

/// One table read.
#[inline(always)]
pub fn mul_lookup(a: FieldElement, b: FieldElement, table: &LookupTable) -> FieldElement {
    FieldElement(table.get(a.0, b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2q::mul_naive;

    #[test]
    fn q7_table_layout() {
        let spec = FieldSpec::builtin(7).unwrap();
        let t = build_lookup_table(&spec).unwrap();
        assert_eq!(t.len(), 1 << 14);
        assert_eq!(t.size_bytes(), 1 << 14);
        assert!((0..128).all(|b| t.get(0, b) == 0));
        assert_eq!(
            mul_lookup(FieldElement(0b1000000), FieldElement(0b10), &t),
            FieldElement(0b0000011)
        );
    }

    #[test]
    fn capacity_guard() {
        let spec = FieldSpec::builtin(13).unwrap();
        assert_eq!(
            build_lookup_table(&spec).unwrap_err(),
            FieldError::LookupCapacity { q: 13, max: 12 }
        );
    }

    #[test]
    fn wide_entries_for_q_above_8() {
        let spec = FieldSpec::builtin(10).unwrap();
        let t = build_lookup_table(&spec).unwrap();
        assert_eq!(t.size_bytes(), 2 << 20);
        for (a, b) in [(1023, 1023), (512, 2), (3, 700)] {
            assert_eq!(
                mul_lookup(FieldElement(a), FieldElement(b), &t),
                mul_naive(FieldElement(a), FieldElement(b), &spec)
            );
        }
    }

    #[test]
    fn identity_and_zero() {
        let spec = FieldSpec::builtin(8).unwrap();
        let t = build_lookup_table(&spec).unwrap();
        for a in 0..256 {
            assert_eq!(
                mul_lookup(FieldElement(a), FieldElement::ONE, &t),
                FieldElement(a)
            );
            assert_eq!(
                mul_lookup(FieldElement::ZERO, FieldElement(a), &t),
                FieldElement::ZERO
            );
        }
    }

    #[test]
    fn corrupted_entry_differs() {
        let spec = FieldSpec::builtin(5).unwrap();
        let mut t = build_lookup_table(&spec).unwrap();
        let before = t.get(3, 9);
        t.corrupt_entry(3, 9);
        assert_ne!(t.get(3, 9), before);
    }
}
