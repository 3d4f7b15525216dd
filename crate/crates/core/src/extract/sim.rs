//! Simulated set systems for exercising the extractors without a graph.

use rand::seq::index;
use rand::Rng;

use super::{InclusionOracle, ItemId, ItemUniverse, WitnessChecker};

/// A known witness family over items `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedFamily {
    n: usize,
    witnesses: Vec<Vec<ItemId>>,
}

impl PlantedFamily {
    /// Witnesses are sorted internally; ids must be below `n`.
    ///
    /// # Panics
    /// On an id out of range.
    pub fn new(n: usize, witnesses: Vec<Vec<ItemId>>) -> Self {
        let witnesses = witnesses
            .into_iter()
            .map(|mut w| {
                assert!(
                    w.iter().all(|&x| (x as usize) < n),
                    "witness item out of range"
                );
                w.sort_unstable();
                w.dedup();
                w
            })
            .collect();
        PlantedFamily { n, witnesses }
    }

    /// `count` independent uniform `k`-subsets of `0..n`.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, count: usize, rng: &mut R) -> Self {
        let witnesses = (0..count)
            .map(|_| {
                index::sample(rng, n, k)
                    .into_iter()
                    .map(|i| i as ItemId)
                    .collect()
            })
            .collect();
        PlantedFamily::new(n, witnesses)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> ItemUniverse {
        ItemUniverse::range(self.n)
    }

    pub fn witnesses(&self) -> &[Vec<ItemId>] {
        &self.witnesses
    }

    /// Does some witness lie inside `set`?
    pub fn contains_witness(&self, set: &[ItemId]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            if let Some(m) = member.get_mut(x as usize) {
                *m = true;
            }
        }
        self.witnesses
            .iter()
            .any(|w| w.iter().all(|&x| member[x as usize]))
    }

    pub fn is_witness(&self, set: &[ItemId]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.witnesses.contains(&s)
    }

    pub fn oracle(&self) -> ExactOracle<'_> {
        ExactOracle { family: self }
    }

    pub fn checker(&self) -> FamilyChecker<'_> {
        FamilyChecker { family: self }
    }
}

/// Answers every inclusion query correctly.
pub struct ExactOracle<'a> {
    family: &'a PlantedFamily,
}

impl InclusionOracle for ExactOracle<'_> {
    fn includes(&mut self, query: &[ItemId]) -> bool {
        self.family.contains_witness(query)
    }
}

pub struct FamilyChecker<'a> {
    family: &'a PlantedFamily,
}

impl WitnessChecker for FamilyChecker<'_> {
    fn is_witness(&mut self, candidate: &[ItemId]) -> bool {
        self.family.is_witness(candidate)
    }
}

/// Turns each YES of `inner` into NO with probability exactly `p`,
/// independently per call. NO answers pass through.
pub struct FlakyOracle<O, R> {
    inner: O,
    p: f64,
    rng: R,
    flipped: u64,
}

impl<O: InclusionOracle, R: Rng> FlakyOracle<O, R> {
    /// # Panics
    /// If `p` is not in `[0, 1]`.
    pub fn new(inner: O, p: f64, rng: R) -> Self {
        assert!((0.0..=1.0).contains(&p), "p = {p} is not a probability");
        FlakyOracle {
            inner,
            p,
            rng,
            flipped: 0,
        }
    }

    /// YES answers suppressed so far.
    pub fn flipped(&self) -> u64 {
        self.flipped
    }
}

impl<O: InclusionOracle, R: Rng> InclusionOracle for FlakyOracle<O, R> {
    fn includes(&mut self, query: &[ItemId]) -> bool {
        if !self.inner.includes(query) {
            return false;
        }
        if self.rng.random_bool(self.p) {
            self.flipped += 1;
            return false;
        }
        true
    }

    fn error_bound(&self) -> f64 {
        self.p.max(self.inner.error_bound())
    }
}
