//! Counting of additions and subtractions, and the closed-form totals they
//! are checked against.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::transform::support_len;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelCost {
    pub additions: u64,
    pub subtractions: u64,
}

impl LevelCost {
    pub fn total(&self) -> u64 {
        self.additions + self.subtractions
    }
}

/// Running operation counts, broken down by the level being produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    additions: u64,
    subtractions: u64,
    per_level: BTreeMap<u32, LevelCost>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, level: u32, additions: u64, subtractions: u64) {
        self.additions += additions;
        self.subtractions += subtractions;
        let entry = self.per_level.entry(level).or_default();
        entry.additions += additions;
        entry.subtractions += subtractions;
    }

    pub fn additions(&self) -> u64 {
        self.additions
    }

    pub fn subtractions(&self) -> u64 {
        self.subtractions
    }

    pub fn total(&self) -> u64 {
        self.additions + self.subtractions
    }

    pub fn level(&self, m: u32) -> LevelCost {
        self.per_level.get(&m).copied().unwrap_or_default()
    }

    pub fn levels(&self) -> impl Iterator<Item = (u32, LevelCost)> + '_ {
        self.per_level.iter().map(|(&m, &c)| (m, c))
    }

    pub fn merge(&mut self, other: &CostLedger) {
        for (m, c) in other.levels() {
            self.add(m, c.additions, c.subtractions);
        }
    }
}

/// Additions performed by the fast forward transform of an order-`n` image:
/// one per produced entry at every level `1..=n`.
pub fn forward_additions(n: u32) -> u64 {
    (1..=n).map(|m| (1u64 << (n - m)) * support_len(n, m)).sum()
}

/// Additions plus subtractions of a full inversion of an order-`n` image.
///
/// Each upper section at level `m` yields two target sections at level
/// `m-1`; every target entry costs one subtraction (its difference) and one
/// addition (its prefix-sum step).
pub fn inverse_total(n: u32) -> u64 {
    (1..=n)
        .map(|m| (1u64 << (n - m + 1)) * 2 * support_len(n, m - 1))
        .sum()
}

/// Aggregate of the per-level bound `2 * 2^(m-1) * (2^(n+1) + 2^m + 1)`
/// over `2^(n-m)` sections per level.
pub fn inverse_level_bound(n: u32) -> u64 {
    (1..=n)
        .map(|m| {
            let size = (1u64 << (m - 1)) * ((1u64 << (n + 1)) + (1u64 << m) + 1);
            (1u64 << (n - m)) * 2 * size
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totals() {
        assert_eq!(inverse_total(0), 0);
        assert_eq!(inverse_total(1), 8);
        assert_eq!(inverse_total(2), 68);
    }

    #[test]
    fn forward_small() {
        // n=1: one section, slopes 0 and 1 with supports 2 and 3
        assert_eq!(forward_additions(1), 5);
        // n=2: level 1 has 2 sections of 4+5, level 2 one of 4+5+6+7
        assert_eq!(forward_additions(2), 18 + 22);
    }

    #[test]
    fn ledger_accumulates() {
        let mut a = CostLedger::new();
        a.add(1, 3, 2);
        a.add(1, 1, 0);
        a.add(0, 0, 4);
        assert_eq!(a.additions(), 4);
        assert_eq!(a.subtractions(), 6);
        assert_eq!(a.level(1), LevelCost { additions: 4, subtractions: 2 });
        let mut b = CostLedger::new();
        b.merge(&a);
        b.merge(&a);
        assert_eq!(b.total(), 20);
        assert_eq!(b.level(0).subtractions, 8);
    }

    #[test]
    fn bound_dominates() {
        for n in 1..=12 {
            assert!(inverse_total(n) <= inverse_level_bound(n));
        }
    }
}
