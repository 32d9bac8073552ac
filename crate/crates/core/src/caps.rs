use serde::{Deserialize, Serialize};

/// Seed used whenever a caller does not supply one. Every randomized step in
/// the crate is seeded, so runs are reproducible bit for bit.
pub const DEFAULT_SEED: u64 = 0x0dd_a2c5_2026;

/// Resource limits. Exceeding any of them yields an explicit undecided
/// outcome rather than a truncated answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order the analyses will touch.
    pub max_order: u64,
    /// Node budget for backtrack searches (setwise stabilizers, conjugacy, isomorphism).
    pub backtrack_budget: u64,
    /// Largest coset-space size enumerated.
    pub max_index: u64,
    /// Largest number of s-arc tuples held by an orbit closure.
    pub tuple_cap: u64,
    /// Largest group whose elements may be listed outright.
    pub enumeration_limit: u64,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 1_000_000_000,
            backtrack_budget: 10_000_000,
            max_index: 20_000,
            tuple_cap: 1 << 26,
            enumeration_limit: 200_000,
            seed: DEFAULT_SEED,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> crate::Result<()> {
        let all_positive = [
            self.max_order,
            self.backtrack_budget,
            self.max_index,
            self.tuple_cap,
            self.enumeration_limit,
        ]
        .iter()
        .all(|&c| c > 0);
        if all_positive {
            Ok(())
        } else {
            Err(crate::Error::InvalidArgument("caps must be positive".into()))
        }
    }
}
