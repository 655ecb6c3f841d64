use serde::{Deserialize, Serialize};

/// Enumeration limits. Every exhaustive stage checks its own cap before
/// materializing anything and fails with `Error::ResourceLimit` instead of
/// running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest frame accepted by the frame constructors.
    pub frame_size: usize,
    /// Largest `n` accepted by `Frame::powerset`.
    pub powerset_exponent: usize,
    /// Largest frame accepted for filter enumeration.
    pub filter_frame_size: usize,
    /// Largest `|L|^|X|` for which all L-subsets of a carrier are enumerated.
    pub lsubset_space: u64,
    /// Largest family materialized by topology closure.
    pub family_size: usize,
    /// Search-node budget of one filter enumeration.
    pub filter_search_nodes: u64,
    /// Largest number of filters kept by one enumeration.
    pub filter_count: usize,
    /// Largest number of opens a filter enumeration will search over.
    pub filter_opens: usize,
    /// Largest subset count used for exhaustive distributivity scans (as |L|).
    pub exhaustive_subsets: usize,
    /// Count cap of the level-2 sample policy.
    pub level2_samples: usize,
    /// Count cap of the level-3 sample policy.
    pub level3_samples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            frame_size: 16,
            powerset_exponent: 4,
            filter_frame_size: 4,
            lsubset_space: 81,
            family_size: 4096,
            filter_search_nodes: 10_000_000,
            filter_count: 20_000,
            filter_opens: 512,
            exhaustive_subsets: 12,
            level2_samples: 512,
            level3_samples: 256,
        }
    }
}

impl Caps {
    /// `base^exp` if it does not exceed `limit`.
    pub fn checked_power(base: usize, exp: usize, limit: u64) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..exp {
            acc = acc.checked_mul(base as u64)?;
            if acc > limit {
                return None;
            }
        }
        Some(acc)
    }
}
