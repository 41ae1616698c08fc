//! Completeness certificate for the classification of wide empty 4-simplices.
//!
//! The classification is complete once every determinant up to the
//! theoretical cap has been enumerated and the wide classes found there are
//! exactly the catalog.

use std::fmt;

use crate::bounds::simplex_volume_cap;
use crate::catalog::{diff_store, StoreDiff};
use crate::error::Result;
use crate::store::Store;

/// Largest determinant covered by the published exhaustive run.
pub const PUBLISHED_COVERAGE: u32 = 7600;

#[derive(Clone, Debug)]
pub struct Certificate {
    pub coverage: u32,
    pub theoretical_cap: u64,
    pub published_coverage: u32,
    pub diff: StoreDiff,
    /// Determinants in `(coverage, cap]` still to be enumerated.
    pub gap: Option<(u32, u64)>,
}

impl Certificate {
    pub fn complete(&self) -> bool {
        self.gap.is_none() && self.diff.is_empty()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "theoretical cap: no empty 4-simplex of width >= 3 has determinant > {}",
            self.theoretical_cap
        )?;
        writeln!(f, "published enumeration coverage: D <= {}", self.published_coverage)?;
        writeln!(f, "store coverage checked: D <= {}", self.coverage)?;
        if !self.diff.missing_determinants.is_empty() {
            let m = &self.diff.missing_determinants;
            writeln!(
                f,
                "store lacks {} records (first {}, last {})",
                m.len(),
                m[0],
                m[m.len() - 1]
            )?;
        }
        writeln!(
            f,
            "catalog diff: {}",
            if self.diff.is_empty() { "empty" } else { "NONEMPTY" }
        )?;
        match self.gap {
            Some((lo, hi)) => writeln!(f, "verdict: incomplete, gap ({lo}, {hi}]"),
            None if self.diff.is_empty() => writeln!(f, "verdict: classification complete"),
            None => writeln!(f, "verdict: incomplete, store disagrees with catalog"),
        }
    }
}

/// Evaluates the certificate for a store claimed complete up to `coverage`.
pub fn completeness_certificate(coverage: u32, store: &Store) -> Result<Certificate> {
    let cap = simplex_volume_cap().cap;
    let diff = diff_store(store, coverage)?;
    let gap = ((coverage as u64) < cap).then_some((coverage, cap));
    Ok(Certificate {
        coverage,
        theoretical_cap: cap,
        published_coverage: PUBLISHED_COVERAGE,
        diff,
        gap,
    })
}
