//! The known list of empty 4-simplices of width at least three, and checks
//! of that list against the pipeline and against an enumeration store.
//!
//! The data lives in `data/wide_simplices.txt`. Entries carry no determinant labels;
//! the determinant is always recomputed as `Σ v_i - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::enumeration::{wide_classes_in_store, WideClass};
use crate::error::{Error, Result};
use crate::simplex::{is_empty, width, VRepSimplex, DEFAULT_WIDTH_CAP};
use crate::store::{Store, StoredWidth};
use crate::torus::CanonicalTuple;

pub const CATALOG_SOURCE: &str = include_str!("../data/wide_simplices.txt");

pub const EXPECTED_ENTRIES: usize = 179;
pub const MIN_DETERMINANT: i64 = 41;
pub const MAX_DETERMINANT: i64 = 179;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CatalogEntry {
    pub v: [i64; 4],
    pub expected_width: u32,
}

impl CatalogEntry {
    pub fn determinant(&self) -> i64 {
        self.v.iter().sum::<i64>() - 1
    }

    pub fn simplex(&self) -> Result<VRepSimplex> {
        VRepSimplex::new(self.v)
    }

    pub fn canonical(&self) -> Result<CanonicalTuple> {
        self.simplex()?.tuple().canonical_form()
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.v;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Parses the catalog format: four integers per line, optional `w=<n>`, `#` comments.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("catalog line {}: {raw:?}", lineno + 1));
        let mut v = Vec::with_capacity(4);
        let mut expected_width = 3;
        for tok in line.split_whitespace() {
            if let Some(w) = tok.strip_prefix("w=") {
                expected_width = w.parse().map_err(|_| bad())?;
            } else {
                v.push(tok.parse::<i64>().map_err(|_| bad())?);
            }
        }
        let v: [i64; 4] = v.try_into().map_err(|_| bad())?;
        out.push(CatalogEntry { v, expected_width });
    }
    Ok(out)
}

/// The embedded catalog.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_SOURCE).expect("embedded catalog parses"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryVerdict {
    pub entry: CatalogEntry,
    pub determinant_in_range: bool,
    pub empty: bool,
    pub width: Option<StoredWidth>,
    /// Index of an earlier entry with the same canonical form.
    pub duplicate_of: Option<usize>,
    pub canonical: Option<CanonicalTuple>,
}

impl EntryVerdict {
    pub fn width_ok(&self) -> bool {
        self.width == Some(StoredWidth::Exact(self.entry.expected_width))
    }

    pub fn passed(&self) -> bool {
        self.determinant_in_range && self.empty && self.width_ok() && self.duplicate_of.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdicts: Vec<EntryVerdict>,
    pub width_histogram: BTreeMap<String, usize>,
    /// Aggregate failures (counts, histogram) not tied to a single entry.
    pub aggregate_failures: Vec<String>,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .verdicts
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.passed())
            .map(|(i, v)| {
                let mut why = Vec::new();
                if !v.determinant_in_range {
                    why.push(format!("determinant {} out of range", v.entry.determinant()));
                }
                if !v.empty {
                    why.push("not empty".to_string());
                }
                if !v.width_ok() {
                    why.push(format!(
                        "width {} != expected {}",
                        v.width.map_or("?".into(), |w| w.to_string()),
                        v.entry.expected_width
                    ));
                }
                if let Some(j) = v.duplicate_of {
                    why.push(format!("equivalent to entry #{}", j + 1));
                }
                format!("entry #{} {}: {}", i + 1, v.entry, why.join("; "))
            })
            .collect();
        out.extend(self.aggregate_failures.iter().cloned());
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.verdicts.iter().filter(|v| v.passed()).count();
        writeln!(f, "entries: {} ({} pass)", self.verdicts.len(), passed)?;
        let hist: Vec<String> = self
            .width_histogram
            .iter()
            .map(|(w, n)| format!("{w}: {n}"))
            .collect();
        writeln!(f, "widths: {{{}}}", hist.join(", "))?;
        let failures = self.failures();
        if failures.is_empty() {
            writeln!(f, "verdict: PASS")
        } else {
            for line in &failures {
                writeln!(f, "FAIL {line}")?;
            }
            writeln!(f, "verdict: FAIL ({} failures)", failures.len())
        }
    }
}

pub fn verify_catalog() -> VerificationReport {
    verify_entries(catalog())
}

/// Checks each entry's determinant range, emptiness, width and mutual inequivalence.
pub fn verify_entries(entries: &[CatalogEntry]) -> VerificationReport {
    let mut verdicts: Vec<EntryVerdict> = entries
        .par_iter()
        .map(|&entry| {
            let d = entry.determinant();
            let determinant_in_range = (MIN_DETERMINANT..=MAX_DETERMINANT).contains(&d);
            match entry.simplex() {
                Ok(s) => {
                    let u = s.tuple();
                    EntryVerdict {
                        entry,
                        determinant_in_range,
                        empty: is_empty(&u),
                        width: Some(StoredWidth::from(&width(&u, DEFAULT_WIDTH_CAP))),
                        duplicate_of: None,
                        canonical: u.canonical_form().ok(),
                    }
                }
                Err(_) => EntryVerdict {
                    entry,
                    determinant_in_range,
                    empty: false,
                    width: None,
                    duplicate_of: None,
                    canonical: None,
                },
            }
        })
        .collect();

    let mut seen: BTreeMap<CanonicalTuple, usize> = BTreeMap::new();
    for (i, v) in verdicts.iter_mut().enumerate() {
        if let Some(c) = &v.canonical {
            match seen.get(c) {
                Some(&j) => v.duplicate_of = Some(j),
                None => {
                    seen.insert(c.clone(), i);
                }
            }
        }
    }

    let mut width_histogram = BTreeMap::new();
    for v in &verdicts {
        let key = v.width.map_or("?".to_string(), |w| w.to_string());
        *width_histogram.entry(key).or_insert(0) += 1;
    }

    let mut aggregate_failures = Vec::new();
    if entries.len() != EXPECTED_ENTRIES {
        aggregate_failures.push(format!(
            "catalog has {} entries, expected {EXPECTED_ENTRIES}",
            entries.len()
        ));
    }
    let w3 = width_histogram.get("3").copied().unwrap_or(0);
    let w4 = width_histogram.get("4").copied().unwrap_or(0);
    if (w3, w4) != (EXPECTED_ENTRIES - 1, 1) || width_histogram.len() != 2 {
        aggregate_failures.push(format!(
            "width histogram {width_histogram:?} differs from {{3: {}, 4: 1}}",
            EXPECTED_ENTRIES - 1
        ));
    }

    VerificationReport {
        verdicts,
        width_histogram,
        aggregate_failures,
    }
}

/// Symmetric difference between the wide classes of a store and the catalog.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StoreDiff {
    pub dmax: u32,
    /// Determinants `<= dmax` without a complete record.
    pub missing_determinants: Vec<u32>,
    pub only_in_store: Vec<WideClass>,
    pub only_in_catalog: Vec<(CatalogEntry, CanonicalTuple)>,
    /// Classes present on both sides whose widths disagree.
    pub width_mismatches: Vec<(CatalogEntry, StoredWidth)>,
    pub matched: usize,
    pub store_width_histogram: BTreeMap<String, usize>,
}

impl StoreDiff {
    pub fn is_empty(&self) -> bool {
        self.missing_determinants.is_empty()
            && self.only_in_store.is_empty()
            && self.only_in_catalog.is_empty()
            && self.width_mismatches.is_empty()
    }
}

impl fmt::Display for StoreDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "store vs catalog, D <= {}", self.dmax)?;
        let hist: Vec<String> = self
            .store_width_histogram
            .iter()
            .map(|(w, n)| format!("{w}: {n}"))
            .collect();
        writeln!(f, "matched: {}; store widths: {{{}}}", self.matched, hist.join(", "))?;
        if !self.missing_determinants.is_empty() {
            writeln!(f, "missing records: {:?}", self.missing_determinants)?;
        }
        for w in &self.only_in_store {
            writeln!(f, "only in store: D={} {} w={}", w.determinant, w.tuple, w.width)?;
        }
        for (e, c) in &self.only_in_catalog {
            writeln!(f, "only in catalog: {e} = {c}")?;
        }
        for (e, w) in &self.width_mismatches {
            writeln!(f, "width mismatch: {e} expected {} stored {w}", e.expected_width)?;
        }
        writeln!(f, "diff: {}", if self.is_empty() { "empty" } else { "NONEMPTY" })
    }
}

pub fn diff_store(store: &Store, dmax: u32) -> Result<StoreDiff> {
    diff_against(store, dmax, catalog())
}

pub fn diff_against(store: &Store, dmax: u32, entries: &[CatalogEntry]) -> Result<StoreDiff> {
    let done = store.completed()?;
    let missing_determinants = (1..=dmax).filter(|d| !done.contains(d)).collect();
    let wide = wide_classes_in_store(store, dmax, 3)?;

    let mut expected: BTreeMap<CanonicalTuple, CatalogEntry> = BTreeMap::new();
    for e in entries.iter().filter(|e| e.determinant() <= dmax as i64) {
        expected.insert(e.canonical()?, *e);
    }
    let stored: BTreeMap<&CanonicalTuple, &WideClass> = wide.iter().map(|w| (&w.tuple, w)).collect();

    let mut diff = StoreDiff {
        dmax,
        missing_determinants,
        ..Default::default()
    };
    for w in &wide {
        *diff
            .store_width_histogram
            .entry(w.width.to_string())
            .or_insert(0) += 1;
        match expected.get(&w.tuple) {
            None => diff.only_in_store.push(w.clone()),
            Some(e) if w.width != StoredWidth::Exact(e.expected_width) => {
                diff.width_mismatches.push((*e, w.width))
            }
            Some(_) => diff.matched += 1,
        }
    }
    for (c, e) in &expected {
        if !stored.contains_key(c) {
            diff.only_in_catalog.push((*e, c.clone()));
        }
    }
    Ok(diff)
}

/// Canonical classes of the catalog, keyed by determinant.
pub fn catalog_classes() -> Result<BTreeMap<u32, BTreeSet<CanonicalTuple>>> {
    let mut out: BTreeMap<u32, BTreeSet<CanonicalTuple>> = BTreeMap::new();
    for e in catalog() {
        out.entry(e.determinant() as u32)
            .or_default()
            .insert(e.canonical()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_shape() {
        let c = catalog();
        assert_eq!(c.len(), 179);
        assert_eq!(c.iter().filter(|e| e.expected_width == 4).count(), 1);
        let wide4 = c.iter().find(|e| e.expected_width == 4).unwrap();
        assert_eq!(wide4.v, [6, 14, 17, 65]);
        assert_eq!(wide4.determinant(), 101);
        assert!(c.iter().any(|e| e.v == [4, 23, 25, -10] && e.determinant() == 41));
        assert!(c.iter().any(|e| e.v == [3, 5, 79, 93] && e.determinant() == 179));
        assert!(c
            .iter()
            .all(|e| (MIN_DETERMINANT..=MAX_DETERMINANT).contains(&e.determinant())));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_catalog("1 2 3\n").is_err());
        assert!(parse_catalog("1 2 3 x\n").is_err());
        assert_eq!(parse_catalog("# only a comment\n\n").unwrap(), vec![]);
        let e = parse_catalog("1 2 3 4 w=4 # note").unwrap();
        assert_eq!(e[0].expected_width, 4);
    }

    #[test]
    fn fault_injection_is_itemized() {
        let mut entries = catalog().to_vec();
        entries[10].v[3] += 1;
        let report = verify_entries(&entries);
        let bad: Vec<_> = report.verdicts.iter().filter(|v| !v.passed()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].entry, entries[10]);
        assert!(!report.passed());
    }
}
