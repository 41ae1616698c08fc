//! Exhaustive enumeration of empty 4-simplices by determinant.
//!
//! Two complete procedures produce the set of canonical empty classes of a
//! determinant `D`:
//!
//! * [`algorithm1`] scans the tuples `(-1, v1, v2, v3, v4)` with
//!   `Σ v_i ≡ 1 (mod D)`. It relies on every empty simplex of `D` having a
//!   unit entry (a unimodular facet), which holds when `D` has at most four
//!   distinct prime factors.
//! * [`algorithm2`] splits `D = ab` with `gcd(a, b) = 1` and glues empty
//!   classes of `a` and `b` by the Chinese remainder theorem, since every
//!   empty tuple of `D` relaxes to empty tuples mod `a` and mod `b`.
//!
//! [`enumerate_range`] drives both over a range of determinants, writing one
//! record per determinant into a [`Store`].

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::{euler_phi, factorize, gcd, omega, units};
use crate::error::{Error, Result};
use crate::simplex::{facet_volumes, first_interior_class, is_empty, width, DEFAULT_WIDTH_CAP};
use crate::store::{Algorithm, ClassLookup, EnumerationRecord, StoredClass, StoredWidth, Store};
use crate::torus::{canonical_entries, crt_unchecked, CanonicalTuple, Determinant, Entries, ResidueTuple};

/// Coprime factorization `D = a*b` used by [`algorithm2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitChoice {
    a: u32,
    b: u32,
}

impl SplitChoice {
    pub fn new(d: u32, a: u32, b: u32) -> Result<Self> {
        if a < 2 || b < 2 || a as u64 * b as u64 != d as u64 || gcd(a, b) != 1 {
            return Err(Error::InvalidSplit { d, a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// The coprime split with `a <= b` minimizing `b - a`, or `None` for prime powers and 1.
pub fn choose_split(d: Determinant) -> Option<SplitChoice> {
    let d = d.get();
    let powers: Vec<u32> = factorize(d).into_iter().map(|(p, e)| p.pow(e)).collect();
    if powers.len() < 2 {
        return None;
    }
    let mut best: Option<(u32, u32)> = None;
    // subsets not containing the last prime power, so each pair is seen once
    for mask in 1u32..(1 << (powers.len() - 1)) {
        let x: u32 = powers
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &q)| q)
            .product();
        let (a, b) = (x.min(d / x), x.max(d / x));
        if best.is_none_or(|(ba, bb)| (b - a, a) < (bb - ba, ba)) {
            best = Some((a, b));
        }
    }
    best.map(|(a, b)| SplitChoice { a, b })
}

/// All empty classes of determinant `d` from the tuples `(-1, v1, v2, v3, v4)`.
///
/// The four `v` slots are interchangeable, so only `v1 <= v2 <= v3 <= v4`
/// (as least residues) is scanned. Runs on the current rayon pool,
/// partitioned by `v1`.
pub fn algorithm1(d: Determinant) -> Result<BTreeSet<CanonicalTuple>> {
    algorithm1_scan(d, true)
}

/// [`algorithm1`] over the full `D^3` candidate space, without symmetry pruning.
pub fn algorithm1_full(d: Determinant) -> Result<BTreeSet<CanonicalTuple>> {
    algorithm1_scan(d, false)
}

fn algorithm1_scan(d: Determinant, sorted_only: bool) -> Result<BTreeSet<CanonicalTuple>> {
    let m = d.get();
    if omega(m) >= 5 {
        return Err(Error::TooManyPrimeFactors(m));
    }
    let units = units(m);
    let survivors = (0..m)
        .into_par_iter()
        .map(|v1| {
            let mut local: HashSet<Entries> = HashSet::new();
            let start2 = if sorted_only { v1 } else { 0 };
            for v2 in start2..m {
                let start3 = if sorted_only { v2 } else { 0 };
                for v3 in start3..m {
                    let v4 = ((1 + 3 * m as u64 - v1 as u64 - v2 as u64 - v3 as u64) % m as u64)
                        as u32;
                    if sorted_only && v4 < v3 {
                        continue;
                    }
                    let u = [m - 1, v1, v2, v3, v4];
                    if first_interior_class(m, &u).is_none() {
                        local.insert(canonical_entries(m, &u, &units));
                    }
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(survivors
        .into_iter()
        .map(|e| ResidueTuple::from_reduced(m, e).canonical_with(&units))
        .collect())
}

/// All empty classes of determinant `d = a*b` from those of `a` and `b`.
///
/// One representative of each class of one factor is glued with every
/// element of the orbit of each class of the other factor, and the result
/// is tested for emptiness. The gluing is symmetric in the two factors, so
/// the orbit is taken on the factor with fewer units (ties: `b`).
pub fn algorithm2(
    d: Determinant,
    split: SplitChoice,
    lookup: &impl ClassLookup,
) -> Result<BTreeSet<CanonicalTuple>> {
    let m = d.get();
    let split = SplitChoice::new(m, split.a, split.b)?;
    let classes_a = lookup.classes(split.a)?;
    let classes_b = lookup.classes(split.b)?;
    let orbit_a = euler_phi(split.a) < euler_phi(split.b);
    let (fixed, orbited) = if orbit_a {
        (&classes_b, &classes_a)
    } else {
        (&classes_a, &classes_b)
    };
    let units = units(m);
    let orbits: Vec<Vec<ResidueTuple>> = orbited
        .par_iter()
        .map(|c| c.orbit().into_iter().collect())
        .collect();
    let pairs: Vec<(usize, usize)> = (0..fixed.len())
        .flat_map(|i| (0..orbits.len()).map(move |j| (i, j)))
        .collect();
    let survivors = pairs
        .par_iter()
        .map(|&(i, j)| {
            let rep = &fixed[i];
            let mut local: HashSet<Entries> = HashSet::new();
            for x in &orbits[j] {
                let c = if orbit_a {
                    crt_unchecked(x, rep)
                } else {
                    crt_unchecked(rep, x)
                };
                if first_interior_class(m, c.entries()).is_none() {
                    local.insert(canonical_entries(m, c.entries(), &units));
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(survivors
        .into_iter()
        .map(|e| ResidueTuple::from_reduced(m, e).canonical_with(&units))
        .collect())
}

/// Which algorithm [`enumerate_range`] should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AlgorithmChoice {
    /// Algorithm 2 whenever a split exists and both factor records are complete.
    #[default]
    Auto,
    A1,
    A2,
}

/// Builds the stored record (width and facet volumes per class).
pub fn make_record(
    d: u32,
    algorithm: Algorithm,
    classes: BTreeSet<CanonicalTuple>,
    elapsed: Duration,
) -> EnumerationRecord {
    let classes = classes
        .into_par_iter()
        .map(|tuple| StoredClass {
            width: StoredWidth::from(&width(&tuple, DEFAULT_WIDTH_CAP)),
            facets: facet_volumes(&tuple),
            tuple,
        })
        .collect();
    EnumerationRecord {
        determinant: d,
        algorithm,
        complete: true,
        classes,
        elapsed: Some(elapsed),
    }
}

/// Computes the record of one determinant without touching the store.
pub fn enumerate_one(
    d: Determinant,
    choice: AlgorithmChoice,
    lookup: &impl ClassLookup,
) -> Result<EnumerationRecord> {
    let m = d.get();
    let split = choose_split(d);
    let algorithm = match (choice, split) {
        (AlgorithmChoice::A1, _) => Algorithm::A1,
        (AlgorithmChoice::A2, None) => return Err(Error::NoSplit(m)),
        (AlgorithmChoice::A2, Some(s)) => Algorithm::A2 { a: s.a, b: s.b },
        (AlgorithmChoice::Auto, Some(s))
            if lookup.classes(s.a).is_ok() && lookup.classes(s.b).is_ok() =>
        {
            Algorithm::A2 { a: s.a, b: s.b }
        }
        (AlgorithmChoice::Auto, _) => Algorithm::A1,
    };
    let start = Instant::now();
    let classes = match algorithm {
        Algorithm::A1 => algorithm1(d)?,
        Algorithm::A2 { a, b } => algorithm2(d, SplitChoice::new(m, a, b)?, lookup)?,
    };
    Ok(make_record(m, algorithm, classes, start.elapsed()))
}

#[derive(Debug)]
pub enum Outcome {
    Computed(EnumerationRecord),
    Skipped,
    Failed(Error),
}

/// Enumerates every determinant in `dmin..=dmax` in ascending order.
///
/// Determinants with a complete record are skipped. Failures are reported
/// per determinant and do not stop the range. `on_done` sees each outcome
/// as soon as it is known.
pub fn enumerate_range(
    dmin: u32,
    dmax: u32,
    store: &Store,
    choice: AlgorithmChoice,
    mut on_done: impl FnMut(u32, &Outcome),
) -> Result<Vec<(u32, Outcome)>> {
    Determinant::new(dmin as i64)?;
    let mut out = Vec::new();
    for m in dmin..=dmax {
        let outcome = if store.is_complete(m) {
            Outcome::Skipped
        } else {
            match enumerate_one(Determinant::new(m as i64)?, choice, store)
                .and_then(|rec| store.save(&rec).map(|_| rec))
            {
                Ok(rec) => Outcome::Computed(rec),
                Err(e) => Outcome::Failed(e),
            }
        };
        on_done(m, &outcome);
        out.push((m, outcome));
    }
    Ok(out)
}

/// A stored class of width at least the filter threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideClass {
    pub determinant: u32,
    pub tuple: CanonicalTuple,
    pub width: StoredWidth,
}

pub fn wide_filter<'a>(
    records: impl IntoIterator<Item = &'a EnumerationRecord>,
    threshold: u32,
) -> Vec<WideClass> {
    records
        .into_iter()
        .flat_map(|r| {
            r.classes
                .iter()
                .filter(|c| c.width.at_least(threshold))
                .map(|c| WideClass {
                    determinant: r.determinant,
                    tuple: c.tuple.clone(),
                    width: c.width,
                })
        })
        .collect()
}

/// Wide classes of all complete records with `D <= dmax`.
pub fn wide_classes_in_store(store: &Store, dmax: u32, threshold: u32) -> Result<Vec<WideClass>> {
    let mut records = Vec::new();
    for d in 1..=dmax {
        if let Some(r) = store.load(d)? {
            records.push(r);
        }
    }
    Ok(wide_filter(&records, threshold))
}

/// Power-law fit `t ≈ c * D^k` of per-determinant timings, by least squares in log-log space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingModel {
    pub coefficient: f64,
    pub exponent: f64,
    pub samples: usize,
}

impl TimingModel {
    /// Needs at least two positive samples with distinct determinants.
    pub fn fit(samples: impl IntoIterator<Item = (u32, f64)>) -> Option<Self> {
        let pts: Vec<(f64, f64)> = samples
            .into_iter()
            .filter(|&(d, t)| d >= 2 && t > 0.0)
            .map(|(d, t)| ((d as f64).ln(), t.ln()))
            .collect();
        let n = pts.len() as f64;
        if pts.len() < 2 {
            return None;
        }
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx == 0.0 {
            return None;
        }
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let k = sxy / sxx;
        Some(Self {
            coefficient: (my - k * mx).exp(),
            exponent: k,
            samples: pts.len(),
        })
    }

    pub fn predict(&self, d: u32) -> f64 {
        self.coefficient * (d as f64).powf(self.exponent)
    }

    /// Predicted total seconds for all determinants in `from..=to`.
    pub fn total(&self, from: u32, to: u32) -> f64 {
        (from..=to).map(|d| self.predict(d)).sum()
    }
}

/// Cross-check helper: is every class of `classes` empty, primitive and canonical?
pub fn classes_well_formed(classes: &BTreeSet<CanonicalTuple>) -> bool {
    classes.iter().all(|c| {
        c.is_primitive() && is_empty(c) && c.canonical_form().is_ok_and(|k| &k == c)
    })
}
