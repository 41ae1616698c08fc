//! Residue tuples on the discrete torus `T_D^d`.
//!
//! A cyclic lattice `d`-simplex of determinant `D` is described by the
//! barycentric coordinates of a generator of `Z^d / Λ`, scaled by `D`: a
//! tuple `(u_0, ..., u_d)` of residues mod `D` summing to zero. Two tuples
//! describe equivalent simplices exactly when one can be turned into the
//! other by permuting entries and multiplying by a unit of `Z/D`.
//!
//! Canonical representatives are the lexicographically smallest
//! ascending-sorted unit multiple, so the text rendering
//! (`D:u0 u1 ... ud`) can be used as a store key.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use arrayvec::ArrayVec;

use crate::arith::{gcd, reduce, units};
use crate::error::{Error, Result};

/// Largest supported tuple length (ambient dimension + 1).
pub const MAX_ARITY: usize = 8;

pub type Entries = ArrayVec<u32, MAX_ARITY>;

/// Normalized volume of a simplex, equivalently the order of the quotient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Determinant(u32);

impl Determinant {
    pub fn new(value: i64) -> Result<Self> {
        if value < 1 || value > u32::MAX as i64 {
            return Err(Error::InvalidDeterminant(value));
        }
        Ok(Self(value as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Determinant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `T_D^d`: `d + 1` least nonnegative residues mod `D` with zero sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueTuple {
    modulus: u32,
    entries: Entries,
}

impl ResidueTuple {
    /// Reduces `raw` mod `modulus` and checks the zero-sum condition.
    pub fn new(modulus: Determinant, raw: &[i64]) -> Result<Self> {
        if raw.is_empty() || raw.len() > MAX_ARITY {
            return Err(Error::BadArity {
                got: raw.len(),
                max: MAX_ARITY,
            });
        }
        let m = modulus.get();
        let entries: Entries = raw.iter().map(|&x| reduce(x, m)).collect();
        let sum: u64 = entries.iter().map(|&x| x as u64).sum();
        if !sum.is_multiple_of(m as u64) {
            return Err(Error::NonZeroSum {
                modulus: m,
                sum: sum as i64,
            });
        }
        Ok(Self {
            modulus: m,
            entries,
        })
    }

    /// Builds a tuple from entries already known to be reduced with zero sum.
    pub(crate) fn from_reduced(modulus: u32, entries: Entries) -> Self {
        debug_assert!(entries.iter().all(|&x| x < modulus));
        debug_assert_eq!(
            entries.iter().map(|&x| x as u64).sum::<u64>() % modulus as u64,
            0
        );
        Self { modulus, entries }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn determinant(&self) -> Determinant {
        Determinant(self.modulus)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    /// True iff the tuple generates a cyclic subgroup of full order `D`.
    pub fn is_primitive(&self) -> bool {
        self.entries
            .iter()
            .fold(self.modulus, |g, &x| gcd(g, x))
            == 1
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive(self.to_string()))
        }
    }

    /// `c * self`, reduced.
    pub fn scale(&self, c: u32) -> Self {
        let m = self.modulus as u64;
        let entries = self
            .entries
            .iter()
            .map(|&x| ((x as u64 * c as u64) % m) as u32)
            .collect();
        Self::from_reduced(self.modulus, entries)
    }

    /// Entries rearranged so that slot `i` of the result holds `self[perm[i]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity());
        let entries = perm.iter().map(|&i| self.entries[i]).collect();
        Self::from_reduced(self.modulus, entries)
    }

    pub fn canonical_form(&self) -> Result<CanonicalTuple> {
        self.require_primitive()?;
        Ok(self.canonical_with(&units(self.modulus)))
    }

    /// Canonical form using a precomputed list of units mod `D`.
    ///
    /// The caller guarantees primitivity and that `units` is exactly the unit group.
    pub fn canonical_with(&self, units: &[u32]) -> CanonicalTuple {
        CanonicalTuple(Self::from_reduced(
            self.modulus,
            canonical_entries(self.modulus, &self.entries, units),
        ))
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// All tuples obtained by permuting entries of unit multiples.
    pub fn orbit(&self) -> HashSet<ResidueTuple> {
        let perms = permutations(self.arity());
        let mut out = HashSet::new();
        for c in units(self.modulus) {
            let scaled = self.scale(c);
            for p in &perms {
                out.insert(scaled.permute(p));
            }
        }
        out
    }

    /// Reduction modulo a divisor `a` of `D`.
    pub fn relax(&self, a: Determinant) -> Result<Self> {
        let a = a.get();
        if !self.modulus.is_multiple_of(a) {
            return Err(Error::NotADivisor {
                divisor: a,
                modulus: self.modulus,
            });
        }
        let entries = self.entries.iter().map(|&x| x % a).collect();
        Ok(Self::from_reduced(a, entries))
    }

    /// Glues `ta` (mod `a`) and `tb` (mod `b`) to the tuple `b*ta + a*tb` mod `ab`.
    pub fn crt_combine(ta: &Self, tb: &Self) -> Result<Self> {
        let (a, b) = (ta.modulus, tb.modulus);
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime(a, b));
        }
        if ta.arity() != tb.arity() {
            return Err(Error::ArityMismatch(ta.arity(), tb.arity()));
        }
        ta.require_primitive()?;
        tb.require_primitive()?;
        Ok(crt_unchecked(ta, tb))
    }
}

/// `b*ta + a*tb mod ab` with no validation.
pub(crate) fn crt_unchecked(ta: &ResidueTuple, tb: &ResidueTuple) -> ResidueTuple {
    let (a, b) = (ta.modulus as u64, tb.modulus as u64);
    let m = a * b;
    let entries = ta
        .entries
        .iter()
        .zip(&tb.entries)
        .map(|(&x, &y)| ((b * x as u64 + a * y as u64) % m) as u32)
        .collect();
    ResidueTuple::from_reduced(m as u32, entries)
}

/// Lex-min over `units` of the ascending-sorted `c * entries`.
pub(crate) fn canonical_entries(modulus: u32, entries: &[u32], units: &[u32]) -> Entries {
    let m = modulus as u64;
    let mut best: Option<Entries> = None;
    let mut cur = Entries::new();
    for &c in units {
        cur.clear();
        cur.extend(entries.iter().map(|&x| ((x as u64 * c as u64) % m) as u32));
        cur.sort_unstable();
        match &best {
            Some(b) if b.as_slice() <= cur.as_slice() => {}
            _ => best = Some(cur.clone()),
        }
    }
    best.expect("unit group is never empty")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl fmt::Display for ResidueTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.modulus)?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for ResidueTuple {
    type Err = Error;

    /// Parses `D:u0 u1 ...`; entries may be negative or unreduced.
    fn from_str(s: &str) -> Result<Self> {
        let (d, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        let raw = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ResidueTuple::new(Determinant::new(d)?, &raw)
    }
}

/// A tuple that is its own canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalTuple(ResidueTuple);

impl CanonicalTuple {
    pub fn as_tuple(&self) -> &ResidueTuple {
        &self.0
    }

    pub fn into_tuple(self) -> ResidueTuple {
        self.0
    }
}

impl Deref for CanonicalTuple {
    type Target = ResidueTuple;

    fn deref(&self) -> &ResidueTuple {
        &self.0
    }
}

impl fmt::Display for CanonicalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CanonicalTuple {
    type Err = Error;

    /// Parses a rendering and canonicalizes it.
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<ResidueTuple>()?.canonical_form()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: i64, raw: &[i64]) -> ResidueTuple {
        ResidueTuple::new(Determinant::new(d).unwrap(), raw).unwrap()
    }

    #[test]
    fn make_tuple_reduces() {
        assert_eq!(t(101, &[-1, 6, 14, 17, 65]).entries(), &[100, 6, 14, 17, 65]);
        assert_eq!(t(1, &[0, 0, 0, 0, 0]).entries(), &[0, 0, 0, 0, 0]);
        assert_eq!(t(7, &[-1, 2, 2, 2, 2]).entries(), &[6, 2, 2, 2, 2]);
    }

    #[test]
    fn make_tuple_rejects() {
        let d = Determinant::new(7).unwrap();
        assert!(matches!(
            ResidueTuple::new(d, &[1, 2, 2, 2, 2]),
            Err(Error::NonZeroSum { .. })
        ));
        assert!(matches!(
            ResidueTuple::new(d, &[]),
            Err(Error::BadArity { .. })
        ));
        assert!(ResidueTuple::new(d, &[0; 9]).is_err());
        assert!(Determinant::new(0).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(!t(6, &[2, 4, 0, 0, 0]).is_primitive());
        assert!(t(101, &[100, 6, 14, 17, 65]).is_primitive());
        assert!(t(1, &[0, 0, 0, 0, 0]).is_primitive());
    }

    #[test]
    fn canonical_small_example() {
        // brute force over the four units of Z/5, see the table in the module tests
        let c = t(5, &[4, 3, 1, 1, 1]).canonical_form().unwrap();
        assert_eq!(c.entries(), &[1, 1, 1, 3, 4]);
        let z = t(1, &[0, 0, 0, 0, 0]).canonical_form().unwrap();
        assert_eq!(z.entries(), &[0, 0, 0, 0, 0]);
        assert!(t(6, &[2, 4, 0, 0, 0]).canonical_form().is_err());
    }

    #[test]
    fn canonical_brute_force_units_of_5() {
        let base = [4u32, 3, 1, 1, 1];
        let mut all: Vec<Vec<u32>> = (1..5u32)
            .map(|c| {
                let mut v: Vec<u32> = base.iter().map(|&x| x * c % 5).collect();
                v.sort();
                v
            })
            .collect();
        all.sort();
        assert_eq!(
            all,
            vec![
                vec![1, 1, 1, 3, 4],
                vec![1, 2, 2, 2, 3],
                vec![1, 2, 4, 4, 4],
                vec![2, 3, 3, 3, 4]
            ]
        );
    }

    #[test]
    fn equivalence() {
        let a = t(101, &[100, 6, 14, 17, 65]);
        assert!(a.equivalent(&a.permute(&[3, 1, 4, 0, 2])).unwrap());
        assert!(a.equivalent(&a.scale(2)).unwrap());
        let b = t(102, &[101, 6, 14, 17, 66]);
        assert!(matches!(a.equivalent(&b), Err(Error::ModulusMismatch(..))));
    }

    #[test]
    fn orbit_basics() {
        let o = t(2, &[1, 1, 1, 1, 0]).orbit();
        assert_eq!(o.len(), 5);
        let a = t(101, &[100, 6, 14, 17, 65]);
        let o = a.orbit();
        assert!(o.contains(&a));
        assert_eq!((120 * 100) % o.len(), 0);
    }

    #[test]
    fn relaxation() {
        let u = t(6, &[5, 1, 2, 4, 0]);
        let two = Determinant::new(2).unwrap();
        assert_eq!(u.relax(two).unwrap().entries(), &[1, 1, 0, 0, 0]);
        assert_eq!(u.relax(Determinant::new(6).unwrap()).unwrap(), u);
        assert!(u.relax(Determinant::new(4).unwrap()).is_err());
        let w = t(12, &[11, 1, 2, 4, 6]);
        let six = Determinant::new(6).unwrap();
        assert_eq!(
            w.relax(six).unwrap().relax(two).unwrap(),
            w.relax(two).unwrap()
        );
    }

    #[test]
    fn crt_example() {
        let ta = t(2, &[1, 1, 1, 1, 0]);
        let tb = t(3, &[2, 1, 1, 1, 1]);
        let c = ResidueTuple::crt_combine(&ta, &tb).unwrap();
        assert_eq!(c.to_string(), "6:1 5 5 5 2");
        assert!(c.is_primitive());
        // relax to a gives b * ta
        assert_eq!(c.relax(Determinant::new(2).unwrap()).unwrap(), ta.scale(3));
        let td = t(4, &[1, 1, 1, 1, 0]);
        assert!(matches!(
            ResidueTuple::crt_combine(&ta, &td),
            Err(Error::NotCoprime(2, 4))
        ));
    }

    #[test]
    fn rendering_round_trip() {
        let a = t(101, &[100, 6, 14, 17, 65]);
        assert_eq!(a.to_string(), "101:100 6 14 17 65");
        assert_eq!("101:-1 6 14 17 65".parse::<ResidueTuple>().unwrap(), a);
        assert!("101 100 6".parse::<ResidueTuple>().is_err());
        let c = a.canonical_form().unwrap();
        assert_eq!(c.to_string().parse::<CanonicalTuple>().unwrap(), c);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(permutations(1).len(), 1);
    }
}
