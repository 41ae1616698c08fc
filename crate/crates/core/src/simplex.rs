//! Geometry of a residue tuple: vertex form, lattice points, width and facets.
//!
//! For a tuple `u` of determinant `D`, the non-vertex lattice points of the
//! simplex correspond to the multiples `k*u` (`1 <= k < D`) whose least
//! nonnegative representative has entry sum exactly `D`. A nonconstant
//! integer affine functional taking values `λ_i` on the vertices exists iff
//! `Σ λ_i u_i ≡ 0 (mod D)`, which turns lattice width into a finite search.

use std::fmt;

use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};
use crate::torus::{Determinant, Entries, ResidueTuple};

/// Width cap used by the pipeline; wider tuples are reported as exceeding it.
pub const DEFAULT_WIDTH_CAP: u32 = 5;

/// The simplex `conv(e1, e2, e3, e4, v)` in `R^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VRepSimplex {
    v: [i64; 4],
}

impl VRepSimplex {
    pub fn new(v: [i64; 4]) -> Result<Self> {
        let d = v.iter().sum::<i64>() - 1;
        Determinant::new(d)?;
        Ok(Self { v })
    }

    pub fn v(&self) -> [i64; 4] {
        self.v
    }

    pub fn determinant(&self) -> Determinant {
        Determinant::new(self.v.iter().sum::<i64>() - 1).expect("checked on construction")
    }

    /// The five vertices, in tuple slot order: `v` first, then `e1..e4`.
    pub fn vertices(&self) -> [[i64; 4]; 5] {
        let mut out = [[0i64; 4]; 5];
        out[0] = self.v;
        for j in 0..4 {
            out[j + 1][j] = 1;
        }
        out
    }

    /// The generator tuple `(-1, v1, v2, v3, v4)` mod `D`.
    pub fn tuple(&self) -> ResidueTuple {
        let [a, b, c, d] = self.v;
        ResidueTuple::new(self.determinant(), &[-1, a, b, c, d])
            .expect("sum is D, which is 0 mod D")
    }

    /// A simplex in vertex form equivalent to `u`.
    ///
    /// The smallest-index unit entry is scaled to `-1` and moved to slot 0.
    /// The first three remaining entries are kept as least residues and the
    /// last is chosen so that `Σ v_i = D + 1`.
    pub fn from_tuple(u: &ResidueTuple) -> Result<Self> {
        if u.arity() != 5 {
            return Err(Error::WrongArity {
                expected: 5,
                got: u.arity(),
            });
        }
        let d = u.modulus();
        if d == 1 {
            return Self::new([0, 0, 0, 2]);
        }
        let e = u.entries();
        let (slot, inv) = e
            .iter()
            .enumerate()
            .find_map(|(i, &x)| mod_inverse(x as u64, d as u64).map(|inv| (i, inv)))
            .ok_or_else(|| Error::NoUnimodularFacet(u.to_string()))?;
        let c = (d as u64 - inv) as u32;
        let scaled = u.scale(c);
        let rest: Vec<i64> = (0..5)
            .filter(|&i| i != slot)
            .map(|i| scaled.entries()[i] as i64)
            .collect();
        let v4 = d as i64 + 1 - rest[0] - rest[1] - rest[2];
        Self::new([rest[0], rest[1], rest[2], v4])
    }
}

impl fmt::Display for VRepSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.v;
        write!(f, "Δ({a}, {b}, {c}, {d})")
    }
}

/// First `k` in `1..D` whose representative of `k*u` has entry sum `D`.
fn first_interior_array<const N: usize>(d: u32, u: [u32; N]) -> Option<u32> {
    let mut rep = u;
    for k in 1..d {
        if k > 1 {
            for (r, &x) in rep.iter_mut().zip(&u) {
                let s = *r + x;
                *r = if s >= d { s - d } else { s };
            }
        }
        if rep.iter().sum::<u32>() == d {
            return Some(k);
        }
    }
    None
}

fn first_interior_slice(d: u32, u: &[u32]) -> Option<u32> {
    let mut rep: Entries = u.iter().copied().collect();
    for k in 1..d {
        if k > 1 {
            for (r, &x) in rep.iter_mut().zip(u) {
                let s = *r + x;
                *r = if s >= d { s - d } else { s };
            }
        }
        if rep.iter().sum::<u32>() == d {
            return Some(k);
        }
    }
    None
}

/// Emptiness scan on raw reduced entries; returns the first lattice-point class if any.
pub fn first_interior_class(d: u32, entries: &[u32]) -> Option<u32> {
    match entries.len() {
        4 => first_interior_array::<4>(d, entries.try_into().unwrap()),
        5 => first_interior_array::<5>(d, entries.try_into().unwrap()),
        _ => first_interior_slice(d, entries),
    }
}

/// All `k` in `1..D` for which `k*u` represents a non-vertex lattice point.
pub fn lattice_classes_in_simplex(u: &ResidueTuple) -> Vec<u32> {
    let d = u.modulus() as u64;
    (1..u.modulus())
        .filter(|&k| {
            u.entries()
                .iter()
                .map(|&x| (k as u64 * x as u64) % d)
                .sum::<u64>()
                == d
        })
        .collect()
}

pub fn is_empty(u: &ResidueTuple) -> bool {
    first_interior_class(u.modulus(), u.entries()).is_none()
}

/// Emptiness scan over `k <= D/2` only, using that the entry sums of the
/// representatives of `k*u` and `(D-k)*u` add up to `z*D`, with `z` the
/// number of nonzero entries.
pub fn is_empty_half(u: &ResidueTuple) -> bool {
    let d = u.modulus();
    let e = u.entries();
    let mut rep: Entries = e.iter().copied().collect();
    for k in 1..=d / 2 {
        if k > 1 {
            for (r, &x) in rep.iter_mut().zip(e) {
                let s = *r + x;
                *r = if s >= d { s - d } else { s };
            }
        }
        let sum: u32 = rep.iter().sum();
        let nonzero = rep.iter().filter(|&&x| x != 0).count() as u32;
        if sum == d || nonzero * d - sum == d {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthResult {
    Exact { width: u32, certificate: Entries },
    ExceedsCap { cap: u32 },
}

impl WidthResult {
    pub fn width(&self) -> Option<u32> {
        match self {
            WidthResult::Exact { width, .. } => Some(*width),
            WidthResult::ExceedsCap { .. } => None,
        }
    }

    /// True iff the width is known to be at least `threshold`.
    pub fn at_least(&self, threshold: u32) -> bool {
        match self {
            WidthResult::Exact { width, .. } => *width >= threshold,
            WidthResult::ExceedsCap { cap } => cap + 1 >= threshold,
        }
    }
}

impl fmt::Display for WidthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WidthResult::Exact { width, .. } => write!(f, "{width}"),
            WidthResult::ExceedsCap { cap } => write!(f, ">{cap}"),
        }
    }
}

/// Lattice width of the simplex of `u`, searched up to `cap`.
///
/// For each `k = 1..=cap` the coefficient vectors in `{0..k}^(d+1)` with
/// minimum 0 and maximum `k` are scanned in lexicographic order; the first
/// solution of `Σ λ_i u_i ≡ 0 (mod D)` is returned as the certificate.
pub fn width(u: &ResidueTuple, cap: u32) -> WidthResult {
    let d = u.modulus() as u64;
    let e = u.entries();
    let n = e.len();
    for k in 1..=cap {
        let mut lambda: Entries = std::iter::repeat_n(0, n).collect();
        loop {
            let max = *lambda.iter().max().unwrap();
            let min = *lambda.iter().min().unwrap();
            if max == k && min == 0 {
                let s: u64 = lambda
                    .iter()
                    .zip(e)
                    .map(|(&l, &x)| l as u64 * x as u64)
                    .sum();
                if s.is_multiple_of(d) {
                    return WidthResult::Exact {
                        width: k,
                        certificate: lambda,
                    };
                }
            }
            // odometer, last slot fastest
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if lambda[i] < k {
                    lambda[i] += 1;
                    break;
                }
                lambda[i] = 0;
            }
            if lambda.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    WidthResult::ExceedsCap { cap }
}

/// Checks that `lambda` is a valid width certificate for `u`; returns the width.
pub fn check_certificate(u: &ResidueTuple, lambda: &[u32]) -> Result<u32> {
    if lambda.len() != u.arity() {
        return Err(Error::BadCertificate(format!(
            "length {} for a tuple of length {}",
            lambda.len(),
            u.arity()
        )));
    }
    let min = lambda.iter().copied().min().unwrap_or(0);
    let max = lambda.iter().copied().max().unwrap_or(0);
    if min != 0 || max == 0 {
        return Err(Error::BadCertificate(format!(
            "{lambda:?} is not normalized to min 0 and nonconstant"
        )));
    }
    let d = u.modulus() as u64;
    let s: u64 = lambda
        .iter()
        .zip(u.entries())
        .map(|(&l, &x)| l as u64 * x as u64)
        .sum();
    if !s.is_multiple_of(d) {
        return Err(Error::BadCertificate(format!(
            "{lambda:?} fails the congruence for {u}"
        )));
    }
    Ok(max)
}

/// Normalized volumes `gcd(u_i, D)` of the facets, indexed by opposite vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetVolumes(pub Entries);

impl FacetVolumes {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn unimodular_count(&self) -> usize {
        self.0.iter().filter(|&&x| x == 1).count()
    }

    pub fn pairwise_coprime(&self) -> bool {
        let v = &self.0;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| gcd(v[i], v[j]) == 1))
    }
}

impl fmt::Display for FacetVolumes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

pub fn facet_volumes(u: &ResidueTuple) -> FacetVolumes {
    let d = u.modulus();
    FacetVolumes(u.entries().iter().map(|&x| gcd(x, d)).collect())
}

/// An integer affine functional `x ↦ c·x + c0` on `Z^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineFunctional {
    pub coeffs: [i64; 4],
    pub constant: i64,
}

impl AffineFunctional {
    pub fn eval(&self, x: &[i64; 4]) -> i64 {
        self.coeffs.iter().zip(x).map(|(c, x)| c * x).sum::<i64>() + self.constant
    }

    /// `max - min` over the vertices of `s`.
    pub fn width_on(&self, s: &VRepSimplex) -> i64 {
        let vals = s.vertices().map(|x| self.eval(&x));
        vals.iter().max().unwrap() - vals.iter().min().unwrap()
    }
}

/// The functional taking value `lambda[0]` at `v` and `lambda[j]` at `e_j`.
///
/// Writing `f(x) = c·x + c0`, the conditions give `c_j = λ_j - c0` and
/// `D*c0 = Σ λ_j v_j - λ_0`, which is integral exactly when the certificate
/// congruence holds.
pub fn functional_from_certificate(s: &VRepSimplex, lambda: &[u32]) -> Result<AffineFunctional> {
    let w = check_certificate(&s.tuple(), lambda)?;
    let d = s.determinant().get() as i64;
    let v = s.v();
    let l: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    let num = (0..4).map(|j| l[j + 1] * v[j]).sum::<i64>() - l[0];
    if num % d != 0 {
        return Err(Error::BadCertificate(format!(
            "non-integral functional for {s} from {lambda:?}"
        )));
    }
    let c0 = num / d;
    let f = AffineFunctional {
        coeffs: [l[1] - c0, l[2] - c0, l[3] - c0, l[4] - c0],
        constant: c0,
    };
    let verts = s.vertices();
    for (i, x) in verts.iter().enumerate() {
        if f.eval(x) != l[i] {
            return Err(Error::BadCertificate(format!(
                "functional misses vertex {i} of {s}"
            )));
        }
    }
    if f.width_on(s) != w as i64 {
        return Err(Error::BadCertificate(format!(
            "functional width {} differs from certified {w}",
            f.width_on(s)
        )));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: i64, raw: &[i64]) -> ResidueTuple {
        ResidueTuple::new(Determinant::new(d).unwrap(), raw).unwrap()
    }

    fn vs(v: [i64; 4]) -> VRepSimplex {
        VRepSimplex::new(v).unwrap()
    }

    #[test]
    fn tuple_of_vrep_examples() {
        assert_eq!(vs([6, 14, 17, 65]).tuple(), t(101, &[100, 6, 14, 17, 65]));
        assert_eq!(vs([4, 23, 25, -10]).tuple(), t(41, &[40, 4, 23, 25, 31]));
        assert_eq!(vs([1, 1, 1, 1]).tuple(), t(3, &[2, 1, 1, 1, 1]));
        assert!(VRepSimplex::new([0, 0, 0, 1]).is_err());
        assert!(VRepSimplex::new([-3, 0, 0, 1]).is_err());
    }

    #[test]
    fn vrep_of_tuple_examples() {
        let s = VRepSimplex::from_tuple(&t(101, &[100, 6, 14, 17, 65])).unwrap();
        assert_eq!(s.v(), [6, 14, 17, 65]);
        // all entries units: scale by -1 -> (4,4,4,4,4); last coordinate fixes D
        let s = VRepSimplex::from_tuple(&t(5, &[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(s.v(), [4, 4, 4, -6]);
        assert_eq!(s.determinant().get(), 5);
        let s = VRepSimplex::from_tuple(&t(1, &[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(s.determinant().get(), 1);
        // 6 = 2*3, entries (2,3,3,4,0): gcd 2,3,3,2,6, no unit
        assert!(matches!(
            VRepSimplex::from_tuple(&t(6, &[2, 3, 3, 4, 0])),
            Err(Error::NoUnimodularFacet(_))
        ));
        assert!(VRepSimplex::from_tuple(&t(5, &[1, 1, 1, 2])).is_err());
    }

    #[test]
    fn lattice_classes() {
        assert!(lattice_classes_in_simplex(&t(2, &[1, 1, 1, 1])).is_empty());
        assert_eq!(lattice_classes_in_simplex(&t(2, &[1, 1, 0, 0, 0])), vec![1]);
        assert!(lattice_classes_in_simplex(&t(1, &[0, 0, 0, 0, 0])).is_empty());
    }

    #[test]
    fn emptiness_examples() {
        assert!(is_empty(&t(101, &[100, 6, 14, 17, 65])));
        assert!(is_empty(&t(41, &[40, 4, 23, 25, 31])));
        assert!(!is_empty(&t(2, &[1, 1, 0, 0, 0])));
        assert!(is_empty(&t(1, &[0, 0, 0, 0, 0])));
        // six entries goes through the slice path
        assert!(!is_empty(&t(2, &[1, 1, 0, 0, 0, 0])));
    }

    #[test]
    fn half_loop_agrees_on_small_determinants() {
        for d in 1..=23i64 {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let u = t(d, &[-1, a, b, c, 1 - a - b - c]);
                        assert_eq!(is_empty(&u), is_empty_half(&u), "{u}");
                    }
                }
            }
        }
    }

    #[test]
    fn width_examples() {
        let w = width(&t(101, &[100, 6, 14, 17, 65]), DEFAULT_WIDTH_CAP);
        assert_eq!(w.width(), Some(4));
        let w = width(&t(41, &[40, 4, 23, 25, 31]), DEFAULT_WIDTH_CAP);
        assert_eq!(w.width(), Some(3));
        let u = t(9, &[1, 8, 0, 0, 0]);
        match width(&u, DEFAULT_WIDTH_CAP) {
            WidthResult::Exact { width, certificate } => {
                assert_eq!(width, 1);
                assert_eq!(check_certificate(&u, &certificate).unwrap(), 1);
            }
            other => panic!("{other:?}"),
        }
        let capped = width(&t(101, &[100, 6, 14, 17, 65]), 3);
        assert_eq!(capped, WidthResult::ExceedsCap { cap: 3 });
        assert_eq!(capped.to_string(), ">3");
        assert!(capped.at_least(4));
    }

    #[test]
    fn certificates_rejected() {
        let u = t(101, &[100, 6, 14, 17, 65]);
        assert!(check_certificate(&u, &[1, 1, 1, 1, 1]).is_err());
        assert!(check_certificate(&u, &[1, 0, 0, 0, 0]).is_err());
        assert!(check_certificate(&u, &[0, 0]).is_err());
    }

    #[test]
    fn facet_examples() {
        let f = facet_volumes(&t(179, &[178, 3, 5, 79, 93]));
        assert_eq!(f.as_slice(), &[1, 1, 1, 1, 1]);
        let u = t(6, &[5, 1, 2, 4, 0]);
        let f = facet_volumes(&u);
        assert_eq!(f.as_slice(), &[1, 1, 2, 2, 6]);
        assert!(!f.pairwise_coprime());
        assert!(!is_empty(&u));
        assert_eq!(f.to_string(), "1,1,2,2,6");
        assert_eq!(
            facet_volumes(&t(1, &[0, 0, 0, 0, 0])).as_slice(),
            &[1, 1, 1, 1, 1]
        );
    }

    #[test]
    fn functional_width_one() {
        // v = (0, 2, 0, 0): D = 1 would be too small, use D = 2 tuple (1,0,2,0,0)
        let s = vs([1, 2, 0, 0]);
        let u = s.tuple();
        assert_eq!(u.entries(), &[1, 1, 0, 0, 0]);
        let f = functional_from_certificate(&s, &[1, 1, 0, 0, 0]).unwrap();
        assert_eq!(f.width_on(&s), 1);
        assert!(functional_from_certificate(&s, &[1, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn functional_width_four() {
        let s = vs([6, 14, 17, 65]);
        let WidthResult::Exact { width, certificate } = width(&s.tuple(), 5) else {
            panic!("capped");
        };
        assert_eq!(width, 4);
        let f = functional_from_certificate(&s, &certificate).unwrap();
        let mut vals: Vec<i64> = s.vertices().iter().map(|x| f.eval(x)).collect();
        vals.sort();
        assert_eq!(vals[0], 0);
        assert_eq!(vals[4], 4);
    }
}
