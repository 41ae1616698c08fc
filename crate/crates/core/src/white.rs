//! Empty tetrahedra `T(p, q) = conv{0, e1, e3, (p, q, 1)}` as a check on the
//! dimension-general torus machinery.
//!
//! Every empty lattice 3-simplex is equivalent to some `T(p, q)` with
//! `gcd(p, q) = 1`, and `T(p, q) ≅ T(p', q)` iff `p' ≡ ±p^{±1} (mod q)`. The
//! lattice point `(0, 1, 0)` generates `Z^3 / Λ(T(p, q))`; its scaled
//! barycentric coordinates are `(q + p, -p, -1, 1)`.

use std::collections::BTreeSet;

use crate::arith::{gcd, mod_inverse, units};
use crate::error::{Error, Result};
use crate::simplex::{is_empty, width, WidthResult};
use crate::torus::{CanonicalTuple, Determinant, ResidueTuple};

/// Generator quadruple `(p, q - p, q - 1, 1)` mod `q` of `T(p, q)`.
pub fn white_tuple(p: i64, q: u32) -> Result<ResidueTuple> {
    let d = Determinant::new(q as i64)?;
    if gcd(p.unsigned_abs(), q as u64) != 1 {
        return Err(Error::NotCoprimeParams { p, q });
    }
    let q = q as i64;
    ResidueTuple::new(d, &[q + p, -p, -1, 1])
}

/// Representatives `p` in `0..q` coprime to `q` (just `0` when `q = 1`).
fn params(q: u32) -> Vec<u32> {
    units(q)
}

pub fn white_classes(q: u32) -> Result<BTreeSet<CanonicalTuple>> {
    params(q)
        .into_iter()
        .map(|p| white_tuple(p as i64, q)?.canonical_form())
        .collect()
}

/// Number of orbits of the units mod `q` under `p ↦ -p` and `p ↦ p^{-1}`.
pub fn white_orbit_count(q: u32) -> usize {
    let ps = params(q);
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &p in &ps {
        if !seen.insert(p) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![p];
        while let Some(x) = stack.pop() {
            let neg = (q - x) % q.max(1);
            let inv = mod_inverse(x as u64, q as u64).unwrap() as u32;
            for y in [neg, inv] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteCheck {
    pub q: u32,
    pub all_empty: bool,
    pub all_width_one: bool,
    pub classes: usize,
    pub orbits: usize,
}

impl WhiteCheck {
    pub fn passed(&self) -> bool {
        self.all_empty && self.all_width_one && self.classes == self.orbits
    }
}

pub fn crosscheck_white(q: u32) -> Result<WhiteCheck> {
    let mut all_empty = true;
    let mut all_width_one = true;
    for p in params(q) {
        let u = white_tuple(p as i64, q)?;
        all_empty &= is_empty(&u);
        all_width_one &= matches!(width(&u, 2), WidthResult::Exact { width: 1, .. });
    }
    Ok(WhiteCheck {
        q,
        all_empty,
        all_width_one,
        classes: white_classes(q)?.len(),
        orbits: white_orbit_count(q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    /// Solves `(0,1,0) = Σ x_i A_i`, `Σ x_i = 1` for the vertices of `T(p, q)`
    /// by Cramer's rule over the rationals and returns `q * x`.
    fn barycentric_generator(p: i64, q: i64) -> Vec<i64> {
        let verts = [[0, 0, 0], [1, 0, 0], [0, 0, 1], [p, q, 1]];
        let mut m = [[Ratio::from_integer(0i64); 4]; 4];
        for (j, v) in verts.iter().enumerate() {
            m[0][j] = Ratio::from_integer(1);
            for k in 0..3 {
                m[k + 1][j] = Ratio::from_integer(v[k]);
            }
        }
        let rhs = [1, 0, 1, 0].map(Ratio::from_integer);
        let det = |a: &[[Ratio<i64>; 4]; 4]| -> Ratio<i64> {
            // Laplace expansion via permutations
            let mut total = Ratio::from_integer(0);
            for perm in crate::torus::permutations(4) {
                let mut inv = 0;
                for i in 0..4 {
                    for j in i + 1..4 {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let mut prod = Ratio::from_integer(if inv % 2 == 0 { 1 } else { -1 });
                for i in 0..4 {
                    prod *= a[i][perm[i]];
                }
                total += prod;
            }
            total
        };
        let d = det(&m);
        (0..4)
            .map(|j| {
                let mut mj = m;
                for i in 0..4 {
                    mj[i][j] = rhs[i];
                }
                let x = det(&mj) / d * Ratio::from_integer(q);
                assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }

    #[test]
    fn closed_form_matches_barycentric_solve() {
        for q in 1..=30u32 {
            for p in params(q) {
                let raw = barycentric_generator(p as i64, q as i64);
                let solved = ResidueTuple::new(Determinant::new(q as i64).unwrap(), &raw).unwrap();
                assert_eq!(solved, white_tuple(p as i64, q).unwrap(), "T({p},{q})");
            }
        }
    }

    #[test]
    fn tuple_examples() {
        assert_eq!(white_tuple(1, 2).unwrap().entries(), &[1, 1, 1, 1]);
        assert_eq!(white_tuple(1, 1).unwrap().entries(), &[0, 0, 0, 0]);
        assert_eq!(white_tuple(2, 5).unwrap().entries(), &[2, 3, 4, 1]);
        assert!(matches!(
            white_tuple(2, 4),
            Err(Error::NotCoprimeParams { p: 2, q: 4 })
        ));
    }

    #[test]
    fn class_counts() {
        assert_eq!(white_classes(2).unwrap().len(), 1);
        // units of 7: {1,6} and {2,3,4,5}
        assert_eq!(white_orbit_count(7), 2);
        assert_eq!(white_classes(7).unwrap().len(), 2);
        // units of 5: {1,4} and {2,3}
        assert_eq!(white_orbit_count(5), 2);
        assert_eq!(white_classes(5).unwrap().len(), 2);
    }

    #[test]
    fn every_k_multiple_sums_to_2q() {
        for q in 2..=40u32 {
            for p in params(q) {
                let u = white_tuple(p as i64, q).unwrap();
                for k in 1..q {
                    let s: u32 = u.entries().iter().map(|&x| x * k % q).sum();
                    assert_eq!(s, 2 * q);
                }
            }
        }
    }

    #[test]
    fn equivalence_respects_white() {
        for q in [7u32, 11, 12, 25] {
            for p in params(q) {
                let base = white_tuple(p as i64, q).unwrap();
                let inv = mod_inverse(p as u64, q as u64).unwrap() as i64;
                for other in [q as i64 - p as i64, inv, q as i64 - inv] {
                    assert!(base.equivalent(&white_tuple(other, q).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn crosscheck_small() {
        assert!(crosscheck_white(1).unwrap().passed());
        assert!(crosscheck_white(2).unwrap().passed());
    }
}
