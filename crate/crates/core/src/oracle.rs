//! Brute-force geometry on explicit coordinates.
//!
//! Nothing here uses residue tuples: lattice points are found by scanning
//! the bounding box and testing exact barycentric coordinates, widths by
//! scanning integer functionals, facet volumes from integer minors. The
//! functions are slow and meant to check the congruence machinery on small
//! instances.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::simplex::VRepSimplex;

pub type LatticePoint = [i64; 4];

type Q = Ratio<i128>;

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert(mut m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| Q::from_integer((i == j) as i128)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != Q::from_integer(0))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                for j in 0..n {
                    let a = m[col][j];
                    let b = inv[col][j];
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    Some(inv)
}

/// `D` times the inverse of the homogeneous vertex matrix: maps `(1, z)` to
/// `D` times the barycentric coordinates of `z`.
struct Barycentric {
    d: i64,
    scaled_inverse: [[i64; 5]; 5],
}

impl Barycentric {
    fn new(s: &VRepSimplex) -> Result<Self> {
        let verts = s.vertices();
        // column j is (1, vertex_j)
        let m: Vec<Vec<Q>> = (0..5)
            .map(|row| {
                (0..5)
                    .map(|j| {
                        if row == 0 {
                            Q::from_integer(1)
                        } else {
                            Q::from_integer(verts[j][row - 1] as i128)
                        }
                    })
                    .collect()
            })
            .collect();
        let d = s.determinant().get() as i64;
        let inv = invert(m).ok_or(Error::InvalidDeterminant(0))?;
        let mut scaled_inverse = [[0i64; 5]; 5];
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let y = *x * Q::from_integer(d as i128);
                assert!(y.is_integer(), "D * M^-1 must be integral");
                scaled_inverse[i][j] = y.to_integer() as i64;
            }
        }
        Ok(Self { d, scaled_inverse })
    }

    fn coords(&self, z: &LatticePoint) -> [i64; 5] {
        let h = [1, z[0], z[1], z[2], z[3]];
        self.scaled_inverse
            .map(|row| row.iter().zip(&h).map(|(a, b)| a * b).sum())
    }

    fn contains(&self, z: &LatticePoint) -> bool {
        self.coords(z).iter().all(|&x| x >= 0 && x <= self.d)
    }
}

/// All non-vertex lattice points of `s`, scanning its bounding box.
pub fn oracle_lattice_points(s: &VRepSimplex) -> Result<Vec<LatticePoint>> {
    let bary = Barycentric::new(s)?;
    let verts = s.vertices();
    let lo: [i64; 4] = std::array::from_fn(|i| verts.iter().map(|v| v[i]).min().unwrap());
    let hi: [i64; 4] = std::array::from_fn(|i| verts.iter().map(|v| v[i]).max().unwrap());
    let mut out = Vec::new();
    for a in lo[0]..=hi[0] {
        for b in lo[1]..=hi[1] {
            for c in lo[2]..=hi[2] {
                for e in lo[3]..=hi[3] {
                    let z = [a, b, c, e];
                    if bary.contains(&z) && !verts.contains(&z) {
                        out.push(z);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn oracle_is_empty(s: &VRepSimplex) -> Result<bool> {
    Ok(oracle_lattice_points(s)?.is_empty())
}

/// Minimum width over nonzero functionals with coefficients in `[-radius, radius]^4`.
///
/// This is only an upper bound on the lattice width.
pub fn oracle_width_upper(s: &VRepSimplex, radius: u32) -> u64 {
    let r = radius as i64;
    let verts = s.vertices();
    let mut best = u64::MAX;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for e in -r..=r {
                    if a == 0 && b == 0 && c == 0 && e == 0 {
                        continue;
                    }
                    let vals = verts.map(|x| a * x[0] + b * x[1] + c * x[2] + e * x[3]);
                    let w = (vals.iter().max().unwrap() - vals.iter().min().unwrap()) as u64;
                    best = best.min(w);
                }
            }
        }
    }
    best
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Normalized volume of each facet within the lattice of its hyperplane,
/// indexed by the opposite vertex (slot order of [`VRepSimplex::vertices`]).
///
/// Computed as the gcd of the 3x3 minors of the facet's edge vectors.
pub fn oracle_facet_volumes(s: &VRepSimplex) -> Vec<u64> {
    let verts = s.vertices();
    (0..5)
        .map(|skip| {
            let f: Vec<[i64; 4]> = (0..5).filter(|&i| i != skip).map(|i| verts[i]).collect();
            let edges: Vec<[i64; 4]> = f[1..]
                .iter()
                .map(|p| std::array::from_fn(|k| p[k] - f[0][k]))
                .collect();
            (0..4)
                .map(|drop| {
                    let cols: Vec<usize> = (0..4).filter(|&k| k != drop).collect();
                    let m: [[i64; 3]; 3] =
                        std::array::from_fn(|r| std::array::from_fn(|c| edges[r][cols[c]]));
                    det3(m).unsigned_abs()
                })
                .fold(0u64, |g, x| g.gcd(&x))
        })
        .collect()
}
