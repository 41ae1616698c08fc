//! Small integer helpers: gcd, modular inverse, unit groups and trial-division factoring.

pub use num_integer::gcd;

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Least nonnegative residue of a signed integer.
pub fn reduce(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

/// The units of `Z/m`, in increasing order. For `m = 1` this is `[0]`,
/// the single element of the trivial ring.
pub fn units(m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&c| gcd(c, m) == 1).collect()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime factors.
pub fn omega(n: u32) -> usize {
    factorize(n).len()
}

pub fn is_prime_power(n: u32) -> bool {
    omega(n) == 1
}

pub fn euler_phi(n: u32) -> u32 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}
