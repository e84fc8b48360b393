//! Dense polynomials over GF(p), little-endian coefficient vectors.
//!
//! Only what field construction needs: multiplication, remainder and an
//! exhaustive irreducibility test for small degrees.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Little-endian base-p digits of `value`, padded to `len`.
pub(crate) fn digits(p: u32, mut value: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((value % p as u64) as u32);
        value /= p as u64;
    }
    out
}

/// Irreducibility over GF(p) by trial division with every monic polynomial
/// of degree 1..=deg/2.
pub(crate) fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut divisor = digits(p, enc, d);
            divisor.push(1);
            if rem_monic(p, m, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}
