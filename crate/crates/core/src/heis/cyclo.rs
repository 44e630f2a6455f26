//! Exact arithmetic in `Z[x]/Phi_m(x)`, the ring of cyclotomic integers.

/// Integer polynomial division `a / b` with `b` monic; panics if the remainder is non-zero.
fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![];
    }
    let mut q = vec![0i64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

pub(crate) fn cyclotomic_poly(m: usize) -> Vec<i64> {
    let mut p = vec![0i64; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// Coefficient vectors of length `phi(m)` in the power basis of a primitive `m`-th root.
#[derive(Debug, Clone)]
pub struct CycloRing {
    m: usize,
    phi: usize,
    modpoly: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloRing {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        let modpoly = cyclotomic_poly(m);
        let phi = modpoly.len() - 1;
        let mut ring = CycloRing { m, phi, modpoly, powers: Vec::new() };
        ring.powers = (0..m)
            .map(|k| {
                let mut v = vec![0i64; k + 1];
                v[k] = 1;
                ring.reduce(&v)
            })
            .collect();
        ring
    }

    pub fn order(&self) -> usize {
        self.m
    }
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        let mut r = a.to_vec();
        let d = self.phi;
        for i in (d..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (j, &pj) in self.modpoly.iter().enumerate() {
                    r[i - d + j] -= c * pj;
                }
            }
        }
        r.resize(d, 0);
        r
    }

    /// `zeta^k`.
    pub fn root(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.m as u64) as usize]
    }

    pub fn add_root(&self, acc: &mut [i64], k: u64, coeff: i64) {
        for (a, &b) in acc.iter_mut().zip(self.root(k)) {
            *a += coeff * b;
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut c = vec![0i64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(&c)
    }

    /// Multiply by `zeta^k` in place.
    pub fn mul_root(&self, a: &[i64], k: u64) -> Vec<i64> {
        let mut out = vec![0i64; self.phi];
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                self.add_root(&mut out, i as u64 + k, x);
            }
        }
        out
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.phi];
        let m = self.m as u64;
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                self.add_root(&mut out, (m - i as u64 % m) % m, x);
            }
        }
        out
    }

    /// The rational integer value, if the element is one.
    pub fn as_integer(&self, a: &[i64]) -> Option<i64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// `k` with `a = d * zeta^k`, if any.
    pub fn root_exponent(&self, a: &[i64], d: i64) -> Option<u64> {
        (0..self.m as u64).find(|&k| a.iter().zip(self.root(k)).all(|(&x, &y)| x == d * y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(9).len(), 7);
    }

    #[test]
    fn root_sums_vanish() {
        for m in 2..=16 {
            let r = CycloRing::new(m);
            let mut acc = vec![0; r.phi()];
            for k in 0..m as u64 {
                r.add_root(&mut acc, k, 1);
            }
            assert!(acc.iter().all(|&c| c == 0), "m = {m}");
            let z = r.root(1).to_vec();
            assert_eq!(r.as_integer(&r.mul(&z, &r.conj(&z))), Some(1));
        }
    }
}
