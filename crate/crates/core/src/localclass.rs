//! Square classes `F^x / F^{x n}` of `F = Q_p` (with `n | p-1`) and the tame Hilbert symbol.
//!
//! A class is stored as `(v, w)`: valuation mod `n` and the discrete log (base the smallest
//! primitive root `g`) of the unit part mod `n`. Symbols are exponents of
//! `zeta = g^((p-1)/n)`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("n must divide p-1 (p = {p}, n = {n})")]
    NDoesNotDivide { p: u64, n: u64 },
    #[error("n must be positive")]
    ZeroN,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

fn smallest_primitive_root(p: u64) -> u64 {
    let qs = prime_factors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalFieldSpec {
    pub p: u64,
    pub n: u64,
    /// Smallest positive primitive root mod `p`.
    pub g: u64,
    /// `(p-1)/2 mod n`: the exponent of `(-1, -1)`-type corrections.
    pub eps_half: u64,
}

impl LocalFieldSpec {
    pub fn new(p: u64, n: u64) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroN);
        }
        if (p - 1) % n != 0 {
            return Err(FieldError::NDoesNotDivide { p, n });
        }
        Ok(LocalFieldSpec {
            p,
            n,
            g: smallest_primitive_root(p),
            eps_half: ((p - 1) / 2) % n,
        })
    }

    /// All `n^2` classes, `v` major.
    pub fn classes(&self) -> impl Iterator<Item = UnitClass> + '_ {
        let n = self.n;
        (0..n * n).map(move |i| UnitClass { v: i / n, w: i % n })
    }

    /// Residue of the fixed generator of `mu_n`.
    pub fn zeta_residue(&self) -> u64 {
        pow_mod(self.g, (self.p - 1) / self.n, self.p)
    }
}

/// A class in `F^x / F^{x n}` as (valuation, unit log) mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitClass {
    pub v: u64,
    pub w: u64,
}

impl UnitClass {
    pub const ONE: UnitClass = UnitClass { v: 0, w: 0 };

    pub fn new(v: i64, w: i64, n: u64) -> Self {
        let n = n as i64;
        UnitClass { v: v.rem_euclid(n) as u64, w: w.rem_euclid(n) as u64 }
    }

    pub fn mul(self, o: UnitClass, n: u64) -> Self {
        UnitClass { v: (self.v + o.v) % n, w: (self.w + o.w) % n }
    }

    pub fn inv(self, n: u64) -> Self {
        UnitClass { v: (n - self.v) % n, w: (n - self.w) % n }
    }

    pub fn pow(self, k: i64, n: u64) -> Self {
        UnitClass::new(self.v as i64 * k, self.w as i64 * k, n)
    }

    pub fn is_one(self) -> bool {
        self.v == 0 && self.w == 0
    }

    pub fn index(self, n: u64) -> u64 {
        self.v * n + self.w
    }
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.v, self.w)
    }
}

/// `zeta^e` in `mu_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuN {
    pub e: u64,
    pub n: u64,
}

impl MuN {
    pub fn new(e: i64, n: u64) -> Self {
        MuN { e: e.rem_euclid(n as i64) as u64, n }
    }
    pub fn one(n: u64) -> Self {
        MuN { e: 0, n }
    }
    pub fn mul(self, o: MuN) -> Self {
        MuN { e: (self.e + o.e) % self.n, n: self.n }
    }
    pub fn inv(self) -> Self {
        MuN { e: (self.n - self.e) % self.n, n: self.n }
    }
    pub fn is_one(self) -> bool {
        self.e == 0
    }
}

impl fmt::Display for MuN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta^{}", self.e)
    }
}

/// Exponent of the symbol; bilinear in the `(v, w)` coordinates.
pub fn hilbert_exp(spec: &LocalFieldSpec, a: UnitClass, b: UnitClass) -> u64 {
    let n = spec.n;
    let t = spec.eps_half * (a.v * b.v % n) + a.w * b.v + (n - b.w) * a.v;
    t % n
}

/// The n-th order Hilbert symbol `(a, b)_n` through the tame symbol.
pub fn hilbert(spec: &LocalFieldSpec, a: UnitClass, b: UnitClass) -> MuN {
    MuN { e: hilbert_exp(spec, a, b), n: spec.n }
}

/// Tame symbol evaluated on residues: `((-1)^{v_a v_b} u_a^{v_b} u_b^{-v_a})^{(p-1)/n} mod p`,
/// returned as a residue. Used to cross-check [`hilbert`].
pub fn tame_symbol_residue(spec: &LocalFieldSpec, a: UnitClass, b: UnitClass) -> u64 {
    let p = spec.p;
    let ua = pow_mod(spec.g, a.w, p);
    let ub = pow_mod(spec.g, b.w, p);
    let ub_inv = pow_mod(ub, p - 2, p);
    let sign = if (a.v * b.v) % 2 == 1 { p - 1 } else { 1 };
    let base = sign * pow_mod(ua, b.v, p) % p * pow_mod(ub_inv, a.v, p) % p;
    pow_mod(base, (p - 1) / spec.n, p)
}

/// Whether `x` is `k`-th power class tested two ways.
///
/// `lhs`: `(x, y) = 1` for every `y` with `y^k` trivial. `rhs`: `x` lies in `k (Z/n)^2`.
pub fn power_class_equivalence(spec: &LocalFieldSpec, x: UnitClass, k: i64) -> (bool, bool) {
    let n = spec.n;
    let lhs = spec
        .classes()
        .filter(|y| y.pow(k, n).is_one())
        .all(|y| hilbert_exp(spec, x, y) == 0);
    let rhs = spec.classes().any(|z| z.pow(k, n) == x);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(LocalFieldSpec::new(7, 3).is_ok());
        assert_eq!(LocalFieldSpec::new(7, 4), Err(FieldError::NDoesNotDivide { p: 7, n: 4 }));
        assert_eq!(LocalFieldSpec::new(9, 2), Err(FieldError::NotOddPrime(9)));
        assert_eq!(LocalFieldSpec::new(2, 1), Err(FieldError::NotOddPrime(2)));
        let s = LocalFieldSpec::new(13, 4).unwrap();
        assert_eq!(s.g, 2);
        assert_eq!(s.eps_half, 2);
        assert_eq!(LocalFieldSpec::new(7, 3).unwrap().g, 3);
    }

    #[test]
    fn uniformizer_against_generator() {
        for (p, n) in [(5, 2), (7, 3), (13, 4), (13, 12), (7, 1)] {
            let s = LocalFieldSpec::new(p, n).unwrap();
            let e = hilbert(&s, UnitClass { v: 1 % n, w: 0 }, UnitClass { v: 0, w: 1 % n });
            assert_eq!(e.e, (n - 1) % n);
        }
    }

    #[test]
    fn formula_matches_tame_residues() {
        for (p, n) in [(5, 2), (5, 4), (7, 3), (7, 6), (11, 5), (13, 4), (13, 12)] {
            let s = LocalFieldSpec::new(p, n).unwrap();
            let z = s.zeta_residue();
            for a in s.classes() {
                for b in s.classes() {
                    let e = hilbert_exp(&s, a, b);
                    assert_eq!(pow_mod(z, e, p), tame_symbol_residue(&s, a, b), "{p} {n} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn power_classes_example() {
        let s = LocalFieldSpec::new(13, 4).unwrap();
        let (l, r) = power_class_equivalence(&s, UnitClass { v: 2, w: 0 }, 2);
        assert_eq!(l, r);
        assert!(l);
        let (l, r) = power_class_equivalence(&s, UnitClass { v: 1, w: 0 }, 2);
        assert_eq!((l, r), (false, false));
    }
}
