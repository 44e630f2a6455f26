//! Finite groups given by multiplication tables, with a distinguished central cyclic
//! subgroup `A`, and their subgroups as element sets.

use super::cyclo::CycloRing;
use super::HeisError;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::OnceLock;

pub type El = u32;

/// Equality compares members only.
#[derive(Debug, Clone)]
pub struct Subgroup {
    mask: Vec<bool>,
    members: Vec<El>,
    gens: Vec<El>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Self) -> bool {
        self.members == o.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn contains(&self, x: El) -> bool {
        self.mask[x as usize]
    }
    pub fn members(&self) -> &[El] {
        &self.members
    }
    pub fn gens(&self) -> &[El] {
        &self.gens
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn is_subset_of(&self, o: &Subgroup) -> bool {
        self.members.iter().all(|&x| o.contains(x))
    }
}

#[derive(Debug)]
pub struct Group {
    order: usize,
    mul: Vec<El>,
    inv: Vec<El>,
    a_powers: Vec<El>,
    a_log: Vec<u32>,
    exponent: u32,
    ring: CycloRing,
    classes: OnceLock<Vec<Vec<El>>>,
}

/// Serialized table: `table[i][j]` is the index of `i * j`; element 0 is the identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub table: Vec<Vec<El>>,
    pub a_generator: El,
}

fn gcd(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

impl Group {
    /// Build from a multiplication closure over `0..order`; element 0 must be the identity.
    /// `ring_order`, if given, must be a multiple of the group exponent.
    pub fn from_fn(
        order: usize,
        f: impl Fn(El, El) -> El,
        a_gen: El,
        ring_order: Option<u32>,
        check_assoc: bool,
    ) -> Result<Self, HeisError> {
        let mut mul = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                let k = f(i as El, j as El);
                if k as usize >= order {
                    return Err(HeisError::InvalidTable(format!("{i}*{j} out of range")));
                }
                mul[i * order + j] = k;
            }
        }
        Self::from_flat(order, mul, a_gen, ring_order, check_assoc)
    }

    pub fn from_json(j: &GroupJson) -> Result<Self, HeisError> {
        let order = j.table.len();
        if j.table.iter().any(|r| r.len() != order) {
            return Err(HeisError::InvalidTable("table is not square".into()));
        }
        let flat: Vec<El> = j.table.iter().flatten().copied().collect();
        if flat.iter().any(|&x| x as usize >= order) {
            return Err(HeisError::InvalidTable("entry out of range".into()));
        }
        Self::from_flat(order, flat, j.a_generator, None, order <= 256)
    }

    fn from_flat(
        order: usize,
        mul: Vec<El>,
        a_gen: El,
        ring_order: Option<u32>,
        check_assoc: bool,
    ) -> Result<Self, HeisError> {
        if order == 0 {
            return Err(HeisError::InvalidTable("empty group".into()));
        }
        for i in 0..order {
            if mul[i] != i as El || mul[i * order] != i as El {
                return Err(HeisError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![El::MAX; order];
        for i in 0..order {
            let row = &mul[i * order..(i + 1) * order];
            let mut seen = vec![false; order];
            for &k in row {
                if seen[k as usize] {
                    return Err(HeisError::InvalidTable("row is not a permutation".into()));
                }
                seen[k as usize] = true;
            }
            inv[i] = row.iter().position(|&k| k == 0).unwrap() as El;
        }
        if check_assoc {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul[a * order + b] as usize;
                    for c in 0..order {
                        let bc = mul[b * order + c] as usize;
                        if mul[ab * order + c] != mul[a * order + bc] {
                            return Err(HeisError::InvalidTable(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        if a_gen as usize >= order {
            return Err(HeisError::InvalidTable("A generator out of range".into()));
        }
        let mut a_powers = vec![0 as El];
        let mut x = a_gen;
        while x != 0 {
            a_powers.push(x);
            x = mul[x as usize * order + a_gen as usize];
        }
        let mut a_log = vec![u32::MAX; order];
        for (k, &p) in a_powers.iter().enumerate() {
            a_log[p as usize] = k as u32;
        }
        let mut elem_exp = 1u32;
        for i in 0..order {
            let mut k = 1u32;
            let mut y = i as El;
            while y != 0 {
                y = mul[y as usize * order + i];
                k += 1;
            }
            elem_exp = elem_exp / gcd(elem_exp, k) * k;
        }
        let m = ring_order.unwrap_or(elem_exp);
        if m % elem_exp != 0 {
            return Err(HeisError::InvalidTable(format!(
                "ring order {m} is not a multiple of the exponent {elem_exp}"
            )));
        }
        let g = Group {
            order,
            mul,
            inv,
            a_powers,
            a_log,
            exponent: elem_exp,
            ring: CycloRing::new(m as usize),
            classes: OnceLock::new(),
        };
        for &a in &g.a_powers {
            for x in 0..order as El {
                if g.mul(a, x) != g.mul(x, a) {
                    return Err(HeisError::NotCentral("A".into()));
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn exponent(&self) -> u32 {
        self.exponent
    }
    pub fn ring(&self) -> &CycloRing {
        &self.ring
    }
    pub fn a_order(&self) -> usize {
        self.a_powers.len()
    }
    /// `a^k` for the fixed generator `a` of `A`.
    pub fn a_pow(&self, k: u64) -> El {
        self.a_powers[(k % self.a_powers.len() as u64) as usize]
    }
    /// `k` with `x = a^k`, if `x` lies in `A`.
    pub fn a_log(&self, x: El) -> Option<u32> {
        let k = self.a_log[x as usize];
        (k != u32::MAX).then_some(k)
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        self.mul[a as usize * self.order + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: El) -> El {
        self.inv[a as usize]
    }
    /// `a b a^-1 b^-1`.
    #[inline]
    pub fn comm(&self, a: El, b: El) -> El {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }
    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: El, x: El) -> El {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: El, k: u64) -> El {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elem_order(&self, a: El) -> u32 {
        let mut k = 1;
        let mut y = a;
        while y != 0 {
            y = self.mul(y, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[El]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0 as El];
        let mut q = VecDeque::from([0 as El]);
        let mut used = Vec::new();
        for &g in gens {
            if !mask[g as usize] {
                used.push(g);
                q.extend(members.iter().copied());
                while let Some(x) = q.pop_front() {
                    for &h in &used {
                        let y = self.mul(x, h);
                        if !mask[y as usize] {
                            mask[y as usize] = true;
                            members.push(y);
                            q.push_back(y);
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup { mask, members, gens: used }
    }

    /// The subgroup whose elements are exactly `els` (which must be closed).
    pub fn subgroup_of(&self, els: &[El]) -> Result<Subgroup, HeisError> {
        let mut sorted = els.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let s = self.generate(&sorted);
        if s.members != sorted {
            return Err(HeisError::Precondition("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn whole(&self) -> Subgroup {
        let all: Vec<El> = (0..self.order as El).collect();
        self.generate(&all)
    }
    pub fn trivial(&self) -> Subgroup {
        self.generate(&[])
    }
    pub fn a_subgroup(&self) -> Subgroup {
        self.generate(&self.a_powers)
    }

    pub fn filter(&self, within: &Subgroup, pred: impl Fn(El) -> bool) -> Subgroup {
        let els: Vec<El> = within.members.iter().copied().filter(|&x| pred(x)).collect();
        self.generate(&els)
    }

    /// Elements of `within` commuting with all of `of`.
    pub fn centralizer(&self, within: &Subgroup, of: &Subgroup) -> Subgroup {
        self.filter(within, |x| of.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
    }

    pub fn center(&self, k: &Subgroup) -> Subgroup {
        self.centralizer(k, k)
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.filter(a, |x| b.contains(x))
    }

    /// Subgroup generated by the union.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut g = a.gens.clone();
        g.extend_from_slice(&b.gens);
        self.generate(&g)
    }

    pub fn is_normal_in(&self, h: &Subgroup, g: &Subgroup) -> bool {
        g.gens.iter().all(|&x| h.gens.iter().all(|&y| h.contains(self.conj(x, y))))
    }

    /// Whether every commutator of `k` lies in `A`.
    pub fn commutators_in_a(&self, k: &Subgroup) -> bool {
        k.members.iter().all(|&x| k.gens.iter().all(|&y| self.a_log(self.comm(x, y)).is_some()))
    }

    /// `pr^{-1}(Z(G/A))` inside `k`.
    pub fn central_mod_a(&self, k: &Subgroup) -> Subgroup {
        self.filter(k, |x| k.gens.iter().all(|&y| self.a_log(self.comm(x, y)).is_some()))
    }

    /// One representative per left coset `x K` inside `g`, smallest index first.
    pub fn coset_reps(&self, g: &Subgroup, k: &Subgroup) -> Vec<El> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for &x in &g.members {
            if !seen[x as usize] {
                reps.push(x);
                for &y in &k.members {
                    seen[self.mul(x, y) as usize] = true;
                }
            }
        }
        reps
    }

    pub fn index(&self, g: &Subgroup, k: &Subgroup) -> usize {
        g.order() / k.order()
    }

    /// Conjugacy classes of the whole group.
    pub fn classes(&self) -> &[Vec<El>] {
        self.classes.get_or_init(|| {
            let mut seen = vec![false; self.order];
            let mut out = Vec::new();
            for x in 0..self.order as El {
                if seen[x as usize] {
                    continue;
                }
                let mut cl = Vec::new();
                for g in 0..self.order as El {
                    let y = self.conj(g, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        cl.push(y);
                    }
                }
                cl.sort_unstable();
                out.push(cl);
            }
            out
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Extraspecial group of order 27 and exponent 3: `(a, b, c)` with
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')`, `A` the center.
    pub fn heis27() -> Group {
        let enc = |a: u32, b: u32, c: u32| c + 3 * (a + 3 * b);
        let dec = |x: u32| (((x / 3) % 3), (x / 9), x % 3);
        Group::from_fn(
            27,
            |x, y| {
                let (a, b, c) = dec(x);
                let (a2, b2, c2) = dec(y);
                enc((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3)
            },
            1,
            None,
            true,
        )
        .unwrap()
    }

    /// Symmetric group on 3 letters, `A` trivial.
    pub fn s3() -> Group {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as El;
        Group::from_fn(
            6,
            |x, y| {
                let (p, q) = (perms[x as usize], perms[y as usize]);
                idx([p[q[0]], p[q[1]], p[q[2]]])
            },
            0,
            None,
            true,
        )
        .unwrap()
    }

    /// Cyclic group `Z/k` with `A` the subgroup generated by `a`.
    pub fn cyclic(k: u32, a: u32) -> Group {
        Group::from_fn(k as usize, |x, y| (x + y) % k, a, None, true).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;

    #[test]
    fn heis27_structure() {
        let g = heis27();
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.a_order(), 3);
        let w = g.whole();
        assert_eq!(g.center(&w).order(), 3);
        assert_eq!(g.classes().len(), 11);
        assert!(g.commutators_in_a(&w));
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        let w = g.whole();
        assert_eq!(g.center(&w).order(), 1);
        assert!(!g.commutators_in_a(&w));
        assert_eq!(g.classes().len(), 3);
        let a3 = g.generate(&[4]);
        assert_eq!(a3.order(), 3);
        assert!(g.is_normal_in(&a3, &w));
        assert!(!g.is_normal_in(&g.generate(&[1]), &w));
    }
}
