//! Abelian quotients `K/Z` of table groups as [`FinAbGroup`]s with explicit coordinates.

use super::group::{El, Group, Subgroup};
use super::HeisError;
use crate::finabel::{Elem, FinAbGroup};

/// `K/Z` in invariant-factor coordinates. `lifts[i]` is a preimage of the `i`-th basis vector.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FinAbGroup,
    pub lifts: Vec<El>,
    /// Coset index per element of the ambient group (`u32::MAX` outside `K`).
    coset: Vec<u32>,
    /// Representative per coset.
    reps: Vec<El>,
    coords: Vec<Elem>,
    rep_of_coords: Vec<u32>,
}

impl Quotient {
    pub fn new(g: &Group, k: &Subgroup, z: &Subgroup) -> Result<Self, HeisError> {
        if !z.is_subset_of(k) || !g.is_normal_in(z, k) {
            return Err(HeisError::Precondition("quotient by a non-normal subgroup".into()));
        }
        let reps = g.coset_reps(k, z);
        let mut coset = vec![u32::MAX; g.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &y in z.members() {
                coset[g.mul(r, y) as usize] = i as u32;
            }
        }
        let q = reps.len();
        let qmul = |a: usize, b: usize| coset[g.mul(reps[a], reps[b]) as usize] as usize;
        for a in 0..q {
            for b in 0..q {
                if qmul(a, b) != qmul(b, a) {
                    return Err(HeisError::Precondition("quotient is not abelian".into()));
                }
            }
        }
        let qpow = |a: usize, k: u64| (0..k).fold(0usize, |acc, _| qmul(acc, a));
        let order_mod = |a: usize, span: &[bool]| {
            let mut k = 1u64;
            let mut y = a;
            while !span[y] {
                y = qmul(y, a);
                k += 1;
            }
            k
        };
        let mut span = vec![false; q];
        span[0] = true;
        let mut span_list = vec![0usize];
        let mut basis: Vec<(usize, u64)> = Vec::new();
        while span_list.len() < q {
            let (x, e) = (0..q)
                .filter(|&x| !span[x])
                .map(|x| (x, order_mod(x, &span)))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("non-trivial remainder");
            let mut trivial = vec![false; q];
            trivial[0] = true;
            let lift = span_list
                .iter()
                .map(|&b| qmul(x, b))
                .filter(|&y| order_mod(y, &trivial) == e)
                .min()
                .ok_or_else(|| HeisError::Engine("no lift of maximal order".into()))?;
            basis.push((lift, e));
            let mut new_list = Vec::new();
            for &s in &span_list {
                for j in 0..e {
                    let y = qmul(s, qpow(lift, j));
                    if !span[y] {
                        span[y] = true;
                        new_list.push(y);
                    }
                }
            }
            span_list.extend(new_list);
        }
        basis.reverse();
        let invariants: Vec<u64> = basis.iter().map(|b| b.1).collect();
        let group = FinAbGroup::new(invariants)
            .map_err(|_| HeisError::Engine("invariant factors do not divide".into()))?;
        let mut coords = vec![Vec::new(); q];
        let mut rep_of_coords = vec![u32::MAX; q];
        let mut seen = vec![false; q];
        for (idx, c) in group.elements().enumerate() {
            let mut y = 0usize;
            for (i, &ci) in c.iter().enumerate() {
                y = qmul(y, qpow(basis[i].0, ci));
            }
            if seen[y] {
                return Err(HeisError::Engine("basis is not independent".into()));
            }
            seen[y] = true;
            coords[y] = c;
            rep_of_coords[idx] = y as u32;
        }
        let lifts = basis.iter().map(|b| reps[b.0]).collect();
        Ok(Quotient { group, lifts, coset, reps, coords, rep_of_coords })
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn coords_of(&self, x: El) -> &Elem {
        &self.coords[self.coset[x as usize] as usize]
    }

    /// A representative of the coset with the given coordinates.
    pub fn lift(&self, c: &[u64]) -> El {
        let i = self.group.index_of(c) as usize;
        self.reps[self.rep_of_coords[i] as usize]
    }

    pub fn reps(&self) -> &[El] {
        &self.reps
    }

    /// Preimage in `K` of a subgroup of the quotient given by generator coordinates.
    pub fn preimage(&self, g: &Group, z: &Subgroup, gens: &[Elem]) -> Subgroup {
        let mut all = z.gens().to_vec();
        all.extend(gens.iter().map(|c| self.lift(c)));
        g.generate(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::fixtures::*;
    use super::*;

    #[test]
    fn heis27_mod_center() {
        let g = heis27();
        let w = g.whole();
        let z = g.center(&w);
        let q = Quotient::new(&g, &w, &z).unwrap();
        assert_eq!(q.group.invariants(), &[3, 3]);
        for &x in w.members() {
            let c = q.coords_of(x).clone();
            let y = q.lift(&c);
            assert!(z.contains(g.mul(g.inv(x), y)));
        }
    }

    #[test]
    fn mixed_cyclic_quotients() {
        let g = cyclic(24, 0);
        let w = g.whole();
        let q = Quotient::new(&g, &w, &g.trivial()).unwrap();
        assert_eq!(q.group.invariants(), &[24]);
        let q = Quotient::new(&g, &w, &g.generate(&[4])).unwrap();
        assert_eq!(q.group.invariants(), &[4]);
    }
}
