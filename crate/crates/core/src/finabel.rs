//! Finite abelian groups `Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ...`, their subgroups
//! (canonicalized by Hermite normal form), characters stored as exponent vectors, and
//! bilinear pairings.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinAbError {
    #[error("invalid invariants {0:?}: need d_i >= 1 and d_i | d_(i+1)")]
    BadInvariants(Vec<u64>),
    #[error("element {0:?} has the wrong length for this group")]
    BadElement(Vec<u64>),
    #[error("subgroup is not contained in the given parent")]
    NotContained,
    #[error("groups/subgroups belong to different parents")]
    DomainMismatch,
    #[error("prescribed values do not define a character")]
    NotACharacter,
    #[error("character is not defined on the required subgroup")]
    WrongDomain,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("pairing is not well defined on the given invariants")]
    IllDefinedPairing,
    #[error("pairing is degenerate: radical contains {0:?}")]
    Degenerate(Vec<u64>),
}

pub type Elem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariants: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(invariants: Vec<u64>) -> Result<Self, FinAbError> {
        let ok = invariants.iter().all(|&d| d >= 1)
            && invariants.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(FinAbError::BadInvariants(invariants));
        }
        Ok(FinAbGroup { invariants })
    }

    /// `(Z/d)^k`.
    pub fn homocyclic(d: u64, k: usize) -> Self {
        FinAbGroup { invariants: vec![d; k] }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn check(&self, x: &[u64]) -> Result<(), FinAbError> {
        if x.len() != self.rank() {
            return Err(FinAbError::BadElement(x.to_vec()));
        }
        Ok(())
    }

    pub fn reduce_signed(&self, x: &[i64]) -> Elem {
        x.iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.invariants)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Elem {
        x.iter().zip(&self.invariants).map(|(&a, &d)| (d - a % d) % d).collect()
    }

    pub fn scale(&self, x: &[u64], k: i64) -> Elem {
        x.iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| (a as i64 * k).rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().zip(&self.invariants).all(|(&a, &d)| a % d == 0)
    }

    /// Order of an element.
    pub fn elem_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| d / num_integer::gcd(a % d, d))
            .fold(1, num_integer::lcm)
    }

    /// Mixed-radix position, first coordinate most significant.
    pub fn index_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.invariants).fold(0, |acc, (&a, &d)| acc * d + a % d)
    }

    pub fn elem_at(&self, mut i: u64) -> Elem {
        let mut out = vec![0; self.rank()];
        for (slot, &d) in out.iter_mut().zip(&self.invariants).rev() {
            *slot = i % d;
            i /= d;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.elem_at(i))
    }

    /// Characters are indexed by the same vectors as elements (`Z/d_i` in each slot).
    pub fn dual_vectors(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements()
    }

    /// Exponent of `zeta_m^{<e, x>}` with `m` the exponent of the group.
    pub fn pair_dual(&self, e: &[u64], x: &[u64]) -> u64 {
        let m = self.exponent();
        let mut t = 0u64;
        for ((&ei, &xi), &d) in e.iter().zip(x).zip(&self.invariants) {
            t = (t + (ei % d) * (xi % d) % d * (m / d)) % m;
        }
        t
    }
}

/// Hermite normal form of the lattice spanned by `rows` together with `d_i e_i`.
fn hnf(group: &FinAbGroup, rows: &[Elem]) -> Vec<Vec<i64>> {
    let k = group.rank();
    let mut work: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&a| a as i128).collect())
        .collect();
    for (i, &d) in group.invariants().iter().enumerate() {
        let mut v = vec![0i128; k];
        v[i] = d as i128;
        work.push(v);
    }
    let mut out: Vec<Vec<i128>> = Vec::with_capacity(k);
    for col in 0..k {
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| work[i][col].abs()).unwrap();
            let pv = work[piv][col];
            for &i in &nz {
                if i != piv {
                    let q = work[i][col].div_euclid(pv);
                    let prow = work[piv].clone();
                    for (a, b) in work[i].iter_mut().zip(&prow) {
                        *a -= q * b;
                    }
                }
            }
        }
        let idx = (0..work.len())
            .find(|&i| work[i][col] != 0)
            .expect("lattice contains d_i e_i so every column has a pivot");
        let mut row = work.swap_remove(idx);
        if row[col] < 0 {
            row.iter_mut().for_each(|a| *a = -*a);
        }
        out.push(row);
        work.retain(|r| r.iter().any(|&a| a != 0));
    }
    for i in 0..k {
        let p = out[i][i];
        for j in 0..i {
            let t = out[j][i].div_euclid(p);
            if t != 0 {
                let ri = out[i].clone();
                for (a, b) in out[j].iter_mut().zip(&ri) {
                    *a -= t * b;
                }
            }
        }
    }
    out.into_iter().map(|r| r.into_iter().map(|a| a as i64).collect()).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupHandle {
    parent: FinAbGroup,
    generators: Vec<Elem>,
    hnf: Vec<Vec<i64>>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, o: &Self) -> bool {
        self.parent == o.parent && self.hnf == o.hnf
    }
}
impl Eq for SubgroupHandle {}
impl std::hash::Hash for SubgroupHandle {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.parent.hash(h);
        self.hnf.hash(h);
    }
}

impl SubgroupHandle {
    pub fn new(parent: &FinAbGroup, generators: Vec<Elem>) -> Result<Self, FinAbError> {
        for g in &generators {
            parent.check(g)?;
        }
        let generators: Vec<Elem> = generators
            .iter()
            .map(|g| parent.reduce_signed(&g.iter().map(|&a| a as i64).collect::<Vec<_>>()))
            .collect();
        let hnf = hnf(parent, &generators);
        Ok(SubgroupHandle { parent: parent.clone(), generators, hnf })
    }

    pub fn whole(parent: &FinAbGroup) -> Self {
        let gens = (0..parent.rank())
            .map(|i| {
                let mut e = parent.zero();
                e[i] = 1 % parent.invariants()[i];
                e
            })
            .collect();
        Self::new(parent, gens).expect("unit vectors are valid")
    }

    pub fn trivial(parent: &FinAbGroup) -> Self {
        Self::new(parent, vec![]).expect("empty generating set")
    }

    /// `k * parent`.
    pub fn multiples(parent: &FinAbGroup, k: i64) -> Self {
        let w = Self::whole(parent);
        let gens = w.generators.iter().map(|g| parent.scale(g, k)).collect();
        Self::new(parent, gens).expect("scaled generators are valid")
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }
    pub fn canonical_form(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    /// Generators read off the canonical form (reduced into the parent).
    pub fn canonical_generators(&self) -> Vec<Elem> {
        self.hnf
            .iter()
            .map(|r| self.parent.reduce_signed(r))
            .filter(|g| !self.parent.is_zero(g))
            .collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.parent.rank() {
            return false;
        }
        let mut v: Vec<i64> = x.iter().map(|&a| a as i64).collect();
        for (i, row) in self.hnf.iter().enumerate() {
            let p = row[i];
            if v[i].rem_euclid(p) != 0 {
                return false;
            }
            let q = v[i].div_euclid(p);
            for (a, b) in v.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
        true
    }

    pub fn index(&self) -> u64 {
        self.hnf.iter().enumerate().map(|(i, r)| r[i] as u64).product()
    }

    pub fn order(&self) -> u64 {
        self.parent.order() / self.index()
    }

    pub fn elements(&self) -> Vec<Elem> {
        let k = self.parent.rank();
        let bounds: Vec<u64> = (0..k)
            .map(|i| self.parent.invariants()[i] / self.hnf[i][i] as u64)
            .collect();
        let total: u64 = bounds.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        for mut t in 0..total {
            let mut v = vec![0i64; k];
            for i in (0..k).rev() {
                let a = (t % bounds[i]) as i64;
                t /= bounds[i];
                for (x, y) in v.iter_mut().zip(&self.hnf[i]) {
                    *x += a * y;
                }
            }
            out.push(self.parent.reduce_signed(&v));
        }
        out.sort();
        out
    }

    pub fn is_subgroup_of(&self, o: &SubgroupHandle) -> bool {
        self.parent == o.parent && self.canonical_generators().iter().all(|g| o.contains(g))
    }

    pub fn join(&self, o: &SubgroupHandle) -> Result<SubgroupHandle, FinAbError> {
        if self.parent != o.parent {
            return Err(FinAbError::DomainMismatch);
        }
        let mut g = self.canonical_generators();
        g.extend(o.canonical_generators());
        SubgroupHandle::new(&self.parent, g)
    }

    pub fn intersect(&self, o: &SubgroupHandle) -> Result<SubgroupHandle, FinAbError> {
        if self.parent != o.parent {
            return Err(FinAbError::DomainMismatch);
        }
        let (small, big) = if self.order() <= o.order() { (self, o) } else { (o, self) };
        let g = small.elements().into_iter().filter(|x| big.contains(x)).collect();
        SubgroupHandle::new(&self.parent, g)
    }

    pub fn with(&self, x: &[u64]) -> Result<SubgroupHandle, FinAbError> {
        let mut g = self.canonical_generators();
        g.push(x.to_vec());
        SubgroupHandle::new(&self.parent, g)
    }
}

/// `[parent : H]`.
pub fn subgroup_index(parent: &FinAbGroup, h: &SubgroupHandle) -> Result<u64, FinAbError> {
    if h.parent() != parent {
        return Err(FinAbError::NotContained);
    }
    Ok(h.index())
}

/// A character of a subgroup, stored as the exponent vector of some character of the parent
/// restricting to it: `chi(x) = zeta_m^{sum e_i x_i (m / d_i)}` with `m` the parent exponent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbCharacter {
    domain: SubgroupHandle,
    exps: Elem,
}

impl PartialEq for AbCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.domain == o.domain
            && self
                .domain
                .canonical_generators()
                .iter()
                .all(|g| self.eval(g) == o.eval(g))
    }
}
impl Eq for AbCharacter {}

impl AbCharacter {
    pub fn on_group(g: &FinAbGroup, exps: Elem) -> Result<Self, FinAbError> {
        g.check(&exps)?;
        let exps = g.reduce_signed(&exps.iter().map(|&a| a as i64).collect::<Vec<_>>());
        Ok(AbCharacter { domain: SubgroupHandle::whole(g), exps })
    }

    pub fn on_subgroup(h: &SubgroupHandle, exps: Elem) -> Result<Self, FinAbError> {
        h.parent().check(&exps)?;
        let exps =
            h.parent().reduce_signed(&exps.iter().map(|&a| a as i64).collect::<Vec<_>>());
        Ok(AbCharacter { domain: h.clone(), exps })
    }

    pub fn trivial(h: &SubgroupHandle) -> Self {
        AbCharacter { domain: h.clone(), exps: h.parent().zero() }
    }

    /// Build from prescribed values on chosen elements of `h`; fails if no character fits.
    pub fn from_values(h: &SubgroupHandle, values: &[(Elem, u64)]) -> Result<Self, FinAbError> {
        let g = h.parent();
        let m = g.exponent();
        for (x, _) in values {
            if !h.contains(x) {
                return Err(FinAbError::WrongDomain);
            }
        }
        g.dual_vectors()
            .find(|e| values.iter().all(|(x, v)| g.pair_dual(e, x) == v % m))
            .map(|e| AbCharacter { domain: h.clone(), exps: e })
            .ok_or(FinAbError::NotACharacter)
    }

    pub fn domain(&self) -> &SubgroupHandle {
        &self.domain
    }
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }
    /// Order of the root of unity the values are powers of.
    pub fn root_order(&self) -> u64 {
        self.domain.parent().exponent()
    }

    /// Exponent of the value; caller guarantees `x` lies in the domain.
    pub fn eval(&self, x: &[u64]) -> u64 {
        self.domain.parent().pair_dual(&self.exps, x)
    }

    pub fn value(&self, x: &[u64]) -> Option<u64> {
        self.domain.contains(x).then(|| self.eval(x))
    }

    pub fn restrict(&self, h: &SubgroupHandle) -> Result<Self, FinAbError> {
        if !h.is_subgroup_of(&self.domain) {
            return Err(FinAbError::NotContained);
        }
        Ok(AbCharacter { domain: h.clone(), exps: self.exps.clone() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, FinAbError> {
        if self.domain != o.domain {
            return Err(FinAbError::DomainMismatch);
        }
        Ok(AbCharacter {
            domain: self.domain.clone(),
            exps: self.domain.parent().add(&self.exps, &o.exps),
        })
    }

    pub fn inv(&self) -> Self {
        AbCharacter { domain: self.domain.clone(), exps: self.domain.parent().neg(&self.exps) }
    }

    pub fn is_trivial(&self) -> bool {
        self.domain.canonical_generators().iter().all(|g| self.eval(g) == 0)
    }

    /// Exhaustive multiplicativity check over the domain.
    pub fn is_multiplicative(&self) -> bool {
        let g = self.domain.parent();
        let m = g.exponent();
        let els = self.domain.elements();
        els.iter().all(|x| {
            els.iter().all(|y| self.eval(&g.add(x, y)) == (self.eval(x) + self.eval(y)) % m)
        })
    }

    pub fn to_json(&self) -> AbJson {
        AbJson {
            invariants: self.domain.parent().invariants().to_vec(),
            generators: Some(self.domain.canonical_generators()),
            char: Some(self.exps.clone()),
        }
    }
}

/// Serialized form shared by groups, subgroups and characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbJson {
    pub invariants: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char: Option<Elem>,
}

impl AbJson {
    pub fn group(&self) -> Result<FinAbGroup, FinAbError> {
        FinAbGroup::new(self.invariants.clone())
    }
    pub fn subgroup(&self) -> Result<SubgroupHandle, FinAbError> {
        let g = self.group()?;
        match &self.generators {
            Some(gens) => SubgroupHandle::new(&g, gens.clone()),
            None => Ok(SubgroupHandle::whole(&g)),
        }
    }
    pub fn character(&self) -> Result<AbCharacter, FinAbError> {
        let h = self.subgroup()?;
        let e = self.char.clone().unwrap_or_else(|| h.parent().zero());
        AbCharacter::on_subgroup(&h, e)
    }
}

/// All characters of `K` restricting to `psi` (whose domain must lie in `K`).
pub fn extensions_to(k: &SubgroupHandle, psi: &AbCharacter) -> Result<Vec<AbCharacter>, FinAbError> {
    let h = psi.domain();
    if !h.is_subgroup_of(k) {
        return Err(FinAbError::NotContained);
    }
    let g = k.parent();
    let hg = h.canonical_generators();
    let kg = k.canonical_generators();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut out = Vec::new();
    for e in g.dual_vectors() {
        if hg.iter().all(|x| g.pair_dual(&e, x) == psi.eval(x)) {
            let key: Vec<u64> = kg.iter().map(|x| g.pair_dual(&e, x)).collect();
            if seen.insert(key) {
                out.push(AbCharacter { domain: k.clone(), exps: e });
            }
        }
    }
    Ok(out)
}

/// All extensions of `psi` from `H` to the whole group `G`; exactly `[G:H]` of them.
pub fn extend_character(
    g: &FinAbGroup,
    h: &SubgroupHandle,
    psi: &AbCharacter,
) -> Result<Vec<AbCharacter>, FinAbError> {
    if h.parent() != g {
        return Err(FinAbError::NotContained);
    }
    if psi.domain() != h {
        return Err(FinAbError::WrongDomain);
    }
    if !psi.is_multiplicative() {
        return Err(FinAbError::NotACharacter);
    }
    let out = extensions_to(&SubgroupHandle::whole(g), psi)?;
    debug_assert_eq!(out.len() as u64, h.index());
    Ok(out)
}

/// Whether the two characters agree on the intersection of their domains.
pub fn consistent(a: &AbCharacter, b: &AbCharacter) -> Result<bool, FinAbError> {
    if a.domain().parent() != b.domain().parent() {
        return Err(FinAbError::DomainMismatch);
    }
    let i = a.domain().intersect(b.domain())?;
    Ok(i.canonical_generators().iter().all(|x| a.eval(x) == b.eval(x)))
}

#[derive(Debug, Clone, Serialize)]
pub struct DiamondReport {
    pub x_count: usize,
    pub y_count: usize,
    /// Indices into the extension lists `X` (of `psi2` to `A1`) and `Y` (of `chi2` to `B1`).
    pub pairs: Vec<(usize, usize)>,
    pub extensions_to_d: usize,
    pub is_bijection: bool,
}

/// All consistent pairs `(psi1, chi1)` of extensions of `psi2` to `a1` and `chi2` to `b1`,
/// without checking the diamond hypotheses.
pub fn consistent_pairs(
    a1: &SubgroupHandle,
    b1: &SubgroupHandle,
    psi2: &AbCharacter,
    chi2: &AbCharacter,
) -> Result<(Vec<AbCharacter>, Vec<AbCharacter>, Vec<(usize, usize)>), FinAbError> {
    let xs = extensions_to(a1, psi2)?;
    let ys = extensions_to(b1, chi2)?;
    let mut pairs = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            if consistent(x, y)? {
                pairs.push((i, j));
            }
        }
    }
    Ok((xs, ys, pairs))
}

pub fn diamond_check(
    d: &FinAbGroup,
    a1: &SubgroupHandle,
    a2: &SubgroupHandle,
    b1: &SubgroupHandle,
    b2: &SubgroupHandle,
    psi2: &AbCharacter,
    chi2: &AbCharacter,
) -> Result<DiamondReport, FinAbError> {
    let pre = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(FinAbError::Precondition(what.to_string()))
        }
    };
    for s in [a1, a2, b1, b2] {
        if s.parent() != d {
            return Err(FinAbError::DomainMismatch);
        }
    }
    let whole = SubgroupHandle::whole(d);
    pre(a2.is_subgroup_of(a1), "A2 <= A1")?;
    pre(b2.is_subgroup_of(b1), "B2 <= B1")?;
    pre(a1.join(b2)? == whole, "D = A1 B2")?;
    pre(a2.join(b1)? == whole, "D = A2 B1")?;
    pre(a1.intersect(b2)? == a2.intersect(b1)?, "A1 n B2 = A2 n B1")?;
    pre(psi2.domain() == a2, "psi2 is a character of A2")?;
    pre(chi2.domain() == b2, "chi2 is a character of B2")?;
    pre(consistent(psi2, chi2)?, "psi2 and chi2 are consistent")?;
    let (xs, ys, pairs) = consistent_pairs(a1, b1, psi2, chi2)?;
    let a2g = a2.canonical_generators();
    let b2g = b2.canonical_generators();
    let ext_d = d
        .dual_vectors()
        .filter(|e| {
            a2g.iter().all(|x| d.pair_dual(e, x) == psi2.eval(x))
                && b2g.iter().all(|x| d.pair_dual(e, x) == chi2.eval(x))
        })
        .count();
    let xi: HashSet<usize> = pairs.iter().map(|p| p.0).collect();
    let yi: HashSet<usize> = pairs.iter().map(|p| p.1).collect();
    let is_bijection = xi.len() == pairs.len()
        && yi.len() == pairs.len()
        && xi.len() == xs.len()
        && yi.len() == ys.len();
    Ok(DiamondReport { x_count: xs.len(), y_count: ys.len(), pairs, extensions_to_d: ext_d, is_bijection })
}

/// A bilinear pairing `X x X -> Z/a` given by a matrix on the standard generators.
#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    group: FinAbGroup,
    modulus: u64,
    matrix: Vec<Vec<u64>>,
}

impl Pairing {
    pub fn new(group: &FinAbGroup, modulus: u64, matrix: Vec<Vec<u64>>) -> Result<Self, FinAbError> {
        let k = group.rank();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(FinAbError::IllDefinedPairing);
        }
        let inv = group.invariants();
        for i in 0..k {
            for j in 0..k {
                let v = matrix[i][j] % modulus;
                if (v * inv[i]) % modulus != 0 || (v * inv[j]) % modulus != 0 {
                    return Err(FinAbError::IllDefinedPairing);
                }
            }
        }
        let matrix = matrix.into_iter().map(|r| r.into_iter().map(|v| v % modulus).collect()).collect();
        Ok(Pairing { group: group.clone(), modulus, matrix })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> u64 {
        let a = self.modulus;
        let mut t = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                t = (t + xi * yj % a * self.matrix[i][j]) % a;
            }
        }
        t
    }

    pub fn is_alternating(&self) -> bool {
        self.group.elements().all(|x| self.eval(&x, &x) == 0)
    }

    pub fn is_bimultiplicative(&self) -> bool {
        let els: Vec<Elem> = self.group.elements().collect();
        let a = self.modulus;
        els.iter().all(|x| {
            els.iter().all(|y| {
                els.iter().all(|z| {
                    self.eval(&self.group.add(x, y), z) == (self.eval(x, z) + self.eval(y, z)) % a
                        && self.eval(z, &self.group.add(x, y))
                            == (self.eval(z, x) + self.eval(z, y)) % a
                })
            })
        })
    }

    /// Non-zero elements pairing trivially with everything.
    pub fn radical(&self) -> Vec<Elem> {
        let els: Vec<Elem> = self.group.elements().collect();
        els.iter()
            .filter(|x| !self.group.is_zero(x) && els.iter().all(|y| self.eval(x, y) == 0))
            .cloned()
            .collect()
    }

    pub fn check_nondegenerate(&self) -> Result<(), FinAbError> {
        match self.radical().into_iter().next() {
            Some(x) => Err(FinAbError::Degenerate(x)),
            None => Ok(()),
        }
    }

    pub fn perp(&self, s: &SubgroupHandle) -> SubgroupHandle {
        let gens = s.canonical_generators();
        let els = self.group.elements().filter(|y| gens.iter().all(|x| self.eval(x, y) == 0)).collect();
        SubgroupHandle::new(&self.group, els).expect("elements of the group")
    }

    /// All maximal isotropic subgroups, in canonical-form order.
    pub fn lagrangians(&self) -> Vec<SubgroupHandle> {
        self.lagrangians_capped(usize::MAX).0
    }

    /// At most `cap` Lagrangians (the first ones reached by a deterministic depth-first
    /// search), sorted canonically, and whether the enumeration is complete.
    pub fn lagrangians_capped(&self, cap: usize) -> (Vec<SubgroupHandle>, bool) {
        let start = SubgroupHandle::trivial(&self.group);
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        seen.insert(start.canonical_form().to_vec());
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            let p = self.perp(&s);
            if p == s {
                out.push(s);
                if out.len() >= cap {
                    break;
                }
                continue;
            }
            for x in p.elements() {
                if s.contains(&x) {
                    continue;
                }
                let t = s.with(&x).expect("element of the group");
                if seen.insert(t.canonical_form().to_vec()) {
                    stack.push(t);
                }
            }
        }
        let complete = stack.is_empty();
        out.sort_by(|a, b| a.canonical_form().cmp(b.canonical_form()));
        (out, complete)
    }
}
