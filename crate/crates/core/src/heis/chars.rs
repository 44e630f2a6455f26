//! Exact class functions, linear characters, induction, and the monomial
//! character engine for class-2 groups.

use super::group::{El, Group, Subgroup};
use super::HeisError;
use num_rational::Ratio;
use std::collections::BTreeMap;

pub const NONE: u32 = u32::MAX;

/// A class function with cyclotomic values, stored flat: `phi` coefficients per element.
/// Values outside the domain it was built on are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassFn {
    phi: usize,
    vals: Vec<i64>,
}

impl ClassFn {
    pub fn zero(g: &Group) -> Self {
        let phi = g.ring().phi();
        ClassFn { phi, vals: vec![0; g.order() * phi] }
    }

    pub fn at(&self, x: El) -> &[i64] {
        &self.vals[x as usize * self.phi..(x as usize + 1) * self.phi]
    }

    pub(crate) fn at_mut(&mut self, x: El) -> &mut [i64] {
        &mut self.vals[x as usize * self.phi..(x as usize + 1) * self.phi]
    }

    /// Value at the identity.
    pub fn degree(&self) -> i64 {
        self.vals[0]
    }

    pub fn raw(&self) -> &[i64] {
        &self.vals
    }

    pub fn add(&self, o: &ClassFn) -> ClassFn {
        let vals = self.vals.iter().zip(&o.vals).map(|(a, b)| a + b).collect();
        ClassFn { phi: self.phi, vals }
    }

    pub fn scale(&self, k: i64) -> ClassFn {
        ClassFn { phi: self.phi, vals: self.vals.iter().map(|a| a * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|&v| v == 0)
    }

    /// Coefficient arrays for the given elements.
    pub fn table(&self, els: &[El]) -> Vec<Vec<i64>> {
        els.iter().map(|&x| self.at(x).to_vec()).collect()
    }
}

/// A linear character: exponent of the ring's root of unity per element, [`NONE`] off the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinChar {
    vals: Vec<u32>,
}

impl LinChar {
    pub fn trivial(g: &Group, dom: &Subgroup) -> Self {
        let mut vals = vec![NONE; g.order()];
        for &x in dom.members() {
            vals[x as usize] = 0;
        }
        LinChar { vals }
    }

    /// Defined exactly on the listed elements.
    pub fn from_values(g: &Group, vals: &[(El, u32)]) -> Self {
        let mut c = LinChar { vals: vec![NONE; g.order()] };
        c.set_values(vals);
        c
    }

    pub(crate) fn set_values(&mut self, vals: &[(El, u32)]) {
        for &(x, v) in vals {
            self.vals[x as usize] = v;
        }
    }

    pub fn eval(&self, x: El) -> Option<u32> {
        let v = self.vals[x as usize];
        (v != NONE).then_some(v)
    }

    /// Panics off the domain.
    pub fn at(&self, x: El) -> u32 {
        let v = self.vals[x as usize];
        assert!(v != NONE, "linear character evaluated off its domain");
        v
    }

    pub fn restrict(&self, dom: &Subgroup) -> LinChar {
        let mut vals = vec![NONE; self.vals.len()];
        for &x in dom.members() {
            vals[x as usize] = self.vals[x as usize];
        }
        LinChar { vals }
    }

    /// Pointwise product on the common domain.
    pub fn mul(&self, o: &LinChar, m: u32) -> LinChar {
        let vals = self
            .vals
            .iter()
            .zip(&o.vals)
            .map(|(&a, &b)| if a == NONE || b == NONE { NONE } else { (a + b) % m })
            .collect();
        LinChar { vals }
    }

    pub fn inv(&self, m: u32) -> LinChar {
        let vals =
            self.vals.iter().map(|&a| if a == NONE { NONE } else { (m - a) % m }).collect();
        LinChar { vals }
    }

    pub fn is_trivial(&self) -> bool {
        self.vals.iter().all(|&v| v == NONE || v == 0)
    }

    /// Values on the listed elements (a compact key).
    pub fn key(&self, els: &[El]) -> Vec<u32> {
        els.iter().map(|&x| self.vals[x as usize]).collect()
    }

    /// Whether the character agrees with `o` wherever both are defined.
    pub fn agrees(&self, o: &LinChar) -> bool {
        self.vals.iter().zip(&o.vals).all(|(&a, &b)| a == NONE || b == NONE || a == b)
    }

    /// Union of two consistent characters on subgroups `h1`, `h2` whose product set is `hk`
    /// (both central in `hk`).
    pub fn product_on(
        &self,
        o: &LinChar,
        g: &Group,
        h1: &Subgroup,
        h2: &Subgroup,
        hk: &Subgroup,
    ) -> Result<LinChar, HeisError> {
        let m = g.ring().order() as u32;
        let mut vals = vec![NONE; g.order()];
        for &a in h1.members() {
            for &b in h2.members() {
                let x = g.mul(a, b);
                let v = (self.at(a) + o.at(b)) % m;
                if vals[x as usize] != NONE && vals[x as usize] != v {
                    return Err(HeisError::Precondition("characters disagree on the intersection".into()));
                }
                vals[x as usize] = v;
            }
        }
        if hk.members().iter().any(|&x| vals[x as usize] == NONE) {
            return Err(HeisError::Precondition("product does not cover the target".into()));
        }
        Ok(LinChar { vals })
    }

    pub fn to_class_fn(&self, g: &Group) -> ClassFn {
        let mut f = ClassFn::zero(g);
        for x in 0..g.order() as El {
            if let Some(v) = self.eval(x) {
                f.at_mut(x).copy_from_slice(g.ring().root(v as u64));
            }
        }
        f
    }

    /// Whether `a -> value(a)` is `eps`: the generator of `A` goes to `exp(2 pi i / |A|)`.
    pub fn is_eps_on_a(&self, g: &Group) -> bool {
        let m = g.ring().order() as u32;
        let a = g.a_pow(1);
        g.a_order() == 1 || self.eval(a) == Some(m / g.a_order() as u32)
    }

    /// Whether the restriction to `A` is faithful.
    pub fn is_faithful_on_a(&self, g: &Group) -> bool {
        let m = g.ring().order() as u32;
        match self.eval(g.a_pow(1)) {
            Some(v) => m / num_integer::gcd(m, v) == g.a_order() as u32 || g.a_order() == 1,
            None => false,
        }
    }
}

/// All linear characters of `to` restricting to `phi` on `from`, by extending one generator
/// at a time. Each step requires the current subgroup to be normal in the next and `phi`
/// to be invariant; a violation is reported rather than silently skipped.
pub fn lin_extensions(
    g: &Group,
    from: &Subgroup,
    phi: &LinChar,
    to: &Subgroup,
) -> Result<Vec<LinChar>, HeisError> {
    if !from.is_subset_of(to) {
        return Err(HeisError::Precondition("source subgroup not contained in target".into()));
    }
    let m = g.ring().order() as u32;
    let mut cur = from.clone();
    let mut chars = vec![phi.restrict(from)];
    for &t in to.gens() {
        if cur.contains(t) {
            continue;
        }
        if !cur.gens().iter().all(|&k| cur.contains(g.conj(t, k))) {
            return Err(HeisError::Precondition("intermediate subgroup not normalized".into()));
        }
        let mut e = 1u64;
        let mut te = t;
        while !cur.contains(te) {
            te = g.mul(te, t);
            e += 1;
        }
        let mut gens = cur.gens().to_vec();
        gens.push(t);
        let next = g.generate(&gens);
        let reps: Vec<El> = (0..e).map(|j| g.pow(t, j)).collect();
        let mut out = Vec::new();
        for c in &chars {
            if !cur.gens().iter().all(|&k| c.at(g.conj(t, k)) == c.at(k)) {
                return Err(HeisError::Precondition("character not invariant under extension".into()));
            }
            let target = c.at(te) as u64;
            for w in 0..m as u64 {
                if (e * w) % m as u64 != target {
                    continue;
                }
                let mut vals = vec![NONE; g.order()];
                for &k in cur.members() {
                    for (j, &r) in reps.iter().enumerate() {
                        let x = g.mul(k, r);
                        vals[x as usize] = ((c.at(k) as u64 + j as u64 * w) % m as u64) as u32;
                    }
                }
                out.push(LinChar { vals });
            }
        }
        chars = out;
        cur = next;
    }
    Ok(chars)
}

/// All linear characters of an abelian subgroup.
pub fn lin_characters(g: &Group, k: &Subgroup) -> Result<Vec<LinChar>, HeisError> {
    let t = g.trivial();
    lin_extensions(g, &t, &LinChar::trivial(g, &t), k)
}

/// `<a, b>_K = |K|^-1 sum_{x in K} a(x) conj(b(x))`.
pub fn inner(g: &Group, a: &ClassFn, b: &ClassFn, k: &Subgroup) -> Ratio<i64> {
    let ring = g.ring();
    let mut acc = vec![0i64; ring.phi()];
    for &x in k.members() {
        let p = ring.mul(a.at(x), &ring.conj(b.at(x)));
        for (s, v) in acc.iter_mut().zip(p) {
            *s += v;
        }
    }
    let num = ring.as_integer(&acc).expect("inner product of class functions is rational");
    Ratio::new(num, k.order() as i64)
}

pub fn restrict(a: &ClassFn, k: &Subgroup) -> ClassFn {
    let mut f = ClassFn { phi: a.phi, vals: vec![0; a.vals.len()] };
    for &x in k.members() {
        f.at_mut(x).copy_from_slice(a.at(x));
    }
    f
}

/// `Ind_from^to a`.
pub fn induce(g: &Group, a: &ClassFn, from: &Subgroup, to: &Subgroup) -> ClassFn {
    let mut f = ClassFn::zero(g);
    let reps = g.coset_reps(to, from);
    if g.is_normal_in(from, to) {
        for &x in from.members() {
            let dst = f.at_mut(x);
            for &t in &reps {
                let y = g.conj(g.inv(t), x);
                for (d, v) in dst.iter_mut().zip(a.at(y)) {
                    *d += v;
                }
            }
        }
    } else {
        for &x in to.members() {
            let mut acc = vec![0i64; a.phi];
            for &t in &reps {
                let y = g.conj(g.inv(t), x);
                if from.contains(y) {
                    for (d, v) in acc.iter_mut().zip(a.at(y)) {
                        *d += v;
                    }
                }
            }
            f.at_mut(x).copy_from_slice(&acc);
        }
    }
    f
}

/// Pointwise product with a linear character (zero where the latter is undefined).
pub fn twist(g: &Group, a: &ClassFn, l: &LinChar) -> ClassFn {
    let mut f = ClassFn::zero(g);
    for x in 0..g.order() as El {
        if let Some(v) = l.eval(x) {
            let y = g.ring().mul_root(a.at(x), v as u64);
            f.at_mut(x).copy_from_slice(&y);
        }
    }
    f
}

/// Complex conjugate (the character of the contragredient).
pub fn dual(g: &Group, a: &ClassFn) -> ClassFn {
    let mut f = ClassFn::zero(g);
    for x in 0..g.order() as El {
        let y = g.ring().conj(a.at(x));
        f.at_mut(x).copy_from_slice(&y);
    }
    f
}

/// Divide every coefficient by `k`; `None` if some coefficient is not divisible.
pub fn divide(a: &ClassFn, k: i64) -> Option<ClassFn> {
    if a.vals.iter().any(|v| v % k != 0) {
        return None;
    }
    Some(ClassFn { phi: a.phi, vals: a.vals.iter().map(|v| v / k).collect() })
}

/// Pointwise product of two class functions.
pub fn product(g: &Group, a: &ClassFn, b: &ClassFn) -> ClassFn {
    let mut f = ClassFn::zero(g);
    for x in 0..g.order() as El {
        let y = g.ring().mul(a.at(x), b.at(x));
        f.at_mut(x).copy_from_slice(&y);
    }
    f
}

/// `a^s(x) = a(s^-1 x s)`.
pub fn conjugate(g: &Group, a: &ClassFn, s: El) -> ClassFn {
    let mut f = ClassFn::zero(g);
    let si = g.inv(s);
    for x in 0..g.order() as El {
        let y = g.conj(si, x);
        f.at_mut(x).copy_from_slice(a.at(y));
    }
    f
}

/// Apply a group map to the argument: `(a . f)(x) = a(f(x))` for `x` in `dom`.
pub fn pull_back(g: &Group, a: &ClassFn, dom: &Subgroup, f: impl Fn(El) -> El) -> ClassFn {
    let mut out = ClassFn::zero(g);
    for &x in dom.members() {
        out.at_mut(x).copy_from_slice(a.at(f(x)));
    }
    out
}

/// Move a class function to another group through a map of elements. Both groups must use the
/// same cyclotomic ring.
pub fn transport(src: &Group, a: &ClassFn, dst: &Group, pairs: &[(El, El)]) -> ClassFn {
    assert_eq!(src.ring().order(), dst.ring().order());
    let mut out = ClassFn::zero(dst);
    for &(x, y) in pairs {
        out.at_mut(y).copy_from_slice(a.at(x));
    }
    out
}

/// Central character exponent `e` with `a(z) = deg a * zeta^e`.
pub fn central_exponent(g: &Group, a: &ClassFn, z: El) -> Option<u64> {
    g.ring().root_exponent(a.at(z), a.degree())
}

/// The central character of an irreducible `a` on `z` (a central subgroup).
pub fn central_char(g: &Group, a: &ClassFn, z: &Subgroup) -> Option<LinChar> {
    let mut vals = vec![NONE; g.order()];
    for &x in z.members() {
        vals[x as usize] = central_exponent(g, a, x)? as u32;
    }
    Some(LinChar { vals })
}

pub fn is_class_function(g: &Group, a: &ClassFn, k: &Subgroup) -> bool {
    k.members().iter().all(|&x| k.gens().iter().all(|&s| a.at(g.conj(s, x)) == a.at(x)))
}

#[derive(Debug, Clone)]
pub struct Irr {
    pub chi: ClassFn,
    pub central: LinChar,
}

impl Irr {
    pub fn degree(&self) -> i64 {
        self.chi.degree()
    }
}

/// Irreducible characters of a subgroup `K`, optionally restricted to central characters
/// accepted by a filter.
#[derive(Debug, Clone)]
pub struct CharTable {
    pub domain: Subgroup,
    pub center: Subgroup,
    pub irreps: Vec<Irr>,
    /// Whether every central character was accepted (so the table is complete).
    pub complete: bool,
}

impl CharTable {
    pub fn degree_square_sum(&self) -> i64 {
        self.irreps.iter().map(|i| i.degree() * i.degree()).sum()
    }

    pub fn position(&self, chi: &ClassFn) -> Option<usize> {
        self.irreps.iter().position(|i| &i.chi == chi)
    }

    /// Multiplicities of every irreducible in `a` (which must be a character of the domain).
    pub fn decompose(&self, g: &Group, a: &ClassFn) -> Vec<Ratio<i64>> {
        self.irreps.iter().map(|i| inner(g, a, &i.chi, &self.domain)).collect()
    }
}

/// Monomial construction: for each central character `lam` of `K`, induce the extensions of
/// `lam` from a maximal `lam`-isotropic subgroup; certified by norms and degree sums.
pub fn irreducible_characters(
    g: &Group,
    k: &Subgroup,
    accept: impl Fn(&LinChar) -> bool,
) -> Result<CharTable, HeisError> {
    let z = g.center(k);
    for &x in k.members() {
        for &y in k.gens() {
            if !z.contains(g.comm(x, y)) {
                return Err(HeisError::Engine("commutators are not central".into()));
            }
        }
    }
    let mut irreps = Vec::new();
    let mut complete = true;
    let kz = (k.order() / z.order()) as i64;
    for lam in lin_characters(g, &z)? {
        if !accept(&lam) {
            complete = false;
            continue;
        }
        let pair = |x: El, y: El| lam.at(g.comm(x, y));
        let rad = g.filter(k, |x| k.gens().iter().all(|&y| pair(x, y) == 0));
        let mut m = rad.clone();
        for &x in k.members() {
            if !m.contains(x) && m.gens().iter().all(|&y| pair(x, y) == 0) {
                let mut gens = m.gens().to_vec();
                gens.push(x);
                m = g.generate(&gens);
            }
        }
        let deg = (k.order() / m.order()) as i64;
        if deg * deg != (k.order() / rad.order()) as i64 {
            return Err(HeisError::Engine("isotropic subgroup is not Lagrangian".into()));
        }
        let mut by_rad: BTreeMap<Vec<u32>, LinChar> = BTreeMap::new();
        for mu in lin_extensions(g, &z, &lam, &m)? {
            by_rad.entry(mu.key(rad.members())).or_insert(mu);
        }
        let mut sum = 0i64;
        for mu in by_rad.into_values() {
            let chi = induce(g, &mu.to_class_fn(g), &m, k);
            if inner(g, &chi, &chi, k) != Ratio::from_integer(1) {
                return Err(HeisError::Engine("induced character is reducible".into()));
            }
            sum += chi.degree() * chi.degree();
            irreps.push(Irr { chi, central: lam.clone() });
        }
        if sum != kz {
            return Err(HeisError::Engine(format!(
                "degree squares over one central character sum to {sum}, expected {kz}"
            )));
        }
    }
    let t = CharTable { domain: k.clone(), center: z, irreps, complete };
    if complete && t.degree_square_sum() != k.order() as i64 {
        return Err(HeisError::Engine("sum of squared degrees differs from the group order".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::super::group::fixtures::*;
    use super::*;

    #[test]
    fn heis27_table() {
        let g = heis27();
        let w = g.whole();
        let t = irreducible_characters(&g, &w, |_| true).unwrap();
        assert!(t.complete);
        let mut degs: Vec<i64> = t.irreps.iter().map(|i| i.degree()).collect();
        degs.sort_unstable();
        assert_eq!(degs, [vec![1; 9], vec![3; 2]].concat());
        assert_eq!(t.degree_square_sum(), 27);
        for (i, a) in t.irreps.iter().enumerate() {
            assert!(is_class_function(&g, &a.chi, &w));
            for (j, b) in t.irreps.iter().enumerate() {
                let ip = inner(&g, &a.chi, &b.chi, &w);
                assert_eq!(ip, Ratio::from_integer((i == j) as i64));
            }
        }
        let genuine = irreducible_characters(&g, &w, |l| l.is_faithful_on_a(&g)).unwrap();
        assert_eq!(genuine.irreps.len(), 2);
        assert!(!genuine.complete);
    }

    #[test]
    fn cyclic_dual_and_extensions() {
        let g = cyclic(4, 2);
        let w = g.whole();
        let t = irreducible_characters(&g, &w, |_| true).unwrap();
        assert_eq!(t.irreps.len(), 4);
        let h = g.generate(&[2]);
        let triv = LinChar::trivial(&g, &h);
        assert_eq!(lin_extensions(&g, &h, &triv, &w).unwrap().len(), 2);
        let eps: Vec<_> = t.irreps.iter().filter(|i| i.central.is_eps_on_a(&g)).collect();
        assert_eq!(eps.len(), 2);
    }

    #[test]
    fn mackey_on_cyclic() {
        let g = cyclic(4, 2);
        let w = g.whole();
        let h = g.generate(&[2]);
        for tau in lin_characters(&g, &h).unwrap() {
            let t = tau.to_class_fn(&g);
            let back = restrict(&induce(&g, &t, &h, &w), &h);
            assert_eq!(back, t.scale(2));
        }
    }

    #[test]
    fn nonnormal_induction_s3() {
        let g = s3();
        let w = g.whole();
        let h = g.generate(&[1]);
        let triv = LinChar::trivial(&g, &h).to_class_fn(&g);
        let ind = induce(&g, &triv, &h, &w);
        assert_eq!(ind.degree(), 3);
        assert_eq!(inner(&g, &ind, &ind, &w), Ratio::from_integer(2));
        assert!(irreducible_characters(&g, &w, |_| true).is_err());
    }
}
