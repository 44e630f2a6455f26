//! The Kazhdan-Patterson cocycle on diagonal tori and its finite models.
//!
//! A torus element is a vector of `r` classes in `F^x/F^{x n}`; flattened it is a vector in
//! `(Z/n)^{2r}` ordered `(v_0, w_0, v_1, w_1, ...)`. The cocycle is bilinear in these
//! coordinates, so every model here is a central extension of `(Z/n)^{2r}` by `mu_n`.

use crate::finabel::{FinAbGroup, SubgroupHandle};
use crate::heis::{Group, HeisError};
use crate::localclass::{hilbert_exp, FieldError, LocalFieldSpec, MuN, UnitClass};
use crate::report::Report;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid composition: {0}")]
    BadComposition(String),
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("model too large: {needed} checks exceed the cap of {cap}")]
    TooLarge { needed: u64, cap: u64 },
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error("{0} is not a perfect square")]
    NotSquare(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSpec {
    pub field: LocalFieldSpec,
    /// Reduced mod `n`.
    pub c: u64,
    pub beta: Vec<usize>,
}

impl CoverSpec {
    pub fn new(p: u64, n: u64, c: i64, beta: Vec<usize>) -> Result<Self, CoverError> {
        Self::from_field(LocalFieldSpec::new(p, n)?, c, beta)
    }

    pub fn from_field(field: LocalFieldSpec, c: i64, beta: Vec<usize>) -> Result<Self, CoverError> {
        if beta.is_empty() || beta.iter().any(|&r| r == 0) {
            return Err(CoverError::BadComposition(format!("{beta:?}")));
        }
        Ok(CoverSpec { field, c: c.rem_euclid(field.n as i64) as u64, beta })
    }

    pub fn with_beta(&self, beta: Vec<usize>) -> Result<Self, CoverError> {
        Self::from_field(self.field, self.c as i64, beta)
    }

    pub fn n(&self) -> u64 {
        self.field.n
    }
    pub fn r(&self) -> usize {
        self.beta.iter().sum()
    }
    /// `c' = 2c + 1 mod n`.
    pub fn c_prime(&self) -> u64 {
        (2 * self.c + 1) % self.n()
    }

    /// Coordinate ranges of the blocks.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut s = 0;
        self.beta
            .iter()
            .map(|&ri| {
                s += ri;
                s - ri..s
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"p": self.field.p, "n": self.n(), "c": self.c, "beta": self.beta})
    }
}

pub type Coords = Vec<UnitClass>;

fn check_len(spec: &CoverSpec, x: &[UnitClass]) -> Result<(), CoverError> {
    if x.len() != spec.r() {
        return Err(CoverError::LengthMismatch { expected: spec.r(), got: x.len() });
    }
    Ok(())
}

/// `det`: the product of the diagonal classes.
pub fn det(x: &[UnitClass], n: u64) -> UnitClass {
    x.iter().fold(UnitClass::ONE, |a, &b| a.mul(b, n))
}

/// A bilinear torus cocycle `sigma(x, y) = sum_{a,b} coef[a][b] * h(x_a, y_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusForm {
    field: LocalFieldSpec,
    r: usize,
    coef: Vec<u64>,
}

impl TorusForm {
    fn kp_coef(c: u64, n: u64, a: usize, b: usize) -> u64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => (c + 1) % n,
            _ => c % n,
        }
    }

    /// The cocycle of `G_r` restricted to its diagonal torus.
    pub fn levi(spec: &CoverSpec) -> Self {
        let (r, n) = (spec.r(), spec.n());
        let coef = (0..r * r).map(|k| Self::kp_coef(spec.c, n, k / r, k % r)).collect();
        TorusForm { field: spec.field, r, coef }
    }

    /// The product cover `(G_{r_1} x ... x G_{r_k}) / Xi`: blocks do not interact.
    pub fn product(spec: &CoverSpec) -> Self {
        let (r, n) = (spec.r(), spec.n());
        let blocks = spec.blocks();
        let block_of: Vec<usize> =
            (0..r).map(|a| blocks.iter().position(|b| b.contains(&a)).unwrap()).collect();
        let coef = (0..r * r)
            .map(|k| {
                let (a, b) = (k / r, k % r);
                if block_of[a] == block_of[b] {
                    Self::kp_coef(spec.c, n, a, b)
                } else {
                    0
                }
            })
            .collect();
        TorusForm { field: spec.field, r, coef }
    }

    pub fn eval(&self, x: &[UnitClass], y: &[UnitClass]) -> u64 {
        let n = self.field.n;
        let mut t = 0;
        for (a, &xa) in x.iter().enumerate() {
            if xa.is_one() {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                let k = self.coef[a * self.r + b];
                if k != 0 {
                    t = (t + k * hilbert_exp(&self.field, xa, yb)) % n;
                }
            }
        }
        t
    }
}

/// `sigma^(c)(x, y)` on the diagonal torus.
pub fn torus_cocycle(spec: &CoverSpec, x: &[UnitClass], y: &[UnitClass]) -> Result<MuN, CoverError> {
    check_len(spec, x)?;
    check_len(spec, y)?;
    Ok(MuN { e: TorusForm::levi(spec).eval(x, y), n: spec.n() })
}

/// `sigma(x, y) sigma(y, x)^-1`.
pub fn commutator(spec: &CoverSpec, x: &[UnitClass], y: &[UnitClass]) -> Result<MuN, CoverError> {
    let f = torus_cocycle(spec, x, y)?;
    let b = torus_cocycle(spec, y, x)?;
    Ok(f.mul(b.inv()))
}

/// Closed form of the torus commutator: `prod_i h(x_i, y_i)^{2c} * prod_{i != j} h(x_i, y_j)^{c'}`.
pub fn commutator_closed_form(spec: &CoverSpec, x: &[UnitClass], y: &[UnitClass]) -> MuN {
    let n = spec.n();
    let mut t = 0;
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            let k = if i == j { 2 * spec.c } else { spec.c_prime() };
            t = (t + k * hilbert_exp(&spec.field, xi, yj)) % n;
        }
    }
    MuN { e: t, n }
}

/// Only the off-diagonal factor `prod_{i != j} h(x_i, y_j)^{c'}`. Equals the commutator exactly
/// when `2c = 0 mod n`.
pub fn commutator_offdiagonal(spec: &CoverSpec, x: &[UnitClass], y: &[UnitClass]) -> MuN {
    let n = spec.n();
    let mut t = 0;
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            if i != j {
                t = (t + spec.c_prime() * hilbert_exp(&spec.field, xi, yj)) % n;
            }
        }
    }
    MuN { e: t, n }
}

/// Block-scalar commutator `prod_i (lam_i, det(g)^{r_i c'} det(g_i)^{-1})`.
pub fn block_scalar_commutator(spec: &CoverSpec, lam: &[UnitClass], g: &[UnitClass]) -> MuN {
    let n = spec.n();
    let dg = det(g, n);
    let mut t = 0;
    for (i, blk) in spec.blocks().into_iter().enumerate() {
        let dgi = det(&g[blk.clone()], n);
        let arg = dg.pow((blk.len() as u64 * spec.c_prime()) as i64, n).mul(dgi.inv(n), n);
        t = (t + hilbert_exp(&spec.field, lam[i], arg)) % n;
    }
    MuN { e: t, n }
}

/// Expand block scalars `(lam_1 I_{r_1}, ...)` to torus coordinates.
pub fn block_scalar(spec: &CoverSpec, lam: &[UnitClass]) -> Coords {
    spec.beta.iter().zip(lam).flat_map(|(&ri, &l)| std::iter::repeat(l).take(ri)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusCoverElement {
    pub zeta: MuN,
    pub base: u64,
}

/// Which cocycle a model uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    /// The torus of `G_beta` inside `G_r`.
    Levi,
    /// The torus of `(G_{r_1} x ... x G_{r_k}) / Xi`.
    Product,
}

/// Explicit finite central extension of `(Z/n)^{2r}` by `mu_n`. Element index is
/// `zeta + n * base`, base indices are little-endian digits in `(v_0, w_0, v_1, ...)`.
#[derive(Debug, Clone)]
pub struct FiniteCoverGroup {
    pub spec: CoverSpec,
    pub kind: ModelKind,
    form: TorusForm,
    perturb: bool,
}

/// Order of the cyclotomic ring used for all models with this `n`: the model exponent
/// divides `n` for odd `n` and `2n` for even `n`.
pub fn ring_order(n: u64) -> u32 {
    if n % 2 == 1 {
        n as u32
    } else {
        2 * n as u32
    }
}

impl FiniteCoverGroup {
    pub fn levi(spec: &CoverSpec) -> Self {
        FiniteCoverGroup { spec: spec.clone(), kind: ModelKind::Levi, form: TorusForm::levi(spec), perturb: false }
    }

    pub fn product(spec: &CoverSpec) -> Self {
        FiniteCoverGroup {
            spec: spec.clone(),
            kind: ModelKind::Product,
            form: TorusForm::product(spec),
            perturb: false,
        }
    }

    /// Negative control: adds `zeta` to `sigma(e_0, 1)`, breaking the cocycle identity for `n > 1`.
    pub fn perturbed(mut self) -> Self {
        self.perturb = true;
        self
    }

    pub fn n(&self) -> u64 {
        self.spec.n()
    }
    pub fn rank(&self) -> usize {
        2 * self.spec.r()
    }
    pub fn base_group(&self) -> FinAbGroup {
        FinAbGroup::homocyclic(self.n(), self.rank())
    }
    pub fn base_order(&self) -> u64 {
        self.n().pow(self.rank() as u32)
    }
    pub fn order(&self) -> u64 {
        self.n() * self.base_order()
    }

    pub fn coords(&self, base: u64) -> Coords {
        let n = self.n();
        let mut b = base;
        (0..self.spec.r())
            .map(|_| {
                let v = b % n;
                b /= n;
                let w = b % n;
                b /= n;
                UnitClass { v, w }
            })
            .collect()
    }

    pub fn base_index(&self, x: &[UnitClass]) -> u64 {
        let n = self.n();
        x.iter().rev().fold(0, |acc, u| (acc * n + u.w) * n + u.v)
    }

    /// Flat `(Z/n)^{2r}` vector for a base index.
    pub fn base_vector(&self, base: u64) -> Vec<u64> {
        self.coords(base).iter().flat_map(|u| [u.v, u.w]).collect()
    }

    pub fn base_add(&self, a: u64, b: u64) -> u64 {
        let n = self.n();
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.rank() {
            out += ((a % n + b % n) % n) * place;
            a /= n;
            b /= n;
            place *= n;
        }
        out
    }

    pub fn sigma(&self, x: &[UnitClass], y: &[UnitClass]) -> u64 {
        let mut s = self.form.eval(x, y);
        if self.perturb && self.n() > 1 && self.base_index(x) == 1 && self.base_index(y) == 0 {
            s = (s + 1) % self.n();
        }
        s
    }

    fn sigma_table(&self) -> Vec<u32> {
        let b = self.base_order();
        let cs: Vec<Coords> = (0..b).map(|i| self.coords(i)).collect();
        let mut t = vec![0u32; (b * b) as usize];
        for i in 0..b as usize {
            for j in 0..b as usize {
                t[i * b as usize + j] = self.sigma(&cs[i], &cs[j]) as u32;
            }
        }
        t
    }

    fn add_table(&self) -> Vec<u32> {
        let b = self.base_order();
        let mut t = vec![0u32; (b * b) as usize];
        for i in 0..b {
            for j in 0..b {
                t[(i * b + j) as usize] = self.base_add(i, j) as u32;
            }
        }
        t
    }

    pub fn element(&self, idx: u64) -> TorusCoverElement {
        TorusCoverElement { zeta: MuN::new((idx % self.n()) as i64, self.n()), base: idx / self.n() }
    }

    pub fn index(&self, e: &TorusCoverElement) -> u64 {
        e.zeta.e + self.n() * e.base
    }

    pub fn mul(&self, a: &TorusCoverElement, b: &TorusCoverElement) -> TorusCoverElement {
        let s = self.sigma(&self.coords(a.base), &self.coords(b.base));
        TorusCoverElement {
            zeta: a.zeta.mul(b.zeta).mul(MuN::new(s as i64, self.n())),
            base: self.base_add(a.base, b.base),
        }
    }

    /// Multiplication table as a [`Group`] with `A = mu_n`; needs `order^2 <= cap`.
    pub fn table(&self, cap: u64) -> Result<Group, CoverError> {
        let ord = self.order();
        if ord * ord > cap.max(ord) {
            return Err(CoverError::TooLarge { needed: ord * ord, cap });
        }
        let n = self.n();
        let sig = self.sigma_table();
        let add = self.add_table();
        let b = self.base_order();
        let a_gen = if n > 1 { 1 } else { 0 };
        let g = Group::from_fn(
            ord as usize,
            |x, y| {
                let (zx, bx) = (x as u64 % n, x as u64 / n);
                let (zy, by) = (y as u64 % n, y as u64 / n);
                let s = sig[(bx * b + by) as usize] as u64;
                let base = add[(bx * b + by) as usize] as u64;
                ((zx + zy + s) % n + n * base) as u32
            },
            a_gen,
            Some(ring_order(n)),
            false,
        )?;
        Ok(g)
    }

    /// Element indices of the preimage of a set of base indices.
    pub fn preimage(&self, bases: &[u64]) -> Vec<u32> {
        let n = self.n();
        let mut v: Vec<u32> =
            bases.iter().flat_map(|&b| (0..n).map(move |z| (z + n * b) as u32)).collect();
        v.sort_unstable();
        v
    }

    /// Preimage of a base subgroup as a subgroup of the table group.
    pub fn model_subgroup(&self, grp: &Group, s: &SubgroupHandle) -> Result<crate::heis::Subgroup, CoverError> {
        let bases: Vec<u64> = s.elements().iter().map(|v| self.vector_index(v)).collect();
        Ok(grp.subgroup_of(&self.preimage(&bases))?)
    }

    /// Base index of a flat `(Z/n)^{2r}` vector.
    pub fn vector_index(&self, v: &[u64]) -> u64 {
        let n = self.n();
        v.iter().rev().fold(0, |acc, &d| acc * n + d % n)
    }
}

/// Exhaustive check of `sigma(x,y) sigma(xy,z) = sigma(y,z) sigma(x,yz)` plus normalization.
pub fn verify_cocycle_condition(model: &FiniteCoverGroup, cap: u64) -> Result<Report, CoverError> {
    let b = model.base_order();
    let needed = b * b * b;
    if needed > cap {
        return Err(CoverError::TooLarge { needed, cap });
    }
    let mut rep = Report::new("cocycle", model.spec.to_json());
    let n = model.n() as u32;
    let sig = model.sigma_table();
    let add = model.add_table();
    let bu = b as usize;
    'scan: for x in 0..bu {
        for y in 0..bu {
            let sxy = sig[x * bu + y];
            let xy = add[x * bu + y] as usize;
            for z in 0..bu {
                let yz = add[y * bu + z] as usize;
                let l = (sxy + sig[xy * bu + z]) % n;
                let r = (sig[y * bu + z] + sig[x * bu + yz]) % n;
                if l != r {
                    rep.fail(json!({
                        "x": model.coords(x as u64), "y": model.coords(y as u64),
                        "z": model.coords(z as u64), "lhs": l, "rhs": r
                    }));
                    break 'scan;
                }
            }
        }
    }
    for x in 0..bu {
        if sig[x] != 0 || sig[x * bu] != 0 {
            rep.fail(json!({"normalization": model.coords(x as u64)}));
            break;
        }
    }
    rep.set("model", model.kind);
    rep.set("triples", needed);
    Ok(rep)
}

/// Commutator identities on all pairs: closed form, antisymmetry, bimultiplicativity
/// (against a basis), and the literal off-diagonal formula (counted separately).
pub fn commutator_identities(spec: &CoverSpec, cap: u64) -> Result<Report, CoverError> {
    let model = FiniteCoverGroup::levi(spec);
    let b = model.base_order();
    let needed = b * b * (model.rank() as u64 + 1);
    if needed > cap {
        return Err(CoverError::TooLarge { needed, cap });
    }
    let n = spec.n();
    let mut rep = Report::new("commutator", spec.to_json());
    let cs: Vec<Coords> = (0..b).map(|i| model.coords(i)).collect();
    let comm_e = |x: &Coords, y: &Coords| {
        (model.sigma(x, y) + n - model.sigma(y, x)) % n
    };
    let basis: Vec<u64> = (0..model.rank()).map(|k| n.pow(k as u32)).collect();
    let mut offdiag_disagree = 0u64;
    for x in 0..b {
        for y in 0..b {
            let (cx, cy) = (&cs[x as usize], &cs[y as usize]);
            let e = comm_e(cx, cy);
            if e != commutator_closed_form(spec, cx, cy).e {
                rep.fail(json!({"identity": "closed form", "x": cx, "y": cy}));
            }
            if (e + comm_e(cy, cx)) % n != 0 {
                rep.fail(json!({"identity": "antisymmetry", "x": cx, "y": cy}));
            }
            if commutator_offdiagonal(spec, cx, cy).e != e {
                offdiag_disagree += 1;
            }
            for &bv in &basis {
                if n == 1 {
                    break;
                }
                let s = &cs[model.base_add(x, bv) as usize];
                let cb = &cs[bv as usize];
                if comm_e(s, cy) != (e + comm_e(cb, cy)) % n {
                    rep.fail(json!({"identity": "bimultiplicative", "x": cx, "e": cb, "y": cy}));
                }
            }
        }
    }
    let two_c_zero = (2 * spec.c) % n == 0;
    rep.set("pairs", b * b);
    rep.set("offdiagonal_disagreements", offdiag_disagree);
    rep.set("two_c_is_zero", two_c_zero);
    rep.require(
        (offdiag_disagree == 0) == two_c_zero,
        "off-diagonal formula agrees exactly when 2c = 0",
        json!(offdiag_disagree),
    );
    if !two_c_zero {
        rep.note("the off-diagonal product alone omits the diagonal factor h(x_i, y_i)^{2c}");
    }
    Ok(rep)
}

/// Scalar and block-scalar commutator closed forms against every torus element.
pub fn scalar_commutator_check(spec: &CoverSpec, cap: u64) -> Result<Report, CoverError> {
    let model = FiniteCoverGroup::levi(spec);
    let n = spec.n();
    let k = spec.beta.len() as u32;
    let b = model.base_order();
    let needed = b * (n * n + n.pow(2 * k));
    if needed > cap {
        return Err(CoverError::TooLarge { needed, cap });
    }
    let mut rep = Report::new("scalar-commutator", spec.to_json());
    let r = spec.r() as u64;
    let classes: Vec<UnitClass> = spec.field.classes().collect();
    let block_model = FiniteCoverGroup::levi(&spec.with_beta(vec![1; k as usize])?);
    for g in 0..b {
        let cg = model.coords(g);
        let dg = det(&cg, n);
        for &lam in &classes {
            let z = vec![lam; spec.r()];
            let lhs = commutator(spec, &z, &cg)?.e;
            let rhs = ((r * spec.c_prime() + n - 1) % n) * hilbert_exp(&spec.field, lam, dg) % n;
            if lhs != rhs {
                rep.fail(json!({"identity": "scalar", "lambda": lam, "g": cg, "lhs": lhs, "rhs": rhs}));
            }
        }
        for li in 0..n.pow(2 * k) {
            let lam = block_model.coords(li);
            let z = block_scalar(spec, &lam);
            let lhs = commutator(spec, &z, &cg)?.e;
            let rhs = block_scalar_commutator(spec, &lam, &cg).e;
            if lhs != rhs {
                rep.fail(json!({"identity": "block", "lambda": lam, "g": cg, "lhs": lhs, "rhs": rhs}));
            }
        }
    }
    rep.set("torus_elements", b);
    Ok(rep)
}

/// Brute-force center of the torus model against the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    /// Base indices of central elements (the center is their preimage).
    pub brute: Vec<u64>,
    pub closed_form: Vec<u64>,
    pub equal: bool,
    /// `[Z(G_r) : Z_{r,sml}]`.
    pub index_over_small: u64,
}

fn scalar_classes_killed_by(spec: &CoverSpec, k: u64) -> Vec<UnitClass> {
    let n = spec.n();
    spec.field.classes().filter(|l| l.pow(k as i64, n).is_one()).collect()
}

pub fn center(spec: &CoverSpec) -> CenterReport {
    let model = FiniteCoverGroup::levi(spec);
    let n = spec.n();
    let b = model.base_order();
    let cs: Vec<Coords> = (0..b).map(|i| model.coords(i)).collect();
    let brute: Vec<u64> = (0..b)
        .filter(|&x| {
            let cx = &cs[x as usize];
            cs.iter().all(|cy| model.sigma(cx, cy) == model.sigma(cy, cx))
        })
        .collect();
    let k = (spec.r() as u64 * spec.c_prime() + n - 1) % n;
    let mut closed: Vec<u64> = scalar_classes_killed_by(spec, k)
        .into_iter()
        .map(|l| model.base_index(&vec![l; spec.r()]))
        .collect();
    closed.sort_unstable();
    CenterReport { equal: brute == closed, index_over_small: brute.len() as u64, brute, closed_form: closed }
}

/// The distinguished subgroups as subgroups of the base `(Z/n)^{2r}` (each model subgroup is
/// the preimage, of order `n` times the base order).
#[derive(Debug, Clone)]
pub struct DistinguishedSubgroups {
    pub z_beta: SubgroupHandle,
    pub z_small: SubgroupHandle,
    pub z_large: SubgroupHandle,
    pub h_beta: SubgroupHandle,
    pub center: SubgroupHandle,
}

impl DistinguishedSubgroups {
    pub fn model_orders(&self, n: u64) -> Value {
        json!({
            "z_beta": n * self.z_beta.order(),
            "z_small": n * self.z_small.order(),
            "z_large": n * self.z_large.order(),
            "h_beta": n * self.h_beta.order(),
            "center": n * self.center.order(),
        })
    }
}

fn unit_vec(len: usize, positions: impl Iterator<Item = usize>, scale: u64) -> Vec<u64> {
    let mut v = vec![0; len];
    for p in positions {
        v[p] = scale;
    }
    v
}

pub fn distinguished_subgroups(spec: &CoverSpec) -> Result<(DistinguishedSubgroups, Report), CoverError> {
    let model = FiniteCoverGroup::levi(spec);
    let n = spec.n();
    let base = model.base_group();
    let len = model.rank();
    let wrap = |e| CoverError::BadComposition(format!("{e}"));
    let mut zb = Vec::new();
    let mut zl = Vec::new();
    let mut hb = Vec::new();
    for blk in spec.blocks() {
        let ri = blk.len() as u64;
        let m = n / num_integer::gcd(n, ri);
        for off in 0..2 {
            zb.push(unit_vec(len, blk.clone().map(|a| 2 * a + off), 1));
            zl.push(unit_vec(len, blk.clone().map(|a| 2 * a + off), m % n));
            for a in blk.clone().skip(1) {
                let mut v = vec![0; len];
                v[2 * a + off] = 1;
                v[2 * blk.start + off] = (n - 1) % n;
                hb.push(v);
            }
        }
    }
    let cen = center(spec);
    let cvecs: Vec<Vec<u64>> = cen.brute.iter().map(|&x| model.base_vector(x)).collect();
    let d = DistinguishedSubgroups {
        z_beta: SubgroupHandle::new(&base, zb).map_err(wrap)?,
        z_small: SubgroupHandle::trivial(&base),
        z_large: SubgroupHandle::new(&base, zl).map_err(wrap)?,
        h_beta: SubgroupHandle::new(&base, hb).map_err(wrap)?,
        center: SubgroupHandle::new(&base, cvecs).map_err(wrap)?,
    };
    let mut rep = Report::new("subgroups", spec.to_json());
    rep.require(
        d.center.order() == cen.brute.len() as u64,
        "brute-force center is a subgroup",
        json!(cen.brute),
    );
    rep.require(cen.equal, "center closed form", json!({"brute": cen.brute, "closed": cen.closed_form}));
    let zsl = d.z_large.intersect(&d.center).map_err(wrap)?;
    rep.require(zsl == d.z_small, "Z_lrg n Z(G_beta) = Z_sml", json!(zsl.canonical_generators()));
    let full = spec.with_beta(vec![spec.r()])?;
    let zr: Vec<Vec<u64>> = center(&full).closed_form.iter().map(|&x| model.base_vector(x)).collect();
    let zr = SubgroupHandle::new(&base, zr).map_err(wrap)?;
    let prod = zr.join(&d.z_small).map_err(wrap)?;
    rep.require(prod == d.center, "Z(G_beta) = Z(G_r) Z_sml", json!(prod.canonical_generators()));
    rep.require(d.center.is_subgroup_of(&d.z_beta), "Z(G_beta) <= Z_beta", json!(null));
    let expect_h = n.pow(2 * (spec.r() - spec.beta.len()) as u32);
    rep.require(d.h_beta.order() == expect_h, "|H_beta n T| base order", json!(d.h_beta.order()));
    rep.set("orders", d.model_orders(n));
    Ok((d, rep))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub a: u64,
    pub b: u64,
    pub idx: u64,
    /// `a^-2 b = idx^-1` as rationals.
    pub identity_holds: bool,
}

/// `b = [Z_r : Z_{r,lrg}]`, `idx = [Z(G_r) : Z_{r,sml}]`, `a = sqrt(b idx)`.
pub fn intertwining_constants(spec: &CoverSpec) -> Result<Constants, CoverError> {
    if spec.beta.len() != 1 {
        return Err(CoverError::BadComposition("constants need beta = (r)".into()));
    }
    let n = spec.n();
    let r = spec.r() as u64;
    let large = scalar_classes_killed_by(spec, r).len() as u64;
    let b = n * n / large;
    let idx = center(spec).index_over_small;
    let prod = b * idx;
    let a = (prod as f64).sqrt().round() as u64;
    if a * a != prod {
        return Err(CoverError::NotSquare(prod));
    }
    let lhs = Ratio::new(b as i64, (a * a) as i64);
    let rhs = Ratio::new(1, idx as i64);
    Ok(Constants { a, b, idx, identity_holds: lhs == rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uc(v: u64, w: u64) -> UnitClass {
        UnitClass { v, w }
    }

    #[test]
    fn cocycle_examples() {
        let s = CoverSpec::new(7, 3, 1, vec![2]).unwrap();
        let x = vec![uc(1, 0), uc(0, 0)];
        let y = vec![uc(0, 1), uc(0, 0)];
        assert_eq!(torus_cocycle(&s, &x, &y).unwrap().e, 2);
        assert_eq!(torus_cocycle(&s, &[UnitClass::ONE; 2], &y).unwrap().e, 0);
        let s0 = CoverSpec::new(7, 3, 0, vec![1]).unwrap();
        for a in s0.field.classes() {
            for b in s0.field.classes() {
                assert_eq!(torus_cocycle(&s0, &[a], &[b]).unwrap().e, 0);
            }
        }
        assert!(torus_cocycle(&s, &x[..1], &y).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let m = FiniteCoverGroup::levi(&CoverSpec::new(7, 3, 1, vec![1, 1]).unwrap());
        for i in 0..m.base_order() {
            assert_eq!(m.base_index(&m.coords(i)), i);
        }
        assert_eq!(m.base_add(1, 2), 0);
        assert_eq!(m.base_add(1, 3), 4);
        assert_eq!(m.base_add(2, 2), 1);
    }

    #[test]
    fn small_models_are_cocycles() {
        for (p, n, c, beta) in [(5, 2, 0, vec![2]), (5, 2, 1, vec![2]), (7, 3, 2, vec![2]), (7, 1, 0, vec![3])] {
            let s = CoverSpec::new(p, n, c, beta).unwrap();
            let r = verify_cocycle_condition(&FiniteCoverGroup::levi(&s), 1 << 24).unwrap();
            assert!(r.pass, "{:?}", r.counterexample);
            let r = verify_cocycle_condition(&FiniteCoverGroup::product(&s), 1 << 24).unwrap();
            assert!(r.pass);
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let s = CoverSpec::new(5, 2, 0, vec![1, 1]).unwrap();
        let r = verify_cocycle_condition(&FiniteCoverGroup::levi(&s).perturbed(), 1 << 20).unwrap();
        assert!(!r.pass);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let s = CoverSpec::new(7, 3, 0, vec![1, 1]).unwrap();
        assert!(matches!(
            verify_cocycle_condition(&FiniteCoverGroup::levi(&s), 1000),
            Err(CoverError::TooLarge { .. })
        ));
    }

    #[test]
    fn centers_and_constants() {
        let s = CoverSpec::new(5, 2, 0, vec![2]).unwrap();
        let c = center(&s);
        assert!(c.equal);
        assert_eq!(c.brute, vec![0]);
        let s = CoverSpec::new(13, 4, 0, vec![3]).unwrap();
        let c = center(&s);
        assert!(c.equal);
        assert_eq!(c.index_over_small, 4);
        let k = intertwining_constants(&s).unwrap();
        assert_eq!((k.a, k.b, k.idx), (8, 16, 4));
        assert!(k.identity_holds);
        let one = CoverSpec::new(7, 1, 0, vec![2]).unwrap();
        let k = intertwining_constants(&one).unwrap();
        assert_eq!((k.a, k.b, k.idx), (1, 1, 1));
        assert_eq!(center(&one).brute.len(), 1);
    }

    #[test]
    fn distinguished_examples() {
        let s = CoverSpec::new(5, 2, 0, vec![1, 1]).unwrap();
        let (d, rep) = distinguished_subgroups(&s).unwrap();
        assert!(rep.pass, "{:?}", rep.counterexample);
        assert_eq!(d.z_beta.order(), 16);
        assert_eq!(d.h_beta.order(), 1);
        let s = CoverSpec::new(7, 3, 1, vec![2]).unwrap();
        let (d, rep) = distinguished_subgroups(&s).unwrap();
        assert!(rep.pass);
        assert_eq!(d.z_beta.order() / d.z_large.order(), 9);
        let s = CoverSpec::new(7, 3, 1, vec![1, 2]).unwrap();
        let (d, rep) = distinguished_subgroups(&s).unwrap();
        assert!(rep.pass);
        assert_eq!(3 * d.h_beta.order(), 27);
    }

    #[test]
    fn table_matches_mul() {
        let s = CoverSpec::new(7, 3, 1, vec![1, 1]).unwrap();
        let m = FiniteCoverGroup::levi(&s);
        let g = m.table(1 << 24).unwrap();
        assert_eq!(g.order(), 243);
        for i in (0..243).step_by(7) {
            for j in (0..243).step_by(5) {
                let e = m.mul(&m.element(i), &m.element(j));
                assert_eq!(g.mul(i as u32, j as u32) as u64, m.index(&e));
            }
        }
    }
}
