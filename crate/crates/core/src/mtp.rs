//! Product covers `(G_{r_1} x ... x G_{r_k}) / Xi` on the torus, well-matched special pairs,
//! the transfer between the two covers, and the metaplectic tensor product built from it.
//!
//! Both covers of a composition `beta` share the base `(Z/n)^{2r}` and the element encoding
//! of [`FiniteCoverGroup`], so the isomorphism between the `H` parts is the identity on
//! element indices once the multiplication tables are shown to agree there.

use crate::cover::{det, distinguished_subgroups, CoverError, CoverSpec, FiniteCoverGroup};
use crate::heis::chars::{self, central_char, inner, irreducible_characters, lin_characters, CharTable};
use crate::heis::lind::LindContext;
use crate::heis::special::{is_special_pair, SpecialPairData};
use crate::heis::{ClassFn, El, Group, HeisError, LinChar, Subgroup};
use crate::localclass::{hilbert_exp, UnitClass};
use crate::report::Report;
use num_rational::Ratio;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

/// Lagrangians kept per side; the transfer uses the first one.
const LAGRANGIANS_KEPT: usize = 4;

#[derive(Debug, Error)]
pub enum MtpError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error("incompatible central characters: {0}")]
    Incompatible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structure check failed: {0}")]
    Structure(String),
}

/// One cover of the pair: its table, special pair and Lagrangian data.
#[derive(Debug)]
pub struct Side {
    pub model: FiniteCoverGroup,
    pub grp: Group,
    pub sp: SpecialPairData,
    pub ctx: LindContext,
}

impl Side {
    fn build(model: FiniteCoverGroup, spec: &CoverSpec, cap: u64) -> Result<Side, MtpError> {
        let grp = model.table(cap)?;
        let (d, rep) = distinguished_subgroups(spec)?;
        if !rep.pass {
            return Err(MtpError::Structure(format!("distinguished subgroups: {:?}", rep.counterexample)));
        }
        let h = model.model_subgroup(&grp, &d.h_beta)?;
        let n = model.model_subgroup(&grp, &d.z_beta)?;
        let sp = is_special_pair(&grp, &grp.whole(), &h, &n)?;
        let ctx = if sp.is_special() {
            LindContext::with_lagrangian_cap(&grp, &sp, LAGRANGIANS_KEPT)?
        } else {
            return Err(MtpError::Structure(format!(
                "{:?} pair is not special: {:?}",
                model.kind, sp.certificate.counterexample
            )));
        };
        Ok(Side { model, grp, sp, ctx })
    }

    /// Genuine irreducibles of the whole group.
    pub fn genuine_table(&self) -> Result<CharTable, MtpError> {
        Ok(irreducible_characters(&self.grp, &self.grp.whole(), |l| l.is_faithful_on_a(&self.grp))?)
    }

    fn m(&self) -> u32 {
        self.grp.ring().order() as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// The torus of `G_beta` inside `G_r`.
    Levi,
    /// The torus of `G^beta`.
    Product,
}

impl Which {
    pub fn other(self) -> Which {
        match self {
            Which::Levi => Which::Product,
            Which::Product => Which::Levi,
        }
    }
}

/// `G_beta` and `G^beta` with the special pairs `(H_beta, Z_beta)` on both sides.
#[derive(Debug)]
pub struct WellMatched {
    pub spec: CoverSpec,
    pub levi: Side,
    pub product: Side,
    /// Genuine characters of `N n H` (the same element set on both sides).
    pub psis: Vec<LinChar>,
    pub certificate: Report,
}

fn base_projection(s: &Subgroup, n: u64) -> BTreeSet<u64> {
    s.members().iter().map(|&x| x as u64 / n).collect()
}

/// Blocks on which a base vector is nonzero.
fn block_support(model: &FiniteCoverGroup, base: u64) -> BTreeSet<usize> {
    let v = model.base_vector(base);
    model
        .spec
        .blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| v[2 * b.start..2 * b.end].iter().any(|&d| d != 0))
        .map(|(i, _)| i)
        .collect()
}

impl WellMatched {
    pub fn build(spec: &CoverSpec, cap: u64) -> Result<Self, MtpError> {
        let levi = Side::build(FiniteCoverGroup::levi(spec), spec, cap)?;
        let product = Side::build(FiniteCoverGroup::product(spec), spec, cap)?;
        let n = spec.n();
        let mut cert = Report::new("well-matched", spec.to_json());
        cert.set("order", levi.grp.order());
        cert.require(levi.grp.order() == product.grp.order(), "equal orders", json!(null));
        let k = spec.beta.len() as u32;
        let expect: u64 = spec.beta.iter().map(|&r| n * n.pow(2 * r as u32)).product::<u64>() / n.pow(k - 1);
        cert.require(product.grp.order() as u64 == expect, "|G^beta| = prod |G_{r_i}| / n^(k-1)", json!(expect));
        cert.require(
            base_projection(&levi.sp.h, n) == base_projection(&product.sp.h, n),
            "pr(H_1) = pr(H_2)",
            json!(null),
        );
        cert.require(
            base_projection(&levi.sp.n, n) == base_projection(&product.sp.n, n),
            "pr(N_1) = pr(N_2)",
            json!(null),
        );
        cert.require(
            base_projection(&levi.ctx.znhg, n) == base_projection(&product.ctx.znhg, n),
            "pr(Z_{N n H}(G_1)) = pr(Z_{N n H}(G_2))",
            json!({"levi": levi.ctx.znhg.order(), "product": product.ctx.znhg.order()}),
        );
        let hm = levi.sp.h.members();
        let iso = hm.iter().flat_map(|&x| hm.iter().map(move |&y| (x, y))).find(|&(x, y)| {
            levi.grp.mul(x, y) != product.grp.mul(x, y)
        });
        cert.require(iso.is_none(), "identity on H is an isomorphism of covers", json!(iso));
        cert.require(
            levi.sp.h.members() == product.sp.h.members() && levi.grp.a_pow(1) == product.grp.a_pow(1),
            "identity on mu_n and on the element set of H",
            json!(null),
        );
        let supports: Vec<BTreeSet<usize>> = hm.iter().map(|&x| block_support(&levi.model, x as u64 / n)).collect();
        let mut noncommuting = None;
        'outer: for (i, &x) in hm.iter().enumerate() {
            for (j, &y) in hm.iter().enumerate() {
                if supports[i].is_disjoint(&supports[j]) && levi.grp.comm(x, y) != 0 {
                    noncommuting = Some((x, y));
                    break 'outer;
                }
            }
        }
        cert.require(noncommuting.is_none(), "H elements on disjoint blocks commute in G_beta", json!(noncommuting));
        cert.require(levi.sp.is_special(), "G_beta pair is special", json!(null));
        cert.require(product.sp.is_special(), "G^beta pair is special", json!(null));
        cert.set("d", json!({"levi": levi.ctx.d, "product": product.ctx.d}));
        cert.set("lagrangians_kept", LAGRANGIANS_KEPT);
        if !cert.pass {
            return Err(MtpError::Structure(format!("{:?}", cert.counterexample)));
        }
        let psis = levi.ctx.genuine_psi(&levi.grp)?;
        Ok(WellMatched { spec: spec.clone(), levi, product, psis, certificate: cert })
    }

    pub fn side(&self, w: Which) -> &Side {
        match w {
            Which::Levi => &self.levi,
            Which::Product => &self.product,
        }
    }

    /// `chi_from` on `Z_N(G)` of the source and `chi_to` on `Z_N(G)` of the target, both
    /// genuine and equal on `Z_{N n H}(G)`.
    pub fn compatible(&self, from: Which, chi_from: &LinChar, chi_to: &LinChar) -> bool {
        let (s, t) = (self.side(from), self.side(from.other()));
        let defined = |c: &LinChar, sd: &Side| sd.ctx.zng.members().iter().all(|&x| c.eval(x).is_some());
        defined(chi_from, s)
            && defined(chi_to, t)
            && chi_from.is_faithful_on_a(&s.grp)
            && chi_to.is_faithful_on_a(&t.grp)
            && s.ctx.znhg.members().iter().all(|&x| chi_from.eval(x) == chi_to.eval(x))
    }

    /// Genuine `psi` on `N n H` consistent with both central characters.
    pub fn psi_choices(&self, from: Which, chi_from: &LinChar, chi_to: &LinChar) -> Vec<&LinChar> {
        let (s, t) = (self.side(from), self.side(from.other()));
        self.psis.iter().filter(|p| s.ctx.consistent(p, chi_from) && t.ctx.consistent(p, chi_to)).collect()
    }

    /// `LInd_{psi}^{chi_to} . (identity on H) . LRes_{psi}^{chi_from}`.
    pub fn transfer_with(
        &self,
        from: Which,
        chi_from: &LinChar,
        chi_to: &LinChar,
        psi: &LinChar,
        pi: &ClassFn,
    ) -> Result<ClassFn, MtpError> {
        if !self.compatible(from, chi_from, chi_to) {
            return Err(MtpError::Incompatible("central characters disagree on Z_{N n H}(G)".into()));
        }
        let (s, t) = (self.side(from), self.side(from.other()));
        let tau = s.ctx.lres(&s.grp, psi, chi_from, pi)?;
        let pairs: Vec<(El, El)> = s.sp.h.members().iter().map(|&x| (x, x)).collect();
        let tau2 = chars::transport(&s.grp, &tau, &t.grp, &pairs);
        Ok(t.ctx.lind(&t.grp, psi, chi_to, &tau2)?)
    }

    pub fn transfer(&self, from: Which, chi_from: &LinChar, chi_to: &LinChar, pi: &ClassFn) -> Result<ClassFn, MtpError> {
        let psi = self
            .psi_choices(from, chi_from, chi_to)
            .into_iter()
            .next()
            .ok_or_else(|| MtpError::Incompatible("no genuine psi on N n H fits both sides".into()))?;
        self.transfer_with(from, chi_from, chi_to, psi, pi)
    }
}

/// Characters `(zeta, x) -> zeta_n^{a . x}` of a model that factor through the base, for
/// every `a`, optionally only those trivial on `k`.
pub fn base_characters(model: &FiniteCoverGroup, grp: &Group, trivial_on: Option<&Subgroup>) -> Vec<LinChar> {
    let n = model.n();
    let step = grp.ring().order() as u64 / n;
    let vecs: Vec<Vec<u64>> = (0..model.base_order()).map(|b| model.base_vector(b)).collect();
    let mut out = Vec::new();
    for a in model.base_group().elements() {
        let val = |b: u64| a.iter().zip(&vecs[b as usize]).map(|(x, y)| x * y).sum::<u64>() % n;
        if let Some(k) = trivial_on {
            if k.members().iter().any(|&x| val(x as u64 / n) != 0) {
                continue;
            }
        }
        let vals: Vec<(El, u32)> = (0..grp.order() as u64).map(|x| (x as El, (step * val(x / n)) as u32)).collect();
        out.push(LinChar::from_values(grp, &vals));
    }
    out
}

/// The `n^2` characters `(zeta, x) -> (a, det x)_n`.
pub fn det_twists(model: &FiniteCoverGroup, grp: &Group) -> Vec<LinChar> {
    let n = model.n();
    let step = grp.ring().order() as u64 / n;
    let field = model.spec.field;
    let dets: Vec<UnitClass> = (0..model.base_order()).map(|b| det(&model.coords(b), n)).collect();
    field
        .classes()
        .map(|a| {
            let vals: Vec<(El, u32)> = (0..grp.order() as u64)
                .map(|x| (x as El, (step * hilbert_exp(&field, a, dets[(x / n) as usize])) as u32))
                .collect();
            LinChar::from_values(grp, &vals)
        })
        .collect()
}

fn twist_orbit(grp: &Group, pi: &ClassFn, twists: &[LinChar]) -> BTreeSet<ClassFn> {
    twists.iter().map(|w| chars::twist(grp, pi, w)).collect()
}

/// Partition of a list of characters into orbits under twisting.
fn orbits_under(grp: &Group, items: &[&ClassFn], twists: &[LinChar]) -> Vec<Vec<usize>> {
    let mut label: Vec<Option<usize>> = vec![None; items.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..items.len() {
        if label[i].is_some() {
            continue;
        }
        let orb = twist_orbit(grp, items[i], twists);
        let members: Vec<usize> = (0..items.len()).filter(|&j| orb.contains(items[j])).collect();
        for &j in &members {
            label[j] = Some(out.len());
        }
        out.push(members);
    }
    out
}

fn irr_over<'a>(t: &'a CharTable, dom: &Subgroup, c: &LinChar) -> Vec<&'a ClassFn> {
    t.irreps.iter().filter(|i| i.central.restrict(dom) == c.restrict(dom)).map(|i| &i.chi).collect()
}

/// Every part of the transfer statement for `G_beta -> G^beta`, over all compatible genuine
/// central-character pairs. At most `cap` base characters are used for twist equivariance
/// and at most `cap` `psi` per pair are compared.
pub fn transfer_suite(wm: &WellMatched, cap: usize) -> Result<Report, MtpError> {
    let (l, p) = (&wm.levi, &wm.product);
    let grp = &l.grp;
    let n = wm.spec.n();
    let m = l.m();
    let mut rep = Report::new("transfer", wm.spec.to_json());
    let t1 = l.genuine_table()?;
    let t2 = p.genuine_table()?;
    let chis1 = l.ctx.genuine_chi(grp)?;
    let chis2 = p.ctx.genuine_chi(&p.grp)?;
    let twists: Vec<LinChar> = base_characters(&l.model, grp, None).into_iter().take(cap.max(1)).collect();
    rep.set("genuine_irreducibles", json!([t1.irreps.len(), t2.irreps.len()]));

    let mut bij = Report::new("bijection Irr_chi1(G_beta) -> Irr_chi2(G^beta)", json!(null));
    let mut indep = Report::new("independence of psi", json!(null));
    let mut inverse = Report::new("transfer back is the inverse", json!(null));
    let mut degree = Report::new("deg trns(pi) [G_1:L_1 H] = deg pi [G_2:L_2 H]", json!(null));
    let f1 = (grp.order() / l.ctx.lh[0].order()) as i64;
    let f2 = (p.grp.order() / p.ctx.lh[0].order()) as i64;
    let mut contr = Report::new("contragredient", json!(null));
    let mut twisting = Report::new("twist equivariance", json!(null));
    let mut pairs = 0usize;
    let mut psi_compared = 0usize;
    let mut matching: Vec<(usize, usize)> = Vec::new();
    let mut ratios = BTreeSet::new();
    for c1 in &chis1 {
        for c2 in &chis2 {
            if !wm.compatible(Which::Levi, c1, c2) {
                continue;
            }
            pairs += 1;
            let src = irr_over(&t1, &l.ctx.zng, c1);
            let dst: BTreeSet<&ClassFn> = irr_over(&t2, &p.ctx.zng, c2).into_iter().collect();
            let psis = wm.psi_choices(Which::Levi, c1, c2);
            let mut image = BTreeSet::new();
            for pi in &src {
                let out = wm.transfer(Which::Levi, c1, c2, pi)?;
                for psi in psis.iter().skip(1).take(cap.saturating_sub(1)) {
                    psi_compared += 1;
                    if wm.transfer_with(Which::Levi, c1, c2, psi, pi)? != out {
                        indep.fail(json!({"pi_degree": pi.degree()}));
                    }
                }
                match t2.position(&out) {
                    Some(j) if dst.contains(&out) => {
                        matching.push((t1.position(pi).expect("listed"), j));
                    }
                    _ => {
                        bij.fail(json!({"image is not an irreducible over chi2": pi.degree()}));
                    }
                }
                ratios.insert((pi.degree(), out.degree()));
                degree.require(out.degree() * f1 == pi.degree() * f2, "degree identity", json!([pi.degree(), out.degree()]));
                if wm.transfer(Which::Product, c2, c1, &out)? != **pi {
                    inverse.fail(json!({"pi_degree": pi.degree()}));
                }
                let back = wm.transfer(Which::Levi, &c1.inv(m), &c2.inv(m), &chars::dual(grp, pi))?;
                if back != chars::dual(&p.grp, &out) {
                    contr.fail(json!({"pi_degree": pi.degree()}));
                }
                for w in &twists {
                    let (w1, w2) = (w.restrict(&l.ctx.zng), w.restrict(&p.ctx.zng));
                    let lhs = wm.transfer(Which::Levi, &c1.mul(&w1, m), &c2.mul(&w2, m), &chars::twist(grp, pi, w))?;
                    if lhs != chars::twist(&p.grp, &out, w) {
                        twisting.fail(json!({"pi_degree": pi.degree()}));
                    }
                }
                image.insert(out);
            }
            if image.len() != src.len() || image.iter().collect::<BTreeSet<_>>() != dst {
                bij.fail(json!({"source": src.len(), "image": image.len(), "target": dst.len()}));
            }
        }
    }
    bij.require(pairs > 0, "some compatible pair", json!(null));
    let hit1: BTreeSet<usize> = matching.iter().map(|m| m.0).collect();
    let hit2: BTreeSet<usize> = matching.iter().map(|m| m.1).collect();
    bij.require(
        hit1.len() == t1.irreps.len() && hit2.len() == t2.irreps.len(),
        "every genuine irreducible is matched",
        json!({"levi": [hit1.len(), t1.irreps.len()], "product": [hit2.len(), t2.irreps.len()]}),
    );
    rep.set("compatible_pairs", pairs);
    rep.set("matching", &matching);
    indep.set("extra_psi_compared", psi_compared);
    degree.set("degree_pairs", ratios.iter().collect::<Vec<_>>());
    degree.set("index_factors", [f1, f2]);
    rep.set("degree_preserved", ratios.iter().all(|(a, b)| a == b));
    twisting.set("twists", twists.len());
    for r in [bij, indep, inverse, degree, contr, twisting] {
        rep.push(r);
    }

    let mut orbits = Report::new("twist orbit counts agree", json!(null));
    let gamma = base_characters(&l.model, grp, Some(&l.sp.h));
    let phis: Vec<LinChar> =
        lin_characters(grp, &l.ctx.znhg)?.into_iter().filter(|c| c.is_faithful_on_a(grp)).collect();
    let mut counts = Vec::new();
    for phi in &phis {
        let o1 = orbits_under(grp, &irr_over(&t1, &l.ctx.znhg, phi), &gamma).len();
        let o2 = orbits_under(&p.grp, &irr_over(&t2, &p.ctx.znhg, phi), &gamma).len();
        orbits.require(o1 == o2, "orbit counts", json!([o1, o2]));
        counts.push((o1, o2));
    }
    orbits.set("gamma_hat", gamma.len());
    orbits.set("counts", counts);
    rep.push(orbits);
    rep.set("n", n);
    Ok(rep)
}

/// One block `G_{r_i}` with its `eps`-genuine irreducibles.
#[derive(Debug)]
pub struct Block {
    pub spec: CoverSpec,
    pub model: FiniteCoverGroup,
    pub grp: Group,
    pub irreps: Vec<ClassFn>,
}

impl Block {
    pub fn build(spec: &CoverSpec, r: usize, cap: u64) -> Result<Block, MtpError> {
        let spec = spec.with_beta(vec![r])?;
        let model = FiniteCoverGroup::levi(&spec);
        let grp = model.table(cap)?;
        let t = irreducible_characters(&grp, &grp.whole(), |l| l.is_eps_on_a(&grp))?;
        let irreps = t.irreps.into_iter().map(|i| i.chi).collect();
        Ok(Block { spec, model, grp, irreps })
    }
}

/// `G^beta` with its blocks, the well-matched pair with `G_beta`, and the `eps`-genuine
/// characters of `Z(G_r)`.
#[derive(Debug)]
pub struct ProductCoverModel {
    pub spec: CoverSpec,
    pub blocks: Vec<Block>,
    pub wm: WellMatched,
    pub center: Subgroup,
    pub omegas: Vec<LinChar>,
}

fn exponent_on_a(grp: &Group, pi: &ClassFn) -> Option<u64> {
    chars::central_exponent(grp, pi, grp.a_pow(1))
}

/// Restriction identity for central characters: every `omega_i` agrees with `omega` on the
/// common `mu_n` (the `Z_sml` part of the torus models), which is exactly when the tensor
/// of the `omega_i` descends through `Xi` and matches `omega`.
pub fn compatible(parts: &[(&Group, &LinChar)], grp: &Group, omega: &LinChar) -> Result<bool, MtpError> {
    let na = grp.a_order();
    let mut ok = true;
    for (g, w) in parts {
        if g.a_order() != na || g.ring().order() != grp.ring().order() {
            return Err(MtpError::Precondition("models over different n".into()));
        }
        for k in 0..na as u64 {
            match (w.eval(g.a_pow(k)), omega.eval(grp.a_pow(k))) {
                (Some(a), Some(b)) => ok &= a == b,
                _ => return Err(MtpError::Precondition("character not defined on mu_n".into())),
            }
        }
    }
    Ok(ok)
}

impl ProductCoverModel {
    pub fn build(spec: &CoverSpec, cap: u64) -> Result<Self, MtpError> {
        let blocks = spec.beta.iter().map(|&r| Block::build(spec, r, cap)).collect::<Result<Vec<_>, _>>()?;
        let wm = WellMatched::build(spec, cap)?;
        let grp = &wm.levi.grp;
        let center = grp.center(&grp.whole());
        let omegas = lin_characters(grp, &center)?.into_iter().filter(|c| c.is_eps_on_a(grp)).collect();
        Ok(ProductCoverModel { spec: spec.clone(), blocks, wm, center, omegas })
    }

    /// `pi_1 x ... x pi_k` as a character of `G^beta`; `zeta` is carried by the first block.
    pub fn tensor(&self, pis: &[&ClassFn]) -> Result<ClassFn, MtpError> {
        if pis.len() != self.blocks.len() {
            return Err(MtpError::Precondition(format!("{} blocks, {} inputs", self.blocks.len(), pis.len())));
        }
        let g2 = &self.wm.product.grp;
        let n = self.spec.n();
        let eps = (g2.ring().order() as u64 / n) % g2.ring().order() as u64;
        for (b, pi) in self.blocks.iter().zip(pis) {
            if pi.raw().len() != b.grp.order() * b.grp.ring().phi() || exponent_on_a(&b.grp, pi) != Some(eps) {
                return Err(MtpError::Precondition("block input is not an eps-genuine character".into()));
            }
        }
        let ranges = self.spec.blocks();
        let ring = g2.ring();
        let mut f = ClassFn::zero(g2);
        for x in 0..g2.order() as u64 {
            let v = self.wm.product.model.base_vector(x / n);
            let mut val = ring.root(0).to_vec();
            for (i, (rg, b)) in ranges.iter().zip(&self.blocks).enumerate() {
                let bb = b.model.vector_index(&v[2 * rg.start..2 * rg.end]);
                let z = if i == 0 { x % n } else { 0 };
                val = ring.mul(&val, pis[i].at((z + n * bb) as El));
            }
            f.at_mut(x as El).copy_from_slice(&val);
        }
        Ok(f)
    }

    /// `(pi_1 x ... x pi_k)_omega`: the tensor on `G^beta` transferred to `G_beta` with
    /// central character `omega` on `Z(G_r)`.
    pub fn mtp(&self, pis: &[&ClassFn], omega: &LinChar) -> Result<ClassFn, MtpError> {
        let lg = &self.wm.levi.grp;
        let mut parts = Vec::new();
        for (b, pi) in self.blocks.iter().zip(pis) {
            let z = b.grp.center(&b.grp.whole());
            let w = central_char(&b.grp, pi, &z)
                .ok_or_else(|| MtpError::Precondition("block input is not isotypic on the center".into()))?;
            parts.push((&b.grp, w));
        }
        let refs: Vec<(&Group, &LinChar)> = parts.iter().map(|(g, w)| (*g, w)).collect();
        if !compatible(&refs, lg, omega)? {
            return Err(MtpError::Incompatible("omega differs from the block central characters on mu_n".into()));
        }
        let t = self.tensor(pis)?;
        let p = &self.wm.product;
        let chi1 = central_char(&p.grp, &t, &p.ctx.zng)
            .ok_or_else(|| MtpError::Structure("tensor is not isotypic on Z_N(G^beta)".into()))?;
        let chi2 = omega.restrict(&self.wm.levi.ctx.zng);
        self.wm.transfer(Which::Product, &chi1, &chi2, &t)
    }

    fn is_irreducible(&self, pi: &ClassFn) -> bool {
        let g = &self.wm.levi.grp;
        inner(g, pi, pi, &g.whole()) == Ratio::from_integer(1)
    }
}

/// Three ways of forming the tensor of three blocks: all at once, left pair first, right
/// pair first. Every triple of `eps`-genuine block irreducibles and every system
/// `(omega, omega_12, omega_23)` of `eps`-genuine central characters is compared, up to
/// `system_cap` systems per triple (chosen by a deterministic stride).
pub fn associativity_check(spec: &CoverSpec, cap: u64, system_cap: usize) -> Result<Report, MtpError> {
    if spec.beta.len() != 3 {
        return Err(MtpError::Precondition("associativity needs three blocks".into()));
    }
    let (r1, r2, r3) = (spec.beta[0], spec.beta[1], spec.beta[2]);
    let all = ProductCoverModel::build(spec, cap)?;
    let left = ProductCoverModel::build(&spec.with_beta(vec![r1, r2])?, cap)?;
    let right = ProductCoverModel::build(&spec.with_beta(vec![r2, r3])?, cap)?;
    let left_then = ProductCoverModel::build(&spec.with_beta(vec![r1 + r2, r3])?, cap)?;
    let right_then = ProductCoverModel::build(&spec.with_beta(vec![r1, r2 + r3])?, cap)?;
    let mut rep = Report::new("associativity", spec.to_json());
    let systems: Vec<(usize, usize, usize)> = {
        let (a, b, c) = (all.omegas.len(), left.omegas.len(), right.omegas.len());
        let mut v = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    v.push((i, j, k));
                }
            }
        }
        v
    };
    let per_triple = systems.len().min(system_cap.max(1));
    rep.set("omega_counts", json!([all.omegas.len(), left.omegas.len(), right.omegas.len()]));
    rep.set("systems_total", systems.len());
    rep.set("systems_per_triple", per_triple);
    let [b1, b2, b3] = [&all.blocks[0], &all.blocks[1], &all.blocks[2]];
    let mut l_cache: BTreeMap<(usize, usize, usize), ClassFn> = BTreeMap::new();
    let mut r_cache: BTreeMap<(usize, usize, usize), ClassFn> = BTreeMap::new();
    let mut compared = 0usize;
    let mut covered = BTreeSet::new();
    let mut triple = 0usize;
    for (i1, p1) in b1.irreps.iter().enumerate() {
        for (i2, p2) in b2.irreps.iter().enumerate() {
            for (i3, p3) in b3.irreps.iter().enumerate() {
                for s in 0..per_triple {
                    let (w, w12, w23) = systems[(triple * per_triple + s) % systems.len()];
                    covered.insert((w, w12, w23));
                    let omega = &all.omegas[w];
                    let a = all.mtp(&[p1, p2, p3], omega)?;
                    if !l_cache.contains_key(&(i1, i2, w12)) {
                        l_cache.insert((i1, i2, w12), left.mtp(&[p1, p2], &left.omegas[w12])?);
                    }
                    if !r_cache.contains_key(&(i2, i3, w23)) {
                        r_cache.insert((i2, i3, w23), right.mtp(&[p2, p3], &right.omegas[w23])?);
                    }
                    let b = left_then.mtp(&[&l_cache[&(i1, i2, w12)], p3], omega)?;
                    let c = right_then.mtp(&[p1, &r_cache[&(i2, i3, w23)]], omega)?;
                    compared += 1;
                    if a != b || a != c {
                        rep.fail(json!({"triple": [i1, i2, i3], "system": [w, w12, w23], "all_eq_left": a == b, "all_eq_right": a == c}));
                    }
                    if !all.is_irreducible(&a) {
                        rep.fail(json!({"not irreducible": [i1, i2, i3], "system": [w, w12, w23]}));
                    }
                }
                triple += 1;
            }
        }
    }
    rep.set("triples", triple);
    rep.set("comparisons", compared);
    rep.set("systems_covered", covered.len());
    Ok(rep)
}

/// Base index map for reordering blocks: new block `j` is old block `order[j]`.
fn block_permutation(model: &FiniteCoverGroup, order: &[usize]) -> Vec<u64> {
    let ranges = model.spec.blocks();
    (0..model.base_order())
        .map(|b| {
            let v = model.base_vector(b);
            let w: Vec<u64> = order.iter().flat_map(|&j| v[2 * ranges[j].start..2 * ranges[j].end].to_vec()).collect();
            model.vector_index(&w)
        })
        .collect()
}

/// Lift of a base automorphism `perm` to the Levi model:
/// `phi(zeta, x) = (zeta + f(x) + alpha(x), perm x)` with `f` solving
/// `f(x+y) - f(x) - f(y) = sigma(perm x, perm y) - sigma(x, y)` and `alpha` a homomorphism
/// chosen so that `f + alpha` vanishes on `fix_first` and, if possible, on `fix_second`.
#[derive(Debug, Clone)]
pub struct Lift {
    pub map: Vec<El>,
    /// Whether `f + alpha` also vanishes on the second set.
    pub fixes_second: bool,
}

pub fn lift_base_automorphism(
    model: &FiniteCoverGroup,
    perm: &[u64],
    fix_first: &[u64],
    fix_second: &[u64],
) -> Result<Lift, MtpError> {
    let n = model.n();
    let bo = model.base_order();
    let coords: Vec<_> = (0..bo).map(|b| model.coords(b)).collect();
    let d = |x: u64, y: u64| {
        (model.sigma(&coords[perm[x as usize] as usize], &coords[perm[y as usize] as usize]) + n
            - model.sigma(&coords[x as usize], &coords[y as usize]))
            % n
    };
    let gens: Vec<u64> = (0..model.rank()).map(|k| n.pow(k as u32)).collect();
    let mut f: Vec<Option<u64>> = vec![None; bo as usize];
    f[0] = Some(0);
    let mut queue = VecDeque::from([0u64]);
    while let Some(x) = queue.pop_front() {
        for &e in &gens {
            let y = model.base_add(x, e);
            if f[y as usize].is_none() {
                f[y as usize] = Some((f[x as usize].unwrap() + d(x, e)) % n);
                queue.push_back(y);
            }
        }
    }
    let f: Vec<u64> = f.into_iter().map(|v| v.expect("generators span the base")).collect();
    for x in 0..bo {
        for y in 0..bo {
            if (f[model.base_add(x, y) as usize] + 2 * n - f[x as usize] - f[y as usize]) % n != d(x, y) {
                return Err(MtpError::Structure(format!("sigma(Px,Py) - sigma(x,y) is not a coboundary at ({x},{y})")));
            }
        }
    }
    let vecs: Vec<Vec<u64>> = (0..bo).map(|b| model.base_vector(b)).collect();
    let total = |a: &[u64], x: u64| (f[x as usize] + a.iter().zip(&vecs[x as usize]).map(|(p, q)| p * q).sum::<u64>()) % n;
    let mut first_only = None;
    let mut both = None;
    for a in model.base_group().elements() {
        if fix_first.iter().all(|&x| total(&a, x) == 0) {
            if fix_second.iter().all(|&x| total(&a, x) == 0) {
                both = Some(a);
                break;
            }
            if first_only.is_none() {
                first_only = Some(a);
            }
        }
    }
    let fixes_second = both.is_some();
    let a = both
        .or(first_only)
        .ok_or_else(|| MtpError::Structure("no normalization of the lift fixes the required set".into()))?;
    let map = (0..model.order())
        .map(|idx| {
            let (z, b) = (idx % n, idx / n);
            ((z + total(&a, b)) % n + n * perm[b as usize]) as El
        })
        .collect();
    Ok(Lift { map, fixes_second })
}

/// Compares `mtp(pi_order) . phi` with `mtp(pi)` for every tuple of block irreducibles and
/// every `eps`-genuine `omega`, where `phi` lifts the block permutation to `G_r` fixing the
/// center pointwise and (when possible) agreeing with the coordinate permutation on `H`.
/// Tuples that only match up to a determinant twist are counted as weak-class fallbacks.
pub fn permutation_equivariance_check(spec: &CoverSpec, order: &[usize], cap: u64) -> Result<Report, MtpError> {
    let k = spec.beta.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(MtpError::Precondition("order is not a permutation of the blocks".into()));
    }
    let permuted = spec.with_beta(order.iter().map(|&j| spec.beta[j]).collect())?;
    let src = ProductCoverModel::build(spec, cap)?;
    let dst = ProductCoverModel::build(&permuted, cap)?;
    let n = spec.n();
    let lm = &src.wm.levi.model;
    let lg = &src.wm.levi.grp;
    let perm = block_permutation(lm, order);
    let center_base: Vec<u64> = src.center.members().iter().map(|&x| x as u64 / n).collect();
    let h_base: Vec<u64> = src.wm.levi.sp.h.members().iter().map(|&x| x as u64 / n).collect();
    let lift = lift_base_automorphism(lm, &perm, &center_base, &h_base)?;
    let mut rep = Report::new("permutation equivariance", json!({"spec": spec.to_json(), "order": order}));
    rep.set("lift_agrees_on_h", lift.fixes_second);

    let mut hom = Report::new("lift is an automorphism fixing Z(G_r)", json!(null));
    let img: BTreeSet<El> = lift.map.iter().copied().collect();
    hom.require(img.len() == lg.order(), "bijective", json!(null));
    let bad = (0..lg.order() as El)
        .flat_map(|x| (0..lg.order() as El).map(move |y| (x, y)))
        .find(|&(x, y)| lift.map[lg.mul(x, y) as usize] != dst.wm.levi.grp.mul(lift.map[x as usize], lift.map[y as usize]));
    hom.require(bad.is_none(), "multiplicative", json!(bad));
    hom.require(
        src.center.members().iter().all(|&z| lift.map[z as usize] == z),
        "identity on the center",
        json!(null),
    );
    rep.push(hom);

    let mut natural = Report::new("tensor commutes with the block permutation", json!(null));
    let twists = det_twists(lm, lg);
    let (mut exact, mut weak) = (0usize, 0usize);
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for b in &src.blocks {
        tuples = tuples.into_iter().flat_map(|t| (0..b.irreps.len()).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    let pg = &src.wm.product.grp;
    let pmap: Vec<El> = (0..pg.order() as u64).map(|x| (x % n + n * perm[(x / n) as usize]) as El).collect();
    for t in &tuples {
        let pis: Vec<&ClassFn> = t.iter().zip(&src.blocks).map(|(&i, b)| &b.irreps[i]).collect();
        let moved: Vec<&ClassFn> = order.iter().map(|&j| pis[j]).collect();
        let t_src = src.tensor(&pis)?;
        let t_dst = dst.tensor(&moved)?;
        if chars::pull_back(pg, &t_dst, &pg.whole(), |x| pmap[x as usize]) != t_src {
            natural.fail(json!({"tuple": t}));
        }
        for (wi, omega) in src.omegas.iter().enumerate() {
            let base = src.mtp(&pis, omega)?;
            let other = dst.mtp(&moved, omega)?;
            let pulled = chars::pull_back(lg, &other, &lg.whole(), |x| lift.map[x as usize]);
            if pulled == base {
                exact += 1;
            } else if twist_orbit(lg, &base, &twists).contains(&pulled) {
                weak += 1;
            } else {
                rep.fail(json!({"tuple": t, "omega": wi}));
            }
        }
    }
    rep.push(natural);
    rep.set("tuples", tuples.len());
    rep.set("omegas", src.omegas.len());
    rep.set("exact", exact);
    rep.set("weak_fallbacks", weak);
    Ok(rep)
}

/// Orbits of the genuine irreducibles of the `G_beta` model under the `n^2` determinant
/// twists, compared with the orbits under characters trivial on `H_beta`, plus the check
/// that characters trivial on `H Z(N)` fix every genuine irreducible.
pub fn weak_equivalence_orbits(spec: &CoverSpec, cap: u64) -> Result<(Vec<Vec<usize>>, Report), MtpError> {
    let model = FiniteCoverGroup::levi(spec);
    let grp = model.table(cap)?;
    let (d, _) = distinguished_subgroups(spec)?;
    let h = model.model_subgroup(&grp, &d.h_beta)?;
    let nn = model.model_subgroup(&grp, &d.z_beta)?;
    let t = irreducible_characters(&grp, &grp.whole(), |l| l.is_faithful_on_a(&grp))?;
    let items: Vec<&ClassFn> = t.irreps.iter().map(|i| &i.chi).collect();
    let twists = det_twists(&model, &grp);
    let orbits = orbits_under(&grp, &items, &twists);
    let mut rep = Report::new("weak equivalence", spec.to_json());
    rep.set("genuine_irreducibles", items.len());
    rep.set("orbit_sizes", orbits.iter().map(|o| o.len()).collect::<Vec<_>>());
    let distinct: BTreeSet<&LinChar> = twists.iter().collect();
    rep.require(distinct.len() as u64 == spec.n() * spec.n(), "n^2 distinct determinant twists", json!(distinct.len()));
    let gamma = base_characters(&model, &grp, Some(&h));
    let gamma_orbits = orbits_under(&grp, &items, &gamma);
    rep.set("gamma_hat", gamma.len());
    rep.require(gamma_orbits == orbits, "determinant-twist orbits = dual of G/H_beta orbits", json!(gamma_orbits.len()));
    let covered: usize = orbits.iter().map(|o| o.len()).sum();
    rep.require(covered == items.len(), "orbits partition the irreducibles", json!(covered));
    for o in &orbits {
        let stab = twists.iter().filter(|w| chars::twist(&grp, items[o[0]], w) == *items[o[0]]).count();
        rep.require(o.len() * stab == twists.len(), "orbit-stabilizer", json!([o.len(), stab]));
    }
    let zn = grp.center(&nn);
    let hzn = grp.join(&h, &zn);
    let fixing = base_characters(&model, &grp, Some(&hzn));
    rep.set("twists_trivial_on_HZ(N)", fixing.len());
    for (i, pi) in items.iter().enumerate() {
        if fixing.iter().any(|w| chars::twist(&grp, pi, w) != **pi) {
            rep.fail(json!({"twist trivial on HZ(N) moves irreducible": i}));
        }
    }
    Ok((orbits, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = crate::DEFAULT_CAP;

    #[test]
    fn single_block_is_identity() {
        let s = CoverSpec::new(7, 3, 1, vec![1]).unwrap();
        let pm = ProductCoverModel::build(&s, CAP).unwrap();
        assert!(pm.wm.certificate.pass);
        let lg = &pm.wm.levi.grp;
        for pi in &pm.blocks[0].irreps {
            let z = lg.center(&lg.whole());
            let w = central_char(lg, pi, &z).unwrap();
            assert_eq!(&pm.mtp(&[pi], &w).unwrap(), pi);
        }
    }

    #[test]
    fn compatible_needs_matching_eps() {
        let s = CoverSpec::new(5, 2, 0, vec![1, 1]).unwrap();
        let pm = ProductCoverModel::build(&s, CAP).unwrap();
        let b = &pm.blocks[0];
        let z = b.grp.center(&b.grp.whole());
        let w1 = central_char(&b.grp, &b.irreps[0], &z).unwrap();
        let lg = &pm.wm.levi.grp;
        let omega = &pm.omegas[0];
        assert!(compatible(&[(&b.grp, &w1), (&b.grp, &w1)], lg, omega).unwrap());
        let m = lg.ring().order() as u32;
        assert!(!compatible(&[(&b.grp, &w1.inv(m).mul(&w1.inv(m), m))], lg, omega).unwrap());
    }
}
