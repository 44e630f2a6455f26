//! Local extension across a central subgroup, Lagrangian induction and restriction for a
//! special pair, and the Clifford-theory checks behind them.

use super::chars::{self, irreducible_characters, lin_characters, lin_extensions, CharTable, ClassFn, LinChar};
use super::group::{El, Group, Subgroup};
use super::heisenberg::{conj_lin, HeisenbergPair};
use super::special::SpecialPairData;
use super::HeisError;
use crate::report::Report;
use num_rational::Ratio;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

fn commute(grp: &Group, a: &[El], b: &[El]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| grp.comm(x, y) == 0))
}

/// `ex(tau, chi)(a h) = chi(a) tau(h)` on `HL`, for `L` central in `HL`.
pub fn extend_locally(
    grp: &Group,
    tau: &ClassFn,
    h: &Subgroup,
    l: &Subgroup,
    chi: &LinChar,
) -> Result<ClassFn, HeisError> {
    if !commute(grp, l.gens(), h.gens()) || !commute(grp, l.gens(), l.gens()) {
        return Err(HeisError::NotCentral("L in HL".into()));
    }
    let ring = grp.ring();
    let deg = tau.degree();
    for &a in grp.intersect(l, h).members() {
        let want: Vec<i64> = ring.root(chi.at(a) as u64).iter().map(|v| v * deg).collect();
        if tau.at(a) != want.as_slice() {
            return Err(HeisError::Precondition("chi is inconsistent with tau on L n H".into()));
        }
    }
    let mut f = ClassFn::zero(grp);
    for &a in l.members() {
        let e = chi.at(a) as u64;
        for &x in h.members() {
            let v = ring.mul_root(tau.at(x), e);
            f.at_mut(grp.mul(a, x)).copy_from_slice(&v);
        }
    }
    Ok(f)
}

/// `Ind_H^{HL} tau` equals the sum of `ex(tau, chi)` over all extensions `chi` of the central
/// character of `tau` on `L n H`.
pub fn restau_check(grp: &Group, tau: &ClassFn, h: &Subgroup, l: &Subgroup) -> Result<Report, HeisError> {
    let mut r = Report::new("Ind = sum of local extensions", json!(null));
    let lh = grp.intersect(l, h);
    let psi = chars::central_char(grp, tau, &lh)
        .ok_or_else(|| HeisError::Precondition("tau is not isotypic on L n H".into()))?;
    let hl = grp.join(h, l);
    let exts = lin_extensions(grp, &lh, &psi, l)?;
    let mut sum = ClassFn::zero(grp);
    for chi in &exts {
        sum = sum.add(&extend_locally(grp, tau, h, l, chi)?);
    }
    r.set("extensions", exts.len());
    r.require(exts.len() == hl.order() / h.order(), "[HL:H] extensions", json!(exts.len()));
    r.require(sum == chars::induce(grp, tau, h, &hl), "character identity", json!(null));
    Ok(r)
}

/// Subgroups attached to a special pair, plus its Lagrangians.
#[derive(Debug, Clone)]
pub struct LindContext {
    pub sp: SpecialPairData,
    /// `N n H`.
    pub nh: Subgroup,
    /// `Z(N)`.
    pub zn: Subgroup,
    /// `Z_N(G)`.
    pub zng: Subgroup,
    /// `Z_{N n H}(G)`.
    pub znhg: Subgroup,
    pub lagrangians: Vec<Subgroup>,
    /// `L H` per Lagrangian.
    pub lh: Vec<Subgroup>,
    pub d: u64,
}

impl LindContext {
    pub fn new(grp: &Group, sp: &SpecialPairData) -> Result<Self, HeisError> {
        Self::with_lagrangian_cap(grp, sp, usize::MAX)
    }

    /// Keeps at most `cap` Lagrangians.
    pub fn with_lagrangian_cap(grp: &Group, sp: &SpecialPairData, cap: usize) -> Result<Self, HeisError> {
        if !sp.is_special() {
            return Err(HeisError::Precondition("pair is not special".into()));
        }
        let pair = HeisenbergPair::new(grp, &sp.n)?;
        let lagrangians = pair.lagrangians_capped(grp, cap.max(1)).0;
        let lh = lagrangians.iter().map(|l| grp.join(l, &sp.h)).collect();
        let nh = sp.n_cap_h(grp);
        Ok(LindContext {
            zn: pair.center.clone(),
            zng: sp.n_central(grp),
            znhg: grp.centralizer(&nh, &sp.g),
            nh,
            lagrangians,
            lh,
            d: pair.d,
            sp: sp.clone(),
        })
    }

    fn m(grp: &Group) -> u32 {
        grp.ring().order() as u32
    }

    /// Genuine characters of `N n H`.
    pub fn genuine_psi(&self, grp: &Group) -> Result<Vec<LinChar>, HeisError> {
        Ok(lin_characters(grp, &self.nh)?.into_iter().filter(|c| c.is_faithful_on_a(grp)).collect())
    }

    /// Genuine characters of `Z_N(G)`.
    pub fn genuine_chi(&self, grp: &Group) -> Result<Vec<LinChar>, HeisError> {
        Ok(lin_characters(grp, &self.zng)?.into_iter().filter(|c| c.is_faithful_on_a(grp)).collect())
    }

    pub fn consistent(&self, psi: &LinChar, chi: &LinChar) -> bool {
        self.znhg.members().iter().all(|&x| psi.eval(x) == chi.eval(x))
    }

    fn check_inputs(&self, grp: &Group, psi: &LinChar, chi: &LinChar) -> Result<(), HeisError> {
        if self.nh.members().iter().any(|&x| psi.eval(x).is_none())
            || self.zng.members().iter().any(|&x| chi.eval(x).is_none())
        {
            return Err(HeisError::Precondition("psi or chi is not defined on its domain".into()));
        }
        if !psi.is_faithful_on_a(grp) || !chi.is_faithful_on_a(grp) {
            return Err(HeisError::Precondition("psi and chi must be genuine".into()));
        }
        if !self.consistent(psi, chi) {
            return Err(HeisError::Precondition("psi and chi are inconsistent".into()));
        }
        Ok(())
    }

    /// `chi psi` on `Z(N) = Z_N(G)(N n H)`.
    pub fn chi_psi(&self, grp: &Group, psi: &LinChar, chi: &LinChar) -> Result<LinChar, HeisError> {
        self.check_inputs(grp, psi, chi)?;
        chi.restrict(&self.zng).product_on(&psi.restrict(&self.nh), grp, &self.zng, &self.nh, &self.zn)
    }

    /// Every `(Lagrangian index, theta)` with `theta` extending `chi psi`, in canonical order.
    pub fn choices(&self, grp: &Group, psi: &LinChar, chi: &LinChar) -> Result<Vec<(usize, LinChar)>, HeisError> {
        self.choices_capped(grp, psi, chi, usize::MAX)
    }

    /// The first `cap` choices.
    pub fn choices_capped(
        &self,
        grp: &Group,
        psi: &LinChar,
        chi: &LinChar,
        cap: usize,
    ) -> Result<Vec<(usize, LinChar)>, HeisError> {
        let cp = self.chi_psi(grp, psi, chi)?;
        let mut out = Vec::new();
        for (i, l) in self.lagrangians.iter().enumerate() {
            for th in lin_extensions(grp, &self.zn, &cp, l)? {
                if out.len() >= cap {
                    return Ok(out);
                }
                out.push((i, th));
            }
        }
        Ok(out)
    }

    fn check_tau(&self, grp: &Group, psi: &LinChar, tau: &ClassFn) -> Result<(), HeisError> {
        let ring = grp.ring();
        for &a in self.nh.members() {
            let want: Vec<i64> = ring.root(psi.at(a) as u64).iter().map(|v| v * tau.degree()).collect();
            if tau.at(a) != want.as_slice() {
                return Err(HeisError::Precondition("tau does not have central character psi".into()));
            }
        }
        Ok(())
    }

    /// `Ind_{LH}^G ex(tau, theta)` for one choice.
    pub fn lind_with(&self, grp: &Group, tau: &ClassFn, li: usize, theta: &LinChar) -> Result<ClassFn, HeisError> {
        let ex = extend_locally(grp, tau, &self.sp.h, &self.lagrangians[li], theta)?;
        Ok(chars::induce(grp, &ex, &self.lh[li], &self.sp.g))
    }

    pub fn lind(&self, grp: &Group, psi: &LinChar, chi: &LinChar, tau: &ClassFn) -> Result<ClassFn, HeisError> {
        self.check_tau(grp, psi, tau)?;
        let (li, th) = self.choices_capped(grp, psi, chi, 1)?.into_iter().next().expect("a Lagrangian exists");
        self.lind_with(grp, tau, li, &th)
    }

    /// `Res_H (Res_{LH} pi)^{(theta)}`.
    pub fn lres(&self, grp: &Group, psi: &LinChar, chi: &LinChar, pi: &ClassFn) -> Result<ClassFn, HeisError> {
        let (li, th) = self.choices_capped(grp, psi, chi, 1)?.into_iter().next().expect("a Lagrangian exists");
        let l = &self.lagrangians[li];
        let ring = grp.ring();
        let mut acc = ClassFn::zero(grp);
        for &x in self.sp.h.members() {
            let mut v = vec![0i64; ring.phi()];
            for &a in l.members() {
                let back = (Self::m(grp) - th.at(a)) % Self::m(grp);
                for (s, t) in v.iter_mut().zip(ring.mul_root(pi.at(grp.mul(a, x)), back as u64)) {
                    *s += t;
                }
            }
            acc.at_mut(x).copy_from_slice(&v);
        }
        chars::divide(&acc, l.order() as i64)
            .ok_or_else(|| HeisError::Engine("isotypic projection is not integral".into()))
    }
}

#[derive(Debug, Clone)]
pub struct LindResult {
    pub pi: ClassFn,
    pub choices_compared: usize,
    pub choice_independent: bool,
    pub tau_irreducible: bool,
    pub pi_irreducible: bool,
    /// `[G : LH]`.
    pub degree_factor: u64,
}

/// `LInd_{H,psi}^{G,chi} tau`, compared across up to `cap` choices of `(L, theta)`.
pub fn lagrangian_induction(
    grp: &Group,
    sp: &SpecialPairData,
    psi: &LinChar,
    chi: &LinChar,
    tau: &ClassFn,
    cap: usize,
) -> Result<LindResult, HeisError> {
    let ctx = LindContext::new(grp, sp)?;
    ctx.check_tau(grp, psi, tau)?;
    let choices = ctx.choices_capped(grp, psi, chi, cap.max(1))?;
    let mut first: Option<ClassFn> = None;
    let mut independent = true;
    let mut compared = 0;
    for (li, th) in &choices {
        let pi = ctx.lind_with(grp, tau, *li, th)?;
        compared += 1;
        match &first {
            None => first = Some(pi),
            Some(f) => independent &= *f == pi,
        }
    }
    let pi = first.expect("at least one choice");
    let one = Ratio::from_integer(1);
    Ok(LindResult {
        tau_irreducible: chars::inner(grp, tau, tau, &sp.h) == one,
        pi_irreducible: chars::inner(grp, &pi, &pi, &sp.g) == one,
        pi,
        choices_compared: compared,
        choice_independent: independent,
        degree_factor: (sp.g.order() / ctx.lh[0].order()) as u64,
    })
}

fn irr_over<'a>(t: &'a CharTable, dom: &Subgroup, c: &LinChar) -> Vec<&'a ClassFn> {
    t.irreps
        .iter()
        .filter(|i| i.central.restrict(dom) == c.restrict(dom))
        .map(|i| &i.chi)
        .collect()
}

fn conj_on(grp: &Group, a: &ClassFn, s: El, k: &Subgroup) -> ClassFn {
    chars::restrict(&chars::conjugate(grp, a, s), k)
}

/// Linear characters of `G` trivial on `k`, from the complete table.
fn linear_trivial_on(gt: &CharTable, k: &Subgroup) -> Vec<ClassFn> {
    gt.irreps
        .iter()
        .filter(|i| i.degree() == 1 && k.members().iter().all(|&x| i.chi.at(x) == i.chi.at(0)))
        .map(|i| i.chi.clone())
        .collect()
}

/// Every part of the Lagrangian induction statement, over all consistent genuine `(psi, chi)`
/// and all irreducibles. At most `cap` `(L, theta)` choices are compared per `tau`.
pub fn lind_suite(grp: &Group, sp: &SpecialPairData, cap: usize) -> Result<Report, HeisError> {
    let ctx = LindContext::new(grp, sp)?;
    let (g, h) = (&sp.g, &sp.h);
    let mut rep = Report::new("lagrangian induction", sp.certificate.spec.clone());
    let ht = irreducible_characters(grp, h, |_| true)?;
    let gt = irreducible_characters(grp, g, |_| true)?;
    let psis = ctx.genuine_psi(grp)?;
    let chis = ctx.genuine_chi(grp)?;
    let hreps = grp.coset_reps(g, h);
    let d = ctx.d as i64;
    rep.set("d", ctx.d);
    rep.set("lagrangians", ctx.lagrangians.len());
    rep.set("psi_count", psis.len());
    rep.set("chi_count", chis.len());

    let mut bij = Report::new("bijection Irr_psi(H) -> Irr_chi(G)", json!(null));
    let mut indep = Report::new("choice independence", json!(null));
    let mut inverse = Report::new("LRes inverts LInd", json!(null));
    let mut contr = Report::new("contragredient", json!(null));
    let mut equconj = Report::new("conjugation equivariance", json!(null));
    let mut compared_total = 0usize;
    let mut lind_cache: BTreeMap<(usize, usize, usize), ClassFn> = BTreeMap::new();
    for (pi_i, psi) in psis.iter().enumerate() {
        let taus = irr_over(&ht, &ctx.nh, psi);
        for (ci, chi) in chis.iter().enumerate() {
            if !ctx.consistent(psi, chi) {
                continue;
            }
            let target: BTreeSet<&ClassFn> = irr_over(&gt, &ctx.zng, chi).into_iter().collect();
            let choices = ctx.choices_capped(grp, psi, chi, cap.max(1))?;
            let mut image = BTreeSet::new();
            for (ti, tau) in taus.iter().enumerate() {
                let (li, th) = &choices[0];
                let pi = ctx.lind_with(grp, tau, *li, th)?;
                for (lj, tj) in choices.iter().skip(1) {
                    compared_total += 1;
                    if ctx.lind_with(grp, tau, *lj, tj)? != pi {
                        indep.fail(json!({"psi": pi_i, "chi": ci, "tau": ti, "lagrangian": lj}));
                    }
                }
                if !target.contains(&pi) {
                    bij.fail(json!({"not an irreducible over chi": {"psi": pi_i, "chi": ci, "tau": ti}}));
                }
                let factor = (g.order() / ctx.lh[*li].order()) as i64;
                if pi.degree() != factor * tau.degree() {
                    bij.fail(json!({"degree": [tau.degree(), pi.degree(), factor]}));
                }
                if ctx.lres(grp, psi, chi, &pi)? != **tau {
                    inverse.fail(json!({"psi": pi_i, "chi": ci, "tau": ti}));
                }
                let dual_side = ctx.lind(
                    grp,
                    &psi.inv(LindContext::m(grp)),
                    &chi.inv(LindContext::m(grp)),
                    &chars::dual(grp, tau),
                )?;
                if dual_side != chars::dual(grp, &pi) {
                    contr.fail(json!({"psi": pi_i, "chi": ci, "tau": ti}));
                }
                for &s in &hreps {
                    let psi_s = conj_lin(grp, psi, &ctx.nh, s);
                    let tau_s = conj_on(grp, tau, s, h);
                    if ctx.lind(grp, &psi_s, chi, &tau_s)? != pi {
                        equconj.fail(json!({"psi": pi_i, "chi": ci, "tau": ti, "g": s}));
                    }
                }
                image.insert(pi.clone());
                lind_cache.insert((pi_i, ci, ti), pi);
            }
            if image.len() != taus.len() {
                bij.fail(json!({"not injective": {"psi": pi_i, "chi": ci}}));
            }
            if image.iter().collect::<BTreeSet<_>>() != target {
                bij.fail(json!({"not surjective": {"psi": pi_i, "chi": ci, "image": image.len(), "target": target.len()}}));
            }
        }
    }
    indep.set("extra_choices_compared", compared_total);
    for r in [bij, indep, inverse, contr, equconj] {
        rep.push(r);
    }

    let mut indcmp = Report::new("Ind_H^G tau = d sum_chi' LInd^chi' tau", json!(null));
    let zn_over_nh = (ctx.zn.order() / ctx.nh.order()) as usize;
    for (pi_i, psi) in psis.iter().enumerate() {
        let cons: Vec<usize> = (0..chis.len()).filter(|&c| ctx.consistent(psi, &chis[c])).collect();
        if cons.len() != zn_over_nh {
            indcmp.fail(json!({"consistent chi count": cons.len(), "[Z(N):N n H]": zn_over_nh}));
        }
        for (ti, tau) in irr_over(&ht, &ctx.nh, psi).into_iter().enumerate() {
            let mut sum = ClassFn::zero(grp);
            for &c in &cons {
                sum = sum.add(&lind_cache[&(pi_i, c, ti)]);
            }
            if chars::induce(grp, tau, h, g) != sum.scale(d) {
                indcmp.fail(json!({"psi": pi_i, "tau": ti}));
            }
        }
    }
    rep.push(indcmp);

    let mut resdcmp = Report::new("Res_H pi = d sum_psi' LRes_psi' pi", json!(null));
    let mut orbit = Report::new("LRes over psi' is one G/NH-orbit", json!(null));
    let nh_join = grp.join(&sp.n, h);
    let orbit_reps = grp.coset_reps(g, &nh_join);
    let zn_over_zng = ctx.zn.order() / ctx.zng.order();
    for chi in &chis {
        let cons: Vec<&LinChar> = psis.iter().filter(|p| ctx.consistent(p, chi)).collect();
        if cons.len() != zn_over_zng {
            resdcmp.fail(json!({"consistent psi count": cons.len(), "[Z(N):Z_N(G)]": zn_over_zng}));
        }
        for pi in irr_over(&gt, &ctx.zng, chi) {
            let mut sum = ClassFn::zero(grp);
            let mut parts = BTreeSet::new();
            for p in &cons {
                let part = ctx.lres(grp, p, chi, pi)?;
                sum = sum.add(&part);
                parts.insert(part);
            }
            if chars::restrict(pi, h) != sum.scale(d) {
                resdcmp.fail(json!({"pi_degree": pi.degree()}));
            }
            let first = parts.iter().next().expect("non-empty").clone();
            let orb: BTreeSet<ClassFn> = orbit_reps.iter().map(|&s| conj_on(grp, &first, s, h)).collect();
            if orb != parts {
                orbit.fail(json!({"orbit": orb.len(), "parts": parts.len()}));
            }
        }
    }
    rep.push(resdcmp);
    rep.push(orbit);

    let mut twistw = Report::new("twist by omega trivial on HZ(N)", json!(null));
    let hzn = grp.join(h, &ctx.zn);
    let omegas = linear_trivial_on(&gt, &hzn);
    twistw.set("omegas", omegas.len());
    for pi in lind_cache.values() {
        for w in &omegas {
            if chars::product(grp, pi, w) != *pi {
                twistw.fail(json!({"pi_degree": pi.degree()}));
            }
        }
    }
    rep.push(twistw);

    let gamma_abelian = g.members().iter().all(|&x| g.gens().iter().all(|&y| h.contains(grp.comm(x, y))));
    rep.set("gamma_abelian", gamma_abelian);
    if gamma_abelian {
        rep.push(twist_orbits(grp, &ctx, &ht, &gt, &psis, &chis, &lind_cache)?);
    } else {
        rep.note("G/H is not abelian; orbit correspondence not checked");
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn twist_orbits(
    grp: &Group,
    ctx: &LindContext,
    ht: &CharTable,
    gt: &CharTable,
    psis: &[LinChar],
    chis: &[LinChar],
    cache: &BTreeMap<(usize, usize, usize), ClassFn>,
) -> Result<Report, HeisError> {
    let (g, h) = (&ctx.sp.g, &ctx.sp.h);
    let mut r = Report::new("twist orbits and the orbit correspondence", json!(null));
    let gamma_hat = linear_trivial_on(gt, h);
    r.require(gamma_hat.len() == g.order() / h.order(), "|dual of G/H| = [G:H]", json!(gamma_hat.len()));
    let twist_orbit = |pi: &ClassFn| -> BTreeSet<ClassFn> {
        gamma_hat.iter().map(|w| chars::product(grp, pi, w)).collect()
    };
    let hreps = grp.coset_reps(g, h);
    let phis: Vec<LinChar> =
        lin_characters(grp, &ctx.znhg)?.into_iter().filter(|c| c.is_faithful_on_a(grp)).collect();
    for phi in &phis {
        let irr_h = irr_over(ht, &ctx.znhg, phi);
        let irr_g = irr_over(gt, &ctx.znhg, phi);
        let mut h_orbits: Vec<BTreeSet<ClassFn>> = Vec::new();
        for tau in &irr_h {
            if h_orbits.iter().any(|o| o.contains(*tau)) {
                continue;
            }
            h_orbits.push(hreps.iter().map(|&s| conj_on(grp, tau, s, h)).collect());
        }
        let mut g_orbits: Vec<BTreeSet<ClassFn>> = Vec::new();
        for pi in &irr_g {
            if !g_orbits.iter().any(|o| o.contains(*pi)) {
                g_orbits.push(twist_orbit(pi));
            }
        }
        let mut hit = vec![0usize; g_orbits.len()];
        for o in &h_orbits {
            let mut images = BTreeSet::new();
            for tau in o {
                let pi_i = psis
                    .iter()
                    .position(|p| irr_over(ht, &ctx.nh, p).contains(&tau))
                    .ok_or_else(|| HeisError::Engine("tau has no genuine psi".into()))?;
                let ti = irr_over(ht, &ctx.nh, &psis[pi_i]).iter().position(|t| *t == tau).expect("listed");
                let lifts: BTreeSet<ClassFn> = (0..chis.len())
                    .filter_map(|c| cache.get(&(pi_i, c, ti)).cloned())
                    .collect();
                let orbit = g_orbits
                    .iter()
                    .position(|go| go.contains(lifts.iter().next().expect("some chi")))
                    .ok_or_else(|| HeisError::Engine("LInd image outside Irr_phi(G)".into()))?;
                if lifts != g_orbits[orbit] {
                    r.fail(json!({"LInd over chi' is not a twist orbit": lifts.len()}));
                }
                images.insert(orbit);
            }
            if images.len() != 1 {
                r.fail(json!({"conjugation orbit maps to several twist orbits": images.len()}));
            }
            for i in images {
                hit[i] += 1;
            }
        }
        if hit.iter().any(|&k| k != 1) {
            r.fail(json!({"not a bijection of orbits": hit}));
        }
        r.set("orbits", h_orbits.len());
    }
    Ok(r)
}

/// Mackey's formula, the stabilizer criterion and Clifford's theorem for `H` normal in `G`.
pub fn clifford_suite(grp: &Group, g: &Subgroup, h: &Subgroup) -> Result<Report, HeisError> {
    if !h.is_subset_of(g) || !grp.is_normal_in(h, g) {
        return Err(HeisError::Precondition("H is not normal in G".into()));
    }
    let mut rep = Report::new("clifford", json!({"G": g.order(), "H": h.order()}));
    let ht = irreducible_characters(grp, h, |_| true)?;
    let gt = irreducible_characters(grp, g, |_| true)?;
    let reps = grp.coset_reps(g, h);
    let mut mackey = Report::new("Res Ind tau = sum of conjugates", json!(null));
    let mut stab = Report::new("<Ind tau, Ind tau> = [G_tau : H]", json!(null));
    let mut distcent = Report::new("trivial stabilizer gives irreducible induction", json!(null));
    for (ti, tau) in ht.irreps.iter().enumerate() {
        let ind = chars::induce(grp, &tau.chi, h, g);
        let conjs: Vec<ClassFn> = reps.iter().map(|&s| conj_on(grp, &tau.chi, s, h)).collect();
        let sum = conjs.iter().fold(ClassFn::zero(grp), |a, b| a.add(b));
        if chars::restrict(&ind, h) != sum {
            mackey.fail(json!({"tau": ti}));
        }
        let fixed = conjs.iter().filter(|c| **c == tau.chi).count() as i64;
        if chars::inner(grp, &ind, &ind, g) != Ratio::from_integer(fixed) {
            stab.fail(json!({"tau": ti, "stabilizer": fixed}));
        }
        if fixed == 1 && gt.position(&ind).is_none() {
            distcent.fail(json!({"tau": ti}));
        }
    }
    let mut cliff = Report::new("Res pi is e times one orbit", json!(null));
    for (pi_i, pi) in gt.irreps.iter().enumerate() {
        let mult = ht.decompose(grp, &chars::restrict(&pi.chi, h));
        let support: Vec<usize> = (0..mult.len()).filter(|&i| mult[i] != Ratio::from_integer(0)).collect();
        let first = support[0];
        let orbit: BTreeSet<ClassFn> =
            reps.iter().map(|&s| conj_on(grp, &ht.irreps[first].chi, s, h)).collect();
        let supp_set: BTreeSet<ClassFn> = support.iter().map(|&i| ht.irreps[i].chi.clone()).collect();
        let equal_mult = support.iter().all(|&i| mult[i] == mult[first]);
        if orbit != supp_set || !equal_mult {
            cliff.fail(json!({"pi": pi_i}));
        }
    }
    for r in [mackey, stab, distcent, cliff] {
        rep.push(r);
    }
    rep.set("irr_h", ht.irreps.len());
    rep.set("irr_g", gt.irreps.len());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::super::group::fixtures::*;
    use super::super::special::is_special_pair;
    use super::*;

    #[test]
    fn local_extension_basics() {
        let g = cyclic(4, 2);
        let w = g.whole();
        let t = g.trivial();
        for chi in lin_characters(&g, &w).unwrap() {
            let f = extend_locally(&g, &LinChar::trivial(&g, &t).to_class_fn(&g), &t, &w, &chi).unwrap();
            assert_eq!(f, chi.to_class_fn(&g));
        }
        let h = g.generate(&[2]);
        for tau in lin_characters(&g, &h).unwrap() {
            let r = restau_check(&g, &tau.to_class_fn(&g), &h, &w).unwrap();
            assert!(r.pass);
        }
    }

    #[test]
    fn heisenberg_pair_lind_is_svn() {
        let g = heis27();
        let w = g.whole();
        let z = g.center(&w);
        let sp = is_special_pair(&g, &w, &z, &w).unwrap();
        let r = lind_suite(&g, &sp, 100).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
        let sp = is_special_pair(&g, &w, &w, &z).unwrap();
        let r = lind_suite(&g, &sp, 100).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
    }

    #[test]
    fn clifford_small() {
        let g = cyclic(4, 2);
        let r = clifford_suite(&g, &g.whole(), &g.generate(&[2])).unwrap();
        assert!(r.pass);
        let h = heis27();
        let w = h.whole();
        let r = clifford_suite(&h, &w, &h.center(&w)).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
    }
}
