//! Special pairs `(H, N)` in a table group and the exhaustive identity report.

use super::chars::{self, irreducible_characters, lin_characters, LinChar};
use super::group::{Group, Subgroup};
use super::heisenberg::{conj_lin, HeisenbergPair};
use super::HeisError;
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeSet;

/// `(G, H, N)` with the result of the defining checks.
#[derive(Debug, Clone)]
pub struct SpecialPairData {
    pub g: Subgroup,
    pub h: Subgroup,
    pub n: Subgroup,
    pub certificate: Report,
}

impl SpecialPairData {
    pub fn is_special(&self) -> bool {
        self.certificate.pass
    }
    pub fn n_cap_h(&self, grp: &Group) -> Subgroup {
        grp.intersect(&self.n, &self.h)
    }
    /// `Z_N(G)`.
    pub fn n_central(&self, grp: &Group) -> Subgroup {
        grp.centralizer(&self.n, &self.g)
    }
}

fn members(s: &Subgroup) -> Vec<u32> {
    s.members().to_vec()
}

/// Elements of `within` whose commutator with every generator of `g` lies in `A`.
pub fn central_mod_a_in(grp: &Group, within: &Subgroup, g: &Subgroup) -> Subgroup {
    let a = grp.a_subgroup();
    grp.filter(within, |x| g.gens().iter().all(|&y| a.contains(grp.comm(x, y))))
}

/// Checks `N <= Z_G(H)`, `pr(N) <= Z(G/A)` and `Z_G(H n N) = NH`. Containment failures
/// (`A <= H`, `A <= N`, `H, N <= G`, `H` normal) are errors; failures of the defining
/// conditions are recorded in the certificate.
pub fn is_special_pair(grp: &Group, g: &Subgroup, h: &Subgroup, n: &Subgroup) -> Result<SpecialPairData, HeisError> {
    let a = grp.a_subgroup();
    for (what, ok) in [
        ("A <= H", a.is_subset_of(h)),
        ("A <= N", a.is_subset_of(n)),
        ("H <= G", h.is_subset_of(g)),
        ("N <= G", n.is_subset_of(g)),
        ("H normal in G", grp.is_normal_in(h, g)),
    ] {
        if !ok {
            return Err(HeisError::Precondition(format!("{what} fails")));
        }
    }
    let mut cert = Report::new("special-pair", json!({"G": g.order(), "H": h.order(), "N": n.order()}));
    let bad = n.gens().iter().flat_map(|&x| h.gens().iter().map(move |&y| (x, y))).find(|&(x, y)| grp.comm(x, y) != 0);
    cert.require(bad.is_none(), "N <= Z_G(H)", json!(bad));
    let nz = central_mod_a_in(grp, n, g);
    cert.require(nz == *n, "pr(N) central", json!(n.members().iter().find(|&&x| !nz.contains(x))));
    let lhs = grp.centralizer(g, &grp.intersect(h, n));
    let rhs = grp.join(n, h);
    cert.require(lhs == rhs, "Z_G(H n N) = NH", json!({"lhs": lhs.order(), "rhs": rhs.order()}));
    Ok(SpecialPairData { g: g.clone(), h: h.clone(), n: n.clone(), certificate: cert })
}

fn equality(name: &str, grp_lhs: &Subgroup, grp_rhs: &Subgroup) -> Report {
    let mut r = Report::new(name, json!(null));
    r.set("lhs_order", grp_lhs.order());
    r.set("rhs_order", grp_rhs.order());
    if grp_lhs != grp_rhs {
        let x = grp_lhs
            .members()
            .iter()
            .find(|&&x| !grp_rhs.contains(x))
            .or_else(|| grp_rhs.members().iter().find(|&&x| !grp_lhs.contains(x)));
        r.fail(json!({"element": x}));
    }
    r
}

fn count_equality(name: &str, vals: &[(&str, usize)]) -> Report {
    let mut r = Report::new(name, json!(null));
    for (k, v) in vals {
        r.set(k, v);
    }
    if vals.windows(2).any(|w| w[0].1 != w[1].1) {
        r.fail(json!(vals.iter().map(|(k, v)| json!({*k: v})).collect::<Vec<_>>()));
    }
    r
}

/// The commutator pairing `G/Z_G(N') x N'/Z_{N'}(G) -> A`: values in `A`, bimultiplicative,
/// well defined, and both sides of equal order with exponent dividing `|A|`.
fn duality(grp: &Group, g: &Subgroup, np: &Subgroup, label: &str) -> Report {
    let mut r = Report::new(format!("pontryagin duality ({label})"), json!(null));
    let a = grp.a_subgroup();
    let zg = grp.centralizer(g, np);
    let zn = grp.centralizer(np, g);
    let xs = grp.coset_reps(g, &zg);
    let ys = grp.coset_reps(np, &zn);
    r.set("left_order", xs.len());
    r.set("right_order", ys.len());
    let log = |x, y| grp.a_log(grp.comm(x, y));
    'vals: for &x in g.members() {
        for &y in np.gens() {
            if !a.contains(grp.comm(x, y)) {
                r.fail(json!({"commutator outside A": [x, y]}));
                break 'vals;
            }
        }
    }
    let m = grp.a_order() as u32;
    for &x1 in &xs {
        for &x2 in &xs {
            for &y in &ys {
                let l = log(grp.mul(x1, x2), y);
                let rr = log(x1, y).zip(log(x2, y)).map(|(u, v)| (u + v) % m);
                if l != rr {
                    r.fail(json!({"not multiplicative on the left": [x1, x2, y]}));
                }
            }
        }
    }
    for &x in &xs {
        for &y1 in &ys {
            for &y2 in &ys {
                let l = log(x, grp.mul(y1, y2));
                let rr = log(x, y1).zip(log(x, y2)).map(|(u, v)| (u + v) % m);
                if l != rr {
                    r.fail(json!({"not multiplicative on the right": [x, y1, y2]}));
                }
            }
        }
    }
    r.require(xs.len() == ys.len(), "equal orders", json!([xs.len(), ys.len()]));
    let e_ok = xs.iter().all(|&x| zg.contains(grp.pow(x, m as u64)))
        && ys.iter().all(|&y| zn.contains(grp.pow(y, m as u64)));
    r.require(e_ok, "exponent divides |A|", json!(m));
    r
}

/// For a genuine character of an abelian `N'` containing `A`: stabilizer is `Z_G(N')` and the
/// orbit is the set of extensions of its restriction to `Z_{N'}(G)`.
fn genuine_orbits(grp: &Group, g: &Subgroup, np: &Subgroup, label: &str) -> Result<Report, HeisError> {
    let mut r = Report::new(format!("genuine orbits ({label})"), json!(null));
    let zg = grp.centralizer(g, np);
    let zn = grp.centralizer(np, g);
    let reps = grp.coset_reps(g, &zg);
    let chars: Vec<LinChar> =
        lin_characters(grp, np)?.into_iter().filter(|c| c.is_faithful_on_a(grp)).collect();
    r.set("genuine_characters", chars.len());
    for c in chars.iter().take(8) {
        let stab: Vec<u32> =
            g.members().iter().copied().filter(|&s| conj_lin(grp, c, np, s) == *c).collect();
        if stab != members(&zg) {
            r.fail(json!({"stabilizer order": stab.len(), "Z_G(N') order": zg.order()}));
        }
        let orbit: BTreeSet<LinChar> = reps.iter().map(|&s| conj_lin(grp, c, np, s)).collect();
        let exts: BTreeSet<LinChar> =
            chars::lin_extensions(grp, &zn, &c.restrict(&zn), np)?.into_iter().collect();
        if orbit != exts {
            r.fail(json!({"orbit": orbit.len(), "extensions": exts.len()}));
        }
    }
    Ok(r)
}

/// Every identity of the special-pair lemma, checked exhaustively.
pub fn special_pair_report(grp: &Group, sp: &SpecialPairData) -> Result<Report, HeisError> {
    let (g, h, n) = (&sp.g, &sp.h, &sp.n);
    let mut rep = Report::new("special-pair identities", sp.certificate.spec.clone());
    rep.require(sp.is_special(), "pair is special", json!(sp.certificate.counterexample));
    let nh = grp.intersect(n, h);
    let zn = grp.center(n);
    let zh = grp.center(h);
    let zng = grp.centralizer(n, g);
    let zhg = grp.centralizer(h, g);
    let nh_join = grp.join(n, h);
    let znh = grp.join(&zn, h);

    rep.push(equality("H n N = Z(H) n Z(N)", &nh, &grp.intersect(&zh, &zn)));

    let mut heis = Report::new("N of Heisenberg type", json!(null));
    match HeisenbergPair::new(grp, n) {
        Ok(p) => heis.set("d", p.d),
        Err(e) => heis.fail(json!(e.to_string())),
    }
    rep.push(heis);

    let nmax = grp.centralizer(&central_mod_a_in(grp, g, g), h);
    let mut nm = Report::new("N <= N_max and (H, N_max) special", json!(null));
    nm.set("n_max_order", nmax.order());
    nm.require(n.is_subset_of(&nmax), "N <= N_max", json!(null));
    match is_special_pair(grp, g, h, &nmax) {
        Ok(s) => {
            nm.require(s.is_special(), "(H, N_max) special", json!(s.certificate.counterexample));
        }
        Err(e) => {
            nm.fail(json!(e.to_string()));
        }
    }
    rep.push(nm);

    for (label, np) in [("N", n), ("Z(N)", &zn), ("N n H", &nh)] {
        rep.push(duality(grp, g, np, label));
        let lhs = grp.centralizer(g, np);
        let rhs = grp.join(&grp.centralizer(n, np), h);
        rep.push(equality(&format!("Z_G({label}) = Z_N({label}) H"), &lhs, &rhs));
    }
    rep.push(equality("Z_G(Z(N)) = NH", &grp.centralizer(g, &zn), &nh_join));
    rep.push(equality("Z_G(N) = Z(N) H", &grp.centralizer(g, n), &znh));
    rep.push(count_equality(
        "|G/Z(N)H| = |N/Z_N(G)|",
        &[("G/Z(N)H", g.order() / znh.order()), ("N/Z_N(G)", n.order() / zng.order())],
    ));
    let znhg = grp.centralizer(&nh, g);
    rep.push(count_equality(
        "|G/NH| = |Z(N)/Z_N(G)| = |(N n H)/Z_{N n H}(G)|",
        &[
            ("G/NH", g.order() / nh_join.order()),
            ("Z(N)/Z_N(G)", zn.order() / grp.intersect(&zn, &zng).order()),
            ("NnH/Z_NnH(G)", nh.order() / znhg.order()),
        ],
    ));
    rep.push(equality("Z(N) = Z_N(G)(N n H)", &zn, &grp.join(&zng, &nh)));
    rep.push(equality("Z_G(N) = Z_N(G) H", &grp.centralizer(g, n), &grp.join(&zng, h)));
    rep.push(equality("Z(G) = Z_N(G) Z_H(G)", &grp.center(g), &grp.join(&zng, &zhg)));
    for (label, np) in [("Z(N)", &zn), ("N n H", &nh)] {
        rep.push(genuine_orbits(grp, g, np, label)?);
    }
    rep.push(stabilizers(grp, sp)?);
    Ok(rep)
}

/// `G_tau = HN` for every irreducible `tau` of `H` whose central character on `N n H` is genuine.
fn stabilizers(grp: &Group, sp: &SpecialPairData) -> Result<Report, HeisError> {
    let mut r = Report::new("G_tau = HN", json!(null));
    let nh = sp.n_cap_h(grp);
    let target = grp.join(&sp.n, &sp.h);
    let table = irreducible_characters(grp, &sp.h, |lam| lam.restrict(&nh).is_faithful_on_a(grp))?;
    let reps = grp.coset_reps(&sp.g, &sp.h);
    r.set("genuine_irreducibles", table.irreps.len());
    for tau in &table.irreps {
        let stab: Vec<u32> = reps
            .iter()
            .copied()
            .filter(|&s| chars::restrict(&chars::conjugate(grp, &tau.chi, s), &sp.h) == tau.chi)
            .collect();
        let mut gens = sp.h.gens().to_vec();
        gens.extend(&stab);
        let gt = grp.generate(&gens);
        if gt != target || stab.len() * sp.h.order() != gt.order() {
            r.fail(json!({"stabilizer": gt.order(), "HN": target.order()}));
            break;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::super::group::fixtures::*;
    use super::*;

    #[test]
    fn trivial_and_heisenberg_pairs() {
        let g = heis27();
        let w = g.whole();
        let z = g.center(&w);
        let sp = is_special_pair(&g, &w, &w, &z).unwrap();
        assert!(sp.is_special());
        let r = special_pair_report(&g, &sp).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
        let sp = is_special_pair(&g, &w, &z, &w).unwrap();
        assert!(sp.is_special());
        let r = special_pair_report(&g, &sp).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
    }

    #[test]
    fn not_special() {
        let g = heis27();
        let w = g.whole();
        let sp = is_special_pair(&g, &w, &w, &w).unwrap();
        assert!(!sp.is_special());
        assert!(is_special_pair(&g, &w, &g.trivial(), &w).is_err());
    }
}
