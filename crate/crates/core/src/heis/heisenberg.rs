//! Heisenberg-type subgroups, their commutator pairings, Lagrangians and the
//! Stone-von Neumann character.

use super::abelian::Quotient;
use super::chars::{self, irreducible_characters, lin_extensions, ClassFn, LinChar};
use super::group::{El, Group, Subgroup};
use super::HeisError;
use crate::finabel::Pairing;
use num_rational::Ratio;
use serde::Serialize;

/// Whether every commutator of `n` lies in `A` (which must be contained in `n`).
pub fn is_heisenberg_type(g: &Group, n: &Subgroup) -> Result<bool, HeisError> {
    if !g.a_subgroup().is_subset_of(n) {
        return Err(HeisError::Precondition("A is not contained in N".into()));
    }
    Ok(g.commutators_in_a(n))
}

#[derive(Debug, Clone)]
pub struct HeisenbergPair {
    pub n: Subgroup,
    pub center: Subgroup,
    pub x: Quotient,
    pub pairing: Pairing,
    /// `sqrt([N : Z(N)])`.
    pub d: u64,
}

/// Outcome of the four equivalent Lagrangian conditions for one subgroup.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LagrangianConditions {
    pub order: usize,
    pub index_balanced: bool,
    pub self_centralizing: bool,
    pub maximal_abelian: bool,
    pub dual_isomorphism: bool,
}

impl LagrangianConditions {
    pub fn all(&self) -> bool {
        self.index_balanced && self.self_centralizing && self.maximal_abelian && self.dual_isomorphism
    }
}

fn isqrt(k: u64) -> u64 {
    let mut r = (k as f64).sqrt() as u64;
    while r * r > k {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= k {
        r += 1;
    }
    r
}

impl HeisenbergPair {
    pub fn new(g: &Group, n: &Subgroup) -> Result<Self, HeisError> {
        if !is_heisenberg_type(g, n)? {
            return Err(HeisError::Precondition("commutators of N are not contained in A".into()));
        }
        let center = g.center(n);
        let x = Quotient::new(g, n, &center)?;
        let a = g.a_order() as u64;
        let log = |u: El, v: El| g.a_log(g.comm(u, v)).expect("commutator in A") as u64;
        let matrix: Vec<Vec<u64>> =
            x.lifts.iter().map(|&u| x.lifts.iter().map(|&v| log(u, v)).collect()).collect();
        let pairing = Pairing::new(&x.group, a, matrix)
            .map_err(|e| HeisError::Engine(format!("commutator pairing: {e}")))?;
        for &u in x.reps() {
            for &v in x.reps() {
                if pairing.eval(x.coords_of(u), x.coords_of(v)) != log(u, v) {
                    return Err(HeisError::Engine("commutator is not bimultiplicative".into()));
                }
            }
        }
        if let Some(r) = pairing.radical().into_iter().next() {
            return Err(HeisError::Degenerate(x.lift(&r)));
        }
        let d = isqrt(x.order());
        if d * d != x.order() {
            return Err(HeisError::Engine(format!("[N:Z(N)] = {} is not a square", x.order())));
        }
        Ok(HeisenbergPair { n: n.clone(), center, x, pairing, d })
    }

    /// Every Lagrangian subgroup, lifted to `N`, in canonical order.
    pub fn lagrangians(&self, g: &Group) -> Vec<Subgroup> {
        self.lagrangians_capped(g, usize::MAX).0
    }

    /// At most `cap` Lagrangians and whether the list is complete.
    pub fn lagrangians_capped(&self, g: &Group, cap: usize) -> (Vec<Subgroup>, bool) {
        let (ls, complete) = self.pairing.lagrangians_capped(cap);
        let lifted = ls.iter().map(|s| self.x.preimage(g, &self.center, &s.canonical_generators())).collect();
        (lifted, complete)
    }

    /// Evaluate the four equivalent Lagrangian conditions for `l` (with `Z(N) <= l <= N`).
    pub fn conditions(&self, g: &Group, l: &Subgroup) -> LagrangianConditions {
        let n = &self.n;
        let zl = g.centralizer(n, l);
        let abelian = g.commutators_in_a(l) && g.center(l).order() == l.order();
        let maximal_abelian = abelian
            && n.members().iter().all(|&y| {
                l.contains(y) || l.gens().iter().any(|&x| g.mul(x, y) != g.mul(y, x))
            });
        let injective = l
            .members()
            .iter()
            .all(|&x| self.center.contains(x) || n.gens().iter().any(|&y| g.comm(x, y) != 0));
        LagrangianConditions {
            order: l.order(),
            index_balanced: l.order() / self.center.order() == n.order() / l.order(),
            self_centralizing: zl == *l,
            maximal_abelian,
            dual_isomorphism: abelian
                && injective
                && l.order() / self.center.order() == n.order() / l.order(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SvnResult {
    pub chi: ClassFn,
    pub degree: i64,
    pub irreducible: bool,
    pub choices_compared: usize,
    pub choice_independent: bool,
    /// Number of irreducibles of `N` with this central character (should be one).
    pub irreducibles_with_central_char: usize,
    pub matches_table: bool,
    /// Size of the conjugation orbit of one extension to the first Lagrangian (should be `d`).
    pub extension_orbit: usize,
    pub extensions: usize,
}

impl SvnResult {
    pub fn pass(&self, d: u64) -> bool {
        self.irreducible
            && self.degree == d as i64
            && self.choice_independent
            && self.irreducibles_with_central_char == 1
            && self.matches_table
            && self.extension_orbit == d as usize
            && self.extensions == d as usize
    }
}

/// `Ind_L^N theta` for Lagrangians `L` and extensions `theta` of `psi` (up to `cap` inductions).
pub fn stone_von_neumann(
    g: &Group,
    pair: &HeisenbergPair,
    psi: &LinChar,
    cap: usize,
) -> Result<SvnResult, HeisError> {
    if !psi.is_faithful_on_a(g) {
        return Err(HeisError::Precondition("central character is not genuine".into()));
    }
    let n = &pair.n;
    let z = &pair.center;
    let (lags, _) = pair.lagrangians_capped(g, cap.max(1));
    let mut first: Option<ClassFn> = None;
    let mut compared = 0usize;
    let mut independent = true;
    let mut orbit = 0;
    let mut ext_count = 0;
    'outer: for (i, l) in lags.iter().enumerate() {
        let exts = lin_extensions(g, z, psi, l)?;
        if i == 0 {
            ext_count = exts.len();
            let mut seen: Vec<LinChar> = Vec::new();
            for &s in n.members() {
                let conj = conj_lin(g, &exts[0], l, s);
                if !seen.contains(&conj) {
                    seen.push(conj);
                }
            }
            orbit = seen.len();
        }
        for th in &exts {
            if compared >= cap {
                break 'outer;
            }
            let chi = chars::induce(g, &th.to_class_fn(g), l, n);
            compared += 1;
            match &first {
                None => first = Some(chi),
                Some(f) => independent &= *f == chi,
            }
        }
    }
    let chi = first.ok_or_else(|| HeisError::Engine("no Lagrangian found".into()))?;
    let table = irreducible_characters(g, n, |lam| lam.restrict(z) == psi.restrict(z))?;
    let matches = table.irreps.len() == 1 && table.irreps[0].chi == chi;
    Ok(SvnResult {
        degree: chi.degree(),
        irreducible: chars::inner(g, &chi, &chi, n) == Ratio::from_integer(1),
        chi,
        choices_compared: compared,
        choice_independent: independent,
        irreducibles_with_central_char: table.irreps.len(),
        matches_table: matches,
        extension_orbit: orbit,
        extensions: ext_count,
    })
}

/// `theta^s(x) = theta(s^-1 x s)` on `l` (normal in the group generated with `s`).
pub fn conj_lin(g: &Group, th: &LinChar, l: &Subgroup, s: El) -> LinChar {
    let si = g.inv(s);
    let mut out = th.clone();
    let mut vals: Vec<(El, u32)> = Vec::new();
    for &x in l.members() {
        vals.push((x, th.at(g.conj(si, x))));
    }
    out.set_values(&vals);
    out
}

#[cfg(test)]
mod tests {
    use super::super::group::fixtures::*;
    use super::*;

    #[test]
    fn classic_examples() {
        let g = heis27();
        let w = g.whole();
        assert!(is_heisenberg_type(&g, &w).unwrap());
        let p = HeisenbergPair::new(&g, &w).unwrap();
        assert_eq!(p.d, 3);
        let lags = p.lagrangians(&g);
        assert_eq!(lags.len(), 4);
        for l in &lags {
            assert!(p.conditions(&g, l).all());
        }
        let s = s3();
        assert!(!is_heisenberg_type(&s, &s.whole()).unwrap());
        let c = cyclic(4, 2);
        let cw = c.whole();
        assert!(is_heisenberg_type(&c, &cw).unwrap());
        let cp = HeisenbergPair::new(&c, &cw).unwrap();
        assert_eq!(cp.d, 1);
        assert_eq!(cp.lagrangians(&c), vec![cw]);
    }

    #[test]
    fn svn_on_heis27() {
        let g = heis27();
        let w = g.whole();
        let p = HeisenbergPair::new(&g, &w).unwrap();
        let genuine: Vec<_> = chars::lin_characters(&g, &p.center)
            .unwrap()
            .into_iter()
            .filter(|l| l.is_faithful_on_a(&g))
            .collect();
        assert_eq!(genuine.len(), 2);
        for psi in &genuine {
            let r = stone_von_neumann(&g, &p, psi, 1000).unwrap();
            assert!(r.pass(3), "{r:?}");
            assert_eq!(r.choices_compared, 12);
        }
        let triv = LinChar::trivial(&g, &p.center);
        assert!(stone_von_neumann(&g, &p, &triv, 10).is_err());
    }
}
