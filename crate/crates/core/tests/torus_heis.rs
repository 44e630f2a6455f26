use mcover::cover::{distinguished_subgroups, CoverSpec, FiniteCoverGroup};
use mcover::heis::chars::{irreducible_characters, lin_characters};
use mcover::heis::heisenberg::{stone_von_neumann, HeisenbergPair};
use mcover::heis::lind::{clifford_suite, lind_suite};
use mcover::heis::special::{is_special_pair, special_pair_report};
use mcover::heis::{Group, Subgroup};

const CAP: u64 = 10_000_000;

fn model(p: u64, n: u64, c: i64, beta: Vec<usize>) -> (FiniteCoverGroup, Group, Subgroup, Subgroup) {
    let s = CoverSpec::new(p, n, c, beta).unwrap();
    let m = FiniteCoverGroup::levi(&s);
    let g = m.table(CAP).unwrap();
    let (d, rep) = distinguished_subgroups(&s).unwrap();
    assert!(rep.pass, "{}", rep.to_pretty());
    let h = m.model_subgroup(&g, &d.h_beta).unwrap();
    let z = m.model_subgroup(&g, &d.z_beta).unwrap();
    (m, g, h, z)
}

#[test]
fn rank_one_svn() {
    let s = CoverSpec::new(7, 3, 1, vec![1]).unwrap();
    let g = FiniteCoverGroup::levi(&s).table(CAP).unwrap();
    let w = g.whole();
    let pair = HeisenbergPair::new(&g, &w).unwrap();
    assert_eq!(pair.x.order(), 9);
    assert_eq!(pair.d, 3);
    let genuine: Vec<_> = lin_characters(&g, &pair.center)
        .unwrap()
        .into_iter()
        .filter(|l| l.is_faithful_on_a(&g))
        .collect();
    assert_eq!(genuine.len(), 2);
    for psi in &genuine {
        let r = stone_von_neumann(&g, &pair, psi, 1000).unwrap();
        assert!(r.pass(3), "{r:?}");
    }
    let t = irreducible_characters(&g, &w, |_| true).unwrap();
    assert_eq!(t.degree_square_sum(), 27);
}

#[test]
fn engine_certificate_on_rank_two() {
    let s = CoverSpec::new(5, 2, 1, vec![2]).unwrap();
    let g = FiniteCoverGroup::levi(&s).table(CAP).unwrap();
    let t = irreducible_characters(&g, &g.whole(), |_| true).unwrap();
    assert_eq!(t.degree_square_sum(), 32);
}

#[test]
fn block_pairs_are_special() {
    for c in [0, 1] {
        let (_, g, h, z) = model(5, 2, c, vec![1, 1]);
        let w = g.whole();
        let sp = is_special_pair(&g, &w, &h, &z).unwrap();
        assert!(sp.is_special(), "{}", sp.certificate.to_pretty());
        let r = special_pair_report(&g, &sp).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
    }
    let (_, g, h, z) = model(7, 3, 1, vec![1, 2]);
    let w = g.whole();
    let sp = is_special_pair(&g, &w, &h, &z).unwrap();
    assert!(sp.is_special(), "{}", sp.certificate.to_pretty());
    let r = special_pair_report(&g, &sp).unwrap();
    assert!(r.pass, "{}", r.summary_lines().join("\n"));
}

#[test]
fn block_center_svn_degree() {
    let (_, g, _, z) = model(5, 2, 0, vec![1, 1]);
    let pair = HeisenbergPair::new(&g, &z).unwrap();
    assert_eq!(pair.d * pair.d, pair.x.order());
    for psi in lin_characters(&g, &pair.center).unwrap().iter().filter(|l| l.is_faithful_on_a(&g)) {
        let r = stone_von_neumann(&g, &pair, psi, 100).unwrap();
        assert!(r.pass(pair.d));
    }
}

#[test]
fn lagrangian_induction_on_models() {
    for (p, n, c, beta) in [(5, 2, 0, vec![1, 1]), (5, 2, 1, vec![1, 1]), (7, 3, 1, vec![1, 2])] {
        let (_, g, h, z) = model(p, n, c, beta);
        let w = g.whole();
        let sp = is_special_pair(&g, &w, &h, &z).unwrap();
        let r = lind_suite(&g, &sp, 16).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
    }
}

#[test]
fn mackey_on_levi_torus() {
    let s = CoverSpec::new(7, 3, 1, vec![2]).unwrap();
    let m = FiniteCoverGroup::levi(&s);
    let g = m.table(CAP).unwrap();
    let (d, _) = distinguished_subgroups(&s).unwrap();
    let h = m.model_subgroup(&g, &d.h_beta).unwrap();
    let r = clifford_suite(&g, &g.whole(), &h).unwrap();
    assert!(r.pass, "{}", r.summary_lines().join("\n"));
}
