use mcover::cover::CoverSpec;
use mcover::mtp::{
    associativity_check, permutation_equivariance_check, transfer_suite, weak_equivalence_orbits, ProductCoverModel,
    WellMatched,
};
use serde_json::json;

const CAP: u64 = mcover::DEFAULT_CAP;

fn spec(p: u64, n: u64, c: i64, beta: Vec<usize>) -> CoverSpec {
    CoverSpec::new(p, n, c, beta).unwrap()
}

#[test]
fn well_matched_orders() {
    for (p, n, c, ord) in [(5, 2, 0, 32), (5, 2, 1, 32), (7, 3, 0, 243), (7, 3, 1, 243)] {
        let wm = WellMatched::build(&spec(p, n, c, vec![1, 1]), CAP).unwrap();
        assert!(wm.certificate.pass, "{}", wm.certificate.to_pretty());
        assert_eq!(wm.levi.grp.order(), ord);
        assert_eq!(wm.product.grp.order(), ord);
    }
    let wm = WellMatched::build(&spec(7, 3, 1, vec![3]), CAP).unwrap();
    assert_eq!(wm.levi.grp.mul(5, 40), wm.product.grp.mul(5, 40));
}

// Degrees on the two sides differ by [G_1:L_1 H] / [G_2:L_2 H]; they agree only when the
// rank-one blocks are themselves non-abelian.
#[test]
fn transfer_on_rank_two() {
    for ((p, n, c), degs, preserved) in [
        ((5, 2, 0), [4, 1], false),
        ((5, 2, 1), [4, 1], false),
        ((7, 3, 0), [9, 1], false),
        ((7, 3, 1), [9, 9], true),
    ] {
        let wm = WellMatched::build(&spec(p, n, c, vec![1, 1]), CAP).unwrap();
        let r = transfer_suite(&wm, 16).unwrap();
        assert!(r.pass, "{}", r.summary_lines().join("\n"));
        assert_eq!(r.data["degree_preserved"], json!(preserved));
        let deg = r.subchecks.iter().find(|s| s.check.starts_with("deg")).unwrap();
        assert_eq!(deg.data["degree_pairs"], json!([degs]));
    }
}

#[test]
fn mtp_degree_is_index_times_block_degrees() {
    let pm = ProductCoverModel::build(&spec(5, 2, 0, vec![1, 1]), CAP).unwrap();
    let (a, b) = (&pm.blocks[0].irreps, &pm.blocks[1].irreps);
    assert_eq!((a.len(), b.len(), pm.omegas.len()), (4, 4, 1));
    for p1 in a {
        for p2 in b {
            let x = pm.mtp(&[p1, p2], &pm.omegas[0]).unwrap();
            assert_eq!(x.degree(), 4 * p1.degree() * p2.degree());
        }
    }
}

#[test]
fn associativity_mod_two() {
    let r = associativity_check(&spec(5, 2, 0, vec![1, 1, 1]), CAP, usize::MAX).unwrap();
    assert!(r.pass, "{}", r.to_pretty());
    assert_eq!(r.data["triples"], json!(64));
    assert_eq!(r.data["systems_total"], json!(4));
    assert_eq!(r.data["comparisons"], json!(256));
}

#[test]
fn associativity_mod_three() {
    let r = associativity_check(&spec(7, 3, 0, vec![1, 1, 1]), CAP, usize::MAX).unwrap();
    assert!(r.pass, "{}", r.to_pretty());
    assert_eq!(r.data["triples"], json!(729));
    assert_eq!(r.data["systems_total"], json!(1));
}

#[test]
fn swapping_blocks() {
    for ((p, n, c), beta, order, exact) in [
        ((5, 2, 0), vec![1, 1], vec![1, 0], 16),
        ((7, 3, 1), vec![1, 1], vec![1, 0], 1),
        ((7, 3, 0), vec![1, 1], vec![1, 0], 81),
        ((5, 2, 0), vec![1, 2], vec![1, 0], 16),
        ((5, 2, 0), vec![1, 1, 1], vec![2, 0, 1], 256),
    ] {
        let r = permutation_equivariance_check(&spec(p, n, c, beta), &order, CAP).unwrap();
        assert!(r.pass, "{}", r.to_pretty());
        assert_eq!(r.data["exact"], json!(exact));
        assert_eq!(r.data["weak_fallbacks"], json!(0));
        assert_eq!(r.data["lift_agrees_on_h"], json!(true));
    }
}

#[test]
fn identity_permutation() {
    let r = permutation_equivariance_check(&spec(5, 2, 1, vec![1, 1]), &[0, 1], CAP).unwrap();
    assert!(r.pass);
    assert!(permutation_equivariance_check(&spec(5, 2, 1, vec![1, 1]), &[0, 0], CAP).is_err());
}

#[test]
fn weak_orbits() {
    let (o, rep) = weak_equivalence_orbits(&spec(7, 3, 1, vec![1]), CAP).unwrap();
    assert!(rep.pass, "{}", rep.to_pretty());
    assert_eq!(o, vec![vec![0], vec![1]]);
    let (o, rep) = weak_equivalence_orbits(&spec(5, 2, 0, vec![2]), CAP).unwrap();
    assert!(rep.pass, "{}", rep.to_pretty());
    assert_eq!(o, vec![vec![0]]);
    let (o, rep) = weak_equivalence_orbits(&spec(5, 2, 0, vec![1]), CAP).unwrap();
    assert!(rep.pass, "{}", rep.to_pretty());
    assert_eq!(o.len(), 1);
    assert_eq!(o[0].len(), 4);
}
