use mcover::verify::{segments_suite, verify_all, Grid, Options, Point};

#[test]
fn standard_grid_passes() {
    let r = verify_all(&Grid::standard(), &Options::default());
    assert!(r.pass, "{}", r.summary_lines().join("\n"));
    assert_eq!(r.data["skipped"], serde_json::json!([]));
    assert_eq!(r.data["checks"], 84);
}

#[test]
fn degenerate_grid_passes() {
    let r = verify_all(&Grid::degenerate(), &Options::default());
    assert!(r.pass, "{}", r.summary_lines().join("\n"));
    assert!(r.subchecks.len() >= 10);
}

#[test]
fn perturbation_is_caught() {
    let grid = Grid { covers: vec![Point::new(5, 2, 0, &[1, 1]), Point::new(7, 3, 1, &[2])], ..Grid::default() };
    let r = verify_all(&grid, &Options { perturb: true, ..Options::default() });
    assert!(!r.pass);
    assert_eq!(r.data["failed"], 2);
    assert!(r.counterexample.is_some());
}

#[test]
fn segment_suite_depends_only_on_seed() {
    let a = segments_suite(40, 3, 9).unwrap();
    let b = segments_suite(40, 3, 9).unwrap();
    assert!(a.pass);
    assert_eq!(a, b);
}
