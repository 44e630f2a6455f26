//! Pinned invocations shared by the golden and acceptance targets.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcover"))
        .args(args)
        .current_dir(dir())
        .env_remove("MCOVER_CAP")
        .output()
        .expect("binary runs")
}

pub const CASES: &[(&str, &[&str])] = &[
    ("hilbert_7_3", &["hilbert", "--p", "7", "--n", "3", "--a", "1,0", "--b", "0,1"]),
    ("hilbert_13_12_json", &["hilbert", "--p", "13", "--n", "12", "--a", "5,7", "--b", "3,-1", "--format", "json"]),
    ("cover_cocycle", &["cover", "check", "--p", "5", "--n", "2", "--c", "0", "--beta", "1,1", "--what", "cocycle"]),
    ("cover_cocycle_product", &["cover", "check", "--p", "7", "--n", "3", "--c", "1", "--beta", "2", "--what", "cocycle", "--model", "product"]),
    ("cover_commutator", &["cover", "check", "--p", "7", "--n", "3", "--c", "1", "--beta", "2", "--what", "commutator"]),
    ("cover_scalar", &["cover", "check", "--p", "5", "--n", "2", "--c", "1", "--beta", "1,2", "--what", "scalar"]),
    ("cover_center", &["cover", "check", "--p", "13", "--n", "4", "--c", "0", "--beta", "3", "--what", "center"]),
    ("cover_subgroups", &["cover", "check", "--p", "7", "--n", "3", "--c", "1", "--beta", "1,2", "--what", "subgroups"]),
    ("cover_constants", &["cover", "check", "--p", "13", "--n", "4", "--c", "0", "--beta", "3", "--what", "constants", "--format", "json"]),
    ("heis_svn", &["heis", "svn", "--p", "7", "--n", "3", "--c", "1", "--beta", "1"]),
    ("heis_lagrangians", &["heis", "lagrangians", "--p", "5", "--n", "2", "--c", "0", "--beta", "1,1"]),
    ("heis_special", &["heis", "special", "--p", "7", "--n", "3", "--c", "1", "--beta", "1,2"]),
    ("heis_lind", &["heis", "lind", "--p", "5", "--n", "2", "--c", "1", "--beta", "1,1", "--format", "json"]),
    ("mtp_build", &["mtp", "build", "--p", "5", "--n", "2", "--c", "0", "--beta", "1,1"]),
    ("mtp_transfer", &["mtp", "transfer", "--p", "7", "--n", "3", "--c", "1", "--beta", "1,1"]),
    ("mtp_assoc", &["mtp", "assoc", "--p", "5", "--n", "2", "--c", "0", "--beta", "1,1,1"]),
    ("mtp_perm", &["mtp", "perm", "--p", "5", "--n", "2", "--c", "0", "--beta", "1,1", "--order", "1,0"]),
    ("mtp_weak", &["mtp", "weak", "--p", "5", "--n", "2", "--c", "1", "--beta", "1,1"]),
    ("seg_order", &["seg", "order", "--input", "linked_pair.json"]),
    ("seg_order_mixed_json", &["seg", "order", "--input", "mixed.json", "--format", "json"]),
    ("seg_soc", &["seg", "soc", "--input", "linked_pair.json"]),
    ("seg_cos", &["seg", "soc", "--input", "linked_pair.json", "--kind", "l"]),
    ("seg_jacquet_z", &["seg", "jacquet", "--input", "one_segment.json", "--s", "1"]),
    ("seg_jacquet_l", &["seg", "jacquet", "--input", "one_segment.json", "--s", "1", "--kind", "l"]),
    ("seg_dual", &["seg", "dual", "--input", "mixed.json"]),
    ("seg_wsets", &["seg", "wsets", "--beta", "2,1", "--gamma", "1,2"]),
    ("verify_degenerate", &["verify-all", "--grid", "degenerate"]),
    ("verify_config", &["verify-all", "--grid", "config", "--config", "small_grid.json"]),
    ("config_defaults", &["mtp", "build", "--config", "small_grid.json", "--format", "human"]),
];
