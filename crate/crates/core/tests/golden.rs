use std::path::Path;
use std::process::Command;

fn check(file: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    let expected = std::fs::read_to_string(&path).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_oscmean"))
        .args(args)
        .env_remove("OSCMEAN_PRECISION")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{file}");
}

#[test]
fn two_point_mean_json() {
    check("mean_1_4.json", &["mean", "--values", "1,4", "--k", "1", "--json"]);
}

#[test]
fn three_point_mean_csv() {
    check("mean_three_k3.csv", &["mean", "--values", "1.5,2.5,9", "--k", "3", "--csv"]);
}

#[test]
fn exact_identities_json() {
    check("identities_n4.json", &["identities", "--max-n", "4", "--json"]);
}

#[test]
fn seeded_verify_csv() {
    check("verify_n3.csv", &["verify", "--max-n", "3", "--trials", "5", "--seed", "0", "--csv"]);
}

#[test]
fn seeded_conjecture_human() {
    check("conjecture_n3.txt", &["conjecture", "--n", "3", "--trials", "10", "--seed", "7"]);
}
