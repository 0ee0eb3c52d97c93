use std::path::Path;
use std::process::{Command, Output};

use fpforge_cli::corpus_files;
use fpforge_cli::verify::{Status, VerificationReport};

const BIN: &str = env!("CARGO_BIN_EXE_fpforge");

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).display().to_string()
}

fn fpforge(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn higman_homology_vanishes() {
    let o = fpforge(&["complex", "homology", &corpus("higman_flag.json"), "--ring", "Z"]);
    assert_eq!(o.status.code(), Some(0));
    let groups = &json(&o)["profile"]["groups"];
    assert!(groups.as_array().unwrap().iter().all(|g| g["rank"] == 0 && g["torsion"].as_array().unwrap().is_empty()));
}

#[test]
fn sphere_link_of_edge() {
    let o = fpforge(&["complex", "sphere-link", &corpus("edge.json")]);
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["maximal_simplices"].as_array().unwrap().len(), 4);
}

#[test]
fn predicates_exit_one_when_false() {
    let o = fpforge(&["complex", "nlcp", &corpus("single_edge.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["nlcp"], false);
    assert_eq!(fpforge(&["complex", "flag", &corpus("octahedron.json")]).status.code(), Some(0));
    assert_eq!(fpforge(&["complex", "flag", &corpus("rp2_6.json")]).status.code(), Some(1));
    assert_eq!(fpforge(&["complex", "nlcp", &corpus("point.json")]).status.code(), Some(2));
}

#[test]
fn square_family_and_its_abelianization() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("family.txt");
    let o = fpforge(&[
        "present", "bb", "--complex", &corpus("square.json"), "--loops", "boundary", "--heights", "0,1,3",
        "--output", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().trim(), "⟨a, b, c, d | abcd, a^3b^3c^3d^3⟩");
    let o = fpforge(&["present", "abelianize", "--presentation", out.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "Z^3");
}

#[test]
fn octahedron_edge_path_group_is_trivial() {
    let o = fpforge(&["present", "edge-path", "--complex", &corpus("octahedron.json")]);
    assert_eq!(stdout(&o).trim(), "⟨ | ⟩");
}

#[test]
fn g_empty_for_projective_plane() {
    let o = fpforge(&[
        "present", "g-empty", "--complex", &corpus("rp2_barycentric.json"), "--cover", &corpus("rp2_cover.json"),
        "--deck", &corpus("rp2_deck.json"), "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["generators"][0], "t1");
}

#[test]
fn enumeration_examples() {
    let o = fpforge(&["enumerate", "tc", "--presentation", &corpus("dihedral6.json"), "--max-cosets", "100"]);
    assert_eq!(json(&o)["cosets"], 6);

    let o = fpforge(&["enumerate", "tc", "--presentation", &corpus("higman.json"), "--max-cosets", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "inconclusive");

    let o = fpforge(&["enumerate", "witness", "--word", "a", "--presentation", &corpus("free1.json"), "--degree", "2"]);
    let v = json(&o);
    assert_eq!(v["outcome"]["status"], "found");
    assert_eq!(v["verified"], true);

    let o = fpforge(&[
        "enumerate", "rset", "--presentation", &corpus("square_family.json"), "--tuple", "a,b,c,d", "--budget", "5",
        "--degree", "5",
    ]);
    let positives: Vec<i64> = serde_json::from_value(json(&o)["positives"].clone()).unwrap();
    assert!([0, 1, 3].iter().all(|n| positives.contains(n)));
    assert!(positives.iter().all(|n| [0, 1, 3].contains(n)));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"vertices\": [\"a\",\n 3]\n}").unwrap();
    let o = fpforge(&["complex", "flag", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("vertices[1]"), "{err}");

    std::fs::write(&bad, r#"{"vertices": ["a"], "maximal_simplices": [["a", "b"]]}"#).unwrap();
    let o = fpforge(&["complex", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["issues"][0]["kind"], "dangling_vertex");

    assert_eq!(fpforge(&["complex", "homology", &corpus("edge.json"), "--ring", "F4"]).status.code(), Some(2));
    assert_eq!(fpforge(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn corpus_override_by_environment() {
    let dir = tempfile::tempdir().unwrap();
    corpus_files::generate(dir.path()).unwrap();
    let o = Command::new(BIN)
        .args(["complex", "flag", "corpus/square.json"])
        .current_dir(dir.path().parent().unwrap())
        .env("FPFORGE_CORPUS", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_filters_and_budgets() {
    let o = fpforge(&["verify", "--only", "higman", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.checks.iter().all(|c| c.criterion == 1));
    assert_eq!(report.criterion_status(1), Some(Status::Pass));

    let o = fpforge(&["verify", "--only", "rset", "--budget-scale", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.criterion_status(8), Some(Status::Inconclusive));
    assert!(report.checks.iter().all(|c| c.status != Status::Fail));

    assert_eq!(fpforge(&["verify", "--only", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn verify_report_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let run = || {
        let o = fpforge(&["verify", "--only", "flag-duality", "--seed", "7", "--output", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        let mut report: VerificationReport = serde_json::from_str(&text).unwrap();
        let again: VerificationReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(again, report);
        report.checks.iter_mut().for_each(|c| c.runtime_ms = 0);
        report
    };
    assert_eq!(run(), run());
}

#[test]
fn bundled_corpus_has_not_drifted() {
    let o = fpforge(&["corpus", "check", "--dir", &corpus("")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn tampered_corpus_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    corpus_files::generate(dir.path()).unwrap();
    let check = corpus_files::check(dir.path()).unwrap();
    assert!(check.ok());
    assert_eq!(check.checked, corpus_files::contents().len());
    std::fs::write(dir.path().join("square.json"), "{}").unwrap();
    let o = fpforge(&["corpus", "check", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["hash_mismatch"][0], "square.json");
}
