use std::process::Command;

use paranil::cli::{execute, parse_file};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let mut full = vec!["paranil".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    execute(full)
}

#[test]
fn documented_outputs() {
    let (code, out) = run(&["tau", &data("heis.grp")]);
    assert_eq!((code, out.as_str()), (0, "tau = {}\n"));
    let (code, out) = run(&["check-para", &data("pair_p3.grp"), "--depth", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("pass (depth 8, stabilized at k=2), n_i = 2"));
    let (code, out) = run(&["consistency", &data("bad25.grp")]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("inconsistent: overlap g2^(g1^2)"));
}

#[test]
fn summaries() {
    assert_eq!(run(&["hirsch", &data("heis.grp")]), (0, "h = 3\n".into()));
    assert_eq!(run(&["tau", &data("pair_p3.grp"), "--group", "H"]).1, "tau = {3}\n");
    let (_, lcs) = run(&["lcs", &data("heis.grp"), "--depth", "4"]);
    assert!(lcs.starts_with("gamma_1/gamma_2: rank 2\ngamma_2/gamma_3: rank 1\ngamma_3/gamma_4: trivial\n"), "{lcs}");
    assert!(lcs.contains("class: 2\n"), "{lcs}");
    let (code, iso) = run(&["isolator", &data("pair_p3.grp"), "--group", "H", "--k", "2", "--primes", "{3}"]);
    assert_eq!(code, 0);
    assert!(iso.starts_with("I_{3}(gamma_2) = <x1, x2>\n"), "{iso}");
    let (code, tau_fail) = run(&["check-tau", &data("pair_p3.grp"), "--tau", "2,3"]);
    assert_eq!(code, 1, "{tau_fail}");
    assert!(tau_fail.starts_with("fail at i = 2"), "{tau_fail}");
    let (code, ann) = run(&["annihilator", &data("pair_p3.grp"), "--group", "H", "--subgroup", "x1, x2", "--element", "t"]);
    assert_eq!(code, 0);
    assert!(ann.starts_with("alpha = t^2 + t + 1, beta = t^2 + t + 1\n"), "{ann}");
    assert_eq!(run(&["check-thm34", &data("pair_p3.grp"), "--mode", "ii"]).0, 0);
    assert_eq!(run(&["check-cor23", &data("pair_p3.grp")]).0, 0);
}

#[test]
fn errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("paranil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.grp");
    std::fs::write(&bad, "[group]\ngenerators = a b\nb^a = b z\n").unwrap();
    let (code, out) = run(&["tau", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.ends_with("bad.grp: line 3, column 9: undeclared generator 'z'\n"), "{out}");
    assert_eq!(run(&["tau", "/nonexistent/x.grp"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check-para", &data("heis.grp")]).0, 2, "no homomorphism in file");
    assert_eq!(run(&["tau", &data("heis.grp"), "--group", "nope"]).0, 2);
    assert_eq!(run(&["check-tau", &data("pair_p3.grp"), "--tau", "4"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn build_round_trip() {
    let dir = std::env::temp_dir().join(format!("paranil-build-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("built.grp");
    let (code, msg) = run(&["build", &data("pair_p3.grp"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{msg}");
    assert!(msg.starts_with("wrote G to "));
    let original = parse_file(&std::fs::read_to_string(data("pair_p3.grp")).unwrap()).unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let rebuilt = parse_file(&text).unwrap();
    assert_eq!(original.groups.len(), rebuilt.groups.len());
    for (a, b) in original.groups.iter().zip(&rebuilt.groups) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.presentation, b.presentation);
    }
    assert_eq!(original.homs.len(), rebuilt.homs.len());
    assert_eq!(original.homs[0].hom.images(), rebuilt.homs[0].hom.images());
    let direct = run(&["check-para", &data("pair_p3.grp")]);
    let again = run(&["check-para", out.to_str().unwrap()]);
    assert_eq!(direct, again);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output() {
    let (code, out) = run(&["check-para", &data("pair_p3.grp"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["depth_checked"], 8);
    assert_eq!(v["witnesses"]["stabilized_at"], "2");
}

#[test]
fn selftest_is_seeded() {
    let a = run(&["selftest", "--seed", "3"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert!(a.1.starts_with("selftest seed 3: pass\n"));
    assert_eq!(a, run(&["selftest", "--seed", "3"]));
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_paranil");
    let ok = Command::new(bin).args(["tau", &data("heis.grp")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "tau = {}\n");
    let bad = Command::new(bin).args(["consistency", &data("bad25.grp")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let err = Command::new(bin).args(["tau", "/nonexistent"]).output().unwrap();
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8(err.stderr).unwrap().starts_with("error: "));
}

#[test]
fn class_bound_from_environment() {
    let bin = env!("CARGO_BIN_EXE_paranil");
    let args = ["isolator", &data("heis.grp"), "--k", "3", "--primes", "2"];
    let free = Command::new(bin).args(args).output().unwrap();
    assert_eq!(free.status.code(), Some(0));
    // the heisenberg group has class 2
    let bounded = Command::new(bin).args(args).env("PARANIL_CLASS_BOUND", "1").output().unwrap();
    assert_eq!(bounded.status.code(), Some(2));
}
