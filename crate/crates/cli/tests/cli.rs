//! End-to-end tests of the binary: exit codes, file round trips, exports.

use cyclerep::field::Field;
use cyclerep::quiver::{CyclicQuiver, Walk};
use cyclerep::rep::{band_rep, random_basis_change, walk_rep, BandSpec};
use cyclerep_cli::io;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclerep"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn build_walk_prints_dims() {
    let out = run(&["build", "walk", "--g", "3", "--h", "2", "--p", "4", "--q", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dims"], serde_json::json!([2, 1, 1, 1, 2]));
}

#[test]
fn build_band_special_arrow() {
    let out = run(&[
        "build", "band", "--g", "3", "--h", "2", "--lambda", "2", "--d", "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["maps"]["beta_2"]["entries"], serde_json::json!(["2", "0", "1", "2"]));
}

#[test]
fn build_rejects_bad_walk() {
    let out = run(&["build", "walk", "--g", "3", "--h", "2", "--p", "5", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hom_command() {
    let dir = std::env::temp_dir().join("cyclerep-cli-hom");
    std::fs::create_dir_all(&dir).unwrap();
    let v = dir.join("v.json");
    let w = dir.join("w.json");
    assert!(run(&[
        "build", "walk", "--g", "3", "--h", "2", "--p", "3", "--q", "3", "-o",
        v.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "build", "walk", "--g", "3", "--h", "2", "--p", "3", "--q", "7", "-o",
        w.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["hom", v.to_str().unwrap(), w.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");

    // mismatched quivers are a usage error
    let u = dir.join("u.json");
    assert!(run(&[
        "build", "walk", "--g", "2", "--h", "3", "--p", "0", "--q", "2", "-o",
        u.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["hom", v.to_str().unwrap(), u.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_and_unsupported() {
    let out = run(&["verify", "--g", "2", "--h", "1", "--m", "0", "--lambdas", "1,2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("relation a"));

    let out = run(&["verify", "--g", "1", "--h", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_json_report() {
    let path = std::env::temp_dir().join("cyclerep-report.json");
    let out = run(&[
        "verify", "--g", "1", "--h", "2", "--m", "0", "--lambdas", "1", "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["runs"][0]["ok"], serde_json::json!(true));
}

#[test]
fn export_assembled_contains_connecting_arrows() {
    let out = run(&[
        "export", "assembled", "--g", "3", "--h", "2", "--m", "0", "--lambdas", "1",
        "--format", "dot",
    ]);
    assert!(out.status.success());
    let dot = stdout(&out);
    for needle in [
        "iota_0(0)", "iota_0(3)", "iota_inf(0)", "iota_inf(3)", "iota_inf(4)",
        "iota_lambda(1)", "kappa_0(0)", "kappa_inf(4)", "kappa_lambda(1)",
    ] {
        assert!(dot.contains(needle), "missing {needle}");
    }
    // deterministic output
    let again = stdout(&run(&[
        "export", "assembled", "--g", "3", "--h", "2", "--m", "0", "--lambdas", "1",
        "--format", "dot",
    ]));
    assert_eq!(dot, again);
}

#[test]
fn export_component_counts() {
    let out = run(&[
        "export", "component", "--g", "3", "--h", "2", "--which", "p", "--truncation", "1",
        "--format", "dot",
    ]);
    assert!(out.status.success());
    let nodes = stdout(&out).lines().filter(|l| l.contains("label=\"P:")).count();
    assert_eq!(nodes, 35);
}

#[test]
fn export_json_with_objects() {
    let out = run(&[
        "export", "assembled", "--g", "3", "--h", "2", "--m", "1", "--lambdas", "1",
        "--format", "json", "--with-objects",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sink = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["id"] == "P:r=6,s=0")
        .expect("grid sink present");
    assert_eq!(sink["walk"], serde_json::json!({"p": 3, "q": 33}));
}

#[test]
fn decompose_collapsed_band() {
    let dir = std::env::temp_dir().join("cyclerep-cli-dec");
    std::fs::create_dir_all(&dir).unwrap();
    let b = dir.join("b0.json");
    assert!(run(&[
        "build", "band", "--g", "3", "--h", "2", "--lambda", "0", "--d", "1", "-o",
        b.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["decompose", b.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(3,7) ×1"));
}

#[test]
fn decompose_reports_incomplete_for_unreachable_parameter() {
    let dir = std::env::temp_dir().join("cyclerep-cli-dec3");
    std::fs::create_dir_all(&dir).unwrap();
    let b = dir.join("b20.json");
    assert!(run(&[
        "build", "band", "--g", "3", "--h", "2", "--field", "q", "--lambda", "20", "--d",
        "1", "-o", b.to_str().unwrap()
    ])
    .status
    .success());
    // default rational candidates stop at 10
    let out = run(&["decompose", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // with the right candidate the decomposition succeeds
    let out = run(&["decompose", b.to_str().unwrap(), "--lambdas", "20"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("band(λ=20,d=1)"));
}

#[test]
fn serialization_round_trip_is_byte_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    for _ in 0..100 {
        let (g, h) = *[(3usize, 2usize), (2, 3), (1, 2), (2, 1)]
            .get(rng.gen_range(0..4))
            .unwrap();
        let k = CyclicQuiver::new(g, h).unwrap();
        let field = if rng.gen_bool(0.5) { Field::prime(101).unwrap() } else { Field::Rational };
        let rep = if rng.gen_bool(0.5) {
            let p = rng.gen_range(0..=k.n()) as i64;
            let len = rng.gen_range(1..=10) as i64;
            walk_rep(&Walk { p, q: p + len - 1 }, &k, field)
        } else {
            let b = BandSpec { lambda: field.from_i64(rng.gen_range(1..=9)), d: rng.gen_range(1..=3) };
            band_rep(&b, &k, field)
        };
        let rep = random_basis_change(&rep, &mut rng);
        let text = io::rep_to_string(&rep);
        let parsed = io::rep_from_str(&text).unwrap();
        assert_eq!(io::rep_to_string(&parsed), text);
        assert_eq!(parsed.dims, rep.dims);
        assert_eq!(parsed.maps, rep.maps);
    }
}
