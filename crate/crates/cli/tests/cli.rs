//! End-to-end runs of the command-line front end.

use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

use mvmlab_cli::{repro, run, TARGETS};
use mvmlab_core::constructions::catalog;
use mvmlab_core::poset::Poset;
use mvmlab_core::FiniteAlgebra;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn mvmlab(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("mvmlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_catalog(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, catalog(name).unwrap().to_json()).unwrap();
    path_str(&path).to_string()
}

#[test]
fn missing_file_is_a_domain_error() {
    let r = mvmlab(&["member", "--set", "1,2", "missing.json"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("file not found"), "{}", r.err);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["enumerate"],
        &["enumerate", "--size", "3", "--filter", "odd"],
        &["member", "--set", "1,4", "a.json"],
        &["phi", "--n", "0", "a.json"],
        &["classify"],
    ] {
        let r = mvmlab(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(!r.err.is_empty());
    }
    let r = mvmlab(&["enumerate", "--bogus"]);
    assert!(r.err.contains("--size"), "{}", r.err);
}

#[test]
fn help_exits_zero() {
    let r = mvmlab(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("repro"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mvmlab");
    let status = Command::new(bin)
        .args(["member", "--set", "1,2", "missing.json"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["repro", "counts"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}

#[test]
fn construct_then_check_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c3.json");
    let r = mvmlab(&[
        "construct",
        "cn-delta",
        "--n",
        "3",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let a = FiniteAlgebra::from_json(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(a.size(), 4);

    let report = mvmlab(&["axioms", path_str(&file)]).json();
    assert_eq!(report["passed"], true);

    let r = mvmlab(&["construct", "B3D"]);
    assert_eq!(r.code, 0);
    let b = FiniteAlgebra::from_json(&r.out).unwrap();
    assert!(b.is_isomorphic(&catalog("B3D").unwrap()));

    assert_eq!(mvmlab(&["construct", "no-such-algebra"]).code, 1);
}

#[test]
fn gamma_lex_construction() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    let doc = r#"{"name": "C2D*", "size": 2, "zero": 0, "chain": true, "plus": [[0, 1], [1, 1]]}"#;
    fs::write(&file, doc).unwrap();
    let r = mvmlab(&["construct", "gamma-lex", path_str(&file)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let a = FiniteAlgebra::from_json(&r.out).unwrap();
    assert!(a.is_isomorphic(&catalog("C2D").unwrap()));
}

#[test]
fn check_eq_reports_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let c2d = write_catalog(dir.path(), "C2D");
    let holds = mvmlab(&["check-eq", "--eq", "x + x = x", &c2d]).json();
    assert_eq!(holds["holds"], true);
    let fails = mvmlab(&["check-eq", "--eq", "x * y = x ^^ y", &c2d]).json();
    assert_eq!(fails["holds"], false);
    assert!(fails["witness"].is_object());
    assert_eq!(mvmlab(&["check-eq", "--eq", "x + = y", &c2d]).code, 1);
}

#[test]
fn enumerate_writes_stable_files() {
    let dir = tempfile::tempdir().unwrap();
    let r = mvmlab(&[
        "enumerate",
        "--size",
        "4",
        "--filter",
        "si",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let mut files: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    files.sort();
    let want: Vec<String> = (0..7).map(|k| format!("chain4_{k}.json")).collect();
    assert_eq!(files, want);
    for f in &files {
        let a = FiniteAlgebra::from_json(&fs::read_to_string(dir.path().join(f)).unwrap()).unwrap();
        assert_eq!(a.size(), 4);
    }
    let count = mvmlab(&["enumerate", "--size", "3", "--count-only"]).json();
    assert_eq!(count["count"], 4);
}

#[test]
fn tau_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let l6 = dir.path().join("l6.json");
    assert_eq!(
        mvmlab(&["construct", "ln-plus", "--n", "6", "--out", path_str(&l6)]).code,
        0
    );
    let l6 = path_str(&l6);
    assert_eq!(mvmlab(&["phi", "--n", "6", l6]).json()["holds"], true);
    assert_eq!(
        mvmlab(&["sigma", "--set", "1,2,3", l6]).json()["holds"],
        false
    );
    let m = mvmlab(&["member", "--set", "1,2,3", l6]).json();
    assert_eq!(m["result"]["member"], false);
    let c = mvmlab(&["classify", l6]);
    assert_eq!(c.code, 0, "{}", c.err);
    assert!(c.out.contains("{1,2,3,6}"), "{}", c.out);
    let c2d = write_catalog(dir.path(), "C2D");
    assert_eq!(mvmlab(&["classify", &c2d]).code, 1);
}

#[test]
fn hsu_poset_and_downsets() {
    let dir = tempfile::tempdir().unwrap();
    let a3n = write_catalog(dir.path(), "A3N");
    let hsu = mvmlab(&["hsu", &a3n]);
    assert_eq!(hsu.code, 0, "{}", hsu.err);
    for name in ["trivial", "L1+", "C2D", "C2N", "A3N"] {
        assert!(
            hsu.out.contains(&format!("\"{name}\"")),
            "{name}: {}",
            hsu.out
        );
    }

    let files: Vec<String> = ["L1+", "L2+", "C2D", "C2N"]
        .iter()
        .map(|n| write_catalog(dir.path(), n))
        .collect();
    let mut args = vec!["poset"];
    args.extend(files.iter().map(String::as_str));
    let poset = mvmlab(&args);
    assert_eq!(poset.code, 0, "{}", poset.err);
    let poset_file = dir.path().join("poset.json");
    fs::write(&poset_file, &poset.out).unwrap();
    let p = Poset::from_json(&poset.out).unwrap();
    assert_eq!(p.len(), 4);

    let down = mvmlab(&["downsets", path_str(&poset_file)]);
    let d = Poset::from_json(&down.out).unwrap();
    assert_eq!(d.len(), 9);
    assert!(d.is_lattice());

    args.push("--dot");
    let dot = mvmlab(&args);
    assert!(dot.out.starts_with("digraph"), "{}", dot.out);
    assert!(dot.out.contains("rankdir=BT"));
}

#[test]
fn congruences_as_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let b3d = write_catalog(dir.path(), "B3D");
    let json = mvmlab(&["congruences", &b3d]);
    assert_eq!(json.code, 0, "{}", json.err);
    assert!(
        json.out.contains("\"subdirectly_irreducible\": true"),
        "{}",
        json.out
    );
    let dot = mvmlab(&["congruences", &b3d, "--dot"]);
    assert_eq!(dot.out.matches(" -> ").count(), 2);
}

#[test]
fn repro_fig3_lists_the_three_element_algebras() {
    let r = mvmlab(&["repro", "fig3"]).json();
    assert_eq!(r["count"], 4);
    let names: Vec<&str> = r["algebras"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["name"].as_str().unwrap())
        .collect();
    for name in ["L2+", "C2D", "C2N"] {
        assert!(names.contains(&name), "{names:?}");
    }
    assert_eq!(r["algebras"][0]["oplus"].as_object().unwrap().len(), 1);
}

#[test]
fn repro_fig7_dot_has_eleven_nodes() {
    let r = mvmlab(&["repro", "fig7", "--dot"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.matches("[label=").count(), 11);
    assert_eq!(r.out.matches(" -> ").count(), 14);
}

#[test]
fn repro_fig9_and_fig6() {
    let fig9 = mvmlab(&["repro", "fig9"]).json();
    assert_eq!(fig9["size"], 9);
    assert_eq!(fig9["is_lattice"], true);
    let fig6 = mvmlab(&["repro", "fig6"]).json();
    assert_eq!(fig6["size"], 8);
}

#[test]
fn repro_continuations_are_marked() {
    let fig1 = mvmlab(&["repro", "fig1", "--dot"]);
    assert!(fig1.out.contains("style=dashed"));
    let fig2 = mvmlab(&["repro", "fig2", "--depth", "4"]).json();
    assert_eq!(fig2["continuation"].as_array().unwrap().len(), 4);
    assert!(fig2["poset"]["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n["label"] == "V(C4D)"));
}

#[test]
fn repro_dot_on_table_target_falls_back_to_json() {
    let r = mvmlab(&["repro", "counts", "--dot"]);
    assert_eq!(r.code, 0);
    assert!(!r.err.is_empty());
    assert!(r.json()["size3"].is_number());
}

#[test]
fn unknown_repro_target() {
    let r = mvmlab(&["repro", "fig5"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("fig5"));
}

#[test]
fn repro_outputs_are_deterministic() {
    for target in TARGETS {
        let first = repro(target, None).unwrap();
        let second = repro(target, None).unwrap();
        assert_eq!(first.json, second.json, "{target}");
        assert_eq!(first.dot, second.dot, "{target}");
        let a = mvmlab(&["repro", target]);
        let b = mvmlab(&["repro", target]);
        assert_eq!(a.out, b.out, "{target}");
    }
}

/// The figure pipelines must derive every edge from library calls, so the
/// source may not contain hand-written edge lists or numeric pairs.
#[test]
fn repro_source_has_no_literal_edges() {
    let src =
        fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/repro.rs")).unwrap();
    let pair = regex_free_digit_pairs(&src);
    assert!(pair.is_empty(), "numeric pairs in repro source: {pair:?}");
    for line in src.lines() {
        let Some(quoted) = line.split_once('"').map(|(_, rest)| rest) else {
            continue;
        };
        if quoted.contains("->") {
            assert!(quoted.starts_with("{} -> "), "literal edge: {line}");
        }
    }
}

/// Occurrences of `<digit>, <digit>` or `<digit>,<digit>` outside comments.
fn regex_free_digit_pairs(src: &str) -> Vec<String> {
    let mut found = Vec::new();
    for line in src.lines() {
        let code = line.split("//").next().unwrap();
        let chars: Vec<char> = code.chars().collect();
        for i in 0..chars.len() {
            if chars[i] != ',' || i == 0 || !chars[i - 1].is_ascii_digit() {
                continue;
            }
            let next = chars[i + 1..].iter().find(|c| **c != ' ');
            if next.is_some_and(|c| c.is_ascii_digit()) {
                found.push(line.trim().to_string());
            }
        }
    }
    found
}
