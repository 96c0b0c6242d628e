use std::path::Path;
use std::process::{Command, Output};

fn pcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcol"))
        .args(args)
        .output()
        .expect("run pcol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn flagship_construct_verify_info() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.pcolb");
    let cols = dir.path().join("members");
    let o = pcol(&[
        "construct", "bc", "--b", "10", "--c", "6", "-o", path(&file), "--binary",
        "--collection-out", path(&cols),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("[[12,10],[6,16]]"));
    assert!(std::fs::read(&file).unwrap().starts_with(b"PCOLB1\nq=2 n=22 k=2\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(cols.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["members"].as_array().unwrap().len(), 8);
    assert_eq!(manifest["claimed_quotient"], serde_json::json!([[12, 10], [6, 16]]));
    assert_eq!(manifest["provenance"], "cyclic-permutation-of-collection");

    let o = pcol(&[
        "verify", path(&file), "--expect-quotient", "[[12,10],[6,16]]", "--essential", "--degree", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["essential_count"], 22);
    assert_eq!(report["degrees"], serde_json::json!([8, 8]));
    assert_eq!(report["densities"], serde_json::json!(["3/8", "5/8"]));

    let o = pcol(&["info", path(&file)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("density 3/8") && text.contains("density 5/8"), "{text}");

    let member = cols.join("member_3.pcolb");
    let o = pcol(&["verify", path(&member), "--expect-quotient", "[[12,10],[6,16]]"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rm_file_shape() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rm.pcol");
    let o = pcol(&["construct", "rm", "--q", "3", "--s", "1", "-o", path(&file)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("PCOL 1"));
    assert_eq!(lines.next(), Some("q=3 n=3 k=9"));
    assert_eq!(lines.flat_map(str::split_whitespace).count(), 27);
}

#[test]
fn construction_errors_exit_2() {
    let o = pcol(&["construct", "bc", "--b", "2", "--c", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a power of two"));
    let o = pcol(&["construct", "boolean", "--rho", "1-2", "--e", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pcol(&["info", "/nonexistent/file.pcol"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pcol(&["verify", "/nonexistent/file.pcol"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_file_exits_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.pcol");
    let o = pcol(&["construct", "hamming-union", "--m", "3", "--cprime", "3", "-o", path(&file)]);
    assert!(o.status.success());
    let o = pcol(&["verify", path(&file), "--expect-quotient", "[[4,3],[5,2]]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut values: Vec<&str> = lines[2].split(' ').collect();
    values[5] = if values[5] == "0" { "1" } else { "0" };
    lines[2] = values.join(" ");
    std::fs::write(&file, lines.join("\n") + "\n").unwrap();
    let o = pcol(&["verify", path(&file), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["perfect"], false);
    assert!(report["witness"].is_object());

    let o = pcol(&["verify", path(&file), "--expect-quotient", "[[4,3]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expected_quotient_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.pcol");
    std::fs::write(&file, "PCOL 1\nq=2 n=2 k=2\n0 1 1 0\n").unwrap();
    assert_eq!(pcol(&["verify", path(&file)]).status.code(), Some(0));
    let o = pcol(&["verify", path(&file), "--expect-quotient", "[[1,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pcol(&["info", path(&file)]);
    assert!(stdout(&o).contains("density 1/2"));
}

#[test]
fn threads_do_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.pcol");
    assert!(pcol(&["construct", "boolean", "--rho", "1/2", "--e", "3", "-o", path(&file)]).status.success());
    let run = |t: &str| {
        stdout(&pcol(&["verify", path(&file), "--essential", "--degree", "--json", "--threads", t]))
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let report: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(report["n"], 10);
    assert_eq!(report["degrees"], serde_json::json!([3, 3]));
}

#[test]
fn text_and_binary_verify_identically() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("r.pcol");
    let bin = dir.path().join("r.pcolb");
    assert!(pcol(&["construct", "rm", "--q", "4", "--s", "1", "-o", path(&text)]).status.success());
    assert!(pcol(&["construct", "rm", "--q", "4", "--s", "1", "-o", path(&bin), "--binary"]).status.success());
    let a = stdout(&pcol(&["verify", path(&text), "--json", "--degree"]));
    let b = stdout(&pcol(&["verify", path(&bin), "--json", "--degree"]));
    assert_eq!(a, b);
}

#[test]
fn recursive_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.pcol");
    let out = dir.path().join("rec.pcol");
    std::fs::write(&base, "PCOL 1\nq=2 n=1 k=2\n0 1\n").unwrap();
    let o = pcol(&[
        "construct", "recursive", "--base", path(&base), "--collection-size", "4", "--steps", "2",
        "-o", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let predicted = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("predicted quotient: ").map(str::to_string))
        .unwrap();
    let o = pcol(&["verify", path(&out), "--essential", "--expect-quotient", &predicted]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("essential arguments: 16/16"), "{}", stdout(&o));

    let o = pcol(&["construct", "recursive", "--base", path(&base), "--collection-size", "3", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn materialize_guard_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rm.pcol");
    let o = Command::new(env!("CARGO_BIN_EXE_pcol"))
        .args(["construct", "rm", "--q", "2", "--s", "3", "-o", path(&file)])
        .env("PCOL_MATERIALIZE_GUARD", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}
