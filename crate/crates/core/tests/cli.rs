use std::process::Command;
use tempfile::TempDir;

fn cuboid(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cuboid"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn identities_exit_zero() {
    let (code, out, _) = cuboid(&["identities"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_reports_singular_points() {
    let (code, out, _) = cuboid(&["verify", "1/2", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("singular: FirstCurve"));
    let (_, out, _) = cuboid(&["verify", "0", "0"]);
    assert!(out.contains("ThirdVariety"));
}

#[test]
fn verify_json_is_one_object() {
    let (code, out, _) = cuboid(&["--output-format", "json", "verify", "1", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["b"], "1/1");
    assert!(v["level"].is_u64());
}

#[test]
fn bad_input_exits_three() {
    assert_eq!(cuboid(&["verify", "1/0", "3"]).0, 3);
    assert_eq!(cuboid(&["verify", "0.5", "3"]).0, 3);
    assert_eq!(cuboid(&["verify", "1"]).0, 3);
    assert_eq!(cuboid(&["search"]).0, 3);
}

#[test]
fn classify_and_solve() {
    let (code, out, _) = cuboid(&["classify", "3", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("class: SecondCurve"), "{out}");
    let (code, out, _) = cuboid(&["solve", "1", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("edge cubic"));
    assert!(out.contains("diagonal cubic"));
}

#[test]
fn search_writes_records_and_resumes() {
    let dir = TempDir::new().unwrap();
    let cp = dir.path().join("cp.txt");
    let out = dir.path().join("run.jsonl");
    let base = [
        "search",
        "--height",
        "3",
        "--checkpoint",
        cp.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ];
    let mut first = base.to_vec();
    first.extend(["--max-blocks", "1", "--block-size", "8"]);
    let (code, text, _) = cuboid(&first);
    assert_eq!(code, 0);
    assert!(text.contains("interrupted"));
    let mut second = base.to_vec();
    second.extend(["--block-size", "8", "--jobs", "2"]);
    let (code, text, _) = cuboid(&second);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("points:    225 of 225"), "{text}");
    assert!(dir.path().join("run.hits.jsonl").exists());

    let (code, _, err) = cuboid(&base);
    assert_eq!(
        code, 6,
        "block size is part of the checkpoint config: {err}"
    );
}
