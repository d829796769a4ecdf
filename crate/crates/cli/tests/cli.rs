use std::path::Path;
use std::process::{Command, Output};

use qdouble::output::{IrrepsOutput, Sl2rOutput, TensorOutput, VerifyOutput};
use qdouble::RunConfig;

fn qdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdouble"))
        .args(args)
        .env_remove("QDOUBLE_SEED")
        .output()
        .expect("spawn qdouble")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn irreps_counts_and_sum_of_squares() {
    for (group, count, sum) in [
        ("S3", 8, 36),
        ("Z2", 4, 4),
        ("trivial", 1, 1),
        ("Q8", 22, 64),
    ] {
        let out = qdouble(&["irreps", "--group", group]);
        assert_eq!(out.status.code(), Some(0), "{group}");
        let t: IrrepsOutput = json(&out);
        assert_eq!(t.count, count, "{group}");
        assert_eq!(t.irreps.len(), count);
        assert_eq!(t.sum_of_squares, sum);
        assert_eq!(t.expected_sum, sum);
        assert!(t.complete);
        assert!(t
            .irreps
            .iter()
            .all(|r| r.label.is_some() && r.basis_matrices.is_none()));
    }
}

#[test]
fn irreps_with_matrices_have_the_right_shapes() {
    let out = qdouble(&["irreps", "--group", "S3", "--matrices"]);
    let t: IrrepsOutput = json(&out);
    for row in &t.irreps {
        let m = row.basis_matrices.as_ref().unwrap();
        assert_eq!(m.len(), 36);
        assert!(m
            .iter()
            .all(|b| b.len() == row.dimension && b.iter().all(|r| r.len() == row.dimension)));
    }
}

#[test]
fn verify_all_suites_pass_on_d4() {
    let out = qdouble(&["verify", "--group", "D4", "--seed", "5"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: VerifyOutput = json(&out);
    assert!(v.passed);
    let suites: Vec<&str> = v.suites.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(suites, ["hopf", "quasitriangular", "star", "dpr", "tga"]);
}

#[test]
fn quasitriangular_passes_on_q8() {
    let out = qdouble(&["verify", "--group", "Q8", "--suite", "quasitriangular"]);
    assert_eq!(out.status.code(), Some(0));
    let v: VerifyOutput = json(&out);
    assert_eq!(v.suites.len(), 1);
    assert!(v.suites[0].passed());
}

#[test]
fn group_and_action_files() {
    let dir = tempfile::tempdir().unwrap();
    // Z3 acting on itself by translation
    let group = write(
        dir.path(),
        "z3.json",
        r#"{"name":"Z3 file","order":3,"cayley":[[0,1,2],[1,2,0],[2,0,1]]}"#,
    );
    let action = write(
        dir.path(),
        "act.json",
        r#"{"name":"translation","set_size":3,"act":[[0,1,2],[1,2,0],[2,0,1]]}"#,
    );
    let out = qdouble(&["irreps", "--group-file", &group, "--action", &action]);
    assert_eq!(out.status.code(), Some(0));
    let t: IrrepsOutput = json(&out);
    // free transitive action: a single orbit with trivial stabilizer
    assert_eq!(t.count, 1);
    assert_eq!(t.irreps[0].dimension, 3);
    assert!(t.irreps[0].label.is_none());

    let out = qdouble(&["verify", "--group-file", &group, "--action", &action]);
    assert_eq!(out.status.code(), Some(0));
    let v: VerifyOutput = json(&out);
    assert_eq!(v.suites.len(), 1);
    assert_eq!(v.suites[0].suite, "tga");

    let out = qdouble(&[
        "verify",
        "--group-file",
        &group,
        "--action",
        &action,
        "--suite",
        "hopf",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_inputs_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let not_latin = write(
        dir.path(),
        "a.json",
        r#"{"name":"bad","order":2,"cayley":[[0,1],[1,1]]}"#,
    );
    let nonassoc = write(
        dir.path(),
        "b.json",
        r#"{"name":"bad","order":3,"cayley":[[0,1,2],[1,0,2],[2,2,0]]}"#,
    );
    let malformed = write(dir.path(), "c.json", r#"{"name":"bad","order":2}"#);
    for f in [&not_latin, &nonassoc, &malformed] {
        let out = qdouble(&["irreps", "--group-file", f]);
        assert_eq!(out.status.code(), Some(2), "{f}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(qdouble(&["irreps", "--group", "Q7"]).status.code(), Some(2));
    assert_eq!(
        qdouble(&["irreps", "--group-file", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qdouble(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tensor_is_symmetric_and_dimension_consistent() {
    let labels = ["0:1", "0:2", "1:0", "1:1", "2:0", "2:2"];
    for l in labels {
        for r in labels {
            let a: TensorOutput = json(&qdouble(&["tensor", "--group", "S3", l, r]));
            let b: TensorOutput = json(&qdouble(&["tensor", "--group", "S3", r, l]));
            assert!(a.dimensions.consistent, "{l} ⊗ {r}");
            assert_eq!(a.dimensions.product, a.dimensions.left * a.dimensions.right);
            assert_eq!(a.decomposition, b.decomposition, "{l} ⊗ {r}");
        }
    }
}

#[test]
fn vacuum_is_the_tensor_unit() {
    for group in ["S3", "Q8"] {
        let t: IrrepsOutput = json(&qdouble(&["irreps", "--group", group]));
        for row in &t.irreps {
            let x = row.label.as_deref().unwrap();
            let out: TensorOutput = json(&qdouble(&[
                "tensor", "--group", group, "0:0", x, "--format", "json",
            ]));
            assert_eq!(out.decomposition.len(), 1, "{group}: 0:0 ⊗ {x}");
            assert_eq!(out.decomposition[0].label, x);
            assert_eq!(out.decomposition[0].multiplicity, 1);
        }
    }
}

#[test]
fn unknown_label_exits_with_input_error() {
    for bad in ["7:0", "0:9", "nonsense"] {
        let out = qdouble(&["tensor", "--group", "S3", "0:0", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn same_seed_gives_byte_identical_output() {
    let a = qdouble(&["verify", "--group", "S3", "--seed", "11"]);
    let b = qdouble(&["verify", "--group", "S3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_qdouble"))
        .args(["verify", "--group", "S3", "--seed", "999"])
        .env("QDOUBLE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn output_file_and_run_config() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let out = qdouble(&[
        "tensor",
        "--group",
        "Q8",
        "0:4",
        "1:0",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = std::fs::read_to_string(&out_path).unwrap();
    let t: TensorOutput = serde_json::from_str(&direct).unwrap();
    assert_eq!(serde_json::to_string_pretty(&t).unwrap() + "\n", direct);

    let cfg: RunConfig = serde_json::from_str(r#"{"command":{"name":"tensor","left":"0:4","right":"1:0"},"group":{"kind":"builtin","name":"Q8"}}"#).unwrap();
    let cfg_path = write(
        dir.path(),
        "run.json",
        &serde_json::to_string(&cfg).unwrap(),
    );
    let via_run = qdouble(&["run", &cfg_path]);
    assert_eq!(via_run.status.code(), Some(0));
    assert_eq!(String::from_utf8(via_run.stdout).unwrap(), direct);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"command":{"name":"irreps"},"colour":1}"#,
    );
    assert_eq!(qdouble(&["run", &bad]).status.code(), Some(2));
}

#[test]
fn compact_subcommands() {
    let out = qdouble(&["compact", "sl2r-classify", "--matrix", "-1,1,0,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let s: Sl2rOutput = json(&out);
    assert_eq!(s.display, "ParabolicNeg(-)");
    assert_eq!(serde_json::to_value(s.label.centralizer).unwrap(), "R x Z2");
    assert!(s.warnings.is_empty());

    let out = qdouble(&["compact", "sl2r-classify", "--matrix", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));

    // band limit too small for the requested check
    let out = qdouble(&[
        "compact",
        "su2-verify",
        "--n",
        "0",
        "--L",
        "1",
        "--order",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qdouble(&[
        "compact",
        "su2-verify",
        "--n",
        "1",
        "--L",
        "1",
        "--order",
        "4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "parity mismatch between n and L"
    );
}
