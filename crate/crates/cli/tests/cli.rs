use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hamcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamcol"))
        .args(args)
        .env_remove("HPC_BUDGET")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/reference_tables.tsv")
}

fn construct(dir: &Path, name: &str, recipe: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["construct", recipe, "-o", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = hamcol(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn params_exit_codes() {
    let o = hamcol(&["params", "--q", "3", "--b", "8", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("status: settled") && s.contains("n0 = 4"), "{s}");

    let o = hamcol(&["params", "--q", "3", "--b", "7", "--c", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status: inadmissible"));

    let o = hamcol(&["params", "--q", "6", "--b", "7", "--c", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.contains("LB = 3") && s.contains("status: unknown"), "{s}");

    let o = hamcol(&["params", "--q", "3", "--b", "16", "--c", "11"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("status: gap"));
}

#[test]
fn construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(
        dir.path(),
        "f.hpc",
        "(flaass-std :t1 1 :t2 0 (perfect :r 1 :q 3 :t 1))",
        &[],
    );
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("HPC1 4 3 2 RECIPE\n"));
    let o = hamcol(&["verify", f.to_str().unwrap(), "--expect", "8", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked 81 vertices (exhaustive)\nPASS"));

    let s = construct(dir.path(), "s.hpc", "(split2 :q 3 :p 2 :t 0)", &["--materialize"]);
    assert_eq!(std::fs::metadata(&s).unwrap().len(), 17 + 1296);
    let o = hamcol(&["verify", s.to_str().unwrap(), "--expect", "16", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let m = dir.path().join("m.txt");
    std::fs::write(&m, "4 16\n2 18\n").unwrap();
    let args = [
        "verify",
        s.to_str().unwrap(),
        "--matrix",
        m.to_str().unwrap(),
        "--mode",
        "sample",
        "--seed",
        "9",
    ];
    let a = hamcol(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, hamcol(&args).stdout);
}

#[test]
fn invalid_recipes_name_the_node() {
    let o = hamcol(&[
        "construct",
        "(flaass-std :t1 1 :t2 0 (extend :t 1 (perfect :r 1 :q 3 :t 1)))",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("flaass-std"));
}

#[test]
fn corrupted_files_fail_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "d.hpc", "(perfect :r 2 :q 3 :t 1)", &["--materialize"]);
    let mut bytes = std::fs::read(&f).unwrap();
    let header = bytes.iter().position(|&b| b == b'\n').unwrap() + 1;
    bytes[header + 40] = 3 - bytes[header + 40];
    std::fs::write(&f, bytes).unwrap();
    let o = hamcol(&["verify", f.to_str().unwrap(), "--expect", "8", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: rank"));
}

#[test]
fn large_file_verifies_exhaustively() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = "(flaass-impr :variant 1 :t 1 :k 1 (lines :color 1 (complement (perfect :r 2 :q 3 :t 1))))";
    let f = construct(dir.path(), "big.hpc", recipe, &["--materialize", "--rle"]);
    let start = std::time::Instant::now();
    let o = hamcol(&["verify", f.to_str().unwrap(), "--expect", "19", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checked 531441 vertices"));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn weight_distributions() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "p.hpc", "(perfect :r 2 :q 3 :t 1)", &[]);
    let o = hamcol(&["wdist", f.to_str().unwrap(), "--origin", "0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("recurrence:\n1: 1 0 0 8 0\n2: 0 8 24 24 16\n"), "{s}");
    assert!(s.contains("agreement: yes"));

    let m = dir.path().join("m.txt");
    std::fs::write(&m, "# (8,1)\n0, 8\n1, 7\n").unwrap();
    let o = hamcol(&["wdist", "--matrix", m.to_str().unwrap(), "--n", "4", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("brute force"));

    std::fs::write(&m, "0 8\n2 6\n").unwrap();
    let o = hamcol(&["wdist", "--matrix", m.to_str().unwrap(), "--n", "4", "--q", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible"));
}

#[test]
fn tables_match_the_fixture() {
    let fx = fixture();
    for (q, max) in [("3", "27"), ("4", "16"), ("6", "12")] {
        let o = hamcol(&["table", "--q", q, "--max-bc", max, "--fixture", fx.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "q={q}: {}", stdout(&o));
        assert!(o.stdout.is_empty());
    }
    let o = hamcol(&["table", "--q", "6", "--max-bc", "36", "--fixture", fx.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(20,4) UB: expected 5, got 4 (improvement)"));
}

#[test]
fn table_output_is_stable() {
    let args = ["table", "--q", "4", "--max-bc", "16", "--format", "tsv"];
    let a = hamcol(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, hamcol(&args).stdout);
    let s = stdout(&a);
    assert!(s.starts_with("# q\tb+c\t"));
    assert!(s.contains("4\t8\t8\t5\t3\t2\t3\t3\t-\t-\t-\t-\t3\t3\tsettled\n"));
    let o = hamcol(&["table", "--q", "4", "--max-bc", "15"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn budget_override_applies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.hpc");
    let o = Command::new(env!("CARGO_BIN_EXE_hamcol"))
        .args([
            "construct",
            "--materialize",
            "(perfect :r 2 :q 3 :t 1)",
            "-o",
            path.to_str().unwrap(),
        ])
        .env("HPC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
