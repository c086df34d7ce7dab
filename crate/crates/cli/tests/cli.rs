use std::process::{Command, Output};

fn sepsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepsym"))
        .args(args)
        .env_remove("SEPSYM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().skip(2).map(str::to_owned).collect()
}

#[test]
fn gamma_row() {
    let o = sepsym(&["gamma", "--q", "3", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# sepsym-table v1"));
    assert_eq!(
        lines.next(),
        Some("q,n,orbits,gamma,size_S,size_Sq,delta,s_n_optimal")
    );
    assert_eq!(lines.next(), Some("3,9,55,4,9,5,1,false"));
}

#[test]
fn gamma_without_prime_power() {
    let o = sepsym(&["gamma", "--q", "6", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(data_lines(&o)[0].ends_with(",,,false"));
    let o = sepsym(&["gamma", "--q", "6", "--n", "4", "--with-sq"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chi_for_two_is_an_integer_root() {
    let o = sepsym(&["chi", "--q", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["chi"], 2);
    assert_eq!(v["x0_is_integer"], true);
    assert_eq!(v["lnln_floor"], -1);
}

#[test]
fn chi_table_small_range_and_limits() {
    let o = sepsym(&[
        "chi-table",
        "--q-min",
        "16",
        "--q-max",
        "19",
        "--verify-golden",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let chis: Vec<String> = data_lines(&o)
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().to_owned())
        .collect();
    assert_eq!(chis, ["3", "3", "4", "4"]);
    assert_eq!(
        sepsym(&["chi-table", "--q-min", "5", "--q-max", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sepsym(&["chi-table", "--q-min", "2", "--q-max", "2000000"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn chi_table_notes_uncovered_values() {
    let o = sepsym(&[
        "chi-table",
        "--q-min",
        "9999",
        "--q-max",
        "10002",
        "--verify-golden",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2 values of q lie outside"), "{err}");
}

#[test]
fn delta3_verify_and_range_errors() {
    let o = sepsym(&["delta3", "--n-min", "2", "--n-max", "2000", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_lines(&o).len(), 1999);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatches: 0"));
    assert_eq!(
        sepsym(&["delta3", "--n-min", "1", "--n-max", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify3_rows() {
    let o = sepsym(&["classify3", "--n-min", "9", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = data_lines(&o);
    assert_eq!(lines[0], "9,2,A,0,0,1,1");
    assert_eq!(lines[3], "12,2,B,0,-1,1,0");
    assert_eq!(lines[11], "20,2,D,-1,0,2,1");
    assert_eq!(sepsym(&["classify3", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn check_sep_outcomes() {
    let o = sepsym(&["check-sep", "--q", "2", "--n", "3", "--T", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        data_lines(&o)[0],
        "2,3,{1},false,4,2,\"(0,0,0)\",\"(0,1,1)\""
    );
    let o = sepsym(&["check-sep", "--q", "3", "--n", "9", "--preset", "sq"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(data_lines(&o)[0].starts_with("3,9,\"{1,2,3,6,9}\",true,55,55,"));
    assert_eq!(
        sepsym(&["check-sep", "--q", "6", "--n", "3", "--preset", "full"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sepsym(&["check-sep", "--q", "2", "--n", "3", "--T", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_sep_respects_orbit_bound() {
    let o = sepsym(&[
        "check-sep",
        "--q",
        "9",
        "--n",
        "5",
        "--preset",
        "full",
        "--orbit-bound",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minsep_row() {
    let o = sepsym(&["minsep", "--q", "3", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["min_size"], 3);
    assert_eq!(v["gamma"], 3);
    assert_eq!(v["equal"], true);
}

#[test]
fn orbits_listing() {
    let o = sepsym(&["orbits", "--q", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        data_lines(&o),
        [
            "\"(0,0)\",\"(0,0)\"",
            "\"(0,1)\",\"(1,0)\"",
            "\"(1,1)\",\"(0,1)\""
        ]
    );
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sepsym"))
        .args(["chi", "--q", "5"])
        .env("SEPSYM_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("sepsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.csv");
    let o = sepsym(&[
        "gamma",
        "--q",
        "2",
        "--n",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# sepsym-table v1\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sepsym(&[]).status.code(), Some(2));
    assert_eq!(
        sepsym(&["gamma", "--q", "1", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(sepsym(&["bogus"]).status.code(), Some(2));
}
