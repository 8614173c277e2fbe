struct Output {
    code: u8,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

fn ffzeta(args: &[&str]) -> Output {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ffzeta").chain(args.iter().copied());
    let code = crate::run(argv, &mut stdout, &mut stderr);
    Output { code, stdout, stderr }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn zeta_divisors_json_shape() {
    let o = ffzeta(&["zeta", "divisors", "--ambient", "p1", "--q", "2", "--kmax", "4"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "3", "7", "15", "31"]));
    assert_eq!(v["kind"], "divisors");
    assert_eq!(v["k_max"], 4);
    assert!(v["convention"].is_null());
}

#[test]
fn csv_output() {
    let o = ffzeta(&["zeta", "height", "--convention", "cumulative", "--variety", "projective:1:", "--dmax", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,coeff\n0,3\n1,9\n2,33\n");
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        r#"
k_max = 2

[ambient]
model = "p2"
p = 2

[variety]
source = "affine:1:"

[output]
format = "csv"
"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = ffzeta(&["zeta", "rr", "--config", p]);
    assert_eq!(stdout(&o), "k,coeff\n0,2\n1,56\n2,4032\n");
    let o = ffzeta(&["zeta", "rr", "--config", p, "--kmax", "1"]);
    assert_eq!(stdout(&o), "k,coeff\n0,2\n1,56\n");
}

#[test]
fn report_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = ffzeta(&["verify", "euler", "--kmax", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn exit_codes() {
    // schema violations
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "k_max = 2\nunknown_key = 1\n").unwrap();
    assert_eq!(ffzeta(&["zeta", "divisors", "--config", path.to_str().unwrap()]).code, 2);
    assert_eq!(ffzeta(&["zeta", "divisors", "--q", "6"]).code, 2);
    assert_eq!(ffzeta(&["zeta", "divisors", "--max-tuples", "0"]).code, 2);
    assert_eq!(ffzeta(&["zeta", "rr", "--variety", "affine:1:y1 +"]).code, 2);
    assert_eq!(ffzeta(&["zeta", "bogus"]).code, 2);
    // cap exceeded
    let o = ffzeta(&["zeta", "rr", "--variety", "affine:2:y1^2 + y2^3 + t", "--kmax", "4", "--max-tuples", "50"]);
    assert_eq!(o.code, 3);
    let o = ffzeta(&["zeta", "divisors", "--kmax", "6", "--max-divisors", "10"]);
    assert_eq!(o.code, 3);
    // verification failure
    let o = ffzeta(&["report", "wan", "--dmax", "4", "--tolerance", "1/100"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["passed"], false);
    // no tolerance: a plain table
    assert_eq!(ffzeta(&["report", "wan", "--dmax", "4"]).code, 0);
}

#[test]
fn axkatz_example() {
    let o = ffzeta(&["verify", "axkatz", "--variety", "affine:2:y1*y2 - 1", "--divisor", "[]"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["bound"], serde_json::json!({"num": "0", "den": "1"}));
    assert_eq!(v["ord_q"], serde_json::json!({"num": "0", "den": "1"}));
    assert_eq!(v["g_polys"], serde_json::json!(["x1*x2 + 1"]));
}

#[test]
fn newton_from_config_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("np.toml");
    std::fs::write(&path, "series = [2, \"12\", 56]\nbase = \"p\"\n").unwrap();
    let v = json(&ffzeta(&["report", "newton", "--config", path.to_str().unwrap()]));
    assert_eq!(v["slopes"], serde_json::json!(["1", "1"]));
}

#[test]
fn twisted_reduction_over_f3() {
    let o = ffzeta(&["verify", "reduction", "--q", "3", "--variety", "projective:1:", "--twist", "1,t;0,1", "--kmax", "2"]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["verify", "interval", "--variety", "projective:1:", "--kmax", "2"];
    assert_eq!(ffzeta(&args).stdout, ffzeta(&args).stdout);
}
