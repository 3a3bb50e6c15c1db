use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quartic-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn num(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

#[test]
fn eval_quadrature_pi_over_four() {
    let o = run(&["eval", "--n", "2", "--alpha", "2", "--m", "0", "--a", "1", "--method", "quadrature"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((num(&v["value"]) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert_eq!(v["method"], "quadrature");
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("7.8539816339744828e-1"), "{text}");
}

#[test]
fn eval_series_matches_quadrature() {
    let base = ["eval", "--n", "2", "--alpha", "2", "--m", "3", "--a", "0.5", "--tol", "1e-12"];
    let s = run(&[&base[..], &["--method", "series"]].concat());
    let q = run(&[&base[..], &["--method", "quadrature"]].concat());
    assert_eq!((code(&s), code(&q)), (0, 0));
    let (s, q) = (num(&json(&s)["value"]), num(&json(&q)["value"]));
    assert!(((s - q) / q).abs() <= 1e-10);
}

#[test]
fn domain_errors_exit_two() {
    let o = run(&["eval", "--n", "2", "--alpha", "2", "--m", "0", "--a", "1.5", "--method", "series"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert_eq!(code(&run(&["eval", "--n", "2", "--m", "0", "--a", "-2"])), 2);
    assert_eq!(code(&run(&["eval", "--n", "3", "--m", "0", "--a", "0", "--method", "closed"])), 2);
    assert_eq!(code(&run(&["eval", "--n", "2", "--m", "0", "--a", "0", "--tol", "1e-15"])), 2);
    assert_eq!(code(&run(&["poly"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
}

#[test]
fn verify_quartic() {
    let o = run(&["verify", "--theorem", "2", "--variant", "printed"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["residual_text"], "0");
    assert_eq!(v["spot_checks"].as_array().unwrap().len(), 5);
    let bad = run(&["verify", "--theorem", "2", "--variant", "printed", "--corrupt-certificate"]);
    assert_eq!(code(&bad), 1);
    assert_ne!(json(&bad)["residual_text"], "0");
}

#[test]
fn verify_family_names_the_single_verifier() {
    let printed = run(&["verify", "--theorem", "3", "--variant", "printed"]);
    assert_eq!(code(&printed), 1);
    let corrected = run(&["verify", "--theorem", "3", "--variant", "corrected"]);
    assert_eq!(code(&corrected), 0);
    let all = run(&["verify", "--theorem", "3", "--variant", "all"]);
    assert_eq!(code(&all), 0);
    let v = json(&all);
    assert_eq!(v["resolution"]["verified_variant"], "corrected");
    let verified: Vec<&Value> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verified"] == true)
        .collect();
    assert_eq!(verified.len(), 1);
    assert_eq!(v["resolution"]["typos"].as_array().unwrap().len(), 3);
    // at n = 2 the corrected family is the quartic case
    let n2 = run(&["verify", "--theorem", "3", "--variant", "corrected", "--n", "2"]);
    assert_eq!(code(&n2), 0);
}

#[test]
fn verify_from_file() {
    let dir = std::env::temp_dir().join(format!("quartic-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(
        &good,
        "name: mine\nkernel: x^4 + 2*a*x^2 + 1\n\
         identity: -4*m-3 - 4*a*(2*m+3)*D_a - 4*(a^2-1)*D_a^2 = D_x(-x*(4*m+3+4*a*x^2*m+2*a*x^2-x^4)/(x^4+2*a*x^2+1))\n",
    )
    .unwrap();
    let o = run(&["verify", "--file", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["variant"], "mine");
    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "kernel: x^4 +\n").unwrap();
    assert_eq!(code(&run(&["verify", "--file", broken.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["verify", "--file", dir.join("missing").to_str().unwrap()])), 2);
}

#[test]
fn poly_outputs() {
    let o = run(&["poly", "--m", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["coefficients"], serde_json::json!(["3/2", "1"]));
    assert_eq!(json(&run(&["poly", "--m", "0"]))["coefficients"], serde_json::json!(["1"]));
    let v = json(&run(&["poly", "--m", "20", "--exact"]));
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 21);
    assert_eq!(v["positive"], true);
    assert_eq!(v["log_concave"], true);
    assert!(v.get("floats").is_none());
}

#[test]
fn ode2rec_quartic() {
    let o = run(&["ode2rec", "--op", "-4*m-3-4*a*(2*m+3)*D_a-4*(a^2-1)*D_a^2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        json(&o)["recurrence"],
        "(-4*l^2 + (-8*m - 8)*l + (-4*m - 3))*c(l) + (4*l^2 + 12*l + 8)*c(l+2) = 0"
    );
    let o = run(&["ode2rec", "--op", "D_a*a"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["ode2rec"])), 2);
}

#[test]
fn crosscheck_default_grid_passes_and_is_deterministic() {
    let a = run(&["crosscheck"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["crosscheck"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rows"].as_array().unwrap().len(), 45);
    assert_eq!(v["passed"], true);
}

#[test]
fn crosscheck_csv_and_failures() {
    let o = run(&["crosscheck", "--n-set", "1,2", "--m-max", "0", "--a-grid", "0", "--out", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,alpha,m,a,quad,series,closed,max_rel_dev");
    // n = 1 row: pi/2 from both applicable methods, no closed form
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[4], "1.5707963267948966e+0");
    assert_eq!(cells[5], "1.5707963267948966e+0");
    assert_eq!(cells[6], "");
    // a = 0 rows: series equals c0 = pi*sqrt(2)/4
    let cells: Vec<&str> = lines[2].split(',').collect();
    let c0: f64 = cells[5].parse().unwrap();
    assert!((c0 - std::f64::consts::PI * 2f64.sqrt() / 4.0).abs() < 1e-15);

    let fail = run(&["crosscheck", "--m-max", "1", "--a-grid", "0.5", "--tol", "1e-30"]);
    assert_eq!(code(&fail), 1);
    assert!(String::from_utf8(fail.stderr).unwrap().contains("worst row"));
    assert_eq!(code(&run(&["crosscheck", "--a-grid", "1.2"])), 2);
    let rel = run(&["crosscheck", "--n-set", "3", "--m-max", "1", "--a-grid", "-0.8,0.8", "--a-relative", "--tol", "1e-9"]);
    assert_eq!(code(&rel), 0);
}

#[test]
fn seed_from_environment() {
    let a = bin().args(["verify", "--theorem", "2"]).env("QUARTIC_LAB_SEED", "7").output().unwrap();
    let b = bin().args(["verify", "--theorem", "2"]).env("QUARTIC_LAB_SEED", "8").output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(json(&a)["seed"], 7);
    assert_ne!(json(&a)["spot_checks"], json(&b)["spot_checks"]);
    let bad = bin().args(["verify"]).env("QUARTIC_LAB_SEED", "x").output().unwrap();
    assert_eq!(code(&bad), 2);
    let default = bin().args(["verify"]).env_remove("QUARTIC_LAB_SEED").output().unwrap();
    assert_eq!(json(&default)["seed"], 42);
}
