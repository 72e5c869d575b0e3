use cosmic_horizon::cli::{run, EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, EXIT_VERIFY_FAILED};
use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cosmic-horizon").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn manifest(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn phi2_candelas_value() {
    let (code, out, _) = call(&["phi2", "--theta", "1.5707963", "--alpha", "1", "--mass", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let closed = v["value_closed"].as_f64().unwrap();
    assert!((closed - 1.0 / (192.0 * PI * PI)).abs() < 1e-12);
    assert!((v["value_limit"].as_f64().unwrap() - closed).abs() < 1e-8);
}

#[test]
fn phi2_string_factor_and_errors() {
    let get = |a: &str| {
        let (code, out, _) = call(&["phi2", "--theta", &format!("{}", PI / 2.0), "--alpha", a, "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        serde_json::from_str::<serde_json::Value>(&out).unwrap()["value_closed"].as_f64().unwrap()
    };
    assert!((get("0.5") / get("1") - 4.0).abs() < 1e-12);
    let (code, _, err) = call(&["phi2", "--theta", "0", "--alpha", "0.5"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("theta") && err.contains("polar"), "{err}");
    let (code, _, err) = call(&["phi2", "--theta", "1", "--alpha", "1.5"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("alpha"));
}

#[test]
fn figure1_table() {
    let (code, out, _) = call(&["figure1", "--points", "21"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("cos_theta,alpha,phi2_M2"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    assert_eq!(rows.len(), 4 * 21);
    let alphas: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    assert!(alphas.windows(2).all(|w| w[0] >= w[1]));
    let eq = rows.iter().find(|r| r[0] == 0.0 && r[1] == 1.0).unwrap();
    assert!((eq[2] - 1.0 / (192.0 * PI * PI)).abs() < 1e-16);
    for curve in rows.chunks(21) {
        for i in 0..21 {
            assert_eq!(curve[i][2], curve[20 - i][2]);
        }
    }
    // 17 significant digits
    assert!(out.lines().nth(1).unwrap().split(',').all(|f| f.split('e').next().unwrap().trim_start_matches('-').len() == 18));
}

#[test]
fn figure1_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(call(&["figure1", "--out", a.to_str().unwrap(), "--parallelism", "1"]).0, EXIT_OK);
    assert_eq!(call(&["figure1", "--out", b.to_str().unwrap(), "--parallelism", "4"]).0, EXIT_OK);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn radial_exponents() {
    for (args, expect) in [
        (["--n", "1", "--l", "0", "--m", "0", "--alpha", "1"], 0.5),
        (["--n", "3", "--l", "2", "--m", "1", "--alpha", "0.5"], 1.5),
    ] {
        let mut argv = vec!["radial"];
        argv.extend(args);
        let (code, out, err) = call(&argv);
        assert_eq!(code, EXIT_OK, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["exponent_fit"].as_f64().unwrap() - expect).abs() < 1e-3);
        assert_eq!(v["branch"], "numeric");
    }
    let (_, out, _) = call(&["radial", "--n", "3", "--l", "2", "--m", "1", "--alpha", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lambda"].as_f64().unwrap(), 3.0);
}

#[test]
fn radial_static_branch() {
    let (code, out, _) = call(&["radial", "--n", "0", "--l", "2", "--m", "0", "--alpha", "0.7", "--points", "5"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["branch"], "legendre");
    for row in v["rows"].as_array().unwrap() {
        let x = row["eta"].as_f64().unwrap();
        let p2 = 0.5 * (3.0 * x * x - 1.0);
        assert!((row["p"].as_f64().unwrap() - p2).abs() < 1e-10 * p2);
    }
    let (code, _, _) = call(&["radial", "--n", "1", "--l", "1", "--m", "2", "--alpha", "0.7"]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn verify_small_manifest() {
    let f = manifest("[heine_classic]\npoints = [[2.0, 0.0], [1.5, \"-pi/8\"]]\n[norm_integral]\nalpha=[0.5]\nm=[1]\ndl=[[0,0],[0,1]]\n");
    let (code, out, _) = call(&["verify", "--manifest", f.path().to_str().unwrap(), "--tolerance", "1e-8"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["total"], 4);
    assert_eq!(v["summary"]["passed"], 4);
    assert_eq!(v["tolerance"].as_f64().unwrap(), 1e-8);
    assert_eq!(v["cases"][0]["name"], "heine_classic");
}

#[test]
fn verify_domain_error_gets_distinct_code() {
    let f = manifest("[linet]\nalpha=[0.4, 0.75]\ntheta_pairs=[[1.0, 1.6]]\ndphi=[0.5]\n");
    let (code, out, err) = call(&["verify", "--manifest", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_NUMERIC);
    assert_ne!(code, EXIT_VERIFY_FAILED);
    assert!(err.contains("DomainError"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["errored"], 1);
    assert_eq!(v["summary"]["passed"], 1);
}

#[test]
fn verify_empty_manifest_warns() {
    let f = manifest("");
    let (code, out, err) = call(&["verify", "--manifest", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cases"].as_array().unwrap().len(), 0);
}

#[test]
fn config_errors() {
    let f = manifest("[equal_radius]\nalpha = [1.0]\nm = [0]\ntheta_pairs = [[1.0, 2.0]]\nbogus = 3\n");
    let (code, _, err) = call(&["verify", "--manifest", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("line 5") && err.contains("bogus"), "{err}");
    assert_eq!(call(&["verify", "--manifest", "/nonexistent/x.toml"]).0, EXIT_CONFIG);
    assert_eq!(call(&["verify", "--tolerance", "0.1"]).0, EXIT_CONFIG);
    assert_eq!(call(&["verify", "--tolerance", "1e-13"]).0, EXIT_CONFIG);
    assert_eq!(call(&["verify", "--parallelism", "0"]).0, EXIT_CONFIG);
    assert_eq!(call(&["nonsense"]).0, EXIT_CONFIG);
    let f = manifest("tolerance = 0.5\n");
    assert_eq!(call(&["verify", "--manifest", f.path().to_str().unwrap()]).0, EXIT_CONFIG);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_cosmic-horizon"))
        .args(["phi2", "--theta", "1.2", "--alpha", "0.75", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,alpha,mass,value_closed"));
    let help = Command::new(env!("CARGO_BIN_EXE_cosmic-horizon")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
