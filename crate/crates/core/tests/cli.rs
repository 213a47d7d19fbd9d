use std::process::{Command, Output};

fn modreg(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modreg"));
    cmd.args(args);
    for var in ["MODREG_TOL", "MODREG_TERMS", "MODREG_PREC", "MODREG_SEED", "MODREG_OUT", "MODREG_FORMAT"] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qexp_dump() {
    let o = modreg(&["qexp", "G", "1", "0", "2", "5", "--terms", "10"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["level"], 25);
    assert_eq!(header["family"], "G");
    assert_eq!(lines.next(), Some("0/1 1/10"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(modreg(&["qexp", "G", "2", "0", "1", "5"], &[]).status.code(), Some(2));
    assert_eq!(modreg(&["qexp", "Q", "2", "0", "1", "5"], &[]).status.code(), Some(2));
    assert_eq!(modreg(&["lambda", "G", "2", "1", "0", "5", "--s", "0"], &[]).status.code(), Some(3));
    assert_eq!(modreg(&["lambda", "G", "2", "1", "0", "5", "--s", "0", "--star"], &[]).status.code(), Some(0));
    assert_eq!(modreg(&["lambda", "G", "2", "1", "0", "5", "--s", "1", "--star"], &[]).status.code(), Some(2));
    assert_eq!(modreg(&["--prec", "200", "verify", "fibers"], &[]).status.code(), Some(2));
    assert_eq!(modreg(&["verify", "nonsense"], &[]).status.code(), Some(2));
}

#[test]
fn flags_override_environment() {
    let env = [("MODREG_TERMS", "3")];
    assert_eq!(stdout(&modreg(&["qexp", "G", "3", "1", "1", "5"], &env)).lines().count(), 4);
    assert_eq!(stdout(&modreg(&["qexp", "G", "3", "1", "1", "5", "--terms", "5"], &env)).lines().count(), 6);
    let csv = stdout(&modreg(&["lambda", "H", "3", "1", "2", "5", "--s", "4"], &[("MODREG_FORMAT", "csv")]));
    assert!(csv.starts_with("s_re,s_im,re,im,err"));
}

#[test]
fn lambda_json_record() {
    let o = modreg(&["lambda", "H", "3", "1", "2", "5", "--s", "0.5+2i"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["regularized"], false);
    assert!(v["value"]["err"].as_f64().unwrap() < 1e-9);
}

#[test]
fn verify_is_deterministic_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("modreg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rz.json");
    let p = path.to_str().unwrap();
    let a = modreg(&["verify", "rz", "--seed", "11", "--out", p], &[]);
    assert_eq!(a.status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    let b = modreg(&["verify", "rz", "--out", p], &[("MODREG_SEED", "11")]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    let ids: Vec<String> = v["suites"][0]["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().to_string()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    std::fs::remove_dir_all(&dir).unwrap();
}
