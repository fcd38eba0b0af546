use std::process::{Command, Output};

use serde_json::Value;

const LEHMER: &str = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salemk3"))
        .args(args)
        .env_remove("SALEMK3_M_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_lehmer_json() {
    let v = json(&["analyze", LEHMER, "--json", "--seed", "1"]);
    for key in [
        "input",
        "salem",
        "c1",
        "unramified",
        "pi",
        "verdict",
        "meta",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["salem"]["alpha"], "1.1762808183");
    assert_eq!(v["salem"]["degree"], 10);
    assert_eq!(v["verdict"]["salem_pairs"], "RealizableAllRootsOfS");
    assert_eq!(v["verdict"]["tag"], "D10-SUFF");
    assert_eq!(v["meta"]["seed"], 1);
    let witnessed: Vec<u64> = v["verdict"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|w| w["m"].as_u64())
        .collect();
    assert!(witnessed.iter().any(|m| [12, 14, 15, 36].contains(m)));
}

#[test]
fn analyze_is_byte_identical() {
    let a = run(&["analyze", LEHMER, "--json", "--seed", "3"]).stdout;
    let b = run(&["analyze", LEHMER, "--json", "--seed", "3"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn analyze_reads_file_and_env_cap() {
    let dir = std::env::temp_dir().join(format!("salemk3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lehmer.txt");
    std::fs::write(&path, format!("{LEHMER}\n")).unwrap();
    let arg = format!("@{}", path.display());
    let out = Command::new(env!("CARGO_BIN_EXE_salemk3"))
        .args(["analyze", &arg, "--json"])
        .env("SALEMK3_M_CAP", "20")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let max_m = v["pi"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["m"].as_u64().unwrap())
        .max()
        .unwrap();
    assert_eq!(max_m, 20);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["analyze", "x^2 + + 3"]).status.code(), Some(2));
    assert_eq!(
        run(&["salem", "check", "x^4+x^3+x^2+x+1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "@/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["kondo", "23"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn kondo_all() {
    let v = json(&["kondo", "--all", "--json"]);
    assert_eq!(v["sigma"], serde_json::json!([12, 28, 36, 42, 44, 66]));
    assert_eq!(
        v["omega"],
        serde_json::json!([3, 5, 7, 9, 11, 13, 17, 19, 25, 27])
    );
    let text = String::from_utf8(run(&["kondo", "21"]).stdout).unwrap();
    assert!(text.contains("FoldsToDouble"));
}

#[test]
fn scan_sa_keeps_order() {
    let v = json(&[
        "scan", "--family", "sa", "--from", "0", "--to", "20", "--seed", "1", "--jobs", "4",
        "--json",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["params"][0], i as i64);
        let checks = r["checks"].as_array().unwrap();
        let literal = checks
            .iter()
            .find(|c| c["name"] == "Res(S,Phi_3) = 3(a+1)-1")
            .unwrap();
        let squared = checks
            .iter()
            .find(|c| c["name"] == "Res(S,Phi_3) = (3(a+1)-1)^2")
            .unwrap();
        assert_eq!(squared["holds"], true);
        assert_eq!(literal["holds"], false);
    }
    let serial = json(&[
        "scan", "--family", "sa", "--from", "0", "--to", "20", "--seed", "1", "--jobs", "1",
        "--json",
    ]);
    assert_eq!(v, serial);
}

#[test]
fn scan_smyth_excludes_a3() {
    let v = json(&[
        "scan", "--family", "smyth18", "--from", "3", "--to", "3", "--json",
    ]);
    assert_eq!(v[0]["excluded"], "Excluded");
}

#[test]
fn pi_resultant_obstruction_power() {
    let v = json(&["pi", LEHMER, "x^6-x^5+x^4-x^3+x^2-x+1", "--json"]);
    let members: Vec<&Value> = v["memberships"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| m["status"] == "Member")
        .collect();
    assert_eq!(members.len(), 1);
    assert_eq!(members[0]["p"], 13);
    assert_eq!(members[0]["witness"], "x^2 + 7x + 1");

    let out = run(&["resultant", "x^6-3x^5-x^4+5x^3-x^2-3x+1", "x^4-x^3+x^2-x+1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "121");

    let f = "x^22 - 7x^21 + 19x^20 - 21x^19 - 6x^18 + 44x^17 - 46x^16 - 4x^15 + 64x^14 - 72x^13 + 6x^12 + 68x^11 + 6x^10 - 72x^9 + 64x^8 - 4x^7 - 46x^6 + 44x^5 - 6x^4 - 21x^3 + 19x^2 - 7x + 1";
    let g = json(&["obstruction", f, "--json"]);
    let nodes = g["nodes"].as_array().unwrap().len();
    assert!(nodes >= 1);
    assert_eq!(
        g["gf_rank"].as_u64().unwrap() + 1,
        g["components"].as_array().unwrap().len() as u64
    );

    let v = json(&["power", LEHMER, "1", "--json"]);
    assert_eq!(v["alpha"], "1.1762808183");
}

#[test]
fn table_classify() {
    let dir = std::env::temp_dir().join(format!("salemk3-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.txt");
    std::fs::write(
        &path,
        "# Lehmer\n1,1,0,-1,-1,-1,-1,-1,0,1,1\n\n# family a, a = 0\n1,0,-1,-1,-1,0,1\n",
    )
    .unwrap();
    let v = json(&["table", path.to_str().unwrap(), "--classify", "--json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["comment"], "Lehmer");
    assert_eq!(rows[1]["tag"], "CONGR4a");
    assert_eq!(rows[1]["salem_pairs"], "RealizableAllRootsOfS");
    std::fs::write(&path, "1,2,3\n").unwrap();
    assert_eq!(
        run(&["table", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(dir).ok();
}
