use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gadgetopt"))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gadgetopt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn optimize_golden_writes_qasm_and_report() {
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/data/h2.qasm");
    let (out, report) = (tmp("h2.out.qasm"), tmp("h2.json"));
    let status = bin()
        .args([
            "optimize",
            input,
            "--passes",
            "detect-resynth,pair-reduce",
            "--out",
        ])
        .arg(&out)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    let c = gadgetopt::qasm::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((c.two_qubit_count(), c.two_qubit_depth()), (6, 4));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["output"]["two_qubit_count"], 6);
}

#[test]
fn parse_errors_exit_2() {
    let bad = tmp("bad.qasm");
    std::fs::write(&bad, "qreg q[2];\ncx q[0],q[5];\n").unwrap();
    let out = bin().arg("optimize").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:11"));
}

#[test]
fn bench_directory_with_bad_entry() {
    let dir = tmp("corpus");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("h2.qasm"), gadgetopt::pipeline::GOLDEN_H2_QASM).unwrap();
    std::fs::write(dir.join("broken.qasm"), "qreg q[1]; u3(0,0,0) q[0];").unwrap();
    let csv = tmp("bench.csv");
    let out = bin()
        .args(["bench", "--passes", "detect-resynth,pair-reduce", "--csv"])
        .arg(&csv)
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped broken.qasm"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("h2.qasm,4,12,12,6,4,50.0,66.7,ok,"));
}

#[test]
fn bench_generated_json() {
    let json = tmp("gen.json");
    let out = bin()
        .args(["bench", "--gen", "3,5,7", "--json"])
        .arg(&json)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["schema"], 1);
}
