//! CLI-level acceptance: the `bench` determinism criterion. Library-level
//! criteria live in the pdcscreen crate's acceptance suite.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdcscreen"))
}

fn write_config(path: &Path) {
    let config = serde_json::json!({
        "data": { "kind": "model", "model": 5, "m": 20, "n": 100, "dist": "gaussian" },
        "reps": 8,
        "master_seed": 2024,
        "methods": [
            { "method": "sis" },
            { "method": "dcsis" },
            { "method": "pdcsis" },
            { "method": "pdcsis-plus", "decoy_count": 200 }
        ]
    });
    std::fs::write(path, serde_json::to_vec_pretty(&config).unwrap()).unwrap();
}

#[test]
fn c8_bench_outputs_are_byte_identical_across_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("experiment.json");
    write_config(&config);

    for (threads, out) in [("1", "serial"), ("8", "wide")] {
        let status = bin()
            .args(["bench", "--config"])
            .arg(&config)
            .arg("--out-dir")
            .arg(dir.path().join(out))
            .args(["--threads", threads])
            .status()
            .unwrap();
        assert!(status.success(), "bench with {threads} threads failed");
    }

    let mut pass = true;
    for file in ["summary.txt", "summary.csv", "summary.json"] {
        let serial = std::fs::read(dir.path().join("serial").join(file)).unwrap();
        let wide = std::fs::read(dir.path().join("wide").join(file)).unwrap();
        if serial != wide {
            pass = false;
            eprintln!("{file} differs between thread counts");
        }
    }
    println!(
        "[{}] C8: bench outputs byte-identical at parallelism 1 and 8 (summary.txt/csv/json)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}
