//! Compile and run the bundled C demo against the generated header and
//! the static library, end to end.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_demo_builds_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let workspace = manifest.parent().unwrap().parent().unwrap();
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let static_lib = workspace.join("target").join(profile).join("libeqlab_ffi.a");
    assert!(
        static_lib.exists(),
        "static library not found at {static_lib:?}"
    );
    let header_dir = manifest.join("include");
    let demo = manifest.join("examples").join("demo.c");
    let out_dir = std::env::temp_dir().join(format!("eqlab-c-smoke-{profile}"));
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("demo");
    let compile = Command::new("cc")
        .arg(&demo)
        .arg(format!("-I{}", header_dir.display()))
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compilation failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let instance = out_dir.join("instance.json");
    std::fs::write(
        &instance,
        r#"{
            "spaces": {"sierp": {"points": 2, "opens": [[], [1], [0, 1]]}},
            "equilogical": {"diag": {"space": "sierp", "rel": [[0, 0], [1, 1]]}},
            "top_spans": {"S": {"equilogical": "diag"}}
        }"#,
    )
    .unwrap();
    let run = Command::new(&binary)
        .arg(&instance)
        .output()
        .expect("demo runs");
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "demo failed: {stdout}");
    assert!(stdout.contains("suite axioms"), "unexpected output: {stdout}");
}
