//! Compiles and runs a small C program against the generated header and the
//! static library, proving the ABI is usable from actual C.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <math.h>
#include <stdio.h>
#include "chainsim.h"

int main(void) {
    ChainsimConfig *config = NULL;
    ChainsimSchedule *schedule = NULL;
    if (chainsim_config_new_uniform(3, &config) != CHAINSIM_STATUS_OK) return 1;
    if (chainsim_schedule_new_standard(3, chainsim_default_kick_angle(), &schedule)
            != CHAINSIM_STATUS_OK) return 2;

    /* end pair of the kicked 3-chain: C(2pi) = 1 */
    double t = 2.0 * M_PI;
    size_t i = 1, j = 3;
    double c = -1.0;
    if (chainsim_run(config, schedule, &t, 1, &i, &j, 1, &c, NULL, NULL)
            != CHAINSIM_STATUS_OK) {
        char msg[256];
        chainsim_last_error_message(msg, sizeof msg);
        fprintf(stderr, "run failed: %s\n", msg);
        return 3;
    }
    if (fabs(c - 1.0) > 1e-9) {
        fprintf(stderr, "C = %.17g\n", c);
        return 4;
    }

    chainsim_schedule_free(schedule);
    chainsim_config_free(config);
    printf("ok %.17g\n", c);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(include_dir.join("chainsim.h").is_file(), "header missing");

    // the staticlib is built alongside this test's own artifacts
    let mut lib_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    lib_dir.pop();
    lib_dir.pop();
    let lib_dir = lib_dir.join("target").join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let staticlib = lib_dir.join("libchainsim_ffi.a");
    assert!(staticlib.is_file(), "{} missing", staticlib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, C_SOURCE).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include_dir)
        .arg(&staticlib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "client exited with {:?}:\n{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
