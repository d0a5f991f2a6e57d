//! Byte-for-byte output of fixed invocations. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p sce-cli --test golden` after verifying a change.

use std::path::PathBuf;
use std::process::Command;

fn golden(name: &str, args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_sce"))
        .args(args)
        .output()
        .expect("run sce");
    assert!(
        out.status.success(),
        "{name}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        out.stdout == want,
        "{name} differs from golden file\n--- got ---\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn universal() {
    golden("universal.csv", &["universal", "--steps", "11"]);
}

#[test]
fn solve() {
    golden(
        "solve_linear.csv",
        &["solve", "--model", "linear", "--a", "1"],
    );
    golden(
        "solve_quadratic.json",
        &[
            "solve",
            "--model",
            "quadratic",
            "--a",
            "1",
            "--format",
            "json",
        ],
    );
    golden(
        "solve_fn.csv",
        &["solve", "--model", "fn", "--a", "60", "--b", "8"],
    );
}

#[test]
fn sweeps() {
    golden(
        "sweep_linear.csv",
        &[
            "sweep", "--model", "linear", "--a-min", "0", "--a-max", "1", "--points", "4",
        ],
    );
    golden(
        "sweep_quadratic_log.csv",
        &[
            "sweep",
            "--model",
            "quadratic",
            "--a-min",
            "0.01",
            "--a-max",
            "100",
            "--points",
            "9",
            "--log",
        ],
    );
}

#[test]
fn fowler_nordheim_curves() {
    let base = [
        "fncurve", "--gap", "1", "--um", "--v-min", "5000", "--v-max", "100000", "--points", "8",
        "--log",
    ];
    golden("fncurve_phi4.csv", &base);
    golden("fnplot_phi4.csv", &[&base[..], &["--fnplot"]].concat());
    golden(
        "fncurve_phi_eff.csv",
        &[
            "fncurve",
            "--v-min",
            "2000",
            "--v-max",
            "14000",
            "--points",
            "5",
            "--phi-eff",
            "standard",
            "--c",
            "0.5",
        ],
    );
    golden("vtrans.csv", &["vtrans", "--gap", "1", "--um"]);
}

#[test]
fn arrays() {
    golden(
        "array_ripple_monopole.csv",
        &[
            "array",
            "ripple",
            "--z-min",
            "0.5",
            "--z-max",
            "4",
            "--z-points",
            "8",
        ],
    );
    golden(
        "array_ripple_dipole.csv",
        &[
            "array",
            "ripple",
            "--model",
            "dipole",
            "--d",
            "0.25",
            "--z-min",
            "0.3",
            "--z-max",
            "3",
            "--z-points",
            "6",
        ],
    );
    golden(
        "array_field_diagonal.csv",
        &[
            "array",
            "field",
            "--n",
            "5",
            "--m",
            "10",
            "--scan",
            "diagonal",
            "--z",
            "0.4,0.8,1.6",
            "--samples",
            "9",
        ],
    );
    golden(
        "array_potential_map.csv",
        &[
            "array",
            "potential",
            "--n",
            "4",
            "--m",
            "8",
            "--scan",
            "map",
            "--z",
            "0.4",
            "--samples",
            "5",
        ],
    );
    golden(
        "array_field_axis.csv",
        &[
            "array",
            "field",
            "--n",
            "4",
            "--m",
            "8",
            "--z-min",
            "0.2",
            "--z-max",
            "2",
            "--z-points",
            "4",
        ],
    );
}

#[test]
fn saturn_and_oracle() {
    golden(
        "saturn.csv",
        &[
            "saturn", "--r-min", "1.5", "--r-max", "50", "--points", "6", "--log",
        ],
    );
    golden(
        "saturn_off_axis.csv",
        &[
            "saturn", "--q-ring", "0.5", "--theta", "0.7", "--points", "4",
        ],
    );
    golden("oracle.csv", &["oracle", "--f", "0.1"]);
}
