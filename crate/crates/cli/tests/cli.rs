use serde_json::Value;
use std::process::{Command, Output};

fn sce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sce"))
        .args(args)
        .env_remove("SCE_OUT_DIR")
        .output()
        .expect("run sce")
}

/// Parsed CSV as a header plus rows of strings.
fn table(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = sce(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(args: &[&str], name: &str) -> Vec<f64> {
    let (h, rows) = table(args);
    let i = h
        .iter()
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("no column {name} in {h:?}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn universal_endpoints_and_midpoint() {
    let args = ["universal", "--steps", "3"];
    let j = column(&args, "j");
    assert_eq!(j[0], 4.0 / 9.0);
    assert!((column(&args, "j_over_jcl")[1] - 0.697).abs() < 1e-3);
    assert_eq!(column(&args, "j_fn")[2], (-1.0f64).exp());
}

#[test]
fn solve_checkpoints() {
    let j = |model: &str, a: &str| column(&["solve", "--model", model, "--a", a], "j")[0];
    assert!((j("linear", "1") - 0.367).abs() < 5e-4);
    assert!((j("quadratic", "1") - 0.291).abs() < 5e-4);
    let args = ["solve", "--model", "linear", "--a", "0"];
    assert_eq!(column(&args, "f")[0], 1.0);
    assert_eq!(column(&args, "j")[0], 0.0);
}

#[test]
fn sweep_matches_solve_and_approaches_the_limit() {
    let args = [
        "sweep", "--model", "linear", "--a-min", "0", "--a-max", "1", "--points", "4",
    ];
    let ratio = column(&args, "j_over_jcl");
    assert!(
        (ratio[1] - 0.5).abs() < 1e-12,
        "a = 1/3 gives half the CL limit"
    );
    let solved = column(&["solve", "--model", "linear", "--a", "1"], "j")[0];
    assert_eq!(column(&args, "j")[3], solved);

    for model in ["linear", "quadratic"] {
        let tail = column(
            &[
                "sweep", "--model", model, "--a-min", "1", "--a-max", "1000", "--points", "30",
                "--log",
            ],
            "j_over_jcl",
        );
        assert!(tail.windows(2).all(|w| w[1] > w[0] && w[1] < 1.0));
        assert!(*tail.last().unwrap() > 0.98);
    }
}

#[test]
fn fncurve_limits() {
    let low = [
        "fncurve", "--gap", "1", "--um", "--v-min", "3000", "--v-max", "5000", "--points", "3",
    ];
    for (fnj, scj) in column(&low, "j_fn").iter().zip(column(&low, "j_sc")) {
        let r = scj / fnj;
        assert!((0.99..=1.0).contains(&r), "{r}");
    }
    let high = [
        "fncurve", "--v-min", "1e6", "--v-max", "1e7", "--points", "2", "--c", "0.5",
    ];
    for (cl, sc) in column(&high, "j_cl").iter().zip(column(&high, "j_sc")) {
        assert!((sc / cl / 0.5 - 1.0).abs() < 0.02);
    }
    // the curves part company around the transition voltage
    let mid = [
        "fncurve", "--v-min", "21953", "--v-max", "21954", "--points", "2",
    ];
    let f = column(&mid, "f");
    assert!((f[0] - 2.0 / 3.0).abs() < 1e-3);
}

#[test]
fn fncurve_annotates_failed_points_and_continues() {
    let args = [
        "fncurve",
        "--v-min",
        "10000",
        "--v-max",
        "20000",
        "--points",
        "3",
        "--phi-eff",
        "power-law",
    ];
    let (h, rows) = table(&args);
    let s = h.iter().position(|c| c == "status").unwrap();
    assert_eq!(rows[0][s], "ok");
    assert!(rows[2][s].contains("exceeds"), "{}", rows[2][s]);
    assert_eq!(rows[2][1], "NaN");
}

#[test]
fn fnplot_uses_kev() {
    let x = column(
        &[
            "fncurve", "--v-min", "5000", "--v-max", "10000", "--points", "2", "--fnplot",
        ],
        "inv_v_kev",
    );
    assert_eq!(x, vec![0.2, 0.1]);
}

#[test]
fn vtrans_is_insensitive_to_the_guess() {
    let v = |guess: &str, phi: &str| {
        column(
            &[
                "vtrans", "--gap", "1", "--um", "--phi", phi, "--guess", guess,
            ],
            "v_trans_ev",
        )[0]
    };
    let reference = v("10000", "4");
    assert!((reference - 21_953.0).abs() < 1.0);
    for g in ["5000", "20000", "50000"] {
        assert!((v(g, "4") - reference).abs() < 1.0);
    }
    assert!(v("10000", "2") < reference);
}

#[test]
fn array_examples() {
    let ripple = [
        "array",
        "ripple",
        "--n",
        "10",
        "--m",
        "20",
        "--z-min",
        "0.5",
        "--z-max",
        "4",
        "--z-points",
        "15",
    ];
    for name in ["r_phi", "r_f"] {
        let r = column(&ripple, name);
        assert!(
            r.windows(2).all(|w| w[1].abs() < w[0].abs()),
            "{name}: {r:?}"
        );
    }

    let diag = [
        "array",
        "field",
        "--n",
        "5",
        "--m",
        "10",
        "--scan",
        "diagonal",
        "--z",
        "0.4,1.6",
        "--samples",
        "81",
    ];
    let spread = |v: Vec<f64>| {
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        hi - lo
    };
    let low = spread(column(&diag, "f_z_z0.4"));
    let high = spread(column(&diag, "f_z_z1.6"));
    assert!(10.0 * high <= low, "{low} vs {high}");

    let map = [
        "array",
        "potential",
        "--n",
        "4",
        "--m",
        "8",
        "--scan",
        "map",
        "--z",
        "2",
        "--samples",
        "5",
    ];
    let phi = column(&map, "phi");
    assert!(phi.iter().all(|v| (v - phi[0]).abs() < 1e-10));
}

#[test]
fn saturn_examples() {
    let ratio = column(&["saturn", "--q-ring", "0", "--points", "5"], "ratio");
    assert!(ratio.iter().all(|&r| r == 1.0));

    let equal = [
        "saturn", "--r-min", "2", "--r-max", "1000", "--points", "10", "--log",
    ];
    let r = column(&equal, "ratio");
    assert!(r.windows(2).all(|w| w[1] < w[0]));
    assert!(*r.last().unwrap() < 1e-5);

    let at10 = column(
        &["saturn", "--r-min", "10", "--r-max", "11", "--points", "2"],
        "phi_saturn",
    )[0];
    let exact = 0.1 - 1.0 / 101f64.sqrt();
    assert!((at10 / exact - 1.0).abs() < 0.02);
}

#[test]
fn saturn_warns_on_lopsided_charges() {
    let out = sce(&["saturn", "--q-tip", "100", "--points", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn oracle_examples() {
    let dev = |f: &str| column(&["oracle", "--f", f], "phi_end")[0] - 1.0;
    assert_eq!(dev("1"), 0.0);
    assert!(dev("0.6666666666666666").abs() < 1e-8);
    assert!(dev("0.1").abs() < 1e-7);
}

#[test]
fn json_is_an_array_of_records() {
    let out = sce(&[
        "sweep",
        "--model",
        "quadratic",
        "--a-min",
        "0",
        "--a-max",
        "2",
        "--points",
        "3",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "a",
            "f",
            "j",
            "j_over_jcl",
            "j_small_a",
            "j_large_a",
            "status"
        ]
    );
    assert_eq!(rows[2]["a"], 2.0);
}

#[test]
fn exit_status_distinguishes_usage_from_numerics() {
    let code = |args: &[&str]| sce(args).status.code().unwrap();
    assert_eq!(code(&["universal", "--steps", "3"]), 0);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["universal", "--f-min", "0.8", "--f-max", "0.2"]), 2);
    assert_eq!(code(&["solve", "--model", "fn", "--a", "1"]), 2);
    assert_eq!(code(&["solve", "--model", "linear", "--a", "-1"]), 2);
    assert_eq!(code(&["saturn", "--r-min", "0.5"]), 2);
    assert_eq!(code(&["array", "ripple", "--model", "dipole"]), 2);
    assert_eq!(code(&["oracle", "--f", "0"]), 2);
    // ln(2a) < 0 at a 1 meV starting guess: the fixed point cannot proceed
    assert_eq!(code(&["vtrans", "--guess", "0.001"]), 1);
}

#[test]
fn parallel_output_is_identical() {
    let args = ["array", "ripple", "--z-points", "6"];
    let serial = sce(&args).stdout;
    let parallel = sce(&[&args[..], &["--parallel"]].concat()).stdout;
    assert_eq!(serial, parallel);
    assert_eq!(serial, sce(&args).stdout);
}

#[test]
fn writes_table_and_plot_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("u.csv");
    let svg = dir.path().join("u.svg");
    let out = sce(&[
        "universal",
        "--steps",
        "5",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("f,j,"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn reproduce_figures_honours_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sce"))
        .args(["reproduce-figures", "--quick"])
        .env("SCE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    let sets = manifest["datasets"].as_array().unwrap();
    assert!(sets.len() >= 16);
    for s in sets {
        for key in ["csv", "svg"] {
            let f = s[key].as_str().unwrap();
            assert!(dir.path().join(f).is_file(), "{f} missing");
        }
    }
    let ids: Vec<&str> = sets.iter().map(|s| s["id"].as_str().unwrap()).collect();
    for fig in [
        "fig01", "fig02", "fig03", "fig04", "fig05", "fig06", "fig07", "fig09", "fig10", "fig11",
        "fig12", "fig13",
    ] {
        assert!(
            ids.iter().any(|id| id.starts_with(fig)),
            "{fig} not produced"
        );
    }
}
