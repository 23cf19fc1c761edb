//! End-to-end runs of the `thzlink` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use thzlink::report::ReportEnvelope;
use thzlink::table::Table;

fn thzlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thzlink"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) {
    let out = thzlink(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn csv(path: &Path) -> Table {
    Table::read_csv(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(t: &Table, name: &str) -> Vec<f64> {
    let i = t.column(name).unwrap_or_else(|| panic!("no column {name}"));
    t.rows.iter().map(|r| r[i].as_f64().unwrap()).collect()
}

fn single_line_error(args: &[&str]) -> String {
    let out = thzlink(args);
    assert!(!out.status.success(), "{args:?} should fail");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "), "{err}");
    err
}

#[test]
fn absorption_spectrum_columns() {
    let dir = tempfile::tempdir().unwrap();
    let hot = dir.path().join("hot.csv");
    let cold = dir.path().join("cold.csv");
    ok(&[
        "absorption",
        "--out",
        hot.to_str().unwrap(),
        "--start-ghz",
        "170",
        "--stop-ghz",
        "200",
    ]);
    ok(&[
        "absorption",
        "--cond",
        "cold_dry",
        "--out",
        cold.to_str().unwrap(),
        "--start-ghz",
        "170",
        "--stop-ghz",
        "200",
    ]);
    let text = fs::read_to_string(&hot).unwrap();
    assert!(text.starts_with(
        "f_ghz,gamma_db_per_km,a_abs_100m_db,a_abs_1km_db,fspl_100m_db,fspl_1km_db,total_100m_db,total_1km_db\n"
    ));
    assert!(!text.contains('\r'));
    let (h, c) = (csv(&hot), csv(&cold));
    assert_eq!(h.rows.len(), 301);
    let peak = |t: &Table| column(t, "a_abs_1km_db").into_iter().fold(0.0, f64::max);
    assert!(peak(&h) > 100.0);
    assert!(peak(&c) < peak(&h));
    let total = column(&h, "total_1km_db");
    let parts: Vec<f64> = column(&h, "fspl_1km_db")
        .iter()
        .zip(column(&h, "a_abs_1km_db"))
        .map(|(a, b)| a + b)
        .collect();
    for (t, p) in total.iter().zip(parts) {
        assert!((t - p).abs() <= 1e-10 * t.abs());
    }

    let one = dir.path().join("one.csv");
    ok(&[
        "absorption",
        "--out",
        one.to_str().unwrap(),
        "--start-ghz",
        "183",
        "--stop-ghz",
        "183",
    ]);
    assert_eq!(csv(&one).rows.len(), 1);
}

#[test]
fn txnf_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("txnf.csv");
    ok(&["txnf", "--out", out.to_str().unwrap()]);
    let t = csv(&out);
    let nf = column(&t, "f_tx_db");
    assert_eq!(t.rows.len(), 2 * 471);
    assert!((nf[0] - 17.0).abs() < 0.5 && (nf[470] - 20.8).abs() < 0.5);
    assert!((nf[471] - 11.0).abs() < 0.5 && (nf[941] - 14.5).abs() < 0.5);
    assert_eq!(t.rows[471][0], thzlink::table::Cell::Text("sige".into()));

    let one = dir.path().join("cmos.csv");
    ok(&[
        "txnf",
        "--tech",
        "cmos",
        "--start-ghz",
        "65",
        "--stop-ghz",
        "65",
        "--out",
        one.to_str().unwrap(),
    ]);
    let t = csv(&one);
    // Band centre: mixer 16 dB / -2 dB, PA 7.8 dB.
    let f = 10f64.powf(1.6) + (10f64.powf(0.78) - 1.0) / 10f64.powf(-0.2);
    assert!((column(&t, "f_tx_db")[0] - 10.0 * f.log10()).abs() < 1e-9);
}

#[test]
fn dominance_grid_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    ok(&[
        "dominance",
        "--axis",
        "nf_db_override:0:30:7",
        "--axis2",
        "total_pathloss_db_override:-10:50:13",
        "--out",
        out.to_str().unwrap(),
    ]);
    let t = csv(&out);
    assert_eq!(
        t.columns,
        [
            "nf_override_db",
            "path_loss_override_db",
            "degradation_db",
            "tier",
            "dominated"
        ]
    );
    assert_eq!(t.rows.len(), 7 * 13);
    let meta: ReportEnvelope =
        serde_json::from_str(&fs::read_to_string(dir.path().join("grid.meta.json")).unwrap())
            .unwrap();
    assert!(meta.payload.is_none());
    assert_eq!(meta.constants.tier_boundaries_db, [1.0, 3.0, 5.0]);
    assert_eq!(meta.constants.dominance_threshold_report_db, -5.9);
    assert!((meta.constants.dominance_threshold_db + 5.868253).abs() < 1e-6);
    assert_eq!(meta.model.band_placement, "centered");

    let sweep = dir.path().join("dom.csv");
    ok(&[
        "dominance",
        "--out",
        sweep.to_str().unwrap(),
        "--points",
        "101",
    ]);
    let t = csv(&sweep);
    let margin = column(&t, "dominance_margin_db");
    let pl = column(&t, "path_loss_db");
    let th = column(&t, "threshold_path_loss_db");
    let dom = t.column("dominated").unwrap();
    for (i, row) in t.rows.iter().enumerate() {
        let flagged = row[dom] == thzlink::table::Cell::Bool(true);
        assert_eq!(flagged, margin[i] >= -5.868253243801154);
        assert_eq!(flagged, pl[i] < th[i]);
    }
}

#[test]
fn degenerate_requests_fail_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    let e = single_line_error(&[
        "dominance",
        "--axis",
        "nf_db_override:0:10:0",
        "--axis2",
        "frequency:60:300:3",
        "--out",
        out,
    ]);
    assert!(e.contains("zero steps"), "{e}");
    single_line_error(&["sweep", "--axis", "frequency:30:500:0", "--out", out]);
    single_line_error(&["sweep", "--axis", "warp:1:2:3", "--out", out]);
    single_line_error(&["absorption", "--start-ghz", "0.5", "--out", out]);
    single_line_error(&["txnf", "--stop-ghz", "600", "--out", out]);
    single_line_error(&["sweep", "--points", "1000", "--out", out]);
    single_line_error(&[
        "sweep",
        "--cond",
        "/nonexistent/conditions.txt",
        "--out",
        out,
    ]);
    single_line_error(&["casestudy", "--out", out]);
    single_line_error(&["absorption", "--out", "/nonexistent/dir/a.csv"]);
    single_line_error(&["txnf", "--cond", "hot", "--out", out]);
    single_line_error(&["sweep"]);
}

#[test]
fn strict_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("s.csv");
    fs::write(
        &cfg,
        "preset = medium\nfreq_ghz = 140\naxis = frequency:100:200:3\npoints = 51\n",
    )
    .unwrap();
    ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let t = csv(&out);
    assert_eq!(column(&t, "f_ghz"), [100.0, 150.0, 200.0]);
    assert_eq!(column(&t, "distance_m"), [100.0; 3]);

    // Flags win over the file.
    ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "frequency:300:400:2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(column(&csv(&out), "f_ghz"), [300.0, 400.0]);

    fs::write(&cfg, "preset = medium\nfrequency_ghz = 140\n").unwrap();
    let e = single_line_error(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(e.contains("frequency_ghz"), "{e}");

    fs::write(&cfg, "command = txnf\n").unwrap();
    single_line_error(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
}

#[test]
fn conditions_file() {
    let dir = tempfile::tempdir().unwrap();
    let cond = dir.path().join("lab.cond");
    fs::write(
        &cond,
        "temperature_k = 295\npressure_pa = 101325\nwater_vapor_density_g_m3 = 10\n",
    )
    .unwrap();
    let out = dir.path().join("a.json");
    ok(&[
        "absorption",
        "--cond",
        cond.to_str().unwrap(),
        "--start-ghz",
        "183",
        "--stop-ghz",
        "183",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    let env: ReportEnvelope = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(env.resolved_config.temperature_k, Some(295.0));
    assert_eq!(env.resolved_config.water_vapor_density_g_m3, Some(10.0));

    fs::write(&cond, "temperature_k = 295\n").unwrap();
    single_line_error(&[
        "absorption",
        "--cond",
        cond.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
}

#[test]
fn custom_component_table() {
    let dir = tempfile::tempdir().unwrap();
    let bundled = include_str!("../../core/data/components.csv");
    let table = dir.path().join("comp.csv");
    // Shift every noise figure of the CMOS mixer up by 1 dB.
    let edited: String = bundled
        .lines()
        .map(|l| {
            let mut f: Vec<String> = l.split(',').map(str::to_string).collect();
            if f[0] == "cmos" && f[1] == "mixer_plus_if" {
                f[4] = (f[4].parse::<f64>().unwrap() + 1.0).to_string();
            }
            f.join(",") + "\n"
        })
        .collect();
    fs::write(&table, edited).unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    ok(&["txnf", "--tech", "cmos", "--out", a.to_str().unwrap()]);
    ok(&[
        "txnf",
        "--tech",
        "cmos",
        "--components",
        table.to_str().unwrap(),
        "--out",
        b.to_str().unwrap(),
    ]);
    let (na, nb) = (column(&csv(&a), "f_tx_db"), column(&csv(&b), "f_tx_db"));
    assert!(na.iter().zip(&nb).all(|(x, y)| y > x));

    fs::write(&table, "technology,stage\n").unwrap();
    single_line_error(&[
        "txnf",
        "--components",
        table.to_str().unwrap(),
        "--out",
        a.to_str().unwrap(),
    ]);
}
