use std::path::PathBuf;
use std::process::{Command, Output};

use rsaint::asymptotics::{main_term, ApproxContext, ApproximantModel};
use rsaint::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsaint")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn records(csv_text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn field<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    &row[header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))]
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rsaint-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

const COMMANDS: &[&[&str]] = &[
    &["count", "--x", "100000", "--r", "7/2", "--oracle"],
    &["pi2", "--x", "1000"],
    &["approx", "--x", "1000000", "--r", "10", "--model", "all"],
    &["lchi", "--s", "1000", "--char", "kronecker:-3"],
    &["bias", "--grid", "1000:10,100:4,10:4,200000:50", "--char", "kronecker:-4", "--eta", "-1"],
    &["shortint", "--x", "10000", "--h", "40"],
];

#[test]
fn documented_examples() {
    let (h, rows) = records(&stdout(&["count", "--x", "100", "--r", "3"]));
    assert_eq!(field(&h, &rows[0], "total"), "9");
    let (h, rows) = records(&stdout(&["pi2", "--x", "10"]));
    assert_eq!(field(&h, &rows[0], "pi2"), "2");
    let (h, rows) = records(&stdout(&["pi2", "--x", "100"]));
    assert_eq!(field(&h, &rows[0], "pi2"), "30");

    let (h, rows) = records(&stdout(&["approx", "--x", "100", "--r", "25", "--model", "uniform"]));
    let want = main_term(ApproximantModel::Uniform, 100.0, &Rational::from_int(25), &ApproxContext::default()).unwrap();
    let got: f64 = field(&h, &rows[0], "value").parse().unwrap();
    assert!((got - want.value).abs() <= 1e-10 * want.value);
    assert_eq!(field(&h, &rows[0], "range_warning"), "");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["count", "--x", "100"]), 2);
    assert_eq!(code(&["approx", "--x", "100", "--r", "25", "--model", "bogus"]), 2);
    assert_eq!(code(&["lchi", "--s", "10", "--char", "kron:-4"]), 2);
    assert_eq!(code(&["lchi", "--s", "10", "--char", "table:4:0,1,0,1"]), 2);
    assert_eq!(code(&["bias", "--x", "100", "--s", "4", "--char", "kronecker:-4", "--eta", "2"]), 2);
    assert_eq!(code(&["count", "--x", "100", "--r", "1"]), 3);
    assert_eq!(code(&["lchi", "--s", "3", "--char", "kronecker:-4"]), 3);
    assert_eq!(code(&["approx", "--x", "100", "--r", "25", "--model", "thm_small", "--strict"]), 3);
    let lenient = run(&["approx", "--x", "100", "--r", "25", "--model", "thm_small"]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("warning"));
    let usage = String::from_utf8(run(&["approx", "--x", "100", "--r", "25", "--model", "bogus"]).stderr).unwrap();
    assert!(usage.contains("uniform") && usage.contains("landau"), "{usage}");
}

#[test]
fn csv_round_trip() {
    for args in COMMANDS {
        let text = stdout(args);
        let (header, rows) = records(&text);
        assert!(!rows.is_empty(), "{args:?}");
        // Re-serializing the parsed records reproduces the output byte for byte.
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).unwrap();
        for r in &rows {
            assert_eq!(r.len(), header.len());
            w.write_record(r).unwrap();
        }
        assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), text, "{args:?}");
    }
    let (h, rows) = records(&stdout(COMMANDS[4]));
    for row in rows.iter().filter(|r| field(&h, r, "status") == "ok") {
        let num: f64 = field(&h, row, "emp_num").parse().unwrap();
        let den: f64 = field(&h, row, "emp_den").parse().unwrap();
        let ratio: f64 = field(&h, row, "emp_ratio").parse().unwrap();
        assert!((ratio - num / den).abs() <= 1e-11);
        let h_main: f64 = field(&h, row, "h_main").parse().unwrap();
        let pred: f64 = field(&h, row, "pred_ratio").parse().unwrap();
        assert!((pred - 0.25 * (1.0 + h_main)).abs() <= 1e-11);
    }
    let statuses: Vec<&str> = rows.iter().map(|r| field(&h, r, "status")).collect();
    assert_eq!(statuses, ["ok", "ok", "undefined_ratio", "ok"]);
}

#[test]
fn json_matches_the_schema() {
    let schema_path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in COMMANDS {
        let mut with_format = vec!["--format", "json"];
        with_format.extend_from_slice(args);
        let doc: serde_json::Value = serde_json::from_str(&stdout(&with_format)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(doc["meta"]["command"], args[0]);
    }
    // A row with a foreign key is rejected.
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "pi2", "--x", "10"])).unwrap();
    doc["rows"][0]["extra"] = 1.into();
    assert!(!validator.is_valid(&doc));
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in COMMANDS {
        let base = stdout(&[&["--threads", "1"], *args].concat());
        for t in ["2", "4"] {
            assert_eq!(stdout(&[&["--threads", t], *args].concat()), base, "{args:?} with {t} threads");
        }
    }
}

#[test]
fn oracle_column_agrees() {
    for (x, r) in [("100", "3"), ("100000", "7/2"), ("500000", "1e5"), ("999999", "1.0625")] {
        let (h, rows) = records(&stdout(&["count", "--x", x, "--r", r, "--oracle"]));
        assert_eq!(field(&h, &rows[0], "oracle"), field(&h, &rows[0], "total"), "x={x} r={r}");
    }
    // Past oracle_cap the oracle is refused rather than run.
    let cfg = temp_file("cap.conf", "oracle_cap = 1000\n");
    let out = run(&["--config", cfg.to_str().unwrap(), "count", "--x", "5000", "--r", "3", "--oracle"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = temp_file("ok.conf", "# comment\noutput_format = json\nerror_model = dlvp\nthreads = 2\n");
    let path = cfg.to_str().unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["--config", path, "pi2", "--x", "100"])).unwrap();
    assert_eq!(doc["meta"]["error_model"]["variant"], "dlvp");
    assert_eq!(doc["meta"]["threads"], 2);
    assert_eq!(doc["rows"][0]["pi2"], 30);
    // Flags win over the file.
    let text = stdout(&["--config", path, "--format", "csv", "--error-model", "kv", "pi2", "--x", "100"]);
    assert_eq!(text, "x,pi2\n100,30\n");

    for bad in ["colour = red\n", "threads = 0\n", "rel_tol = -1\n", "no equals sign\n"] {
        let f = temp_file("bad.conf", bad);
        let out = run(&["--config", f.to_str().unwrap(), "pi2", "--x", "10"]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
    }
}
