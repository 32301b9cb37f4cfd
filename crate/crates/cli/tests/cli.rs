use std::process::{Command, Output};

use serde_json::Value;

fn hdepth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdepth"))
        .args(args)
        .output()
        .expect("run hdepth")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = hdepth(&full);
    (serde_json::from_str(&stdout(&out)).unwrap(), out.status.code().unwrap())
}

#[test]
fn veronese_depth_json() {
    let (v, code) = json(&["depth", "--ideal", "veronese", "--n", "6", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "depth");
    let row = &v["results"][0];
    assert_eq!(row["depth"], 3);
    assert_eq!(row["closed_form"], 3);
    assert_eq!(row["agree"], true);
}

#[test]
fn veronese_series_plain() {
    let out = hdepth(&["series", "--ideal", "veronese", "--n", "3", "--d", "2", "--upto", "5", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cells, ["veronese", "3", "2", "[0,0,3,-2]", "3", "[0,0,3,7,12,18]"]);
}

#[test]
fn verify_veronese_hat_power_passes() {
    let out = hdepth(&["verify", "theorem-1.4", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("PASS theorem-1.4"), "{last}");
    assert!(last.contains("n=1..20"), "{last}");
}

#[test]
fn every_identity_passes_small_range() {
    for id in ["lemma-2.2", "prop-2.3", "lemma-4.1", "eq-chain", "theorem-1.4", "theorem-1.3"] {
        let (v, code) = json(&["verify", id, "--n", "1..7"]);
        assert_eq!(code, 0, "{id}");
        assert_eq!(v["pass"], true, "{id}");
        assert_eq!(v["results"][0]["counterexample"], Value::Null, "{id}");
    }
}

#[test]
fn max_power_depth() {
    let (v, code) = json(&["depth", "--ideal", "max-power", "--n", "3", "--s", "2"]);
    assert_eq!(code, 0);
    let row = &v["results"][0];
    assert_eq!((row["depth"].as_u64(), row["closed_form"].as_u64()), (Some(1), Some(1)));
    assert_eq!(row["agree"], true);
}

#[test]
fn table_csv_schema() {
    let out = hdepth(&["table", "--family", "max-power", "--n", "1..5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,param,numer_degree,den_pow,depth,closed_form,agree")
    );
    assert_eq!(lines.count(), 15);
    assert!(text.contains("\nmax-power,5,2,"));
}

#[test]
fn formats_carry_same_numbers() {
    let base = ["table", "--family", "veronese", "--n", "1..8", "--d", "2..4"];
    let csv_out = stdout(&hdepth(&[&base[..], &["--format", "csv"]].concat()));
    let (v, _) = json(&base);
    let plain = stdout(&hdepth(&[&base[..], &["--quiet"]].concat()));

    let rows = v["results"].as_array().unwrap();
    let csv_rows: Vec<&str> = csv_out.lines().skip(1).collect();
    let plain_rows: Vec<&str> = plain.lines().skip(1).collect();
    assert_eq!(rows.len(), csv_rows.len());
    assert_eq!(rows.len(), plain_rows.len());
    for ((row, c), p) in rows.iter().zip(csv_rows).zip(plain_rows) {
        let from_json: Vec<String> = row
            .as_object()
            .unwrap()
            .values()
            .map(|x| match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        assert_eq!(from_json, c.split(',').collect::<Vec<_>>());
        assert_eq!(from_json, p.split_whitespace().collect::<Vec<_>>());
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["plain", "csv", "json"] {
        let args = ["verify", "lemma-4.1", "--n", "1..9", "--format", format];
        assert_eq!(hdepth(&args).stdout, hdepth(&args).stdout, "{format}");
    }
}

#[test]
fn huge_coefficients_are_strings_in_json() {
    let (v, code) = json(&["series", "--ideal", "max-power", "--n", "40", "--s", "1", "--upto", "40"]);
    assert_eq!(code, 0);
    let coeffs = v["results"][0]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs[1], 40);
    // C(79, 39) is far beyond 2^53.
    assert_eq!(coeffs[40], "53753604366668088230810");
}

#[test]
fn oracle_passes_and_reports() {
    let (v, code) = json(&["oracle", "--ideal", "veronese", "--n", "1..4", "--box", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 10);
}

#[test]
fn malformed_arguments_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["series"],
        &["depth", "--ideal", "veronese", "--n", "0"],
        &["depth", "--ideal", "veronese", "--n", "5..2"],
        &["depth", "--ideal", "veronese", "--n", "3", "--d", "4"],
        &["depth", "--ideal", "veronese", "--n", "3", "--s", "1"],
        &["depth", "--ideal", "nope", "--n", "3"],
        &["verify", "lemma-9.9", "--n-max", "3"],
        &["verify", "lemma-2.2"],
        &["oracle", "--ideal", "veronese", "--n", "3", "--box", "7"],
        &["table", "--family", "veronese", "--n", "3", "--format", "xml"],
    ];
    for args in cases {
        assert_eq!(hdepth(args).status.code(), Some(2), "{args:?}");
    }
}
