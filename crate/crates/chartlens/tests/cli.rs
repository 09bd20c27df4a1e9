mod common;

use std::fs;
use std::process::Command;

use common::{bundle, chartlens, copy_to_temp, fixtures, stderr, stdout};
use serde_json::Value;

#[test]
fn validate_accepts_the_fixture_bundle() {
    let o = chartlens(&["validate", "--bundle", bundle().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "OK, 12 charts × 3 variants\n");
}

#[test]
fn validate_reads_the_bundle_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_chartlens"))
        .arg("validate")
        .env("CHARTLENS_BUNDLE", bundle())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validate_names_a_missing_question() {
    let dir = copy_to_temp(&bundle());
    let path = dir.path().join("questions/v2.json");
    let mut doc: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    doc["questions"]
        .as_array_mut()
        .unwrap()
        .retain(|q| q["chart_type"] != "histogram");
    fs::write(&path, serde_json::to_vec_pretty(&doc).unwrap()).unwrap();

    let o = chartlens(&["validate", "--bundle", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("questions: v2: missing histogram question"),
        "{}",
        stdout(&o)
    );

    let o = chartlens(&["variant-check", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("v2: missing histogram question"));
}

#[test]
fn validate_locates_a_bad_rect_by_file_and_field() {
    let dir = copy_to_temp(&bundle());
    let path = dir.path().join("charts/v0-bar.json");
    let mut doc: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    let r = doc["x_axis"].as_array().unwrap().clone();
    doc["x_axis"] = serde_json::json!([r[2], r[1], r[0], r[3]]);
    fs::write(&path, serde_json::to_vec_pretty(&doc).unwrap()).unwrap();

    let o = chartlens(&["validate", "--bundle", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("charts/v0-bar.json: inverted rect at x_axis"),
        "{out}"
    );
    // The broken chart drops out, so its question no longer resolves.
    assert!(out.contains("chart `v0-bar` is not in the bundle"), "{out}");
}

#[test]
fn validate_checks_bitmap_dimensions() {
    let dir = copy_to_temp(&bundle());
    let path = dir.path().join("charts/v1-pie.json");
    let text = fs::read_to_string(&path)
        .unwrap()
        .replace("\"image_width\": 400", "\"image_width\": 401");
    fs::write(&path, text).unwrap();
    let o = chartlens(&["validate", "--bundle", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o)
        .contains("charts/v1-pie.png: bitmap is 400×300 but the annotation declares 401×300"));
}

#[test]
fn validate_fails_with_io_code_on_missing_path() {
    let o = chartlens(&["validate", "--bundle", "/nonexistent/bundle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: /nonexistent/bundle/charts"));
}

#[test]
fn manifest_lists_digests() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("manifest.json");
    let o = chartlens(&[
        "validate",
        "--bundle",
        bundle().to_str().unwrap(),
        "--manifest",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m: Value = serde_json::from_slice(&fs::read(out).unwrap()).unwrap();
    assert_eq!(m["charts"].as_array().unwrap().len(), 38);
    assert_eq!(m["question_sets"].as_array().unwrap().len(), 4);
    let digest = m["charts"][0]["bitmap_sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(digest.bytes().all(|b| b.is_ascii_hexdigit()));
}

#[test]
fn score_prints_exact_score() {
    let f = fixtures().join("formative/PF2_baseline_v0.session.json");
    let o = chartlens(&["score", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("score\t7.75\n"), "{out}");
    assert!(
        out.contains("correct\t8\nincorrect\t1\ntimeout\t3\nskip\t0\n"),
        "{out}"
    );
}

#[test]
fn score_rejects_malformed_session_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    fs::write(&f, r#"{"participant_id": "1", "condition": "magnifier"}"#).unwrap();
    let o = chartlens(&["score", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("at condition"), "{}", stderr(&o));
}

#[test]
fn assign_prints_the_counterbalanced_order() {
    let o = chartlens(&["assign", "--participant", "4"]);
    assert_eq!(
        stdout(&o),
        "participant\t4\norder\t4\ntask1\tmini-map\tv2\ntask2\tdynamic-context\tv1\ntask3\tbaseline\tv0\n"
    );
    let o = chartlens(&["assign", "--participant", "7"]);
    assert!(stdout(&o).contains("order\t1\ntask1\tbaseline\tv0\n"));
    assert_eq!(
        chartlens(&["assign", "--participant", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn layout_command_prints_a_layout_document() {
    let o = chartlens(&[
        "layout",
        "--bundle",
        bundle().to_str().unwrap(),
        "--chart",
        "v0-bar",
        "--x",
        "0.5",
        "--y",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["method"], "dynamic-context");
    assert_eq!(doc["oa"], serde_json::json!([0.3, 0.3, 0.7, 0.7]));

    let o = chartlens(&[
        "layout",
        "--bundle",
        bundle().to_str().unwrap(),
        "--chart",
        "v0-bar",
        "--x",
        "0.5",
        "--y",
        "0.5",
        "--method",
        "mini-map",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["method"], "mini-map");
    assert_eq!(doc["indicator"]["border"], "#ffffffff");
}

#[test]
fn analysis_pipeline_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let traces = fixtures().join("study/traces");
    let d = dir.path().join("D.tsv");
    let l = dir.path().join("L.tsv");
    let o = chartlens(&[
        "analyze",
        "dtw",
        "--in",
        traces.to_str().unwrap(),
        "--out",
        d.to_str().unwrap(),
        "--labels-out",
        l.to_str().unwrap(),
        "--steps",
        "100",
        "--question",
        "v0-q01",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let matrix = fs::read_to_string(&d).unwrap();
    assert_eq!(matrix.lines().count(), 7, "{matrix}");
    let labels = fs::read_to_string(&l).unwrap();
    assert!(
        labels.starts_with("id\tgroup\nP1_baseline_v0_v0-q01\tbaseline\n"),
        "{labels}"
    );

    let o = chartlens(&[
        "analyze",
        "permanova",
        "--matrix",
        d.to_str().unwrap(),
        "--labels",
        l.to_str().unwrap(),
        "--perms",
        "99",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = stdout(&o);
    assert!(
        table.starts_with("# PERMANOVA, 99 permutations, seed 3\nterm\tdf\tss\tF\tp\ngroup\t2\t"),
        "{table}"
    );
    assert!(table.contains("pair\tF\tp_raw\tp_holm\n"));

    let o = chartlens(&[
        "analyze",
        "density",
        "--in",
        traces.to_str().unwrap(),
        "--bins",
        "8",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["bins"], 8);
    assert_eq!(
        doc["inner_zone"],
        serde_json::json!([0.15, 0.15, 0.85, 0.85])
    );
    let all = &doc["groups"]["all"];
    let per: u64 = ["baseline", "dynamic-context", "mini-map"]
        .iter()
        .map(|g| doc["groups"][g]["total"].as_u64().unwrap())
        .sum();
    assert_eq!(all["total"].as_u64().unwrap(), per);

    let o = chartlens(&[
        "analyze",
        "mean-path",
        "--in",
        traces.to_str().unwrap(),
        "--steps",
        "50",
        "--question",
        "v1-q02",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let groups = doc.as_array().unwrap();
    assert_eq!(groups.len(), 3);
    assert!(groups
        .iter()
        .all(|g| g["points"].as_array().unwrap().len() == 50));
}

#[test]
fn exclude_skipped_drops_skipped_traces() {
    let traces = fixtures().join("study/traces");
    let skipped = fs::read_dir(&traces)
        .unwrap()
        .filter(|e| {
            fs::read_to_string(e.as_ref().unwrap().path())
                .unwrap()
                .contains(",EVENT,skip,")
        })
        .count();
    assert!(skipped > 0, "fixture should contain skipped questions");
    let count = |extra: &[&str]| {
        let mut args = vec![
            "analyze",
            "density",
            "--in",
            traces.to_str().unwrap(),
            "--bins",
            "4",
        ];
        args.extend_from_slice(extra);
        let doc: Value = serde_json::from_str(&stdout(&chartlens(&args))).unwrap();
        ["baseline", "dynamic-context", "mini-map"]
            .iter()
            .map(|g| doc["groups"][g]["traces"].as_u64().unwrap_or(0))
            .sum::<u64>()
    };
    assert_eq!(count(&[]) - count(&["--exclude-skipped"]), skipped as u64);
}

#[test]
fn sus_scores_responses() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sus.tsv");
    fs::write(&f, "id\tq1\tq2\tq3\tq4\tq5\tq6\tq7\tq8\tq9\tq10\nP1\t5\t1\t5\t1\t5\t1\t5\t1\t5\t1\nP2\t3\t3\t3\t3\t3\t3\t3\t3\t3\t3\nP3\t4\t2\t4\t2\t4\t2\t4\t2\t4\t2\n").unwrap();
    let o = chartlens(&["analyze", "sus", f.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "id\tsus\nP1\t100\nP2\t50\nP3\t75\n# mean\t75.00\n# sd\t25.00\n"
    );
    fs::write(&f, "P1\t6\t1\t5\t1\t5\t1\t5\t1\t5\t1\n").unwrap();
    assert_eq!(
        chartlens(&["analyze", "sus", f.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn report_on_an_empty_directory_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = chartlens(&["report", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("no session logs found"));
    assert_eq!(
        stdout(&o).lines().filter(|l| !l.starts_with('#')).count(),
        2
    );
}
