mod common;

use std::fs;

use chartlens::analyze::TraceFilter;
use chartlens::core::Condition;
use chartlens::report::{cmd_report, ReportOptions};

fn section<'a>(text: &'a str, name: &str) -> Vec<Vec<&'a str>> {
    text.split('\n')
        .skip_while(|l| *l != format!("# {name}"))
        .skip(2)
        .take_while(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split('\t').collect())
        .collect()
}

#[test]
fn formative_scores_reproduce() {
    let report = cmd_report(
        &common::fixtures().join("formative"),
        &ReportOptions::default(),
    )
    .unwrap();
    assert!(report.warnings.is_empty());
    let rows = section(&report.text, "sessions");
    let got: Vec<(&str, &str, [&str; 4])> = rows
        .iter()
        .map(|r| (r[0], r[3], [r[5], r[6], r[7], r[8]]))
        .collect();
    assert_eq!(
        got,
        [
            ("F1", "4", ["4", "0", "8", "0"]),
            ("F2", "7.75", ["8", "1", "3", "0"]),
            ("F3", "6.5", ["7", "2", "3", "0"]),
            ("F4", "5.75", ["6", "1", "5", "0"]),
            ("F5", "0.25", ["1", "3", "8", "0"]),
        ]
    );
    let groups = section(&report.text, "groups");
    assert_eq!(groups.len(), 1);
    assert_eq!(&groups[0][..4], ["baseline", "v0", "5", "4.8500"]);
}

#[test]
fn study_sessions_group_by_condition_and_variant() {
    let report = cmd_report(&common::fixtures().join("study"), &ReportOptions::default()).unwrap();
    let sessions = section(&report.text, "sessions");
    assert_eq!(sessions.len(), 18);
    let groups = section(&report.text, "groups");
    // Six participants over three orders: each (condition, variant) pair
    // occurs in exactly two orders, so twice.
    assert_eq!(groups.len(), 9);
    assert!(groups.iter().all(|g| g[2] == "2"), "{groups:?}");
    let keys: Vec<(&str, &str)> = groups.iter().map(|g| (g[0], g[1])).collect();
    let want: Vec<(&str, &str)> = Condition::ALL
        .iter()
        .flat_map(|c| ["v0", "v1", "v2"].map(|v| (c.as_str(), v)))
        .collect();
    assert_eq!(keys, want);
    assert!(!report.text.contains("# trajectories"));
}

#[test]
fn report_is_byte_identical_across_runs() {
    let opts = ReportOptions {
        analysis: true,
        seed: 11,
        perms: 99,
        steps: 100,
        filter: TraceFilter::default(),
    };
    let dir = common::fixtures().join("study");
    let a = cmd_report(&dir, &opts).unwrap().text;
    let b = cmd_report(&dir, &opts).unwrap().text;
    assert_eq!(a, b);
    assert!(a.contains("# trajectories"));
    assert!(a.contains("# PERMANOVA, 99 permutations, seed 11"), "{a}");
    let c = cmd_report(&dir, &ReportOptions { seed: 12, ..opts })
        .unwrap()
        .text;
    assert_eq!(
        a.split("# trajectories").next(),
        c.split("# trajectories").next()
    );
}

#[test]
fn unreadable_sessions_become_warnings() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(
        common::fixtures().join("formative/PF1_baseline_v0.session.json"),
        dir.path().join("PF1_baseline_v0.session.json"),
    )
    .unwrap();
    fs::write(dir.path().join("broken.json"), "{").unwrap();
    let report = cmd_report(dir.path(), &ReportOptions::default()).unwrap();
    assert_eq!(report.warnings.len(), 1);
    assert!(report.warnings[0].file.ends_with("broken.json"));
    assert_eq!(section(&report.text, "sessions").len(), 1);
}

#[test]
fn empty_directory_warns_and_reports_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let report = cmd_report(dir.path(), &ReportOptions::default()).unwrap();
    assert_eq!(report.warnings.len(), 1);
    assert_eq!(report.warnings[0].message, "no session logs found");
    assert!(section(&report.text, "sessions").is_empty());
}
