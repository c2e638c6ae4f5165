//! End-to-end CLI tests: file parsing, golden Betti tables, exit codes and
//! JSON reports, driven through the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liaison"))
}

fn write_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("liaison-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const LINKED_IDEAL: &str = "# linked ideal of the worked example\n\
ring 32003 4\n\
ideal x0^2, x1^2, x2^6, x0*x1\n";

#[test]
fn degree_of_linked_ideal_is_18() {
    let path = write_file("iy.ideal", LINKED_IDEAL);
    let out = bin().arg("degree").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("degree 18"));
}

#[test]
fn betti_tables_minimal_and_nonminimal() {
    let path = write_file("iy2.ideal", LINKED_IDEAL);
    let out = bin().arg("betti").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("1 4 5 2\n"), "got: {text}");

    // Golden grid for the Koszul complex on two quadrics: strata r = 0,1,2.
    let k22 = write_file("k22.ideal", "ring 32003 2\nideal x0^2, x1^2\n");
    let out = bin().arg("betti").arg(&k22).output().unwrap();
    assert_eq!(stdout(&out), "1 2 1\n1 -- --\n-- 2 --\n-- -- 1\n");
}

#[test]
fn degree_of_plane_counterexample_is_1() {
    // The non-Cohen-Macaulay two-variable ideal with a fat origin.
    let path = write_file("noncm.ideal", "ring 32003 2\nideal x0^2, x0*x1\n");
    let out = bin().arg("degree").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("degree 1"), "{text}");
    assert!(text.contains("dimension 1"), "{text}");
}

#[test]
fn gb_lists_reduced_basis() {
    let path = write_file("gb.ideal", "ring 32003 2\nideal x0 - x1, x0 + x1\n");
    let out = bin().arg("gb").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2 elements"));
    assert!(text.contains("x0") && text.contains("x1"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let path = write_file("bad.ideal", "ring 4 2\nideal x0\n");
    let out = bin().arg("degree").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("not prime"), "{err}");

    let path = write_file("inhom.ideal", "ring 5 2\nideal x0 + x1^2\n");
    let out = bin().arg("degree").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not homogeneous"));

    // Unknown flags exit 2 with usage text.
    let out = bin().arg("degree").arg("--no-such-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn link_reproduces_worked_example_shape() {
    let out = bin()
        .args([
            "link",
            "--ci",
            "2,2,6",
            "--collinear-t",
            "6",
            "--seed",
            "1",
            "--prime",
            "32003",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("degree(I_Y) = 18 (predicted 18)"));
    assert!(text.contains("1 4 6 3"), "nonminimal cone totals");
    assert!(text.contains("1 4 5 2"), "minimal totals");
    assert!(text.contains("matches"), "profile match line");
    assert!(text.contains("9 <= 18 <= 72 : hold"));
}

#[test]
fn link_rejects_out_of_range_t() {
    let out = bin()
        .args(["link", "--ci", "2,2,6", "--collinear-t", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_collinear_sweep_exits_clean() {
    let out = bin()
        .args(["verify", "collinear", "--n", "3..4", "--dmax", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("violations: none"));
}

#[test]
fn verify_json_report_is_versioned_and_exact() {
    let out = bin()
        .args(["verify", "lemmas", "--n", "3..4", "--dmax", "6", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["result"]["violations"].as_array().unwrap().len(), 0);
    assert!(v["result"]["tuples_checked"].as_u64().unwrap() > 0);
}

#[test]
fn crosscheck_small_grid_is_clean() {
    let out = bin()
        .args([
            "crosscheck",
            "collinear",
            "--n",
            "3..3",
            "--dmax",
            "3",
            "--density",
            "3",
            "--seed",
            "7",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["result"]["oracle_instances"].as_u64().unwrap() > 0);
    assert_eq!(v["result"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn betti_json_round_trips_the_table() {
    let path = write_file("iy3.ideal", LINKED_IDEAL);
    let text_out = bin().arg("betti").arg(&path).output().unwrap();
    let json_out = bin().args(["betti", "--json"]).arg(&path).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();

    // Rebuild the whole grid from the JSON payload and compare bit-exactly.
    let entries: Vec<(usize, i64, u64)> = v["result"]["betti"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let e = e.as_array().unwrap();
            (
                e[0].as_u64().unwrap() as usize,
                e[1].as_i64().unwrap(),
                e[2].as_u64().unwrap(),
            )
        })
        .collect();
    let len = entries.iter().map(|(i, _, _)| *i).max().unwrap();
    let totals: Vec<String> = (0..=len)
        .map(|i| {
            entries
                .iter()
                .filter(|(ii, _, _)| *ii == i)
                .map(|(_, _, c)| c)
                .sum::<u64>()
                .to_string()
        })
        .collect();
    let r_max = entries.iter().map(|(i, j, _)| j - *i as i64).max().unwrap();
    let mut rebuilt = totals.join(" ");
    rebuilt.push('\n');
    for r in 0..=r_max {
        let cells: Vec<String> = (0..=len)
            .map(|i| {
                match entries.iter().find(|(ii, j, _)| *ii == i && *j == i as i64 + r) {
                    Some((_, _, c)) => c.to_string(),
                    None => "--".to_string(),
                }
            })
            .collect();
        rebuilt.push_str(&cells.join(" "));
        rebuilt.push('\n');
    }
    assert_eq!(stdout(&text_out), rebuilt);
}
