//! Text rendering of Betti diagrams and exact-integer JSON encoding.

use liaison::bounds::{Rational, SweepReport, Verdict};
use liaison::BettiDiagram;
use serde_json::{json, Value};

/// Betti grid in the table layout: header row of per-column total ranks,
/// body rows indexed by stratum `r = j - i`, cell `(r, i)` holding the rank
/// of shifts `-(i + r)` in column i, `--` for zero. Single-space separated,
/// rows in ascending r.
pub fn render_betti(d: &BettiDiagram) -> String {
    let len = d.length();
    let mut out = String::new();
    let totals: Vec<String> = (0..=len)
        .map(|i| d.column_total(i).to_string())
        .collect();
    out.push_str(&totals.join(" "));
    out.push('\n');
    if d.is_empty() {
        return out;
    }
    let r_min = d.entries().map(|(i, j, _)| j - i as i64).min().unwrap().min(0);
    let r_max = d.entries().map(|(i, j, _)| j - i as i64).max().unwrap();
    let mut r = r_min;
    while r <= r_max {
        let cells: Vec<String> = (0..=len)
            .map(|i| {
                let c = d.entry(i, i as i64 + r);
                if c == 0 {
                    "--".to_string()
                } else {
                    c.to_string()
                }
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
        r += 1;
    }
    out
}

/// Integers exact in JSON: plain numbers inside the f64-safe window,
/// decimal strings beyond it.
pub fn json_int(v: i128) -> Value {
    const SAFE: i128 = (1 << 53) - 1;
    if (-SAFE..=SAFE).contains(&v) {
        json!(v as i64)
    } else {
        json!(v.to_string())
    }
}

pub fn json_rational(r: &Rational) -> Value {
    json!({ "num": json_int(r.num()), "den": json_int(r.den()) })
}

pub fn json_betti(d: &BettiDiagram) -> Value {
    let entries: Vec<Value> = d
        .entries()
        .map(|(i, j, c)| json!([i, j, c]))
        .collect();
    json!({
        "entries": entries,
        "column_totals": d.column_totals(),
    })
}

pub fn json_verdict(v: &Verdict) -> Value {
    json!({
        "p": v.p,
        "degree": json_int(v.degree as i128),
        "lower_holds": v.lower_holds,
        "upper_holds": v.upper_holds,
        "lower_value": json_rational(&v.lower_value),
        "upper_value": json_rational(&v.upper_value),
        "lower_slack": json_rational(&v.lower_slack),
        "upper_slack": json_rational(&v.upper_slack),
    })
}

pub fn json_sweep(r: &SweepReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "degrees": v.degrees,
                "t": v.t,
                "label": v.label,
                "detail": v.detail,
            })
        })
        .collect();
    let witness = |w: &Option<liaison::bounds::SlackWitness>| match w {
        None => Value::Null,
        Some(w) => json!({
            "slack": json_rational(&w.slack),
            "degrees": w.degrees,
            "t": w.t,
            "scenario": w.scenario,
        }),
    };
    json!({
        "family": r.family,
        "grid": r.grid,
        "tuples_checked": json_int(r.tuples_checked as i128),
        "scenarios_checked": json_int(r.scenarios_checked as i128),
        "branches_checked": json_int(r.branches_checked as i128),
        "oracle_instances": json_int(r.oracle_instances as i128),
        "degenerate_retries": json_int(r.degenerate_retries as i128),
        "violations": violations,
        "min_lower_slack": witness(&r.min_lower_slack),
        "min_upper_slack": witness(&r.min_upper_slack),
        "equality_witnesses": r.equality_witnesses,
        "wall_ms": json_int(r.wall_ms as i128),
    })
}

/// Wrap a payload in the versioned report envelope.
pub fn report(command: &str, payload: Value, exit: i32) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "exit_status": exit,
        "result": payload,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(entries: &[(usize, i64, u64)]) -> BettiDiagram {
        let mut d = BettiDiagram::new();
        for (i, j, c) in entries {
            d.add(*i, *j, *c);
        }
        d
    }

    #[test]
    fn koszul_2_2_table() {
        let d = diagram(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        assert_eq!(render_betti(&d), "1 2 1\n1 -- --\n-- 2 --\n-- -- 1\n");
    }

    #[test]
    fn trivial_table() {
        let d = diagram(&[(0, 0, 1)]);
        assert_eq!(render_betti(&d), "1\n1\n");
    }

    #[test]
    fn example_2_2_cone_table() {
        // Column totals 1 4 6 3 and strata rows 0..6 with the two gaps.
        let d = diagram(&[
            (0, 0, 1),
            (1, 2, 3),
            (1, 6, 1),
            (2, 3, 2),
            (2, 4, 1),
            (2, 8, 3),
            (3, 4, 1),
            (3, 9, 2),
        ]);
        let expected = "\
1 4 6 3
1 -- -- --
-- 3 2 1
-- -- 1 --
-- -- -- --
-- -- -- --
-- 1 -- --
-- -- 3 2
";
        assert_eq!(render_betti(&d), expected);
    }

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(json_int(5), json!(5));
        let big = (1i128 << 60) + 7;
        assert_eq!(json_int(big), json!(big.to_string()));
    }
}
