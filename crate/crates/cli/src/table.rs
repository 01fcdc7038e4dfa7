//! Row building and rendering for the `table` subcommand.
//!
//! All three formats emit the same records; CSV uses the fixed header
//! `n,k,l,statistic,count` with empty cells for absent parameters.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use ordtree::counts;

use crate::{Failure, TableFormula};

pub struct Row {
    pub n: u32,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub statistic: &'static str,
    pub count: BigUint,
}

pub fn build_rows(formula: TableFormula, n: u32) -> Result<Vec<Row>, Failure> {
    if n < 1 {
        return Err(Failure::usage("table requires n >= 1"));
    }
    let mut rows = Vec::new();
    let mut push = |k: Option<u32>, l: Option<u32>, statistic: &'static str, count: BigUint| {
        rows.push(Row { n, k, l, statistic, count });
    };
    match formula {
        TableFormula::Class => {
            for k in 1..=n {
                for l in 1..=n {
                    push(Some(k), Some(l), "class", counts::count_class(n, k, l));
                }
            }
        }
        TableFormula::Cumulative => {
            for k in 0..=n {
                for l in 0..=n {
                    push(Some(k), Some(l), "cumulative", counts::count_cumulative(n, k, l));
                }
            }
        }
        TableFormula::OutdegLevel => {
            for k in 0..=n {
                for l in 0..=n {
                    push(Some(k), Some(l), "outdeg_level", counts::count_outdeg_level(n, k, l));
                }
            }
        }
        TableFormula::ByDegree => {
            for k in 1..=n {
                push(Some(k), None, "by_degree", counts::count_by_degree(n, k));
            }
        }
        TableFormula::ByLevel => {
            for l in 1..=n {
                push(None, Some(l), "by_level", counts::count_by_level(n, l));
            }
        }
        TableFormula::Tally => {
            let table = ordtree::tally(n);
            for (stat, k, l, count) in table.entries() {
                push(k, l, stat.name(), count.clone());
            }
        }
    }
    Ok(rows)
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from("n,k,l,statistic,count\n");
    for row in rows {
        let _ = write!(out, "{},", row.n);
        if let Some(k) = row.k {
            let _ = write!(out, "{k}");
        }
        out.push(',');
        if let Some(l) = row.l {
            let _ = write!(out, "{l}");
        }
        let _ = writeln!(out, ",{},{}", row.statistic, row.count);
    }
    out
}

#[derive(Serialize)]
struct RowJson<'a> {
    n: u32,
    k: Option<u32>,
    l: Option<u32>,
    statistic: &'a str,
    /// Decimal string: counts may exceed what a JSON number can hold.
    count: String,
}

pub fn render_json(rows: &[Row]) -> String {
    let dto: Vec<RowJson> = rows
        .iter()
        .map(|row| RowJson {
            n: row.n,
            k: row.k,
            l: row.l,
            statistic: row.statistic,
            count: row.count.to_string(),
        })
        .collect();
    let mut body = serde_json::to_string_pretty(&dto).expect("rows serialize");
    body.push('\n');
    body
}

pub fn render_text(formula: TableFormula, n: u32, rows: &[Row]) -> String {
    match formula {
        TableFormula::Class => render_matrix("class counts", n, 1, rows),
        TableFormula::Cumulative => render_matrix("cumulative counts", n, 0, rows),
        TableFormula::OutdegLevel => render_matrix("outdegree-at-level counts", n, 0, rows),
        TableFormula::ByDegree => render_pairs("by-degree counts", n, "k", rows),
        TableFormula::ByLevel => render_pairs("by-level counts", n, "l", rows),
        TableFormula::Tally => render_tally(n, rows),
    }
}

/// Rows k, columns l, both running from `low` to `n`; `rows` is in
/// row-major order.
fn render_matrix(title: &str, n: u32, low: u32, rows: &[Row]) -> String {
    let side = (n - low + 1) as usize;
    debug_assert_eq!(rows.len(), side * side);
    let cell = |i: usize, j: usize| rows[i * side + j].count.to_string();

    let mut width = "k\\l".len();
    for value in low..=n {
        width = width.max(value.to_string().len());
    }
    for i in 0..side {
        for j in 0..side {
            width = width.max(cell(i, j).len());
        }
    }

    let mut out = format!("{title} for n={n} (rows k, columns l)\n");
    let _ = write!(out, "{:>width$}", "k\\l");
    for l in low..=n {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (i, k) in (low..=n).enumerate() {
        let _ = write!(out, "{k:>width$}");
        for j in 0..side {
            let _ = write!(out, " {:>width$}", cell(i, j));
        }
        out.push('\n');
    }
    out
}

fn render_pairs(title: &str, n: u32, parameter: &str, rows: &[Row]) -> String {
    let mut width = parameter.len();
    let mut count_width = "count".len();
    for row in rows {
        width = width.max(row.k.or(row.l).unwrap_or(0).to_string().len());
        count_width = count_width.max(row.count.to_string().len());
    }
    let mut out = format!("{title} for n={n}\n");
    let _ = writeln!(out, "{parameter:>width$} {:>count_width$}", "count");
    for row in rows {
        let value = row.k.or(row.l).expect("one parameter is present");
        let _ = writeln!(out, "{value:>width$} {:>count_width$}", row.count.to_string());
    }
    out
}

fn render_tally(n: u32, rows: &[Row]) -> String {
    let mut stat_width = "statistic".len();
    let mut count_width = "count".len();
    for row in rows {
        stat_width = stat_width.max(row.statistic.len());
        count_width = count_width.max(row.count.to_string().len());
    }
    let opt = |v: Option<u32>| v.map_or(String::from("-"), |v| v.to_string());
    let mut out = format!("brute-force tally for n={n}\n");
    let _ = writeln!(out, "{:<stat_width$} {:>3} {:>3} {:>count_width$}", "statistic", "k", "l", "count");
    for row in rows {
        let _ = writeln!(
            out,
            "{:<stat_width$} {:>3} {:>3} {:>count_width$}",
            row.statistic,
            opt(row.k),
            opt(row.l),
            row.count.to_string()
        );
    }
    out
}
