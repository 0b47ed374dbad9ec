use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use zslab::invariants::{DenseSet, SolveResult, WidenessReport};
use zslab::verify::CheckReport;
use zslab::{Config, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// The run settings echoed into every payload.
#[derive(Debug, Clone, Serialize)]
pub struct Echo {
    pub group_cap: u64,
    pub oracle_len_cap: u64,
    pub threads: usize,
    pub seed: u64,
    pub output: Format,
}

impl Echo {
    pub fn new(cfg: &Config, output: Format) -> Self {
        Echo {
            group_cap: cfg.group_cap,
            oracle_len_cap: cfg.oracle_len_cap,
            threads: cfg.threads,
            seed: cfg.seed,
            output,
        }
    }

    fn columns(&self) -> Vec<(&'static str, String)> {
        vec![
            ("group_cap", self.group_cap.to_string()),
            ("oracle_len_cap", self.oracle_len_cap.to_string()),
            ("threads", self.threads.to_string()),
            ("seed", self.seed.to_string()),
        ]
    }
}

/// One result: its JSON body and its flat row for CSV and tables.
pub struct Item {
    pub json: Value,
    pub row: Vec<(&'static str, String)>,
}

fn opt(r: &Option<Rational>) -> String {
    r.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn solve_item(r: &SolveResult) -> Item {
    Item {
        json: serde_json::to_value(r).expect("plain data"),
        row: vec![
            ("group", r.group.to_string()),
            ("objective", r.objective.name().to_string()),
            ("weight", r.weight.name().to_string()),
            ("value", r.value.to_string()),
            ("length", r.witness.length().to_string()),
            ("witness", r.witness.to_literal()),
            ("nodes_explored", r.nodes_explored.to_string()),
            ("elapsed_ms", r.elapsed_ms.to_string()),
        ],
    }
}

/// A dense set is one JSON payload but one row per witness.
pub fn dense_items(d: &DenseSet) -> (Value, Vec<Vec<(&'static str, String)>>) {
    let rows = d
        .witnesses
        .iter()
        .map(|w| {
            vec![
                ("group", d.group.to_string()),
                (
                    "kind",
                    serde_json::to_value(d.kind)
                        .expect("plain data")
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                ),
                ("value", d.value.to_string()),
                ("length", d.length.to_string()),
                ("witness", w.to_literal()),
            ]
        })
        .collect();
    (serde_json::to_value(d).expect("plain data"), rows)
}

pub fn formula_item(group: &zslab::GroupSpec, which: &str, value: &Rational) -> Item {
    Item {
        json: json!({ "group": group, "formula": which, "value": value }),
        row: vec![
            ("group", group.to_string()),
            ("formula", which.to_string()),
            ("value", value.to_string()),
        ],
    }
}

pub fn wide_item(r: &WidenessReport) -> Item {
    Item {
        json: serde_json::to_value(r).expect("plain data"),
        row: vec![
            ("p", r.p.to_string()),
            ("n", r.n.to_string()),
            (
                "variant",
                serde_json::to_value(r.variant)
                    .expect("plain data")
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
            ),
            ("lhs", r.lhs.to_string()),
            ("rhs", r.rhs.to_string()),
            ("holds", r.holds.to_string()),
        ],
    }
}

pub fn wide_integer_item(n: u64, two: bool, holds: bool) -> Item {
    let variant = if two { "two_wide" } else { "wide" };
    Item {
        json: json!({ "n": n, "variant": variant, "holds": holds }),
        row: vec![
            ("n", n.to_string()),
            ("variant", variant.to_string()),
            ("holds", holds.to_string()),
        ],
    }
}

pub fn report_item(r: &CheckReport) -> Item {
    Item {
        json: serde_json::to_value(r).expect("plain data"),
        row: vec![
            ("check_id", r.check_id.clone()),
            ("params", r.params.to_string()),
            (
                "status",
                serde_json::to_value(r.status)
                    .expect("plain data")
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
            ),
            ("value_lhs", opt(&r.value_lhs)),
            ("value_rhs", opt(&r.value_rhs)),
            ("nodes_explored", r.nodes_explored.to_string()),
            ("elapsed_ms", r.elapsed_ms.to_string()),
        ],
    }
}

/// Writes `items` to stdout. JSON is one `{config, <key>}` object per line.
pub fn emit(echo: &Echo, key: &str, items: &[Item]) -> io::Result<()> {
    match echo.output {
        Format::Json => {
            let jsons: Vec<Value> = items.iter().map(|i| i.json.clone()).collect();
            emit_json(echo, key, &jsons)
        }
        _ => {
            let rows: Vec<_> = items.iter().map(|i| i.row.clone()).collect();
            emit_rows(echo, &rows)
        }
    }
}

pub fn emit_json(echo: &Echo, key: &str, bodies: &[Value]) -> io::Result<()> {
    let mut out = io::stdout().lock();
    for body in bodies {
        let mut payload = serde_json::Map::new();
        payload.insert("config".into(), serde_json::to_value(echo).expect("plain data"));
        payload.insert(key.into(), body.clone());
        writeln!(out, "{}", Value::Object(payload))?;
    }
    Ok(())
}

pub fn emit_rows(echo: &Echo, rows: &[Vec<(&'static str, String)>]) -> io::Result<()> {
    let with_config: Vec<Vec<(&str, String)>> = rows
        .iter()
        .map(|r| r.iter().cloned().chain(echo.columns()).collect())
        .collect();
    let Some(first) = with_config.first() else {
        return Ok(());
    };
    let header: Vec<&str> = first.iter().map(|(k, _)| *k).collect();
    let out = io::stdout().lock();
    match echo.output {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for r in &with_config {
                w.write_record(r.iter().map(|(_, v)| v))?;
            }
            w.flush()
        }
        _ => write_table(out, &header, &with_config),
    }
}

fn write_table(mut out: impl Write, header: &[&str], rows: &[Vec<(&str, String)>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, (_, v)) in widths.iter_mut().zip(r) {
            *w = (*w).max(v.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(|(_, v)| v.as_str()).collect()))?;
    }
    Ok(())
}
