//! Rendering of representation tables and scan records.

use std::io::Write;

use repfn_core::{IntSet, RepTable};
use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::{Error, Result};
use crate::record::{ProfileKindTag, ScanRecord, Status};

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

#[derive(Serialize)]
struct RepRow {
    n: usize,
    r: u32,
}

#[derive(Serialize)]
struct RepReport<'a> {
    set: String,
    upto: usize,
    rows: &'a [RepRow],
}

/// Rows `n, R_S(n)` for `n ∈ [0, upto]`.
pub fn write_rep_table(out: &mut dyn Write, set: &IntSet, table: &RepTable, upto: usize, format: OutputFormat) -> Result<()> {
    let rows: Vec<RepRow> = (0..=upto).map(|n| RepRow { n, r: table.get(n) }).collect();
    match format {
        OutputFormat::Json => {
            let report = RepReport { set: set.to_literal(), upto, rows: &rows };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(stdout_err)?;
        }
        OutputFormat::Jsonl => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?).map_err(stdout_err)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush().map_err(stdout_err)?;
        }
        OutputFormat::Table => {
            writeln!(out, "n\tR(n)").map_err(stdout_err)?;
            for row in &rows {
                writeln!(out, "{}\t{}", row.n, row.r).map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn kind_name(kind: ProfileKindTag) -> &'static str {
    match kind {
        ProfileKindTag::PuncturedPoint => "punctured",
        ProfileKindTag::FullInterval => "full",
        ProfileKindTag::SharedPoint => "shared",
    }
}

pub fn write_records(out: &mut dyn Write, records: &[ScanRecord], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(records)?).map_err(stdout_err)?;
        }
        OutputFormat::Jsonl => {
            for record in records {
                writeln!(out, "{}", serde_json::to_string(record)?).map_err(stdout_err)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for record in records {
                w.serialize(record)?;
            }
            w.flush().map_err(stdout_err)?;
        }
        OutputFormat::Table => {
            writeln!(out, "{:>6} {:>6} {:<9} {:<10} {:<7} {:<7} {:>8}  sets", "m", "r", "kind", "status", "matches", "anomaly", "micros")
                .map_err(stdout_err)?;
            for rec in records {
                let r = rec.r.map_or_else(|| "-".to_owned(), |r| r.to_string());
                let status = match rec.status {
                    Status::Solution => "solution",
                    Status::Infeasible => "infeasible",
                };
                let sets = match (&rec.c, &rec.d) {
                    (Some(c), Some(d)) => format!("C={{{c}}} D={{{d}}}"),
                    _ => rec.failed_at.map_or_else(String::new, |n| format!("fails at {n}")),
                };
                writeln!(
                    out,
                    "{:>6} {:>6} {:<9} {:<10} {:<7} {:<7} {:>8}  {}",
                    rec.m,
                    r,
                    kind_name(rec.profile_kind),
                    status,
                    rec.matches_theorem,
                    rec.anomaly,
                    rec.solve_micros,
                    sets
                )
                .map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}
