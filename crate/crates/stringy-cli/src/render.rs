//! Deterministic report and table rendering.
//!
//! Two formats: `text` for humans and `records` (tab-separated, one record
//! per line) for machines. Both render rationals exactly and iterate in a
//! fixed order, so two runs over the same input produce identical bytes.

use std::fmt::Write;

use stringy_core::product::{CocycleTable, ProductTable, Route};
use stringy_core::quotient::Presentation;
use stringy_core::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "records" => Some(Format::Records),
            _ => None,
        }
    }
}

pub fn header(out: &mut String, format: Format, dataset: &str, command: &str) {
    match format {
        Format::Text => {
            let _ = writeln!(out, "dataset {dataset}");
            let _ = writeln!(out, "command {command}");
        }
        Format::Records => {
            let _ = writeln!(out, "dataset\t{dataset}\t{command}");
        }
    }
}

/// One summary line for a named check suite plus one line per finding.
pub fn report_block(out: &mut String, format: Format, name: &str, report: &Report) {
    let failures = report.failures().count();
    let skips = report
        .findings
        .iter()
        .filter(|f| f.status == stringy_core::report::Status::Skip)
        .count();
    let verdict = if report.ok() { "pass" } else { "FAIL" };
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "check {name}: {verdict} ({} cases, {failures} failures, {skips} skips)",
                report.cases
            );
            for f in &report.findings {
                let _ = writeln!(out, "  {} {} {}", f.status, f.check, f.witness);
            }
        }
        Format::Records => {
            let _ = writeln!(
                out,
                "check\t{name}\t{verdict}\t{}\t{failures}\t{skips}",
                report.cases
            );
            for f in &report.findings {
                let _ = writeln!(out, "finding\t{}\t{}\t{}", f.status, f.check, f.witness);
            }
        }
    }
}

pub fn product_table_block(
    out: &mut String,
    format: Format,
    p: &Presentation,
    table: &ProductTable,
) {
    let route = match table.route {
        Route::PullPush => "pullpush",
        Route::PushPull => "pushpull",
    };
    if format == Format::Text {
        let _ = writeln!(out, "route {route}");
    }
    for ((m1, m2, i, j), value) in &table.entries {
        let n1 = p.group.name(*m1);
        let n2 = p.group.name(*m2);
        let b1 = p.sector(*m1).algebra.basis_name(*i);
        let b2 = p.sector(*m2).algebra.basis_name(*j);
        match format {
            Format::Text => {
                let _ = writeln!(out, "({n1},{n2}) {b1} * {b2} = {}", value.render());
            }
            Format::Records => {
                let _ = writeln!(
                    out,
                    "entry\t{route}\t{n1}\t{n2}\t{b1}\t{b2}\t{}",
                    value.render()
                );
            }
        }
    }
}

pub fn cocycle_table_block(
    out: &mut String,
    format: Format,
    p: &Presentation,
    table: &CocycleTable,
) {
    for ((m1, m2), entry) in &table.entries {
        let n1 = p.group.name(*m1);
        let n2 = p.group.name(*m2);
        match format {
            Format::Text => {
                let _ = writeln!(
                    out,
                    "gamma ({n1},{n2}) rank {}: {} | value {}",
                    entry.rank,
                    entry.series.render(),
                    entry.value.render()
                );
            }
            Format::Records => {
                let _ = writeln!(
                    out,
                    "gamma\t{n1}\t{n2}\t{}\t{}\t{}",
                    entry.rank,
                    entry.series.render(),
                    entry.value.render()
                );
            }
        }
    }
}

pub fn result_line(out: &mut String, format: Format, ok: bool) {
    let verdict = if ok { "pass" } else { "fail" };
    match format {
        Format::Text => {
            let _ = writeln!(out, "result {verdict}");
        }
        Format::Records => {
            let _ = writeln!(out, "result\t{verdict}");
        }
    }
}
