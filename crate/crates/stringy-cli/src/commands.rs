//! Command implementations. Each returns the process exit code together
//! with the full output text, so they are directly testable; `main` only
//! parses arguments and prints.
//!
//! Exit codes are a stable contract: `0` success, `1` check failures,
//! `2` input errors (unreadable file, syntax or structural errors).

use crate::dataset;
use crate::render::{self, Format};
use std::string::String;

use stringy_core::builders::{
    build_point_orbifold, build_symmetric_product, k_theory_p1_input, p1_input, point_input,
};
use stringy_core::group::Group;
use stringy_core::product::{cocycle_table, product_table, verify_axioms, verify_maineq_integral, verify_mainprop, Route};
use stringy_core::quotient::Presentation;
use stringy_core::symbolic::{verify_root_realizations, verify_trivial_cocycle};

pub struct Options {
    pub route: Route,
    pub truncation: Option<usize>,
    pub section_set: Option<String>,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            route: Route::PullPush,
            truncation: None,
            section_set: None,
            format: Format::Text,
        }
    }
}

fn load(text: &str, opts: &Options) -> Result<Presentation, String> {
    let mut p = dataset::parse(text).map_err(|e| format!("{e}"))?;
    if let Some(t) = opts.truncation {
        p.truncation = t;
    }
    Ok(p)
}

pub fn cmd_validate(text: &str, opts: &Options) -> (i32, String) {
    let mut out = String::new();
    let p = match load(text, opts) {
        Ok(p) => p,
        Err(e) => return (2, format!("error: {e}\n")),
    };
    render::header(&mut out, opts.format, &p.id, "validate");
    let report = p.validate();
    render::report_block(&mut out, opts.format, "validate", &report);
    render::result_line(&mut out, opts.format, report.ok());
    (if report.ok() { 0 } else { 1 }, out)
}

fn validated(text: &str, opts: &Options) -> Result<Presentation, (i32, String)> {
    let p = load(text, opts).map_err(|e| (2, format!("error: {e}\n")))?;
    let report = p.validate();
    if !report.ok() {
        let mut out = String::new();
        render::header(&mut out, opts.format, &p.id, "validate");
        render::report_block(&mut out, opts.format, "validate", &report);
        render::result_line(&mut out, opts.format, false);
        return Err((1, out));
    }
    Ok(p)
}

pub fn cmd_table(text: &str, opts: &Options) -> (i32, String) {
    let mut p = match validated(text, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    if opts.route == Route::PushPull && opts.section_set.is_none() {
        if let Err(e) = p.ensure_sections() {
            return (1, format!("error: {e}\n"));
        }
    }
    let mut out = String::new();
    render::header(&mut out, opts.format, &p.id, "table");
    match product_table(&p, opts.route, opts.section_set.as_deref()) {
        Ok(table) => {
            render::product_table_block(&mut out, opts.format, &p, &table);
            (0, out)
        }
        Err(e) => (1, format!("{out}error: {e}\n")),
    }
}

pub fn cmd_verify(text: &str, opts: &Options) -> (i32, String) {
    let mut p = match validated(text, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let _ = p.ensure_sections();
    let mut out = String::new();
    render::header(&mut out, opts.format, &p.id, "verify");
    let suites = [
        ("axioms", verify_axioms(&p)),
        ("mainprop", verify_mainprop(&p)),
        ("trivial-cocycle", verify_trivial_cocycle(&p)),
        ("maineq-integral", verify_maineq_integral(&p)),
        ("obstructions", p.verify_obstructions()),
    ];
    let mut ok = true;
    for (name, report) in &suites {
        render::report_block(&mut out, opts.format, name, report);
        ok &= report.ok();
    }
    render::result_line(&mut out, opts.format, ok);
    (if ok { 0 } else { 1 }, out)
}

pub fn cmd_cocycles(text: &str, opts: &Options) -> (i32, String) {
    let mut p = match validated(text, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    if opts.section_set.is_none() {
        if let Err(e) = p.ensure_sections() {
            return (1, format!("error: {e}\n"));
        }
    }
    let mut out = String::new();
    render::header(&mut out, opts.format, &p.id, "cocycles");
    match cocycle_table(&p, opts.section_set.as_deref()) {
        Ok(table) => {
            render::cocycle_table_block(&mut out, opts.format, &p, &table);
            (0, out)
        }
        Err(e) => (1, format!("{out}error: {e}\n")),
    }
}

pub fn cmd_symbolic_check(text: &str, opts: &Options) -> (i32, String) {
    let mut p = match validated(text, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let _ = p.ensure_sections();
    let mut out = String::new();
    render::header(&mut out, opts.format, &p.id, "symbolic-check");
    let suites = [
        ("trivial-cocycle", verify_trivial_cocycle(&p)),
        ("root-realizations", verify_root_realizations(&p)),
    ];
    let mut ok = true;
    for (name, report) in &suites {
        render::report_block(&mut out, opts.format, name, report);
        ok &= report.ok();
    }
    render::result_line(&mut out, opts.format, ok);
    (if ok { 0 } else { 1 }, out)
}

/// Build a preset dataset: `point <z2|z3|z4|s3|s4>` or
/// `sym <point|p1|p1k> <n>`. Returns the serialized document.
pub fn cmd_build(kind: &str, args: &[&str]) -> Result<String, String> {
    let p = match kind {
        "point" => {
            let which = args.first().ok_or("build point needs a group: z2|z3|z4|s3|s4")?;
            let (group, name) = match *which {
                "z2" => (Group::cyclic(2), "point-Z2"),
                "z3" => (Group::cyclic(3), "point-Z3"),
                "z4" => (Group::cyclic(4), "point-Z4"),
                "s3" => (Group::symmetric(3), "point-S3"),
                "s4" => (Group::symmetric(4), "point-S4"),
                other => return Err(format!("unknown point group {other}")),
            };
            build_point_orbifold(name, group)
        }
        "sym" => {
            let base = args.first().ok_or("build sym needs a base: point|p1|p1k")?;
            let n: usize = args
                .get(1)
                .ok_or("build sym needs n")?
                .parse()
                .map_err(|_| "n must be an integer".to_string())?;
            let input = match *base {
                "point" => point_input(),
                "p1" => p1_input(),
                "p1k" => k_theory_p1_input(),
                other => return Err(format!("unknown base {other}")),
            };
            build_symmetric_product(&input, n).map_err(|e| format!("{e}"))?
        }
        other => return Err(format!("unknown build kind {other}")),
    };
    Ok(dataset::serialize(&p))
}
