//! `stringy` — exact stringy products on global quotients from fixed-point
//! data.
//!
//! ```text
//! stringy validate  FILE [--format text|records] [--truncation N]
//! stringy table     FILE [--route pullpush|pushpull] [--section-set S] …
//! stringy verify    FILE …
//! stringy cocycles  FILE [--section-set S] …
//! stringy symbolic-check FILE …
//! stringy build point <z2|z3|z4|s3|s4> [-o FILE]
//! stringy build sym <point|p1|p1k> <n> [-o FILE]
//! ```
//!
//! Exit codes: 0 success, 1 check failure, 2 input error.

use std::process::ExitCode;

use stringy_cli::commands::{self, Options};
use stringy_cli::render::Format;
use stringy_core::product::Route;

const USAGE: &str = "usage: stringy <validate|table|verify|cocycles|symbolic-check|build> …
  stringy validate FILE
  stringy table FILE [--route pullpush|pushpull] [--section-set NAME]
  stringy verify FILE
  stringy cocycles FILE [--section-set NAME]
  stringy symbolic-check FILE
  stringy build point <z2|z3|z4|s3|s4> [-o FILE]
  stringy build sym <point|p1|p1k> <n> [-o FILE]
common flags: --truncation N, --format text|records";

fn fail_usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("{USAGE}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first().map(String::as_str) else {
        return fail_usage("missing command");
    };

    if command == "build" {
        return run_build(&args[1..]);
    }

    let mut file: Option<&str> = None;
    let mut opts = Options::default();
    let mut i = 1;
    while i < args.len() {
        match args[i].as_str() {
            "--route" => {
                i += 1;
                opts.route = match args.get(i).map(String::as_str) {
                    Some("pullpush") => Route::PullPush,
                    Some("pushpull") => Route::PushPull,
                    _ => return fail_usage("--route needs pullpush or pushpull"),
                };
            }
            "--truncation" => {
                i += 1;
                match args.get(i).and_then(|s| s.parse().ok()) {
                    Some(t) => opts.truncation = Some(t),
                    None => return fail_usage("--truncation needs an integer"),
                }
            }
            "--section-set" => {
                i += 1;
                match args.get(i) {
                    Some(s) => opts.section_set = Some(s.clone()),
                    None => return fail_usage("--section-set needs a name"),
                }
            }
            "--format" => {
                i += 1;
                match args.get(i).and_then(|s| Format::parse(s)) {
                    Some(f) => opts.format = f,
                    None => return fail_usage("--format needs text or records"),
                }
            }
            other if file.is_none() && !other.starts_with('-') => {
                file = Some(&args[i]);
            }
            other => return fail_usage(&format!("unknown argument {other}")),
        }
        i += 1;
    }

    let Some(path) = file else {
        return fail_usage("missing dataset file");
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };

    let (code, output) = match command {
        "validate" => commands::cmd_validate(&text, &opts),
        "table" => commands::cmd_table(&text, &opts),
        "verify" => commands::cmd_verify(&text, &opts),
        "cocycles" => commands::cmd_cocycles(&text, &opts),
        "symbolic-check" => commands::cmd_symbolic_check(&text, &opts),
        other => return fail_usage(&format!("unknown command {other}")),
    };
    print!("{output}");
    ExitCode::from(code as u8)
}

fn run_build(args: &[String]) -> ExitCode {
    let Some(kind) = args.first().map(String::as_str) else {
        return fail_usage("build needs a kind: point or sym");
    };
    let mut rest: Vec<&str> = Vec::new();
    let mut out_path: Option<&str> = None;
    let mut i = 1;
    while i < args.len() {
        match args[i].as_str() {
            "-o" | "--output" => {
                i += 1;
                match args.get(i) {
                    Some(p) => out_path = Some(p),
                    None => return fail_usage("-o needs a path"),
                }
            }
            other => rest.push(other),
        }
        i += 1;
    }
    match commands::cmd_build(kind, &rest) {
        Ok(document) => match out_path {
            Some(path) => match std::fs::write(path, document) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write {path}: {e}");
                    ExitCode::from(2)
                }
            },
            None => {
                print!("{document}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => fail_usage(&e),
    }
}
