use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use strata_core::engine::{gsd as compute_gsd, GsdOptions, Method, Order};
use strata_core::fusion::{validate_category, DataKind};
use strata_core::{
    check_wall_anomaly_free, parse_surface, total_genus, validate_lagrangian, validate_surface, validate_wall, Catalog,
    Error, ValidationReport,
};

use crate::{GsdArgs, MethodArg, OrderArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Code {
    Validation = 1,
    Parse = 2,
    Consistency = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

impl Failure {
    fn new(code: Code, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

fn classify(err: Error) -> Failure {
    let code = match &err {
        Error::Invalid(_) | Error::CategoryMismatch(_) | Error::Move(_) => Code::Validation,
        Error::PathDisagreement { .. } | Error::NumericConsistency(_) => Code::Consistency,
        Error::Structure(_) | Error::Lookup { .. } | Error::Parse(_) | Error::Json(_) | Error::Io(_) => Code::Parse,
    };
    Failure::new(code, err.to_string())
}

/// Relative paths are looked up in each `STRATA_DATA_DIR` entry before the
/// working directory.
fn search_dirs() -> Vec<PathBuf> {
    std::env::var_os("STRATA_DATA_DIR")
        .map(|v: OsString| std::env::split_paths(&v).filter(|p| !p.as_os_str().is_empty()).collect())
        .unwrap_or_default()
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_relative() {
        for dir in search_dirs() {
            let candidate = dir.join(path);
            if candidate.is_file() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(resolve(path)).map_err(|e| Failure::new(Code::Parse, format!("{}: {e}", path.display())))
}

/// Loads one data file into `catalog` and validates what it added.
fn load_data(catalog: &mut Catalog, path: &Path, text: &str) -> Result<(String, ValidationReport), Failure> {
    let (kind, name) = catalog.load_str(text).map_err(|e| {
        let f = classify(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })?;
    let inserted = "object was just inserted";
    let (what, report) = match kind {
        DataKind::Category => ("category", validate_category(&catalog.category(&name).expect(inserted))),
        DataKind::Wall => {
            let w = catalog.wall(&name).expect(inserted);
            let mut report = validate_wall(&w);
            if report.is_valid() {
                report = check_wall_anomaly_free(&w);
            }
            ("wall", report)
        }
        DataKind::Algebra => {
            let a = catalog.algebra(&name).expect(inserted);
            ("algebra", validate_lagrangian(a.object().category(), a.object()))
        }
    };
    Ok((format!("{what} `{name}`"), report))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn catalog(as_json: bool) -> Result<(), Failure> {
    let cat = Catalog::builtin();
    if as_json {
        let listing = json!({
            "categories": cat.categories().map(|c| json!({
                "name": c.name(),
                "rank": c.rank(),
                "total_dim": c.total_dim(),
                "labels": c.labels(),
            })).collect::<Vec<_>>(),
            "walls": cat.walls().map(|w| json!({
                "name": w.name(),
                "from": w.from_cat().name(),
                "to": w.to_cat().name(),
            })).collect::<Vec<_>>(),
            "algebras": cat.algebras().map(|a| json!({
                "name": a.name(),
                "category": a.object().category().name(),
                "object": a.object().to_string(),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&listing).expect("listing serializes"));
        return Ok(());
    }
    println!("categories:");
    println!("  {:<14} {:>4} {:>10}  labels", "name", "rank", "total_dim");
    for c in cat.categories() {
        println!("  {:<14} {:>4} {:>10.6}  {}", c.name(), c.rank(), c.total_dim(), c.labels().join(" "));
    }
    println!("walls:");
    for w in cat.walls() {
        println!("  {:<14} {} -> {}", w.name(), w.from_cat().name(), w.to_cat().name());
    }
    println!("algebras:");
    for a in cat.algebras() {
        println!("  {:<14} {:<14} {}", a.name(), a.object().category().name(), a.object());
    }
    Ok(())
}

pub fn validate(files: &[PathBuf]) -> Result<(), Failure> {
    let mut catalog = Catalog::builtin();
    let mut worst: Option<Code> = None;
    let mut note = |code: Code| worst = Some(worst.map_or(code, |w| w.max(code)));
    let mut inputs = Vec::new();
    for path in files {
        match read(path) {
            Ok(text) => inputs.push((path, text)),
            Err(f) => {
                eprintln!("{}", f.message);
                note(f.code);
            }
        }
    }
    // data files first, in the order given
    let (data, surfaces): (Vec<_>, Vec<_>) = inputs.into_iter().partition(|(_, t)| is_json(t));
    for (path, text) in &data {
        match load_data(&mut catalog, path, text) {
            Ok((what, report)) if report.is_valid() => eprintln!("{}: {what} ok", path.display()),
            Ok((what, report)) => {
                eprintln!("{}: {what} invalid\n{report}", path.display());
                note(Code::Validation);
            }
            Err(f) => {
                eprintln!("{}", f.message);
                note(f.code);
            }
        }
    }
    for (path, text) in &surfaces {
        match parse_surface(text, &catalog) {
            Ok(spec) => {
                let report = validate_surface(&spec);
                if report.is_valid() {
                    eprintln!("{}: surface ok", path.display());
                } else {
                    eprintln!("{}: surface invalid\n{report}", path.display());
                    note(Code::Validation);
                }
            }
            Err(e) => {
                eprintln!("{}:{e}", path.display());
                note(Code::Parse);
            }
        }
    }
    match worst {
        None => Ok(()),
        Some(code) => Err(Failure::new(code, format!("{} input(s) checked, not all valid", files.len()))),
    }
}

pub fn gsd(args: &GsdArgs) -> Result<(), Failure> {
    let mut catalog = Catalog::builtin();
    for path in &args.data {
        let text = read(path)?;
        let (what, report) = load_data(&mut catalog, path, &text)?;
        if !report.is_valid() {
            return Err(Failure::new(Code::Validation, format!("{}: {what} invalid\n{report}", path.display())));
        }
    }
    let text = read(&args.surface)?;
    let spec = parse_surface(&text, &catalog)
        .map_err(|e| Failure::new(Code::Parse, format!("{}:{e}", args.surface.display())))?;
    let options = GsdOptions {
        order: match args.order {
            OrderArg::Input => Order::Input,
            OrderArg::Greedy => Order::Greedy,
        },
        method: match args.method {
            MethodArg::Exact => Method::Exact,
            MethodArg::Verlinde => Method::Verlinde,
            MethodArg::Both => Method::Both,
        },
        trace: args.trace,
    };
    let out = compute_gsd(&spec, &options).map_err(classify)?;
    if args.trace {
        eprint!("{}", out.trace);
    }
    if args.json {
        let genus = total_genus(&spec).map_err(classify)?;
        let report = json!({
            "gsd": out.value.to_string(),
            "method": format!("{:?}", args.method).to_lowercase(),
            "order": format!("{:?}", args.order).to_lowercase(),
            "regions": spec.regions.len(),
            "walls": spec.walls.len(),
            "total_genus": genus,
        });
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{}", out.value);
    }
    Ok(())
}
