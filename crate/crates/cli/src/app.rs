//! The `analyze`, `batch` and `selftest` commands.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use milnorsig_core::corpus::{table_families, triple_point_form};
use milnorsig_core::milnorsig::{analyze, signature_of_form, Check, CheckStatus, SignatureReport};
use thiserror::Error;

use crate::germfile::{ExpectedValues, GermFile, GermFileError};
use crate::render::{render_report, Format};

/// Exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Error = 1,
    OverridesRequired = 2,
}

impl Status {
    fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::OverridesRequired => 1,
            Status::Error => 2,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    GermFile(#[from] GermFileError),
    #[error("{0}")]
    Analysis(#[from] milnorsig_core::milnorsig::SignatureError),
}

impl RunError {
    pub fn status(&self) -> Status {
        match self {
            RunError::Analysis(e) if e.overrides_required() => Status::OverridesRequired,
            _ => Status::Error,
        }
    }
}

fn read(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Appends one check per value stated in `[expected]`.
pub fn check_expected(report: &mut SignatureReport, expected: &ExpectedValues) {
    let stated = [
        ("expected_signature", expected.signature, report.sigma_f),
        ("expected_C", expected.c, report.c as i64),
        ("expected_T", expected.t, report.t as i64),
    ];
    for (name, want, got) in stated {
        if let Some(want) = want {
            let status = if want == got { CheckStatus::Pass } else { CheckStatus::Fail };
            report.checks.push(Check::new(name, status, format!("computed {got}, expected {want}")));
        }
    }
}

pub fn analyze_source(src: &str) -> Result<SignatureReport, RunError> {
    let file = GermFile::parse(src)?;
    let mut report = analyze(&file.to_germ()?)?;
    check_expected(&mut report, &file.expected);
    Ok(report)
}

pub fn analyze_file(path: &Path) -> Result<SignatureReport, RunError> {
    analyze_source(&read(path)?)
}

fn report_status(r: &SignatureReport) -> Status {
    if r.all_checks_pass() {
        Status::Ok
    } else {
        Status::Error
    }
}

pub fn run_analyze(path: &Path, format: Format, out: Option<&Path>) -> Status {
    let report = match analyze_file(path) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.status();
        }
    };
    let text = render_report(&report, format);
    match out {
        Some(p) => {
            if let Err(e) = fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return Status::Error;
            }
        }
        None => print!("{text}"),
    }
    report_status(&report)
}

/// Germ files (`*.germ`) in `dir`, sorted by name.
pub fn germ_files(dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let entries = fs::read_dir(dir).map_err(|source| RunError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "germ"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_batch(dir: &Path) -> Status {
    let files = match germ_files(dir) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Status::Error;
        }
    };
    let results: Vec<Result<SignatureReport, RunError>> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(move || analyze_file(f))).collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread")).collect()
    });
    let mut status = Status::Ok;
    for (path, result) in files.iter().zip(results) {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        match result {
            Ok(r) => {
                let s = report_status(&r);
                let tag = if s == Status::Ok { "ok" } else { "check failed" };
                println!("{name}: sigma(F) = {}, C = {}, T = {} [{tag}]", r.sigma_f, r.c, r.t);
                status = status.worst(s);
            }
            Err(e) => {
                let s = e.status();
                let tag = if s == Status::OverridesRequired { "overrides required" } else { "error" };
                println!("{name}: {tag}: {e}");
                status = status.worst(s);
            }
        }
    }
    println!("{} files analyzed", files.len());
    status
}

/// One line of the self-test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

pub fn selftest(kmax: u32) -> Vec<SelftestLine> {
    let mut lines: Vec<SelftestLine> = table_families(kmax)
        .into_iter()
        .map(|family| {
            let expected = family.expected();
            let label = family.to_string();
            match analyze(&family.germ()) {
                Ok(r) => {
                    let mut mismatches = Vec::new();
                    if r.sigma_f != expected.sigma_f {
                        mismatches.push(format!("sigma(F) = {}, table {}", r.sigma_f, expected.sigma_f));
                    }
                    if expected.c.is_some_and(|c| c != r.c) {
                        mismatches.push(format!("C = {}, expected {}", r.c, expected.c.unwrap()));
                    }
                    if expected.t.is_some_and(|t| t != r.t) {
                        mismatches.push(format!("T = {}, expected {}", r.t, expected.t.unwrap()));
                    }
                    if !r.all_checks_pass() {
                        mismatches.push("internal check failed".into());
                    }
                    SelftestLine {
                        label,
                        pass: mismatches.is_empty(),
                        detail: if mismatches.is_empty() {
                            format!("sigma(F) = {}, C = {}, T = {}", r.sigma_f, r.c, r.t)
                        } else {
                            mismatches.join("; ")
                        },
                    }
                }
                Err(e) => SelftestLine {
                    label,
                    pass: false,
                    detail: e.to_string(),
                },
            }
        })
        .collect();
    let s = signature_of_form(&triple_point_form());
    lines.push(SelftestLine {
        label: "triple-point matrix".into(),
        pass: s == -1,
        detail: format!("signature {s}, expected -1"),
    });
    lines
}

pub fn run_selftest(kmax: u32) -> Status {
    let lines = selftest(kmax);
    for l in &lines {
        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.label, l.detail);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} passed", lines.len());
    if passed == lines.len() {
        Status::Ok
    } else {
        Status::Error
    }
}
