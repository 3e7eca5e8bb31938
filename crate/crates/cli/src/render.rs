//! Text and JSON renderings of a [`SignatureReport`].

use std::fmt::Write;

use milnorsig_core::milnorsig::{CheckStatus, SignatureReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render_report(r: &SignatureReport, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn matrix_rows<T: ToString>(out: &mut String, m: &[Vec<T>]) {
    if m.is_empty() {
        out.push_str("  (empty)\n");
    }
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>4}", x.to_string())).collect();
        let _ = writeln!(out, "  [{} ]", cells.join(""));
    }
}

pub fn render_text(r: &SignatureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "germ: {}", r.name);
    let _ = writeln!(out, "corank: {}", r.corank);
    let _ = writeln!(out, "C: {}", r.c);
    let _ = writeln!(out, "T: {}", r.t);
    let _ = writeln!(out, "mu(D): {}", r.mu_d);
    let _ = writeln!(out, "mu_I: {}", r.mu_i);
    let _ = writeln!(out, "b2: {}", r.b2);
    out.push_str("components:\n");
    for (i, c) in r.components.iter().enumerate() {
        let _ = match c.partner {
            Some(j) => writeln!(out, "  {}. {}  untwisted, partner {}", i + 1, c.equation, j),
            None => writeln!(out, "  {}. {}  twisted", i + 1, c.equation),
        };
    }
    out.push_str("intersection table:\n");
    matrix_rows(&mut out, &r.intersection_table);
    for v in &r.vertical_indices {
        let members: Vec<String> = v.pair.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "image component {{{}}}", members.join(","));
        let _ = match (v.value, v.provenance) {
            (Some(value), Some(p)) => writeln!(out, "vertical index ({}): {value}", p.label()),
            (Some(value), None) => writeln!(out, "vertical index: {value}"),
            _ => writeln!(out, "vertical index: unknown"),
        };
    }
    out.push_str("intersection form:\n");
    matrix_rows(&mut out, &r.intersection_form);
    let _ = writeln!(out, "sigma(X): {}", r.sigma_x);
    let _ = writeln!(out, "sigma(F): {}", r.sigma_f);
    out.push_str("checks:\n");
    for c in &r.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        let _ = writeln!(out, "  {status:<5}{}: {}", c.name, c.detail);
    }
    out
}
