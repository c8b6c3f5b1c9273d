use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Result of a subcommand, renderable in every output format.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub passed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => self.text.clone(),
        })
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> anyhow::Result<()> {
        let body = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, body)?,
            None => std::io::stdout().lock().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

/// Rows and text lines for a list of named checks.
pub fn checks_report(json: Value, checks: &[heiscalc_core::rumin::CheckResult]) -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{tag} {} ({} trials, {} failures)", c.name, c.trials, c.failures);
        if let Some(w) = &c.counterexample {
            let _ = writeln!(text, "  counterexample: {w}");
        }
        rows.push(vec![c.name.clone(), c.trials.to_string(), c.failures.to_string(), c.passed.to_string()]);
    }
    let passed = checks.iter().all(|c| c.passed);
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "verification failed" });
    Report { json, header: vec!["name", "trials", "failures", "passed"], rows, text, passed }
}
