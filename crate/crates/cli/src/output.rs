use std::io::Write;

use crate::config::{Format, Settings};
use crate::run::Report;

/// Pretty JSON with sorted keys, or CSV with a header row; always ends in a newline.
pub fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.header).map_err(|e| e.to_string())?;
            for row in &report.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

pub fn emit(report: &Report, s: &Settings, stdout: &mut dyn Write) -> Result<(), String> {
    let text = render(report, s.format)?;
    match &s.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}
