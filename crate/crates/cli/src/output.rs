use std::fs;
use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::args::{Cli, Format};
use crate::commands::{CliError, CliResult, Outcome};

/// Removes library timing fields so reports are reproducible byte for byte.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn text_lines(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                text_lines(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn render(cli: &Cli, outcome: &Outcome, elapsed_ms: Option<u64>) -> CliResult<String> {
    let mut result = outcome.result.clone();
    strip_timing(&mut result);
    match cli.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("config".into(), serde_json::to_value(&outcome.config)?);
            doc.insert("result".into(), result);
            if let Some(ms) = elapsed_ms {
                doc.insert("elapsed_ms".into(), json!(ms));
            }
            Ok(serde_json::to_string_pretty(&Value::Object(doc))? + "\n")
        }
        Format::Text => {
            let mut out = String::new();
            text_lines("", &result, &mut out);
            if let Some(ms) = elapsed_ms {
                out.push_str(&format!("elapsed_ms: {ms}\n"));
            }
            Ok(out)
        }
        Format::Dot => outcome
            .dot
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{} has no DOT output", outcome.config.command))),
        Format::Csv => {
            let (header, rows) = outcome
                .csv
                .as_ref()
                .ok_or_else(|| CliError::Usage(format!("{} has no CSV output", outcome.config.command)))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn emit(cli: &Cli, outcome: &Outcome, elapsed_ms: Option<u64>) -> CliResult<()> {
    // `digraph --dot` prints DOT regardless of `--format`.
    let text = match (&outcome.dot, cli.format) {
        (Some(dot), Format::Json) => dot.clone(),
        _ => render(cli, outcome, elapsed_ms)?,
    };
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
