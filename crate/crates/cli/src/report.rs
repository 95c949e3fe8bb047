use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Witness,
    Unsat,
    Unknown,
    Value,
}

/// One line of output: everything needed to rerun the command and compare.
#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    inputs: &'a Value,
    outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<u64>,
    result: &'a Value,
    version: &'static str,
}

pub struct Record {
    pub outcome: Outcome,
    pub nodes: Option<u64>,
    pub result: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Record {
    pub fn value(result: Value, text: impl Into<String>) -> Record {
        Record { outcome: Outcome::Value, nodes: None, result, text: text.into(), dot: None }
    }
}

pub struct Emitter {
    format: Format,
    command: &'static str,
    inputs: Value,
}

impl Emitter {
    pub fn new(format: Format, command: &'static str, inputs: Value) -> Emitter {
        Emitter { format, command, inputs }
    }

    pub fn emit(&self, r: Record) {
        let line = match self.format {
            Format::Json => serde_json::to_string(&RunReport {
                command: self.command,
                inputs: &self.inputs,
                outcome: r.outcome,
                nodes: r.nodes,
                result: &r.result,
                version: env!("CARGO_PKG_VERSION"),
            })
            .expect("reports are plain JSON"),
            Format::Text => r.text,
            Format::Dot => r.dot.unwrap_or_else(|| format!("// {}", r.text)),
        };
        let mut out = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = writeln!(out, "{line}");
    }
}
