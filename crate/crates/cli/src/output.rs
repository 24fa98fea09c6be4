use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use lattice_area::AreaDistribution;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Header shared by every JSON report. Worker counts are deliberately left
/// out so the bytes do not depend on them.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub n: Option<u32>,
    pub lattice: &'static str,
    pub flags: Map<String, Value>,
    pub version: &'static str,
}

impl Meta {
    pub fn new(n: Option<u32>, lattice: &'static str) -> Self {
        Self {
            n,
            lattice,
            flags: Map::new(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn flag(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.flags.insert(key.to_string(), value.into());
        self
    }
}

/// A rendered command result: a JSON document plus a flat table for CSV.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(meta: Meta, body: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        let mut doc = Map::new();
        doc.insert("meta".into(), serde_json::to_value(&meta).expect("meta serializes"));
        if let Some(n) = meta.n {
            doc.insert("n".into(), n.into());
        }
        if let Value::Object(fields) = body {
            doc.extend(fields);
        }
        Self {
            json: Value::Object(doc),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
        }
    }

    pub fn distribution(meta: Meta, dist: &AreaDistribution) -> Self {
        let entries: Vec<Value> = dist
            .iter()
            .map(|(a, c)| json!({"area": a, "count": c.to_string()}))
            .collect();
        let rows = dist.iter().map(|(a, c)| vec![a.to_string(), c.to_string()]).collect();
        Self::new(meta, json!({ "distribution": entries }), &["area", "count"], rows)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
