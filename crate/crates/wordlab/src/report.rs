//! A format-neutral report: metadata fields plus at most one table.
//!
//! CSV renders only the table. JSON renders everything, and carries enough
//! (`table`, `columns`) to rebuild the CSV byte for byte.

use serde_json::{Map, Value};

/// Named scalar or nested value shown before the table.
pub type Field = (String, Value);

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    /// JSON key holding the rows.
    pub key: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(key: &str, columns: &[&str]) -> Self {
        Table {
            key: key.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub fields: Vec<Field>,
    pub table: Option<Table>,
    /// Lines appended after the table in text output only.
    pub footer: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            fields: Vec::new(),
            table: None,
            footer: Vec::new(),
        }
    }

    pub fn field(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((name.into(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        if let Some(t) = &self.table {
            obj.insert("table".into(), Value::String(t.key.clone()));
            obj.insert(
                "columns".into(),
                Value::Array(t.columns.iter().cloned().map(Value::String).collect()),
            );
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            obj.insert(t.key.clone(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values are finite");
        s.push('\n');
        s
    }

    pub fn render_csv(&self) -> String {
        match &self.table {
            Some(t) => csv_text(&t.columns, &t.rows),
            None => flat_csv(self.fields.iter().map(|(k, v)| (k.as_str(), v))),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::Null => out.push_str(&format!("{k}: none\n")),
                Value::Array(items) if items.is_empty() => out.push_str(&format!("{k}: none\n")),
                Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
                    let parts: Vec<String> = items.iter().map(cell_text).collect();
                    out.push_str(&format!("{k}: {}\n", parts.join(", ")));
                }
                Value::Array(items) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", inline_object(item)));
                    }
                }
                Value::Object(_) => out.push_str(&format!("{k}: {}\n", inline_object(v))),
                _ => out.push_str(&format!("{k}: {}\n", cell_text(v))),
            }
        }
        if let Some(t) = &self.table {
            if !self.fields.is_empty() {
                out.push('\n');
            }
            out.push_str(&aligned(&t.columns, &t.rows));
        }
        for line in &self.footer {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// CSV cell text: strings verbatim, null as empty.
pub fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn inline_object(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) => format!("{k}={{{}}}", inline_object(v)),
                _ => format!("{k}={}", cell_text(v)),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => cell_text(other),
    }
}

fn csv_text(columns: &[String], rows: &[Vec<Value>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(columns).expect("in-memory write");
    for r in rows {
        w.write_record(r.iter().map(cell_text)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn aligned(columns: &[String], rows: &[Vec<Value>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell_text).collect()).collect();
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([columns[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        let mut l = padded.join("  ");
        l.truncate(l.trim_end().len());
        l.push('\n');
        l
    };
    let mut out = line(columns);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

/// Rebuilds the CSV rendering from a parsed JSON report.
pub fn csv_from_json(doc: &Value) -> Option<String> {
    let obj = doc.as_object()?;
    match obj.get("table") {
        Some(key) => {
            let columns: Vec<String> = obj
                .get("columns")?
                .as_array()?
                .iter()
                .map(|c| c.as_str().map(str::to_string))
                .collect::<Option<_>>()?;
            let rows = obj
                .get(key.as_str()?)?
                .as_array()?
                .iter()
                .map(|r| {
                    let r = r.as_object()?;
                    columns.iter().map(|c| r.get(c).cloned()).collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            Some(csv_text(&columns, &rows))
        }
        None => Some(flat_csv(obj.iter().filter(|(k, _)| k.as_str() != "command").map(|(k, v)| (k.as_str(), v)))),
    }
}

/// One header and one row; nested objects become `outer_inner` columns.
fn flat_csv<'a>(fields: impl Iterator<Item = (&'a str, &'a Value)>) -> String {
    fn walk(prefix: &str, v: &Value, cols: &mut Vec<String>, row: &mut Vec<Value>) {
        match v {
            Value::Object(m) => {
                for (k, inner) in m {
                    walk(&format!("{prefix}_{k}"), inner, cols, row);
                }
            }
            Value::Array(items) => {
                cols.push(prefix.to_string());
                row.push(Value::String(items.iter().map(cell_text).collect::<Vec<_>>().join(" ")));
            }
            other => {
                cols.push(prefix.to_string());
                row.push(other.clone());
            }
        }
    }
    let (mut cols, mut row) = (Vec::new(), Vec::new());
    for (k, v) in fields {
        walk(k, v, &mut cols, &mut row);
    }
    csv_text(&cols, &[row])
}
