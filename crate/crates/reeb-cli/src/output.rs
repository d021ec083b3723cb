//! Named tables rendered as JSON, TSV or Markdown.
use serde_json::{Map, Value};

pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Table { name, columns: columns.to_vec(), rows: Vec::new() }
    }
    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

pub fn render(command: &str, tables: &[Table], format: Format) -> String {
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("command".into(), Value::String(command.into()));
            for t in tables {
                let rows = t
                    .rows
                    .iter()
                    .map(|r| Value::Object(t.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                    .collect();
                top.insert(t.name.into(), Value::Array(rows));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::new();
            for t in tables {
                s += &format!("# {}\n{}\n", t.name, t.columns.join("\t"));
                for r in &t.rows {
                    s += &r.iter().map(plain).collect::<Vec<_>>().join("\t");
                    s.push('\n');
                }
            }
            s
        }
        Format::Md => {
            let mut s = String::new();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s += &format!("### {}\n\n| {} |\n|{}\n", t.name, t.columns.join(" | "), "---|".repeat(t.columns.len()));
                for r in &t.rows {
                    let cells: Vec<String> = r.iter().map(|v| plain(v).replace('|', "\\|")).collect();
                    s += &format!("| {} |\n", cells.join(" | "));
                }
            }
            s
        }
    }
}
