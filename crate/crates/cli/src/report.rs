use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Table {
        Table { title: title.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn aligned(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                s.push_str(cell);
                if k + 1 < cells.len() {
                    s.push_str(&" ".repeat(w - cell.chars().count() + 2));
                }
            }
            s.push('\n');
            s
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(&self.columns));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    fn csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// A command result: the JSON document is authoritative, the tables are views of it.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub json: Value,
    pub tables: Vec<Table>,
    /// false when an oracle or a closed-form check disagreed
    pub verified: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        Ok(match format {
            Format::Json => {
                let doc = serde_json::json!({ "command": self.command, "verified": self.verified, "result": self.json });
                let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Table => self.tables.iter().map(Table::aligned).collect::<Vec<_>>().join("\n"),
            Format::Csv => {
                let mut out = String::new();
                for (k, t) in self.tables.iter().enumerate() {
                    if k > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("# {}\n", t.title));
                    out.push_str(&t.csv()?);
                }
                out
            }
        })
    }
}

pub fn tuple(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

pub fn index_set(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new("demo", &["a", "value"]);
        t.push(vec!["(0,1)".into(), "1".into()]);
        t.push(vec!["(10,1)".into(), "x,y".into()]);
        Report { command: "demo", json: serde_json::json!({"k": 1}), tables: vec![t], verified: true }
    }

    #[test]
    fn aligned_table() {
        let s = sample().render(Format::Table).unwrap();
        assert_eq!(s, "demo\na       value\n------  -----\n(0,1)   1\n(10,1)  x,y\n");
    }

    #[test]
    fn csv_quotes() {
        let s = sample().render(Format::Csv).unwrap();
        assert_eq!(s, "# demo\na,value\n\"(0,1)\",1\n\"(10,1)\",\"x,y\"\n");
    }

    #[test]
    fn json_envelope() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["result"]["k"], 1);
    }
}
