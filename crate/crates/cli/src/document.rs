//! The machine-readable result of every command, and its three text forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub name: String,
    /// Canonical exact form (`p/q + r/s*phi`, `(QPhi)*sqrt(QPhi)`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    /// Readable exact form, e.g. `φ·√φ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    /// A float with an explicit digit count, kept as text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// `OK` or `FAIL` for checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

impl Output {
    pub fn new(name: impl Into<String>) -> Output {
        Output { name: name.into(), exact: None, display: None, value: None, note: None, status: None }
    }

    pub fn value(name: impl Into<String>, value: String) -> Output {
        Output { value: Some(value), ..Output::new(name) }
    }

    pub fn check(name: impl Into<String>, ok: bool) -> Output {
        Output { status: Some(if ok { "OK" } else { "FAIL" }.into()), ..Output::new(name) }
    }

    pub fn exact(mut self, canonical: impl ToString, display: impl Into<String>) -> Output {
        self.exact = Some(canonical.to_string());
        self.display = Some(display.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Output {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.as_deref() != Some("FAIL")
    }

    /// `name = display = value (note)`, or `name: status` for checks.
    pub fn line(&self) -> String {
        if let Some(status) = &self.status {
            return format!("{}: {status}", self.name);
        }
        let mut s = self.name.clone();
        for part in [&self.display, &self.value].into_iter().flatten() {
            s.push_str(" = ");
            s.push_str(part);
        }
        if let Some(note) = &self.note {
            s.push_str(&format!(" ({note})"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<Output>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub tool_version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl ResultDocument {
    pub fn new(command: &str, parameters: &[(&str, String)]) -> ResultDocument {
        ResultDocument {
            command: command.into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            outputs: Vec::new(),
            table: None,
            tool_version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn push(&mut self, out: Output) {
        self.outputs.push(out);
    }

    pub fn all_passed(&self) -> bool {
        self.outputs.iter().all(Output::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<ResultDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad result document: {e}")))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Table => self.to_table(),
        }
    }

    fn to_table(&self) -> String {
        let mut s = String::new();
        for out in &self.outputs {
            s.push_str(&out.line());
            s.push('\n');
        }
        if let Some(t) = &self.table {
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| t.rows.iter().map(|r| r[i].chars().count()).chain([t.columns[i].chars().count()]).max().unwrap_or(0))
                .collect();
            let fmt_row = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join(" | ").trim_end().to_string() + "\n"
            };
            s.push_str(&fmt_row(&t.columns));
            for row in &t.rows {
                s.push_str(&fmt_row(row));
            }
        }
        s
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).expect("in-memory write");
                for row in &t.rows {
                    w.write_record(row).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["name", "exact", "display", "value", "note", "status"]).expect("in-memory write");
                for o in &self.outputs {
                    let cell = |x: &Option<String>| x.clone().unwrap_or_default();
                    w.write_record([o.name.clone(), cell(&o.exact), cell(&o.display), cell(&o.value), cell(&o.note), cell(&o.status)])
                        .expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 cells")
    }
}

/// A float with a fixed number of decimals; `-0` prints as `0`.
pub fn fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// A float in scientific notation with `digits` mantissa decimals; `-0` prints as `0`.
pub fn sci(x: f64, digits: usize) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.digits$e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        assert_eq!(Output::value("v/h", fixed(1.2720196494657, 8)).note("√φ").line(), "v/h = 1.27201965 (√φ)");
        assert_eq!(Output::check("BE^2 = 2φ exact", true).line(), "BE^2 = 2φ exact: OK");
        assert_eq!(Output::value("area", fixed(2.118033988749895, 10)).exact("1/2 + 1*phi", "phi^3/2").line(), "area = phi^3/2 = 2.1180339887");
        assert_eq!(fixed(-0.0000000001, 9), "0.000000000");
        assert_eq!(sci(-0.0, 3), "0.000e0");
    }

    #[test]
    fn json_round_trip() {
        let mut d = ResultDocument::new("solve", &[("tol", "1e-9".into())]);
        d.push(Output::value("x", "1.5".into()).exact("3/2 + 0*phi", "3/2"));
        d.table = Some(Table { columns: vec!["a".into()], rows: vec![vec!["1, 2".into()]] });
        assert_eq!(ResultDocument::from_json(&d.to_json()).unwrap(), d);
        assert!(d.render(Format::Csv).starts_with("a\n\"1, 2\"\n"));
    }
}
