//! Report artifact: serialized as text, JSON or CSV.

use std::fmt::Write as _;

use clap::ValueEnum;
use cohh_core::BettiTable;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub label: String,
    pub degrees: Vec<i32>,
    pub betti: Vec<usize>,
}

impl Table {
    /// Degrees `lo..=hi` of `b`, never past the horizon `hi`.
    pub fn from_betti(label: impl Into<String>, b: &BettiTable, lo: i32, hi: i32) -> Self {
        let degrees: Vec<i32> = (lo..=hi).collect();
        let betti = degrees.iter().map(|&d| b.get(d)).collect();
        Table { label: label.into(), degrees, betti }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub task: String,
    pub field: String,
    pub horizon: i32,
    pub approximate: bool,
    pub tables: Vec<Table>,
    pub verdict: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("task,field,horizon,approximate,label,degree,betti\n");
                for t in &self.tables {
                    for (d, b) in t.degrees.iter().zip(&t.betti) {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{d},{b}",
                            self.task,
                            self.field,
                            self.horizon,
                            self.approximate,
                            csv_quote(&t.label)
                        );
                    }
                }
                let _ = writeln!(s, "# verdict: {}", self.verdict);
                s
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "task:        {}", self.task);
                let _ = writeln!(s, "field:       {}", self.field);
                let _ = writeln!(s, "horizon:     {}", self.horizon);
                let _ = writeln!(s, "approximate: {}", self.approximate);
                for t in &self.tables {
                    let _ = writeln!(s, "\n{}", t.label);
                    let w = t
                        .degrees
                        .iter()
                        .map(|d| d.to_string().len())
                        .chain(t.betti.iter().map(|b| b.to_string().len()))
                        .max()
                        .unwrap_or(1);
                    let row = |v: Vec<String>| v.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join(" ");
                    let _ = writeln!(s, "  degree {}", row(t.degrees.iter().map(|d| d.to_string()).collect()));
                    let _ = writeln!(s, "  betti  {}", row(t.betti.iter().map(|b| b.to_string()).collect()));
                }
                let _ = writeln!(s, "\n{}", self.verdict);
                s
            }
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
