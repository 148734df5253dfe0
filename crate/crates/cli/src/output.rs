use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;

/// Derivation text, a JSON summary and optional extra files. Nothing is
/// written until the computation has finished.
#[derive(Default)]
pub struct Report {
    text: String,
    pub summary: serde_json::Map<String, Value>,
    files: Vec<(String, String)>,
    /// Diagnostic for stderr, printed whatever the output mode.
    pub diagnostic: Option<String>,
}

impl Report {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn heading(&mut self, s: &str) {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "== {} ==", s);
    }

    /// Appends a multi-line block indented by two spaces.
    pub fn block(&mut self, s: impl AsRef<str>) {
        for l in s.as_ref().lines() {
            let _ = writeln!(self.text, "  {}", l);
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn file(&mut self, name: String, contents: String) {
        self.files.push((name, contents));
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary is plain JSON");
        s.push('\n');
        s
    }

    pub fn emit(&self, out: Option<&Path>, summary_only: bool) -> anyhow::Result<()> {
        if let Some(dir) = out {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let write = |name: &str, body: &str| {
                let p = dir.join(name);
                std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
            };
            write("report.txt", &self.text)?;
            write("summary.json", &self.summary_json())?;
            for (name, body) in &self.files {
                write(name, body)?;
            }
        }
        if summary_only {
            print!("{}", self.summary_json());
        } else {
            print!("{}", self.text);
        }
        if let Some(d) = &self.diagnostic {
            eprintln!("{}", d);
        }
        Ok(())
    }
}

pub fn int_rows(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{:>4}", x)).collect();
            format!("[{} ]", cells.join(""))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
