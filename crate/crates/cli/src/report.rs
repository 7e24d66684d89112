use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    /// Informational verdicts do not affect the exit code.
    pub gating: bool,
    pub detail: String,
}

/// Output of one command. The serialized field set is fixed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub window: Option<String>,
    pub verdicts: Vec<Verdict>,
    pub residual_terms: Option<usize>,
    pub seed: Option<u64>,
    /// Extra lines for the human-readable form only.
    #[serde(skip)]
    pub body: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            window: None,
            verdicts: Vec::new(),
            residual_terms: None,
            seed: None,
            body: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            gating: true,
            detail: detail.into(),
        });
        self
    }

    pub fn info(&mut self, name: &str, value: bool, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass: value,
            gating: false,
            detail: detail.into(),
        });
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.body.push(s.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass || !v.gating)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(w) = &self.window {
            let _ = writeln!(out, "  window: {w} (truncation-level check)");
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "  seed: {s}");
        }
        if let Some(n) = self.residual_terms {
            let _ = writeln!(out, "  residual terms: {n}");
        }
        for l in &self.body {
            let _ = writeln!(out, "{l}");
        }
        for v in &self.verdicts {
            let mark = match (v.gating, v.pass) {
                (true, true) => "ok  ",
                (true, false) => "FAIL",
                (false, _) => "info",
            };
            let value = if v.gating {
                String::new()
            } else {
                format!(" = {}", v.pass)
            };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{mark} {}{value}", v.name);
            } else {
                let _ = writeln!(out, "{mark} {}{value}: {}", v.name, v.detail);
            }
        }
        out
    }
}
