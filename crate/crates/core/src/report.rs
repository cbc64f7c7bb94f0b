//! Report documents: a text rendering for people and a versioned JSON form
//! for scripts. The JSON form round-trips byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "rht-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A computation returned a negative verdict (refuted, failed check).
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub status: Status,
    pub sections: Vec<Section>,
    /// Machine-only payload with stable field names.
    pub data: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            status: Status::Ok,
            sections: Vec::new(),
            data: Value::Null,
            warnings: Vec::new(),
        }
    }

    pub fn section(&mut self, title: &str) -> &mut Section {
        self.sections.push(Section {
            title: title.into(),
            rows: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        if r.schema != SCHEMA {
            return Err(Error::Invalid(format!("unsupported report schema `{}`", r.schema)));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&s.title);
            out.push('\n');
            let w = s.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &s.rows {
                if v.is_empty() {
                    out.push_str(&format!("  {k}\n"));
                } else {
                    out.push_str(&format!("  {k:<w$}  {v}\n"));
                }
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

impl Section {
    pub fn row(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.rows.push((key.into(), value.into()));
        self
    }
}
