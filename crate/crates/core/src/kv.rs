// SPDX-License-Identifier: Apache-2.0

//! `key=value` text blocks: experiment recipes, generator headers and trace
//! metadata sidecars. `#` starts a comment line; blank lines are skipped.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct KvBlock {
    entries: Vec<(String, String, usize)>,
}

impl KvBlock {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut block = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected key=value, found '{line}'"),
            })?;
            let key = k.trim();
            if key.is_empty() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "empty key".into(),
                });
            }
            block.entries.push((key.to_owned(), v.trim().to_owned(), i + 1));
        }
        Ok(block)
    }

    /// Reads `# key=value` comment lines, as written at the top of generated
    /// edge lists. Other lines are ignored.
    pub fn parse_header(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix('#'))
            .filter(|l| l.contains('='))
            .map(|l| format!("{}\n", l.trim()))
            .collect();
        Self::parse(&body)
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_owned(), value.to_string(), 0));
        self
    }

    /// Last value given for `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, _)| v.as_str())
    }

    fn line_of(&self, key: &str) -> usize {
        self.entries
            .iter()
            .rev()
            .find(|(k, _, _)| k == key)
            .map_or(0, |e| e.2)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::domain(format!("missing required key '{key}'")))
    }

    /// Parses `key` if present.
    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse::<T>().map(Some).map_err(|e| Error::Parse {
                line: self.line_of(key),
                message: format!("{key}: cannot parse '{v}': {e}"),
            }),
        }
    }

    pub fn parsed_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _, _)| k.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v, _)| (k.as_str(), v.as_str()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.iter() {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    /// As `# key=value` comment lines.
    pub fn to_header(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.iter() {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }
}
