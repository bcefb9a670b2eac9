//! Line-oriented reports: `key=value` lines followed by TSV blocks.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, String)>,
    blocks: Vec<Table>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.blocks.push(Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn tables(&self) -> &[Table] {
        &self.blocks
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        for t in &self.blocks {
            writeln!(f)?;
            writeln!(f, "{}", t.header.join("\t"))?;
            for row in &t.rows {
                writeln!(f, "{}", row.join("\t"))?;
            }
        }
        Ok(())
    }
}

/// Format a float so identical inputs print identically everywhere.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.12e}")
}
