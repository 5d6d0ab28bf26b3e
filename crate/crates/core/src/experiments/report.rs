//! CSV output with a `#`-prefixed metadata preamble.

use std::fmt::Write as _;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Preamble {
    entries: Vec<(String, String)>,
}

impl Preamble {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out
    }
}

/// Preamble, header row and data rows.
pub fn render_csv(preamble: &Preamble, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = preamble.render();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let pre = Preamble::new().with("dd", "(3,6)-regular").with("seed", 1);
        let csv = render_csv(&pre, &["a", "b"], vec![vec!["1".into(), "2".into()]]);
        assert_eq!(csv, "# dd: (3,6)-regular\n# seed: 1\na,b\n1,2\n");
    }
}
