//! Aligned plain-text output.

use std::fmt::Display;

#[derive(Default)]
pub struct Text {
    out: String,
    pending: Vec<(String, String)>,
}

impl Text {
    pub fn new(title: &str) -> Self {
        Self { out: format!("{title}\n"), pending: Vec::new() }
    }

    /// Queues `key: value`; consecutive fields share one key column.
    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.pending.push((key.to_string(), value.to_string()));
        self
    }

    fn flush(&mut self) {
        let width = self.pending.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in self.pending.drain(..) {
            let pad = width - k.chars().count();
            self.out.push_str(&format!("  {k}{}  {v}\n", " ".repeat(pad)));
        }
    }

    /// A titled grid with right-aligned columns.
    pub fn grid(&mut self, title: &str, rows: &[Vec<String>]) -> &mut Self {
        self.flush();
        self.out.push_str(&format!("  {title}\n"));
        let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        for r in rows {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{}{s}", " ".repeat(widths[c] - s.chars().count())))
                .collect();
            self.out.push_str(&format!("    [ {} ]\n", cells.join("  ")));
        }
        self
    }

    /// A titled list, one item per line.
    pub fn lines(&mut self, title: &str, items: impl IntoIterator<Item = String>) -> &mut Self {
        self.flush();
        self.out.push_str(&format!("  {title}\n"));
        for item in items {
            self.out.push_str(&format!("    {item}\n"));
        }
        self
    }

    pub fn finish(mut self) -> String {
        self.flush();
        self.out
    }
}
