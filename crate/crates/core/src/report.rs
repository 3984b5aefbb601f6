//! JSON-lines output shared by the relation and isomorphism reports.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

/// One compact JSON object per line, with `summary` as the last line.
pub fn jsonl(records: impl IntoIterator<Item = Value>, summary: Value) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

/// Write to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn summary_is_last() {
        let s = jsonl([json!({"id": 1}), json!({"id": 2})], json!({"summary": true}));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], r#"{"summary":true}"#);
    }
}
