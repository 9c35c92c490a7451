//! Run reports, aligned-text tables, and the fixed CSV dialect
//! (comma-separated, `.` decimal, header row, LF line endings).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// What a command run produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    /// FNV-1a digest of the resolved scenario text.
    pub inputs_digest: String,
    /// Files written.
    pub outputs: Vec<PathBuf>,
    /// Scenario warnings plus tolerance deviations vs the published values.
    pub warnings: Vec<String>,
    /// Hard tolerance breaches (nonzero exit under --strict).
    pub violations: usize,
}

impl RunReport {
    pub fn new(command: &str, digest: String) -> Self {
        RunReport {
            command: command.to_string(),
            inputs_digest: digest,
            outputs: Vec::new(),
            warnings: Vec::new(),
            violations: 0,
        }
    }
}

pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in bytes {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Render an aligned text table; the first row is the header.
pub fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for (idx, row) in rows.iter().enumerate() {
        for (i, cell) in row.iter().enumerate() {
            let pad = widths[i] - cell.chars().count();
            out.push_str(cell);
            if i + 1 < row.len() {
                out.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push('\n');
        if idx == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (columns - 1);
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }
    out
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// Write rows (header first) as CSV with LF endings.
pub fn write_csv(path: &Path, rows: &[Vec<String>]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut text = String::new();
    for row in rows {
        text.push_str(&csv_line(row));
        text.push('\n');
    }
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(fnv1a_hex(b"abc"), fnv1a_hex(b"abc"));
        assert_ne!(fnv1a_hex(b"abc"), fnv1a_hex(b"abd"));
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_line(&["a".into(), "b,c".into()]), "a,\"b,c\"");
        assert_eq!(csv_line(&["x\"y".into()]), "\"x\"\"y\"");
    }

    #[test]
    fn table_is_aligned() {
        let rows = vec![
            vec!["name".to_string(), "value".to_string()],
            vec!["x".to_string(), "1".to_string()],
        ];
        let text = render_table(&rows);
        assert!(text.contains("name"));
        assert!(text.lines().count() == 3);
    }
}
