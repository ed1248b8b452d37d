//! Line handling shared by theory and program files.

use serde_json::Value;

use crate::error::CliError;

/// One source line with its comment removed.
#[derive(Debug, Clone)]
pub struct Line {
    /// 1-based.
    pub number: usize,
    pub text: String,
}

impl Line {
    /// 1-based column of `token`, which should be a slice of `self.text`.
    pub fn column_of(&self, token: &str) -> usize {
        let base = self.text.as_ptr() as usize;
        let at = token.as_ptr() as usize;
        if at >= base && at <= base + self.text.len() {
            at - base + 1
        } else {
            self.text.find(token).map_or(1, |i| i + 1)
        }
    }
}

/// Non-blank lines with `#` comments stripped.
pub fn logical_lines(src: &str) -> Vec<Line> {
    src.lines()
        .enumerate()
        .map(|(i, raw)| Line { number: i + 1, text: raw.split('#').next().unwrap_or_default().trim_end().to_string() })
        .filter(|l| !l.text.trim().is_empty())
        .collect()
}

/// Parses a JSON value starting at `fragment` (a slice of `line.text`) and
/// continuing onto `following` lines while the value is incomplete. Returns
/// the value and the number of extra lines consumed.
pub fn json_block(line: &Line, fragment: &str, following: &[&Line]) -> Result<(Value, usize), CliError> {
    let mut buf = fragment.to_string();
    let mut used = 0;
    loop {
        match serde_json::from_str::<Value>(&buf) {
            Ok(v) => return Ok((v, used)),
            Err(e) if e.is_eof() && used < following.len() => {
                buf.push('\n');
                buf.push_str(&following[used].text);
                used += 1;
            }
            Err(e) => {
                let (number, column) = if e.line() <= 1 {
                    (line.number, line.column_of(fragment) + e.column().saturating_sub(1))
                } else {
                    (following[e.line() - 2].number, e.column())
                };
                return Err(CliError::Parse { line: number, column, message: format!("bad literal: {e}") });
            }
        }
    }
}
