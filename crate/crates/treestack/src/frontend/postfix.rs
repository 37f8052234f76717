//! The postfix tree DSL.
//!
//! Whitespace-separated statements, `#` starts a comment to end of line:
//!
//! ```text
//! leaf "NP"            # push a leaf
//! branch 2 "S"         # pop 2 subtrees, push their combination
//! fake "V"             # narrow the top subtree's declared footprint
//! tree                 # emit the top subtree
//! ```
//!
//! Labels are double-quoted. `\"` escapes a quote; `\\` stands for the
//! two-character line-break sequence and is kept verbatim; any other
//! backslash passes through unchanged. A raw newline inside quotes is also
//! a line break.

use super::SyntaxError;
use crate::command::Command;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skip whitespace and `#` comments.
    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    /// Read a bare word (letters, digits, punctuation up to whitespace,
    /// quote or comment).
    fn word(&mut self) -> String {
        let mut w = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '"' || c == '#' {
                break;
            }
            w.push(c);
            self.bump();
        }
        w
    }

    /// Read a double-quoted label.
    fn quoted(&mut self) -> Result<String, SyntaxError> {
        let (line, col) = self.here();
        match self.peek() {
            Some('"') => {
                self.bump();
            }
            _ => return Err(SyntaxError::new(line, col, "expected quoted label")),
        }
        let mut label = String::new();
        loop {
            match self.bump() {
                None => {
                    return Err(SyntaxError::new(line, col, "unterminated string"));
                }
                Some('"') => return Ok(label),
                Some('\\') => match self.bump() {
                    None => {
                        return Err(SyntaxError::new(line, col, "unterminated string"));
                    }
                    Some('"') => label.push('"'),
                    Some('\\') => label.push_str("\\\\"),
                    Some(other) => {
                        label.push('\\');
                        label.push(other);
                    }
                },
                Some(c) => label.push(c),
            }
        }
    }
}

/// Parse postfix DSL text into a command list.
pub fn parse_postfix(text: &str) -> Result<Vec<Command>, SyntaxError> {
    let mut cur = Cursor::new(text);
    let mut commands = Vec::new();
    loop {
        cur.skip_trivia();
        if cur.peek().is_none() {
            return Ok(commands);
        }
        let (line, col) = cur.here();
        let keyword = cur.word();
        if keyword.is_empty() {
            // A stray quote where a keyword should be.
            return Err(SyntaxError::new(line, col, "expected a command keyword"));
        }
        match keyword.as_str() {
            "leaf" => {
                cur.skip_trivia();
                commands.push(Command::Leaf(cur.quoted()?));
            }
            "fake" => {
                cur.skip_trivia();
                commands.push(Command::FakeWidth(cur.quoted()?));
            }
            "branch" => {
                cur.skip_trivia();
                let (aline, acol) = cur.here();
                let token = cur.word();
                let arity: u32 = token.parse().map_err(|_| {
                    SyntaxError::new(
                        aline,
                        acol,
                        format!("invalid branch arity `{token}`: expected a non-negative integer"),
                    )
                })?;
                cur.skip_trivia();
                commands.push(Command::Branch {
                    arity,
                    label: cur.quoted()?,
                });
            }
            "tree" => commands.push(Command::Tree),
            other => {
                return Err(SyntaxError::new(
                    line,
                    col,
                    format!("unknown command `{other}`"),
                ));
            }
        }
    }
}

fn escape_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    for c in label.chars() {
        if c == '"' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Format a command list back into postfix DSL text, one statement per
/// line. Round-trips through [`parse_postfix`] as long as labels contain
/// backslashes only as `\\` line-break pairs.
pub fn format_postfix(commands: &[Command]) -> String {
    let mut out = String::new();
    for cmd in commands {
        match cmd {
            Command::Leaf(label) => {
                out.push_str(&format!("leaf \"{}\"\n", escape_label(label)));
            }
            Command::Branch { arity, label } => {
                out.push_str(&format!("branch {arity} \"{}\"\n", escape_label(label)));
            }
            Command::FakeWidth(label) => {
                out.push_str(&format!("fake \"{}\"\n", escape_label(label)));
            }
            Command::Tree => out.push_str("tree\n"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcribes_a_simple_program() {
        let cmds = parse_postfix("leaf \"NP\"\nleaf \"VP\"\nbranch 2 \"S\"\ntree").unwrap();
        assert_eq!(
            cmds,
            vec![
                Command::Leaf("NP".into()),
                Command::Leaf("VP".into()),
                Command::Branch {
                    arity: 2,
                    label: "S".into()
                },
                Command::Tree,
            ]
        );
    }

    #[test]
    fn double_backslash_marks_a_line_break() {
        let cmds = parse_postfix(r#"leaf "a\\b""#).unwrap();
        assert_eq!(cmds, vec![Command::Leaf("a\\\\b".into())]);
        // Two lines once measured.
        let b = crate::metrics::measure_label("a\\\\b", &crate::metrics::MetricsConfig::default());
        assert_eq!(b.lines.len(), 2);
    }

    #[test]
    fn escaped_quote_inside_label() {
        let cmds = parse_postfix(r#"leaf "say \"hi\"""#).unwrap();
        assert_eq!(cmds, vec![Command::Leaf("say \"hi\"".into())]);
    }

    #[test]
    fn non_integer_arity_is_an_error_at_the_token() {
        let err = parse_postfix("branch x \"S\"").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
        assert!(err.message.contains("arity"));
    }

    #[test]
    fn unknown_keyword_is_an_error() {
        let err = parse_postfix("leap \"NP\"").unwrap_err();
        assert!(err.message.contains("unknown command"));
        assert_eq!((err.line, err.col), (1, 1));
    }

    #[test]
    fn unterminated_string_is_an_error() {
        let err = parse_postfix("leaf \"NP").unwrap_err();
        assert!(err.message.contains("unterminated"));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let cmds = parse_postfix("# a tree\nleaf \"A\" # push\n\n  tree # emit\n").unwrap();
        assert_eq!(cmds, vec![Command::Leaf("A".into()), Command::Tree]);
    }

    #[test]
    fn hash_inside_string_is_literal() {
        let cmds = parse_postfix("leaf \"a#b\"").unwrap();
        assert_eq!(cmds, vec![Command::Leaf("a#b".into())]);
    }

    #[test]
    fn newline_inside_string_is_kept() {
        let cmds = parse_postfix("leaf \"a\nb\"").unwrap();
        assert_eq!(cmds, vec![Command::Leaf("a\nb".into())]);
    }

    #[test]
    fn error_position_counts_lines() {
        let err = parse_postfix("leaf \"A\"\n  oops").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }

    #[test]
    fn format_then_parse_round_trips() {
        let cmds = vec![
            Command::Leaf("NP\\\\sg".into()),
            Command::FakeWidth("\"q\"".into()),
            Command::Branch {
                arity: 2,
                label: "S".into(),
            },
            Command::Tree,
        ];
        let text = format_postfix(&cmds);
        assert_eq!(parse_postfix(&text).unwrap(), cmds);
    }
}
