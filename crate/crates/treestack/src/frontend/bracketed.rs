//! Bracketed tree notation, `(LABEL child child ...)`.
//!
//! Children are sub-parentheses or bare tokens; tokens are opaque text (a
//! `\\` inside a token still acts as a line break when measured). Each
//! top-level tree compiles to a post-order command sequence followed by
//! `Tree`, so running the result can never underflow.

use super::SyntaxError;
use crate::command::Command;

/// Options for [`compile_bracketed`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompileOptions {
    /// Collapse a node whose only child is a bare token into a single
    /// two-line leaf `LABEL\\token` (the common part-of-speech-over-word
    /// idiom).
    pub merge_preterminals: bool,
}

enum Node {
    Token(String),
    Internal { label: String, children: Vec<Node> },
}

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

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn token(&mut self) -> String {
        let mut t = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            t.push(c);
            self.bump();
        }
        t
    }

    fn node(&mut self) -> Result<Node, SyntaxError> {
        let (line, col) = self.here();
        self.bump(); // consume '('
        self.skip_ws();
        let label = match self.peek() {
            None => {
                return Err(SyntaxError::new(
                    line,
                    col,
                    "unbalanced parentheses: missing `)`",
                ))
            }
            Some(')') => return Err(SyntaxError::new(line, col, "empty node `()`")),
            Some('(') => {
                let (l, c) = self.here();
                return Err(SyntaxError::new(l, c, "expected node label before `(`"));
            }
            Some(_) => self.token(),
        };
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => {
                    return Err(SyntaxError::new(
                        line,
                        col,
                        "unbalanced parentheses: missing `)`",
                    ))
                }
                Some(')') => {
                    self.bump();
                    return Ok(Node::Internal { label, children });
                }
                Some('(') => children.push(self.node()?),
                Some(_) => children.push(Node::Token(self.token())),
            }
        }
    }
}

fn emit(node: &Node, opts: &CompileOptions, out: &mut Vec<Command>) {
    match node {
        Node::Token(word) => out.push(Command::Leaf(word.clone())),
        Node::Internal { label, children } => {
            if children.is_empty() {
                out.push(Command::Leaf(label.clone()));
                return;
            }
            if opts.merge_preterminals {
                if let [Node::Token(word)] = children.as_slice() {
                    out.push(Command::Leaf(format!("{label}\\\\{word}")));
                    return;
                }
            }
            for child in children {
                emit(child, opts, out);
            }
            out.push(Command::Branch {
                arity: children.len() as u32,
                label: label.clone(),
            });
        }
    }
}

/// Compile bracketed notation into a postfix command list. The input may
/// hold a forest; each top-level tree is followed by a `Tree` command.
pub fn compile_bracketed(text: &str, opts: &CompileOptions) -> Result<Vec<Command>, SyntaxError> {
    let mut cur = Cursor::new(text);
    let mut commands = Vec::new();
    let mut saw_tree = false;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('(') => {
                let node = cur.node()?;
                emit(&node, opts, &mut commands);
                commands.push(Command::Tree);
                saw_tree = true;
            }
            Some(')') => {
                let (l, c) = cur.here();
                return Err(SyntaxError::new(
                    l,
                    c,
                    "unbalanced parentheses: unexpected `)`",
                ));
            }
            Some(_) => {
                // A bare top-level token is a single-leaf tree.
                let word = cur.token();
                commands.push(Command::Leaf(word));
                commands.push(Command::Tree);
                saw_tree = true;
            }
        }
    }
    if !saw_tree {
        return Err(SyntaxError::new(cur.line, cur.col, "empty input"));
    }
    Ok(commands)
}
