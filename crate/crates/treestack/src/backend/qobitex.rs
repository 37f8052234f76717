//! Re-emit a command list as the classic QobiTeX-style macro calls, for
//! round-tripping programs into documents that load those macros. Labels
//! are passed through verbatim (they are LaTeX source in this dialect).

use crate::command::Command;

/// Format a program as `\leaf`/`\branch`/`\faketreewidth`/`\tree` calls.
pub fn emit_qobitex(commands: &[Command]) -> String {
    let mut out = String::new();
    for cmd in commands {
        match cmd {
            Command::Leaf(label) => out.push_str(&format!("\\leaf{{{label}}}\n")),
            Command::Branch { arity, label } => {
                out.push_str(&format!("\\branch{{{arity}}}{{{label}}}\n"))
            }
            Command::FakeWidth(label) => out.push_str(&format!("\\faketreewidth{{{label}}}\n")),
            Command::Tree => out.push_str("\\tree\n"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_macro_per_command() {
        let cmds = vec![
            Command::Leaf("NP".into()),
            Command::Leaf("VP".into()),
            Command::FakeWidth("V".into()),
            Command::Branch {
                arity: 2,
                label: "S".into(),
            },
            Command::Tree,
        ];
        assert_eq!(
            emit_qobitex(&cmds),
            "\\leaf{NP}\n\\leaf{VP}\n\\faketreewidth{V}\n\\branch{2}{S}\n\\tree\n"
        );
    }

    #[test]
    fn labels_pass_through_verbatim() {
        let cmds = vec![Command::Leaf("N\\\\sg".into())];
        assert_eq!(emit_qobitex(&cmds), "\\leaf{N\\\\sg}\n");
    }
}
