//! The `treestack` command-line tool.
//!
//! `treestack render` reads a tree program (postfix DSL or bracketed
//! notation), lays it out, and writes one rendered artifact to stdout or a
//! file. Diagnostics go to stderr only. Exit codes: 0 success, 1 syntax or
//! config errors, 2 layout or render errors, 3 I/O errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::backend::{
    emit_ascii, emit_json, emit_latex_picture, emit_qobitex, emit_svg, RenderError, RenderStyle,
};
use crate::command::Command;
use crate::config::{apply_config, ConfigError, Settings};
use crate::frontend::{compile_bracketed, parse_postfix, CompileOptions, SyntaxError};
use crate::layout::{run_program, ProgramError};
use crate::scene::Scene;

/// Exit code for syntax and config errors.
pub const EXIT_SYNTAX: i32 = 1;
/// Exit code for layout and render errors.
pub const EXIT_LAYOUT: i32 = 2;
/// Exit code for I/O errors.
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "treestack",
    version,
    about = "Stack-machine tree typesetter",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Lay out a tree program and render it.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SyntaxArg {
    /// Postfix DSL: leaf / branch / fake / tree statements.
    Postfix,
    /// Bracketed notation: (LABEL child child ...).
    Bracketed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Svg,
    Tex,
    Ascii,
    Json,
    Qobitex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MultiTreeArg {
    /// Compose all trees into one document, stacked vertically.
    Stacked,
    /// Write one file per tree; the output path must contain `{i}`.
    SeparateFiles,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Input file; `-` or absent reads stdin.
    input: Option<PathBuf>,

    /// Input syntax.
    #[arg(long, value_enum, default_value = "postfix")]
    syntax: SyntaxArg,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,

    /// Output path (default stdout). With `--multi-tree separate-files`
    /// this is a template containing `{i}`.
    #[arg(short = 'o', long)]
    output: Option<String>,

    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Lift the strict depth-20 / arity-5 limits.
    #[arg(long)]
    extended: bool,

    /// Font size in points.
    #[arg(long)]
    font_size: Option<f64>,

    /// Collapse preterminal nodes into two-line leaves (bracketed input).
    #[arg(long)]
    merge_preterminals: bool,

    /// How to handle programs that emit several trees.
    #[arg(long, value_enum, default_value = "stacked")]
    multi_tree: MultiTreeArg,

    /// Vertical gap between stacked trees, in points.
    #[arg(long)]
    tree_gap: Option<f64>,

    /// Tolerate subtrees left on the stack at end of program.
    #[arg(long)]
    allow_partial: bool,
}

#[derive(Debug)]
enum CliError {
    Syntax(SyntaxError),
    Config(ConfigError),
    Layout(ProgramError),
    Render(RenderError),
    Io(String),
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Config(_) | CliError::Usage(_) => EXIT_SYNTAX,
            CliError::Layout(_) | CliError::Render(_) => EXIT_LAYOUT,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Syntax(e) => write!(f, "syntax error: {e}"),
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Layout(e) => write!(f, "layout error: {e}"),
            CliError::Render(e) => write!(f, "render error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Usage(e) => write!(f, "usage error: {e}"),
        }
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Syntax(e)
    }
}
impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}
impl From<ProgramError> for CliError {
    fn from(e: ProgramError) -> Self {
        CliError::Layout(e)
    }
}
impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Render(e)
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&str>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write stdout: {e}"))),
        Some(p) => {
            std::fs::write(p, content).map_err(|e| CliError::Io(format!("cannot write {p}: {e}")))
        }
    }
}

fn emit_scene(scene: &Scene, format: FormatArg, style: &RenderStyle) -> Result<String, CliError> {
    Ok(match format {
        FormatArg::Svg => emit_svg(scene, style),
        FormatArg::Tex => emit_latex_picture(scene, style)?,
        FormatArg::Ascii => emit_ascii(scene, style),
        FormatArg::Json => emit_json(scene, style),
        FormatArg::Qobitex => unreachable!("handled before layout"),
    })
}

fn render(
    args: &RenderArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    // Settings: defaults, then config file, then flags.
    let mut settings = Settings::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        apply_config(&mut settings, &text)?;
    }
    if args.extended {
        settings.engine.strict = false;
    }
    if args.allow_partial {
        settings.engine.allow_partial = true;
    }
    if let Some(fs) = args.font_size {
        if !(fs.is_finite() && fs > 0.0) {
            return Err(CliError::Usage("--font-size must be positive".into()));
        }
        settings.metrics.font_size = fs;
    }
    if let Some(gap) = args.tree_gap {
        if gap < 0.0 {
            return Err(CliError::Usage("--tree-gap must not be negative".into()));
        }
        settings.tree_gap = gap;
    }
    settings
        .metrics
        .validate()
        .map_err(|m| CliError::Usage(m.to_owned()))?;
    settings
        .style
        .validate()
        .map_err(|m| CliError::Usage(m.to_owned()))?;

    let text = read_input(&args.input)?;
    let commands: Vec<Command> = match args.syntax {
        SyntaxArg::Postfix => parse_postfix(&text)?,
        SyntaxArg::Bracketed => compile_bracketed(
            &text,
            &CompileOptions {
                merge_preterminals: args.merge_preterminals,
            },
        )?,
    };

    // The qobitex format is a formatter over the command list; no layout.
    if args.format == FormatArg::Qobitex {
        return write_output(args.output.as_deref(), &emit_qobitex(&commands), stdout);
    }

    let output = run_program(&commands, &settings.engine, &settings.metrics)?;
    for d in &output.diagnostics {
        let _ = writeln!(stderr, "warning: {d}");
    }

    match args.multi_tree {
        MultiTreeArg::Stacked => {
            let scene = if output.scenes.len() == 1 {
                output.scenes.into_iter().next().expect("length checked")
            } else {
                Scene::stack(&output.scenes, settings.tree_gap)
            };
            let rendered = emit_scene(&scene, args.format, &settings.style)?;
            write_output(args.output.as_deref(), &rendered, stdout)
        }
        MultiTreeArg::SeparateFiles => {
            let template = args.output.as_deref().ok_or_else(|| {
                CliError::Usage("--multi-tree separate-files requires --output".into())
            })?;
            if output.scenes.len() > 1 && !template.contains("{i}") {
                return Err(CliError::Usage(
                    "output path must contain `{i}` when several trees are emitted".into(),
                ));
            }
            for (i, scene) in output.scenes.iter().enumerate() {
                let rendered = emit_scene(scene, args.format, &settings.style)?;
                let path = template.replace("{i}", &(i + 1).to_string());
                write_output(Some(&path), &rendered, stdout)?;
            }
            Ok(())
        }
    }
}

/// Run the CLI on explicit arguments and streams; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_SYNTAX
                }
            };
        }
    };
    match cli.command {
        Cmd::Render(args) => match render(&args, stdout, stderr) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                e.exit_code()
            }
        },
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout, &mut stderr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            ["treestack"].iter().copied().chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write as _;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn renders_bracketed_to_json() {
        let f = write_temp("(S (NP John) (VP runs))");
        let (code, out, err) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--syntax",
            "bracketed",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.starts_with("{\"width\":"));
        assert!(err.is_empty());
    }

    #[test]
    fn underflow_maps_to_exit_2_and_names_the_command() {
        let f = write_temp("branch 2 \"X\"");
        let (code, out, err) = run_str(&["render", f.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_LAYOUT);
        assert!(out.is_empty());
        assert!(err.contains("underflow"));
        assert!(err.contains("command 0"));
    }

    #[test]
    fn syntax_error_maps_to_exit_1() {
        let f = write_temp("leap \"X\"");
        let (code, _, err) = run_str(&["render", f.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_SYNTAX);
        assert!(err.contains("unknown command"));
    }

    #[test]
    fn missing_file_maps_to_exit_3() {
        let (code, _, err) = run_str(&["render", "/nonexistent/input.t"]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn unrepresentable_slope_maps_to_exit_2() {
        // A 7-ary branch in extended mode produces (6,1)-slope connectors,
        // outside the restricted picture set.
        let mut program = String::new();
        for _ in 0..7 {
            program.push_str("leaf \"x\"\n");
        }
        program.push_str("branch 7 \"S\"\ntree\n");
        let f = write_temp(&program);
        let (code, _, err) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--extended",
            "--format",
            "tex",
        ]);
        assert_eq!(code, EXIT_LAYOUT, "stderr: {err}");
        assert!(err.contains("unrepresentable slope"));
    }

    #[test]
    fn ex_pt_flows_into_the_unary_connector() {
        let cfg = write_temp("ex_pt = 5.0\n");
        let f = write_temp("leaf \"a\"\nbranch 1 \"X\"\ntree\n");
        let (code, out, _) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--config",
            cfg.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        // Connector is 2 ex = 10 pt tall: from the daughter row top at 22
        // up to the label bottom at 12.
        assert!(out.contains("\"y1\":22.0000"), "got: {out}");
        assert!(out.contains("\"y2\":12.0000"), "got: {out}");
    }

    #[test]
    fn qobitex_format_skips_layout() {
        // This program would underflow, but qobitex is a pure formatter.
        let f = write_temp("branch 2 \"X\"");
        let (code, out, _) =
            run_str(&["render", f.path().to_str().unwrap(), "--format", "qobitex"]);
        assert_eq!(code, 0);
        assert_eq!(out, "\\branch{2}{X}\n");
    }

    #[test]
    fn config_file_is_applied_and_flags_override() {
        let cfg = write_temp("font_size = 12\n");
        let f = write_temp("leaf \"A\"\ntree\n");
        let (code, out, _) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--config",
            cfg.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        // 1 char at 12pt: width 7.2
        assert!(out.contains("\"width\":7.2000"), "got: {out}");

        let (code, out, _) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--config",
            cfg.path().to_str().unwrap(),
            "--font-size",
            "20",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\"width\":12.0000"), "got: {out}");
    }

    #[test]
    fn bad_config_maps_to_exit_1() {
        let cfg = write_temp("bogus = 1\n");
        let f = write_temp("leaf \"A\"\ntree\n");
        let (code, _, err) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--config",
            cfg.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_SYNTAX);
        assert!(err.contains("unknown key"));
    }

    #[test]
    fn allow_partial_tolerates_residual_stack() {
        let f = write_temp("leaf \"A\"\n");
        let (code, _, err) = run_str(&["render", f.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_LAYOUT);
        assert!(err.contains("left on the stack"));
        let (code, out, _) = run_str(&["render", f.path().to_str().unwrap(), "--allow-partial"]);
        assert_eq!(code, 0);
        // No trees emitted: an empty scene.
        assert!(out.contains("\"width\":0.0000"));
    }

    #[test]
    fn separate_files_requires_placeholder() {
        let f = write_temp("(X) (Y)");
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("out.json");
        let (code, _, err) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--syntax",
            "bracketed",
            "--multi-tree",
            "separate-files",
            "-o",
            bad.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_SYNTAX);
        assert!(err.contains("{i}"));

        let tpl = dir.path().join("out-{i}.json");
        let (code, _, _) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--syntax",
            "bracketed",
            "--multi-tree",
            "separate-files",
            "-o",
            tpl.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(dir.path().join("out-1.json").exists());
        assert!(dir.path().join("out-2.json").exists());
    }

    #[test]
    fn stacked_forest_renders_one_document() {
        let f = write_temp("(X) (Y)");
        let (code, out, _) = run_str(&[
            "render",
            f.path().to_str().unwrap(),
            "--syntax",
            "bracketed",
        ]);
        assert_eq!(code, 0);
        // Two leaf scenes of height 12 with the default 12pt gap.
        assert!(out.contains("\"height\":36.0000"), "got: {out}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["render", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("--format"));
    }
}
