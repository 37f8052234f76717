//! treestack — a stack-machine tree typesetter.
//!
//! Tree programs build parse trees bottom-up on a stack: `leaf` pushes a
//! measured label box, `branch n` pops the top `n` subtrees and re-spaces
//! them under a parent label so that consecutive attachment points sit
//! exactly one branch width apart, `fake` narrows a subtree's declared
//! footprint (allowing siblings to overhang), and `tree` emits the finished
//! layout. Scenes render to SVG, LaTeX picture code, ASCII art, or
//! canonical JSON.
//!
//! ```
//! use treestack::frontend::compile_bracketed;
//! use treestack::frontend::CompileOptions;
//! use treestack::layout::{run_program, EngineConfig};
//! use treestack::metrics::MetricsConfig;
//!
//! let commands =
//!     compile_bracketed("(S (NP John) (VP runs))", &CompileOptions::default()).unwrap();
//! let out = run_program(&commands, &EngineConfig::default(), &MetricsConfig::default()).unwrap();
//! assert_eq!(out.scenes.len(), 1);
//! ```

pub mod backend;
pub mod cli;
pub mod command;
pub mod config;
pub mod frontend;
pub mod layout;
pub mod metrics;
pub mod scene;

pub use backend::{emit_ascii, emit_json, emit_latex_picture, emit_qobitex, emit_svg, RenderStyle};
pub use command::Command;
pub use config::Settings;
pub use frontend::{compile_bracketed, format_postfix, parse_postfix, CompileOptions};
pub use layout::{run_program, run_program_traced, EngineConfig, Machine, RunOutput};
pub use metrics::{measure_label, LabelBox, MetricsConfig, MetricsMode};
pub use scene::{Scene, SceneText, Segment};
