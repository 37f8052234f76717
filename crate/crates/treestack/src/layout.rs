//! The layout stack machine.
//!
//! Each stack entry is a laid-out subtree together with three bookkeeping
//! lengths used when combining siblings:
//!
//! * `offset` — distance from the subtree's declared left edge to its
//!   attachment point (where a parent connector lands);
//! * `declared_width` — the width the subtree claims for spacing purposes
//!   (differs from `actual_width` only after a fake-width override);
//! * `shift` — how far the declared left edge sits right of the actual
//!   left edge after a fake-width override.
//!
//! A branch reduction pops the rightmost `n` subtrees and re-spaces them so
//! that consecutive attachment points sit exactly one branch width `B`
//! apart, where `B` is the maximum pairwise required spacing. The parent
//! label is centered over the attachment span; if it would stick out past
//! the left edge, it is pinned at 0 and the daughter row is shifted right
//! instead. Connector lines run from each attachment point up to the apex
//! under the parent label.

use thiserror::Error;

use crate::command::Command;
use crate::metrics::{measure_label, LabelBox, MetricsConfig};
use crate::scene::{Scene, SceneText, Segment};

/// Stack depth limit in strict mode.
pub const MAX_DEPTH: usize = 20;
/// Branch arity limit in strict mode.
pub const MAX_ARITY: usize = 5;

/// Engine limits and numeric policy.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Enforce the depth-20 and arity-5 limits as hard errors.
    pub strict: bool,
    /// Lower bound applied to computed branch widths (see
    /// [`Diagnostic::BranchWidthClamped`]).
    pub min_branch_width: f64,
    /// Tolerance used by consumers when comparing coordinates.
    pub epsilon: f64,
    /// Allow programs that leave subtrees on the stack at the end.
    pub allow_partial: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            strict: true,
            min_branch_width: 1.0,
            epsilon: 1e-9,
            allow_partial: false,
        }
    }
}

impl EngineConfig {
    /// A config with the depth and arity limits lifted.
    pub fn extended() -> Self {
        Self {
            strict: false,
            ..Self::default()
        }
    }
}

/// One pushed subtree.
#[derive(Debug, Clone)]
pub struct StackEntry {
    /// Scene fragment with local origin at its top-left.
    pub subscene: Scene,
    /// Left edge of the declared box to the attachment point, in pt.
    pub offset: f64,
    /// Declared-left-edge minus actual-left-edge after a fake width, in pt.
    pub shift: f64,
    /// Width claimed for sibling spacing, in pt.
    pub declared_width: f64,
    /// True box width, in pt.
    pub actual_width: f64,
    /// Box height, in pt.
    pub height: f64,
}

/// Non-fatal layout events.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    /// A branch width came out below the configured minimum (possible with
    /// zero-width labels or extreme fake shifts) and was clamped.
    BranchWidthClamped {
        command_index: Option<usize>,
        computed: f64,
        clamped_to: f64,
    },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::BranchWidthClamped {
                command_index,
                computed,
                clamped_to,
            } => {
                if let Some(i) = command_index {
                    write!(f, "command {i}: ")?;
                }
                write!(f, "branch width {computed} clamped to minimum {clamped_to}")
            }
        }
    }
}

/// Geometry of one branch reduction, recorded for inspection and tests.
/// Coordinates are local to the combined subscene produced by the branch.
#[derive(Debug, Clone)]
pub struct BranchRecord {
    pub arity: usize,
    /// Effective branch width `B` (after any clamping); `None` for arity 1.
    pub branch_width: Option<f64>,
    pub clamped: bool,
    pub connector_height: f64,
    /// Apex point where all connector lines of this branch meet.
    pub apex: (f64, f64),
    /// Attachment xs, left to right.
    pub attachments: Vec<f64>,
    /// Placed daughter extents `(x, x + content width)`, left to right.
    pub daughter_spans: Vec<(f64, f64)>,
}

/// Errors raised by the machine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("tree stack overflow: push would exceed the depth limit of {limit}")]
    DepthExceeded { limit: usize },
    #[error("tree stack underflow: needed {needed} subtree(s), stack has {depth}")]
    Underflow { needed: usize, depth: usize },
    #[error("can't handle {arity} branching: strict mode supports arity up to {limit}")]
    ArityUnsupported { arity: usize, limit: usize },
    #[error("branch arity must be at least 1")]
    ArityZero,
    #[error("fake width applied to an empty stack")]
    EmptyStack,
    #[error("{remaining} subtree(s) left on the stack at end of program")]
    ResidualStack { remaining: usize },
}

/// A [`LayoutError`] annotated with where in the program it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("at command {index}: {error}")]
    At { index: usize, error: LayoutError },
    #[error("at end of program: {error}")]
    AtEnd { error: LayoutError },
}

impl ProgramError {
    /// The underlying layout error.
    pub fn layout_error(&self) -> &LayoutError {
        match self {
            ProgramError::At { error, .. } | ProgramError::AtEnd { error } => error,
        }
    }
}

/// The tree-building stack machine.
///
/// A machine is confined to one execution context at a time; distinct runs
/// may proceed in parallel, and completed scenes are freely shareable.
#[derive(Debug, Default)]
pub struct Machine {
    stack: Vec<StackEntry>,
    diagnostics: Vec<Diagnostic>,
    branch_records: Vec<BranchRecord>,
    command_index: Option<usize>,
}

impl Machine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current stack depth.
    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    /// The stack, bottom first; the last entry is the most recently pushed
    /// (the rightmost daughter of the next branch).
    pub fn stack(&self) -> &[StackEntry] {
        &self.stack
    }

    /// Diagnostics accumulated so far.
    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    /// Branch geometry records accumulated so far.
    pub fn branch_records(&self) -> &[BranchRecord] {
        &self.branch_records
    }

    /// Index of the program command being executed, used to annotate
    /// diagnostics. Cleared between manual op calls.
    pub fn set_command_index(&mut self, index: Option<usize>) {
        self.command_index = index;
    }

    /// Push a leaf. Its attachment point is its box center.
    pub fn push_leaf(&mut self, label: LabelBox, cfg: &EngineConfig) -> Result<(), LayoutError> {
        if cfg.strict && self.stack.len() >= MAX_DEPTH {
            return Err(LayoutError::DepthExceeded { limit: MAX_DEPTH });
        }
        let offset = label.width / 2.0;
        let width = label.width;
        let height = label.height;
        self.stack.push(StackEntry {
            subscene: Scene::from_label(label),
            offset,
            shift: 0.0,
            declared_width: width,
            actual_width: width,
            height,
        });
        Ok(())
    }

    /// Override the top subtree's declared footprint with a label of the
    /// given width centered at its attachment point: the declared width
    /// becomes `offset + w/2` and the shift `offset - w/2` (possibly
    /// negative). The drawn content is untouched, so a later sibling may
    /// overhang it.
    pub fn apply_fake_width(&mut self, label: &LabelBox) -> Result<(), LayoutError> {
        let top = self.stack.last_mut().ok_or(LayoutError::EmptyStack)?;
        let half = label.width / 2.0;
        top.declared_width = top.offset + half;
        top.shift = top.offset - half;
        Ok(())
    }

    /// Pop `arity` subtrees (top = rightmost daughter) and push their
    /// combination under `label`.
    pub fn reduce_branch(
        &mut self,
        arity: usize,
        label: LabelBox,
        cfg: &EngineConfig,
        metrics: &MetricsConfig,
    ) -> Result<(), LayoutError> {
        if arity == 0 {
            return Err(LayoutError::ArityZero);
        }
        if cfg.strict && arity > MAX_ARITY {
            return Err(LayoutError::ArityUnsupported {
                arity,
                limit: MAX_ARITY,
            });
        }
        if self.stack.len() < arity {
            return Err(LayoutError::Underflow {
                needed: arity,
                depth: self.stack.len(),
            });
        }

        // e[0] = rightmost daughter (top of stack), e[arity-1] = leftmost.
        let mut e: Vec<StackEntry> = Vec::with_capacity(arity);
        for _ in 0..arity {
            e.push(self.stack.pop().expect("depth checked above"));
        }
        let n = arity;

        let mut clamped = false;
        let (branch_width, gaps, apex_rel, conn_h) = if n == 1 {
            // Degenerate case: a single vertical connector 2 ex tall. The
            // daughter's shift and declared width are ignored here.
            (None, Vec::new(), e[0].offset, 2.0 * metrics.ex_pt)
        } else {
            // Pairwise required spacings between adjacent siblings if their
            // declared boxes abutted.
            let spacings: Vec<f64> = (1..n)
                .map(|i| e[i].declared_width + e[i - 1].offset - e[i - 1].shift - e[i].offset)
                .collect();
            let computed = spacings.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let b = if computed < cfg.min_branch_width {
                clamped = true;
                self.diagnostics.push(Diagnostic::BranchWidthClamped {
                    command_index: self.command_index,
                    computed,
                    clamped_to: cfg.min_branch_width,
                });
                cfg.min_branch_width
            } else {
                computed
            };
            // Gap inserted before daughter i (counting from the right).
            let gaps: Vec<f64> = (1..n)
                .map(|i| b - spacings[i - 1] - e[i - 1].shift)
                .collect();
            let apex_rel = e[n - 1].offset + (n - 1) as f64 / 2.0 * b;
            let conn_h = if n == 2 { 0.25 * b } else { 0.5 * b };
            (Some(b), gaps, apex_rel, conn_h)
        };

        // Center the parent label over the apex, pinning it at the left
        // edge (and shifting the daughter row right by `g`) if it would
        // stick out.
        let mut parent_left = apex_rel - label.width / 2.0;
        let mut g = 0.0;
        if parent_left < 0.0 {
            g = -parent_left;
            parent_left = 0.0;
        }
        let parent_extent = parent_left + label.width;
        let apex_x = g + apex_rel;
        let row_top = label.height + conn_h;

        // Daughter x positions, rightmost first to mirror `e`.
        let mut xs = vec![0.0f64; n];
        xs[n - 1] = g;
        for k in (1..n).rev() {
            xs[k - 1] = xs[k] + e[k].declared_width + gaps[k - 1];
        }

        // The rightmost daughter contributes its actual width to the row;
        // the others were already advanced by declared width.
        let row_width = if n == 1 {
            g + e[0].actual_width
        } else {
            xs[0] + e[0].actual_width
        };
        let tree_width = row_width.max(parent_extent);
        let max_daughter_height = e.iter().map(|d| d.height).fold(0.0, f64::max);
        let height = label.height + conn_h + max_daughter_height;

        // Compose: parent label, connector lines left to right, then the
        // daughter subscenes left to right.
        let mut scene = Scene {
            width: 0.0,
            height,
            texts: vec![SceneText {
                x: parent_left,
                y: 0.0,
                label: label.clone(),
            }],
            segments: Vec::new(),
        };
        let attachments: Vec<f64> = (0..n).rev().map(|k| xs[k] + e[k].offset).collect();
        for &a in &attachments {
            scene.segments.push(Segment {
                x1: a,
                y1: row_top,
                x2: apex_x,
                y2: row_top - conn_h,
            });
        }
        for k in (0..n).rev() {
            scene.place(&e[k].subscene, xs[k], row_top);
        }
        // Content may overhang the nominal box after fake widths; the scene
        // keeps enclosing bounds while `actual_width` keeps the box width.
        scene.width = tree_width.max(scene.content_max_x());

        self.branch_records.push(BranchRecord {
            arity: n,
            branch_width,
            clamped,
            connector_height: conn_h,
            apex: (apex_x, row_top - conn_h),
            attachments,
            daughter_spans: (0..n)
                .rev()
                .map(|k| (xs[k], xs[k] + e[k].subscene.width))
                .collect(),
        });

        self.stack.push(StackEntry {
            subscene: scene,
            offset: parent_left + label.width / 2.0,
            shift: 0.0,
            declared_width: tree_width,
            actual_width: tree_width,
            height,
        });
        Ok(())
    }

    /// Emit the top subtree as a completed scene and pop it. Entries below
    /// are untouched, so the new top keeps all four of its fields.
    pub fn pop_tree(&mut self) -> Result<Scene, LayoutError> {
        let entry = self.stack.pop().ok_or(LayoutError::Underflow {
            needed: 1,
            depth: 0,
        })?;
        Ok(entry.subscene)
    }
}

/// Scenes and diagnostics produced by a program run.
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub scenes: Vec<Scene>,
    pub diagnostics: Vec<Diagnostic>,
}

fn run_machine(
    commands: &[Command],
    cfg: &EngineConfig,
    metrics: &MetricsConfig,
) -> Result<(RunOutput, Machine), ProgramError> {
    let mut machine = Machine::new();
    let mut scenes = Vec::new();
    for (index, cmd) in commands.iter().enumerate() {
        machine.set_command_index(Some(index));
        let result = match cmd {
            Command::Leaf(text) => machine.push_leaf(measure_label(text, metrics), cfg),
            Command::FakeWidth(text) => machine.apply_fake_width(&measure_label(text, metrics)),
            Command::Branch { arity, label } => {
                machine.reduce_branch(*arity as usize, measure_label(label, metrics), cfg, metrics)
            }
            Command::Tree => machine.pop_tree().map(|scene| scenes.push(scene)),
        };
        result.map_err(|error| ProgramError::At { index, error })?;
    }
    if machine.depth() > 0 && !cfg.allow_partial {
        return Err(ProgramError::AtEnd {
            error: LayoutError::ResidualStack {
                remaining: machine.depth(),
            },
        });
    }
    let diagnostics = machine.diagnostics.clone();
    Ok((
        RunOutput {
            scenes,
            diagnostics,
        },
        machine,
    ))
}

/// Execute a program, returning the emitted scenes and any diagnostics.
///
/// Deterministic: a pure function of `(commands, cfg, metrics)`.
pub fn run_program(
    commands: &[Command],
    cfg: &EngineConfig,
    metrics: &MetricsConfig,
) -> Result<RunOutput, ProgramError> {
    run_machine(commands, cfg, metrics).map(|(out, _)| out)
}

/// Like [`run_program`] but also returns the per-branch geometry records.
pub fn run_program_traced(
    commands: &[Command],
    cfg: &EngineConfig,
    metrics: &MetricsConfig,
) -> Result<(RunOutput, Vec<BranchRecord>), ProgramError> {
    run_machine(commands, cfg, metrics).map(|(out, machine)| (out, machine.branch_records))
}
