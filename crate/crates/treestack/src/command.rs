//! The four instructions of the tree-building machine.

/// One instruction of a postfix tree program.
///
/// Programs build trees bottom-up on a stack: `Leaf` pushes a labelled box,
/// `Branch` pops `arity` subtrees (top of stack = rightmost daughter) and
/// pushes their combination under a parent label, `FakeWidth` overrides the
/// declared footprint of the top subtree, and `Tree` emits and pops the top
/// subtree as a finished scene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Push a leaf with the given label text.
    Leaf(String),
    /// Pop `arity` subtrees and push their combination under `label`.
    Branch { arity: u32, label: String },
    /// Override the top subtree's declared width with a label footprint.
    FakeWidth(String),
    /// Emit the top subtree as a finished scene and pop it.
    Tree,
}
