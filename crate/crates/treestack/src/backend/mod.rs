//! Scene emitters: SVG, LaTeX picture code, ASCII art, canonical JSON, and
//! a formatter that re-emits programs as the original macro calls.
//!
//! All emitters are pure and byte-deterministic for fixed inputs.

mod ascii;
mod json;
mod latex;
mod qobitex;
mod svg;

pub use ascii::emit_ascii;
pub use json::{
    emit_json, parse_json, render_json_doc, scene_to_json_doc, JsonScene, JsonSceneText,
    JsonSegment,
};
pub use latex::emit_latex_picture;
pub use qobitex::emit_qobitex;
pub use svg::emit_svg;

use thiserror::Error;

/// Rendering knobs shared by the backends.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Points per SVG pixel; the SVG canvas is `scene size / pt_per_px`.
    pub pt_per_px: f64,
    /// ASCII cell width in points.
    pub ascii_col_width_pt: f64,
    /// ASCII cell height in points.
    pub ascii_row_height_pt: f64,
    /// Decimal places in JSON output.
    pub json_precision: usize,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            pt_per_px: 1.0,
            ascii_col_width_pt: 6.0,
            ascii_row_height_pt: 12.0,
            json_precision: 4,
        }
    }
}

impl RenderStyle {
    /// Check the positivity invariants. Returns the offending field name.
    pub fn validate(&self) -> Result<(), &'static str> {
        fn positive(v: f64) -> bool {
            v.is_finite() && v > 0.0
        }
        if !positive(self.pt_per_px) {
            return Err("pt_per_px must be positive");
        }
        if !positive(self.ascii_col_width_pt) {
            return Err("ascii_col_width_pt must be positive");
        }
        if !positive(self.ascii_row_height_pt) {
            return Err("ascii_row_height_pt must be positive");
        }
        if self.json_precision == 0 {
            return Err("json_precision must be positive");
        }
        Ok(())
    }
}

/// Errors raised by emitters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    /// The segment's slope is not in the restricted set the LaTeX picture
    /// connectors use: `(0,1), (±1,1), (±2,1), (±3,1), (±4,1)`.
    #[error(
        "unrepresentable slope for LaTeX picture output: ({dx}, {dy}) is not a supported line direction"
    )]
    UnrepresentableSlope { dx: f64, dy: f64 },
}

/// Shortest decimal representation of a coordinate (used by the SVG and
/// LaTeX emitters; JSON uses fixed precision instead).
pub(crate) fn fmt_num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // normalize -0
    let mut s = format!("{v}");
    if s.ends_with(".0") {
        s.truncate(s.len() - 2);
    }
    s
}
