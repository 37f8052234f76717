//! LaTeX picture environments.
//!
//! The output is one flat `picture` with `\unitlength` set to 1 pt and the
//! y axis flipped to point upward. Labels become `\put{\makebox}` pairs
//! (multi-line labels use `\shortstack`); segments become `\put{\line}`
//! commands. `\line` only supports the restricted slope set the tree
//! connectors draw from — vertical plus `(p, 1)` with `|p| <= 4` — so a
//! scene with any other slope is rejected.

use super::{fmt_num, RenderError, RenderStyle};
use crate::scene::Scene;

const SLOPE_TOLERANCE: f64 = 1e-9;
const MAX_SLOPE_RUN: f64 = 4.0;

/// Classify a segment direction as a picture-mode slope pair and extent.
/// `dx`/`dy` are in the flipped (y-up) frame. Returns `None` for a
/// degenerate zero-length segment.
fn picture_slope(dx: f64, dy: f64) -> Result<Option<(i64, i64, f64)>, RenderError> {
    let adx = dx.abs();
    let ady = dy.abs();
    let tol = SLOPE_TOLERANCE * (1.0 + adx + ady);
    if adx <= tol && ady <= tol {
        return Ok(None);
    }
    if adx <= tol {
        return Ok(Some((0, if dy > 0.0 { 1 } else { -1 }, ady)));
    }
    if ady <= tol {
        return Err(RenderError::UnrepresentableSlope { dx, dy });
    }
    let run = dx / ady;
    let p = run.round();
    if p == 0.0 || p.abs() > MAX_SLOPE_RUN || (dx - p * ady).abs() > tol {
        return Err(RenderError::UnrepresentableSlope { dx, dy });
    }
    Ok(Some((p as i64, if dy > 0.0 { 1 } else { -1 }, adx)))
}

/// Escape label text for LaTeX.
fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("\\&"),
            '%' => out.push_str("\\%"),
            '$' => out.push_str("\\$"),
            '#' => out.push_str("\\#"),
            '_' => out.push_str("\\_"),
            '{' => out.push_str("\\{"),
            '}' => out.push_str("\\}"),
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            '[' => out.push_str("{[}"),
            ']' => out.push_str("{]}"),
            _ => out.push(c),
        }
    }
    out
}

/// Emit a scene as a LaTeX picture environment.
pub fn emit_latex_picture(scene: &Scene, _style: &RenderStyle) -> Result<String, RenderError> {
    let h = scene.height;
    let mut out = String::new();
    out.push_str("\\setlength{\\unitlength}{1pt}%\n");
    out.push_str(&format!(
        "\\begin{{picture}}({},{})\n",
        fmt_num(scene.width),
        fmt_num(scene.height)
    ));
    for t in &scene.texts {
        let y_bottom = h - (t.y + t.label.height);
        let content = match t.label.lines.len() {
            0 => String::new(),
            1 => tex_escape(&t.label.lines[0]),
            _ => {
                let stacked: Vec<String> = t.label.lines.iter().map(|l| tex_escape(l)).collect();
                format!("\\shortstack[c]{{{}}}", stacked.join("\\\\"))
            }
        };
        out.push_str(&format!(
            "\\put({},{}){{\\makebox({},{}){{{}}}}}\n",
            fmt_num(t.x),
            fmt_num(y_bottom),
            fmt_num(t.label.width),
            fmt_num(t.label.height),
            content
        ));
    }
    for s in &scene.segments {
        let y1 = h - s.y1;
        // Direction from the unflipped coordinates (flipping only negates
        // dy); subtracting from the height twice would add float noise.
        match picture_slope(s.x2 - s.x1, s.y1 - s.y2)? {
            None => {}
            Some((p, q, extent)) => {
                out.push_str(&format!(
                    "\\put({},{}){{\\line({},{}){{{}}}}}\n",
                    fmt_num(s.x1),
                    fmt_num(y1),
                    p,
                    q,
                    fmt_num(extent)
                ));
            }
        }
    }
    out.push_str("\\end{picture}\n");
    Ok(out)
}
