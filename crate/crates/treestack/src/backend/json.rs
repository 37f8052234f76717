//! Canonical JSON scenes — the backend-independent test surface.
//!
//! One object, keys in fixed order (`width`, `height`, `texts`,
//! `segments`), every number rendered with a fixed count of decimals
//! (round-half-even), one line, trailing newline. Byte-deterministic.

use serde::{Deserialize, Serialize};

use super::RenderStyle;
use crate::scene::Scene;

/// The JSON document shape. Texts carry the box top-left and the label
/// lines; segments carry both endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonScene {
    pub width: f64,
    pub height: f64,
    pub texts: Vec<JsonSceneText>,
    pub segments: Vec<JsonSegment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonSceneText {
    pub x: f64,
    pub y: f64,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JsonSegment {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

/// Project a scene onto the JSON document shape.
pub fn scene_to_json_doc(scene: &Scene) -> JsonScene {
    JsonScene {
        width: scene.width,
        height: scene.height,
        texts: scene
            .texts
            .iter()
            .map(|t| JsonSceneText {
                x: t.x,
                y: t.y,
                lines: t.label.lines.clone(),
            })
            .collect(),
        segments: scene
            .segments
            .iter()
            .map(|s| JsonSegment {
                x1: s.x1,
                y1: s.y1,
                x2: s.x2,
                y2: s.y2,
            })
            .collect(),
    }
}

fn fmt_fixed(v: f64, precision: usize) -> String {
    let s = format!("{v:.precision$}");
    // Never emit a signed zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_owned()
    } else {
        s
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Render a JSON document with the given number of decimals.
pub fn render_json_doc(doc: &JsonScene, precision: usize) -> String {
    let mut out = String::new();
    out.push_str("{\"width\":");
    out.push_str(&fmt_fixed(doc.width, precision));
    out.push_str(",\"height\":");
    out.push_str(&fmt_fixed(doc.height, precision));
    out.push_str(",\"texts\":[");
    for (i, t) in doc.texts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"x\":");
        out.push_str(&fmt_fixed(t.x, precision));
        out.push_str(",\"y\":");
        out.push_str(&fmt_fixed(t.y, precision));
        out.push_str(",\"lines\":[");
        for (j, line) in t.lines.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&json_str(line));
        }
        out.push_str("]}");
    }
    out.push_str("],\"segments\":[");
    for (i, s) in doc.segments.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"x1\":");
        out.push_str(&fmt_fixed(s.x1, precision));
        out.push_str(",\"y1\":");
        out.push_str(&fmt_fixed(s.y1, precision));
        out.push_str(",\"x2\":");
        out.push_str(&fmt_fixed(s.x2, precision));
        out.push_str(",\"y2\":");
        out.push_str(&fmt_fixed(s.y2, precision));
        out.push('}');
    }
    out.push_str("]}\n");
    out
}

/// Emit a scene as canonical JSON.
pub fn emit_json(scene: &Scene, style: &RenderStyle) -> String {
    render_json_doc(&scene_to_json_doc(scene), style.json_precision)
}

/// Parse a JSON scene document (as produced by [`emit_json`]).
pub fn parse_json(text: &str) -> Result<JsonScene, serde_json::Error> {
    serde_json::from_str(text)
}
