//! ASCII-art rasterization.
//!
//! The scene is sampled onto a character grid whose cells are
//! `ascii_col_width_pt` by `ascii_row_height_pt`. Segments are drawn first
//! with `/`, `\`, `|` and `_` chosen from the slope in points; label text
//! is drawn last and wins cell conflicts.

use super::RenderStyle;
use crate::scene::Scene;

struct Grid {
    rows: Vec<Vec<char>>,
}

impl Grid {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn put(&mut self, row: i64, col: i64, c: char, overwrite: bool) {
        if row < 0 || col < 0 {
            return; // content left of / above the canvas is dropped
        }
        let (row, col) = (row as usize, col as usize);
        if self.rows.len() <= row {
            self.rows.resize_with(row + 1, Vec::new);
        }
        let line = &mut self.rows[row];
        if line.len() <= col {
            line.resize(col + 1, ' ');
        }
        if overwrite || line[col] == ' ' {
            line[col] = c;
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: String = row.iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn segment_char(dx: f64, dy: f64) -> char {
    let adx = dx.abs();
    if adx < 1e-9 {
        return '|';
    }
    let slope = dy / dx;
    if slope.abs() >= 2.0 {
        '|'
    } else if slope.abs() <= 0.125 {
        '_'
    } else if dx * dy < 0.0 {
        '/'
    } else {
        '\\'
    }
}

/// Emit a scene as ASCII art. An empty scene is the empty string.
pub fn emit_ascii(scene: &Scene, style: &RenderStyle) -> String {
    if scene.texts.is_empty() && scene.segments.is_empty() {
        return String::new();
    }
    let colw = style.ascii_col_width_pt;
    let rowh = style.ascii_row_height_pt;
    let cell =
        |x: f64, y: f64| -> (i64, i64) { ((y / rowh).round() as i64, (x / colw).round() as i64) };

    let mut grid = Grid::new();
    for s in &scene.segments {
        let dx = s.x2 - s.x1;
        let dy = s.y2 - s.y1;
        let c = segment_char(dx, dy);
        let len = (dx * dx + dy * dy).sqrt();
        let step = (colw.min(rowh) / 2.0).max(1e-6);
        let steps = (len / step).ceil().max(1.0) as usize;
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let (row, col) = cell(s.x1 + t * dx, s.y1 + t * dy);
            grid.put(row, col, c, false);
        }
    }
    for t in &scene.texts {
        let line_h = t.label.line_height();
        for (i, line) in t.label.lines.iter().enumerate() {
            let lx = t.x + t.label.left_inset(i);
            let ly = t.y + i as f64 * line_h;
            let (row, col) = cell(lx, ly);
            for (k, c) in line.chars().enumerate() {
                grid.put(row, col + k as i64, c, true);
            }
        }
    }
    grid.render()
}
