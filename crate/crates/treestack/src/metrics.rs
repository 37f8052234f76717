//! Label measurement under a deterministic font-metrics model.
//!
//! Labels are multi-line boxes: lines are separated by the two-character
//! sequence `\\` or by a literal newline, and every line is horizontally
//! centered within the box. Instead of loading real fonts, widths come from
//! a fixed per-character factor (mono mode) or a per-character width table
//! with a fallback factor, so measurement is reproducible everywhere.

use std::collections::BTreeMap;

/// How per-character widths are determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsMode {
    /// Every character is `char_width_factor * font_size` wide.
    Mono,
    /// Characters listed in the width table use their own factor;
    /// everything else falls back to `char_width_factor`.
    WidthTable,
}

/// The metrics model used to measure label text.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsConfig {
    /// Font size in points.
    pub font_size: f64,
    /// Width of one character as a fraction of the font size.
    pub char_width_factor: f64,
    /// Height of one line as a fraction of the font size.
    pub line_height_factor: f64,
    /// Size of the `ex` unit in points (unary connectors are 2 ex tall).
    pub ex_pt: f64,
    /// Measurement mode.
    pub mode: MetricsMode,
    /// Per-character width factors, consulted in `WidthTable` mode.
    pub width_table: BTreeMap<char, f64>,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        Self {
            font_size: 10.0,
            char_width_factor: 0.6,
            line_height_factor: 1.2,
            ex_pt: 4.3,
            mode: MetricsMode::Mono,
            width_table: BTreeMap::new(),
        }
    }
}

impl MetricsConfig {
    /// A config whose width table maps each listed character to a factor.
    /// Convenient for tests that need exact label widths.
    pub fn with_width_table<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (char, f64)>,
    {
        Self {
            mode: MetricsMode::WidthTable,
            width_table: entries.into_iter().collect(),
            ..Self::default()
        }
    }

    /// Height of one text line in points.
    pub fn line_height(&self) -> f64 {
        self.line_height_factor * self.font_size
    }

    fn char_width(&self, c: char) -> f64 {
        let factor = match self.mode {
            MetricsMode::Mono => self.char_width_factor,
            MetricsMode::WidthTable => self
                .width_table
                .get(&c)
                .copied()
                .unwrap_or(self.char_width_factor),
        };
        factor * self.font_size
    }

    /// Check the positivity invariants. Returns the offending field name.
    pub fn validate(&self) -> Result<(), &'static str> {
        fn positive(v: f64) -> bool {
            v.is_finite() && v > 0.0
        }
        if !positive(self.font_size) {
            return Err("font_size must be positive");
        }
        if !positive(self.char_width_factor) {
            return Err("char_width_factor must be positive");
        }
        if !positive(self.line_height_factor) {
            return Err("line_height_factor must be positive");
        }
        if !positive(self.ex_pt) {
            return Err("ex_pt must be positive");
        }
        Ok(())
    }
}

/// A measured multi-line label.
///
/// `width` is the maximum line width (0 with no lines), `height` is
/// `lines.len() * line_height_factor * font_size`. When rendered, each line
/// is centered within `width`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelBox {
    pub lines: Vec<String>,
    pub line_widths: Vec<f64>,
    pub width: f64,
    pub height: f64,
}

impl LabelBox {
    /// An empty zero-line, zero-size box.
    pub fn empty() -> Self {
        Self {
            lines: Vec::new(),
            line_widths: Vec::new(),
            width: 0.0,
            height: 0.0,
        }
    }

    /// Height of one line cell, 0 for an empty box.
    pub fn line_height(&self) -> f64 {
        if self.lines.is_empty() {
            0.0
        } else {
            self.height / self.lines.len() as f64
        }
    }

    /// Left inset of line `i` when centered: `(width - line_widths[i]) / 2`.
    pub fn left_inset(&self, i: usize) -> f64 {
        (self.width - self.line_widths[i]) / 2.0
    }
}

/// Split label text into lines at `\\` pairs and literal newlines.
/// Empty text has no lines at all.
fn split_lines(text: &str) -> Vec<&str> {
    if text.is_empty() {
        return Vec::new();
    }
    let bytes = text.as_bytes();
    let mut lines = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'\\' && i + 1 < bytes.len() && bytes[i + 1] == b'\\' {
            lines.push(&text[start..i]);
            i += 2;
            start = i;
        } else if bytes[i] == b'\n' {
            lines.push(&text[start..i]);
            i += 1;
            start = i;
        } else {
            i += 1;
        }
    }
    lines.push(&text[start..]);
    lines
}

/// Measure label text into a [`LabelBox`].
///
/// Pure: identical `(text, cfg)` always produce the identical box.
pub fn measure_label(text: &str, cfg: &MetricsConfig) -> LabelBox {
    let lines: Vec<String> = split_lines(text).into_iter().map(str::to_owned).collect();
    let line_widths: Vec<f64> = lines
        .iter()
        .map(|line| line.chars().map(|c| cfg.char_width(c)).sum())
        .collect();
    let width = line_widths.iter().copied().fold(0.0, f64::max);
    let height = lines.len() as f64 * cfg.line_height();
    LabelBox {
        lines,
        line_widths,
        width,
        height,
    }
}
