//! Absolute-coordinate scenes: positioned label boxes plus line segments.
//!
//! Coordinates are in points, x rightward, y downward, origin at top-left.
//! A text's `(x, y)` is the top-left corner of its label box.

use crate::metrics::LabelBox;

/// A positioned label box.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneText {
    pub x: f64,
    pub y: f64,
    pub label: LabelBox,
}

/// A straight line segment from `(x1, y1)` to `(x2, y2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

/// A laid-out tree (or a fragment of one while still on the stack).
///
/// For a completed scene all coordinates are >= 0 and `width`/`height`
/// enclose every text box and segment endpoint.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    pub width: f64,
    pub height: f64,
    pub texts: Vec<SceneText>,
    pub segments: Vec<Segment>,
}

impl Scene {
    /// An empty zero-size scene.
    pub fn empty() -> Self {
        Self::default()
    }

    /// A scene holding a single label at the origin.
    pub fn from_label(label: LabelBox) -> Self {
        Self {
            width: label.width,
            height: label.height,
            texts: vec![SceneText {
                x: 0.0,
                y: 0.0,
                label,
            }],
            segments: Vec::new(),
        }
    }

    /// Append `other`'s content translated by `(dx, dy)`. Does not touch
    /// `width`/`height`; callers recompute bounds afterwards.
    pub fn place(&mut self, other: &Scene, dx: f64, dy: f64) {
        for t in &other.texts {
            self.texts.push(SceneText {
                x: t.x + dx,
                y: t.y + dy,
                label: t.label.clone(),
            });
        }
        for s in &other.segments {
            self.segments.push(Segment {
                x1: s.x1 + dx,
                y1: s.y1 + dy,
                x2: s.x2 + dx,
                y2: s.y2 + dy,
            });
        }
    }

    /// Rightmost content x: text boxes' right edges and segment endpoints.
    /// 0 for an empty scene.
    pub fn content_max_x(&self) -> f64 {
        let mut max = 0.0f64;
        for t in &self.texts {
            max = max.max(t.x + t.label.width);
        }
        for s in &self.segments {
            max = max.max(s.x1).max(s.x2);
        }
        max
    }

    /// Leftmost content x (0 for an empty scene).
    pub fn content_min_x(&self) -> f64 {
        let mut min = f64::INFINITY;
        for t in &self.texts {
            min = min.min(t.x);
        }
        for s in &self.segments {
            min = min.min(s.x1).min(s.x2);
        }
        if min.is_finite() {
            min
        } else {
            0.0
        }
    }

    /// Stack scenes vertically, left-aligned, with `gap` points between
    /// consecutive scenes. Stacking zero scenes yields the empty scene.
    pub fn stack(scenes: &[Scene], gap: f64) -> Scene {
        let mut out = Scene::empty();
        let mut y = 0.0;
        for (i, s) in scenes.iter().enumerate() {
            if i > 0 {
                y += gap;
            }
            out.place(s, 0.0, y);
            out.width = out.width.max(s.width);
            y += s.height;
        }
        out.height = y;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{measure_label, MetricsConfig};

    #[test]
    fn stack_composes_vertically() {
        let cfg = MetricsConfig::default();
        let a = Scene::from_label(measure_label("A", &cfg));
        let b = Scene::from_label(measure_label("BB", &cfg));
        let s = Scene::stack(&[a, b], 12.0);
        assert_eq!(s.width, 12.0);
        assert_eq!(s.height, 12.0 + 12.0 + 12.0);
        assert_eq!(s.texts[0].y, 0.0);
        assert_eq!(s.texts[1].y, 24.0);
    }

    #[test]
    fn stack_of_nothing_is_empty() {
        let s = Scene::stack(&[], 12.0);
        assert_eq!(s.width, 0.0);
        assert_eq!(s.height, 0.0);
        assert!(s.texts.is_empty());
    }
}
