//! Standalone SVG documents.
//!
//! The viewBox stays in scene points; the document width/height are scaled
//! by `1 / pt_per_px`. Each label line becomes one `<text>` element,
//! middle-anchored at the line's center, so centering survives any viewer's
//! font substitution. Segments become `<line>` elements.

use super::{fmt_num, RenderStyle};
use crate::scene::Scene;

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

/// Emit a scene as a standalone SVG document.
pub fn emit_svg(scene: &Scene, style: &RenderStyle) -> String {
    let px_w = scene.width / style.pt_per_px;
    let px_h = scene.height / style.pt_per_px;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt_num(px_w),
        fmt_num(px_h),
        fmt_num(scene.width),
        fmt_num(scene.height)
    ));
    for s in &scene.segments {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"0.5\"/>\n",
            fmt_num(s.x1),
            fmt_num(s.y1),
            fmt_num(s.x2),
            fmt_num(s.y2)
        ));
    }
    for t in &scene.texts {
        let line_h = t.label.line_height();
        // Nominal font size; recovers the configured size under the
        // default line-height factor.
        let font_size = line_h / 1.2;
        let center_x = t.x + t.label.width / 2.0;
        for (i, line) in t.label.lines.iter().enumerate() {
            let center_y = t.y + (i as f64 + 0.5) * line_h;
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"monospace\" font-size=\"{}\">{}</text>\n",
                fmt_num(center_x),
                fmt_num(center_y),
                fmt_num(font_size),
                xml_escape(line)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{measure_label, MetricsConfig};

    #[test]
    fn single_leaf_has_one_text_no_lines() {
        let scene = Scene::from_label(measure_label("A", &MetricsConfig::default()));
        let svg = emit_svg(&scene, &RenderStyle::default());
        assert_eq!(svg.matches("<text").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
        assert!(svg.contains(">A</text>"));
    }

    #[test]
    fn empty_scene_is_a_valid_empty_document() {
        let svg = emit_svg(&Scene::empty(), &RenderStyle::default());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("width=\"0\" height=\"0\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<text").count(), 0);
    }

    #[test]
    fn canvas_scales_by_pt_per_px() {
        let mut scene = Scene::empty();
        scene.width = 30.0;
        scene.height = 20.0;
        let style = RenderStyle {
            pt_per_px: 2.0,
            ..RenderStyle::default()
        };
        let svg = emit_svg(&scene, &style);
        assert!(svg.contains("width=\"15\" height=\"10\" viewBox=\"0 0 30 20\""));
    }

    #[test]
    fn golden_binary_scene_lines_meet_at_the_apex() {
        use crate::scene::Segment;
        let mut scene = Scene::empty();
        scene.width = 30.0;
        scene.height = 27.75;
        scene.segments.push(Segment {
            x1: 10.0,
            y1: 15.75,
            x2: 17.5,
            y2: 12.0,
        });
        scene.segments.push(Segment {
            x1: 25.0,
            y1: 15.75,
            x2: 17.5,
            y2: 12.0,
        });
        let svg = emit_svg(&scene, &RenderStyle::default());
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("x2=\"17.5\" y2=\"12\"").count(), 2);
    }

    #[test]
    fn text_content_is_escaped() {
        let scene = Scene::from_label(measure_label("a<&>b", &MetricsConfig::default()));
        let svg = emit_svg(&scene, &RenderStyle::default());
        assert!(svg.contains(">a&lt;&amp;&gt;b</text>"));
    }
}
