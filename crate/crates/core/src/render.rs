//! SVG overlays of reading paths: one polyline per order through the
//! character centers, drawn in pixel coordinates over optional box outlines.

use std::fmt::Write as _;

use crate::error::Result;
use crate::ingest::format_pixels;
use crate::model::{Page, ReadingOrder};

#[derive(Debug, Clone, PartialEq)]
pub struct PathLayer {
    pub name: String,
    pub order: ReadingOrder,
    /// Any SVG color, e.g. `#0000ff`.
    pub color: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub page: Page,
    pub orders: Vec<PathLayer>,
    pub stroke_width: f64,
    pub draw_boxes: bool,
}

/// Conventional colors: ground truth blue, adaptive green, simple red and a
/// learned model violet. Other names cycle through a fixed palette.
pub fn default_color(name: &str, index: usize) -> String {
    const PALETTE: [&str; 4] = ["#ff8c00", "#008b8b", "#8b4513", "#ff1493"];
    match name {
        "gt" | "ground_truth" | "ground-truth" => "#1f3fff".into(),
        "adaptive" => "#568203".into(),
        "simple" => "#e32119".into(),
        "deep" | "deep_ar" | "deep-ar" => "#8f00ff".into(),
        _ => PALETTE[index % PALETTE.len()].into(),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the overlay as an SVG document. Orders with fewer than two
/// characters produce no polyline. Output bytes depend only on the input.
pub fn render_paths(spec: &RenderSpec) -> Result<String> {
    let page = &spec.page;
    for layer in &spec.orders {
        if !(layer.order.is_empty() && page.is_empty()) {
            layer.order.check_permutation(page.len())?;
        }
    }
    let (wf, hf) = (f64::from(page.image_width), f64::from(page.image_height));
    let px = |v: f64| format_pixels(v);

    let mut svg = String::new();
    // writing to a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = page.image_width,
        h = page.image_height
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(&page.page_id));

    if spec.draw_boxes && !page.is_empty() {
        let _ = writeln!(
            svg,
            r##"<g id="boxes" fill="none" stroke="#808080" stroke-width="1">"##
        );
        for c in &page.chars {
            let _ = writeln!(
                svg,
                r#"<rect data-id="{}" x="{}" y="{}" width="{}" height="{}"/>"#,
                c.id,
                px(c.x * wf),
                px(c.y * hf),
                px(c.w * wf),
                px(c.h * hf)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let centers = page.centers();
    for layer in &spec.orders {
        if layer.order.len() < 2 {
            continue;
        }
        let points: Vec<String> = layer
            .order
            .as_slice()
            .iter()
            .map(|&id| format!("{},{}", px(centers[id].x * wf), px(centers[id].y * hf)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline data-model="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round" stroke-linecap="round" points="{}"/>"#,
            escape(&layer.name),
            escape(&layer.color),
            px(spec.stroke_width),
            points.join(" ")
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::CharBox;

    fn page(n: usize) -> Page {
        let chars = (0..n)
            .map(|i| CharBox::new(i, '字', 0.5, 0.1 + 0.2 * i as f64, 0.1, 0.1).unwrap())
            .collect();
        Page::new("pg", 100, 200, chars, None).unwrap()
    }

    fn spec(page: Page, orders: Vec<(&str, Vec<usize>)>) -> RenderSpec {
        RenderSpec {
            page,
            orders: orders
                .into_iter()
                .enumerate()
                .map(|(i, (name, o))| PathLayer {
                    name: name.into(),
                    order: o.into(),
                    color: default_color(name, i),
                })
                .collect(),
            stroke_width: 3.0,
            draw_boxes: true,
        }
    }

    #[test]
    fn one_polyline_through_centers() {
        let svg = render_paths(&spec(page(3), vec![("gt", vec![0, 1, 2])])).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(r#"points="55,30 55,70 55,110""#), "{svg}");
        assert_eq!(svg.matches("<rect").count(), 3);
    }

    #[test]
    fn two_orders_two_colors() {
        let svg = render_paths(&spec(
            page(3),
            vec![("gt", vec![0, 1, 2]), ("simple", vec![2, 1, 0])],
        ))
        .unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r##"stroke="#1f3fff""##));
        assert!(svg.contains(r##"stroke="#e32119""##));
    }

    #[test]
    fn single_char_draws_only_its_box() {
        let svg = render_paths(&spec(page(1), vec![("gt", vec![0])])).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<rect").count(), 1);
    }

    #[test]
    fn rejects_non_permutation_and_is_deterministic() {
        let bad = spec(page(3), vec![("gt", vec![0, 0, 2])]);
        assert!(matches!(render_paths(&bad), Err(Error::NotPermutation(_))));
        let s = spec(page(3), vec![("a&b", vec![2, 0, 1])]);
        assert_eq!(render_paths(&s).unwrap(), render_paths(&s).unwrap());
        assert!(render_paths(&s).unwrap().contains("a&amp;b"));
    }
}
