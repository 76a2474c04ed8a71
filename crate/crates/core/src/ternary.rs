//! Ternary-diagram rendering for 3-part compositions as SVG text.
//!
//! Orientation is fixed: vertex A bottom-left, B bottom-right, C top. Output
//! is plain SVG 1.1 with generic font families only, and is byte-identical
//! for identical specs, which makes plots regression-testable.

use crate::composition::{Composition, CompositionDataset};
use crate::error::{Error, Result};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Abstract canvas size; a margin of one tenth of the smaller side frames
/// the triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canvas {
    pub width: f64,
    pub height: f64,
}

impl Default for Canvas {
    fn default() -> Self {
        Self { width: 640.0, height: 600.0 }
    }
}

/// Marker glyph for overlays; data points are always filled circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerStyle {
    Circle,
    Triangle,
    Square,
    Diamond,
}

#[derive(Debug, Clone)]
pub struct Overlay {
    pub label: String,
    pub point: Composition,
    pub marker: MarkerStyle,
}

#[derive(Debug, Clone)]
pub struct TernaryPlotSpec {
    pub dataset: CompositionDataset,
    pub overlays: Vec<Overlay>,
    pub canvas: Canvas,
    pub vertex_labels: [String; 3],
}

impl TernaryPlotSpec {
    pub fn new(dataset: CompositionDataset) -> Result<Self> {
        if dataset.dim() != 3 {
            return Err(Error::DimensionMismatch { left: dataset.dim(), right: 3 });
        }
        let names = dataset.component_names();
        let vertex_labels = [names[0].clone(), names[1].clone(), names[2].clone()];
        Ok(Self {
            dataset,
            overlays: Vec::new(),
            canvas: Canvas::default(),
            vertex_labels,
        })
    }

    pub fn with_overlay(mut self, label: &str, point: Composition, marker: MarkerStyle) -> Self {
        self.overlays.push(Overlay { label: label.to_string(), point, marker });
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dataset.dim() != 3 {
            return Err(Error::SpecError("dataset must have exactly 3 components".into()));
        }
        for o in &self.overlays {
            if o.point.dim() != 3 {
                return Err(Error::SpecError(format!(
                    "overlay {:?} is not a 3-part composition",
                    o.label
                )));
            }
        }
        if !(self.canvas.width > 0.0 && self.canvas.height > 0.0) {
            return Err(Error::SpecError("canvas must have positive size".into()));
        }
        Ok(())
    }
}

/// Map a 3-part composition to canvas coordinates.
///
/// In unit coordinates A = (0, 0), B = (1, 0), C = (0.5, √3/2) and the point
/// is the convex combination `x_A A + x_B B + x_C C`; the y axis is flipped
/// for SVG (origin top-left) and the triangle is scaled into the canvas with
/// a margin.
pub fn barycentric_to_canvas(x: &Composition, canvas: Canvas) -> Result<(f64, f64)> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch { left: x.dim(), right: 3 });
    }
    let p = x.parts();
    let ux = p[1] + 0.5 * p[2];
    let uy = SQRT3_2 * p[2];
    let margin = 0.1 * canvas.width.min(canvas.height);
    let scale = ((canvas.width - 2.0 * margin) / 1.0)
        .min((canvas.height - 2.0 * margin) / SQRT3_2);
    let x_px = margin + ux * scale;
    let y_px = canvas.height - margin - uy * scale;
    Ok((x_px, y_px))
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

fn marker_element(style: MarkerStyle, x: f64, y: f64, size: f64, class: &str) -> String {
    match style {
        MarkerStyle::Circle => format!(
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt(x),
            fmt(y),
            fmt(size)
        ),
        MarkerStyle::Triangle => format!(
            "<polygon class=\"{class}\" points=\"{},{} {},{} {},{}\"/>",
            fmt(x),
            fmt(y - size),
            fmt(x - size),
            fmt(y + size),
            fmt(x + size),
            fmt(y + size)
        ),
        MarkerStyle::Square => format!(
            "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
            fmt(x - size),
            fmt(y - size),
            fmt(2.0 * size),
            fmt(2.0 * size)
        ),
        MarkerStyle::Diamond => format!(
            "<polygon class=\"{class}\" points=\"{},{} {},{} {},{} {},{}\"/>",
            fmt(x),
            fmt(y - size),
            fmt(x + size),
            fmt(y),
            fmt(x),
            fmt(y + size),
            fmt(x - size),
            fmt(y)
        ),
    }
}

/// Render the diagram: triangle outline, one circle per dataset row, one
/// distinct glyph per overlay, vertex labels and a legend.
pub fn render_ternary(spec: &TernaryPlotSpec) -> Result<String> {
    spec.validate()?;
    let canvas = spec.canvas;
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(canvas.width), fmt(canvas.height), fmt(canvas.width), fmt(canvas.height)
    ));
    svg.push_str(
        "<style>.data-point{fill:#1f5fa8;stroke:none;}\
         .overlay-marker{fill:#c23b22;stroke:#222222;stroke-width:1;}\
         .frame{fill:none;stroke:#222222;stroke-width:1.5;}\
         text{font-family:sans-serif;font-size:14px;fill:#222222;}</style>\n",
    );

    let vertex_a = Composition::closure(&[1.0, 0.0, 0.0])?;
    let vertex_b = Composition::closure(&[0.0, 1.0, 0.0])?;
    let vertex_c = Composition::closure(&[0.0, 0.0, 1.0])?;
    let (ax, ay) = barycentric_to_canvas(&vertex_a, canvas)?;
    let (bx, by) = barycentric_to_canvas(&vertex_b, canvas)?;
    let (cx, cy) = barycentric_to_canvas(&vertex_c, canvas)?;
    svg.push_str(&format!(
        "<polygon class=\"frame\" points=\"{},{} {},{} {},{}\"/>\n",
        fmt(ax),
        fmt(ay),
        fmt(bx),
        fmt(by),
        fmt(cx),
        fmt(cy)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
        fmt(ax - 6.0),
        fmt(ay + 16.0),
        xml_escape(&spec.vertex_labels[0])
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>\n",
        fmt(bx + 6.0),
        fmt(by + 16.0),
        xml_escape(&spec.vertex_labels[1])
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        fmt(cx),
        fmt(cy - 10.0),
        xml_escape(&spec.vertex_labels[2])
    ));

    for row in spec.dataset.rows() {
        let (x, y) = barycentric_to_canvas(row, canvas)?;
        svg.push_str(&marker_element(MarkerStyle::Circle, x, y, 3.0, "data-point"));
        svg.push('\n');
    }

    for overlay in &spec.overlays {
        let (x, y) = barycentric_to_canvas(&overlay.point, canvas)?;
        svg.push_str(&marker_element(overlay.marker, x, y, 6.0, "overlay-marker"));
        svg.push('\n');
    }

    // legend, fixed order: data first, then overlays in spec order
    let legend_x = canvas.width - 0.28 * canvas.width;
    let mut legend_y = 24.0;
    svg.push_str(&marker_element(MarkerStyle::Circle, legend_x, legend_y - 4.0, 3.0, "data-point"));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\">data</text>\n",
        fmt(legend_x + 12.0),
        fmt(legend_y)
    ));
    for overlay in &spec.overlays {
        legend_y += 20.0;
        svg.push_str(&marker_element(
            overlay.marker,
            legend_x,
            legend_y - 4.0,
            5.0,
            "overlay-marker",
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(legend_x + 12.0),
            fmt(legend_y),
            xml_escape(&overlay.label)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture_table1;
    use crate::geometry::{mean_arithmetic, mean_geometric_closed};
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn comp(v: &[f64]) -> Composition {
        Composition::closure(v).unwrap()
    }

    #[test]
    fn vertices_and_centroid_map_where_expected() {
        let canvas = Canvas::default();
        let margin = 0.1 * canvas.width.min(canvas.height);
        let (ax, ay) = barycentric_to_canvas(&comp(&[1.0, 0.0, 0.0]), canvas).unwrap();
        assert_abs_diff_eq!(ax, margin, epsilon = 1e-9);
        assert_abs_diff_eq!(ay, canvas.height - margin, epsilon = 1e-9);
        // centroid at (0.5, sqrt(3)/6) in unit coordinates
        let (gx, gy) = barycentric_to_canvas(&comp(&[1.0, 1.0, 1.0]), canvas).unwrap();
        let scale = (canvas.width - 2.0 * margin)
            .min((canvas.height - 2.0 * margin) / SQRT3_2);
        assert_abs_diff_eq!(gx, margin + 0.5 * scale, epsilon = 1e-9);
        assert_abs_diff_eq!(
            gy,
            canvas.height - margin - (3.0_f64.sqrt() / 6.0) * scale,
            epsilon = 1e-9
        );
    }

    #[test]
    fn points_stay_inside_the_triangle() {
        let canvas = Canvas::default();
        let (ax, ay) = barycentric_to_canvas(&comp(&[1.0, 0.0, 0.0]), canvas).unwrap();
        let (bx, by) = barycentric_to_canvas(&comp(&[0.0, 1.0, 0.0]), canvas).unwrap();
        let (cx, cy) = barycentric_to_canvas(&comp(&[0.0, 0.0, 1.0]), canvas).unwrap();
        let half_plane = |px: f64, py: f64, qx: f64, qy: f64, x: f64, y: f64| {
            (qx - px) * (y - py) - (qy - py) * (x - px)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let raw: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..1.0)).collect();
            let Ok(c) = Composition::closure(&raw) else { continue };
            let (x, y) = barycentric_to_canvas(&c, canvas).unwrap();
            let s1 = half_plane(ax, ay, bx, by, x, y);
            let s2 = half_plane(bx, by, cx, cy, x, y);
            let s3 = half_plane(cx, cy, ax, ay, x, y);
            // all on the same side (or on an edge) for every vertex order
            assert!(
                (s1 <= 1e-9 && s2 <= 1e-9 && s3 <= 1e-9)
                    || (s1 >= -1e-9 && s2 >= -1e-9 && s3 >= -1e-9)
            );
        }
    }

    #[test]
    fn mapping_is_affine() {
        let canvas = Canvas::default();
        let x = comp(&[0.5, 0.3, 0.2]);
        let w = comp(&[0.1, 0.6, 0.3]);
        let mid = crate::composition::simplicial_add(&x, &w).unwrap();
        let (x1, y1) = barycentric_to_canvas(&x, canvas).unwrap();
        let (x2, y2) = barycentric_to_canvas(&w, canvas).unwrap();
        let (xm, ym) = barycentric_to_canvas(&mid, canvas).unwrap();
        assert_abs_diff_eq!(xm, 0.5 * (x1 + x2), epsilon = 1e-9);
        assert_abs_diff_eq!(ym, 0.5 * (y1 + y2), epsilon = 1e-9);
    }

    #[test]
    fn render_counts_and_determinism() {
        let ds = load_fixture_table1();
        let am = mean_arithmetic(&ds);
        let gm = mean_geometric_closed(&ds).unwrap();
        let spec = TernaryPlotSpec::new(ds)
            .unwrap()
            .with_overlay("geometric mean", gm, MarkerStyle::Triangle)
            .with_overlay("arithmetic mean", am, MarkerStyle::Diamond);
        let svg = render_ternary(&spec).unwrap();
        // 30 data markers + 1 legend swatch
        assert_eq!(svg.matches("class=\"data-point\"").count(), 31);
        // 2 overlay markers + 2 legend swatches
        assert_eq!(svg.matches("class=\"overlay-marker\"").count(), 4);
        assert_eq!(svg, render_ternary(&spec).unwrap());
    }

    #[test]
    fn render_without_overlays() {
        let ds = load_fixture_table1();
        let spec = TernaryPlotSpec::new(ds).unwrap();
        let svg = render_ternary(&spec).unwrap();
        assert!(svg.contains("<polygon class=\"frame\""));
        assert_eq!(svg.matches("class=\"overlay-marker\"").count(), 0);
    }

    #[test]
    fn rejects_non_ternary_dataset() {
        let rows = vec![comp(&[0.25, 0.25, 0.25, 0.25])];
        let ds = CompositionDataset::from_rows(rows).unwrap();
        assert!(TernaryPlotSpec::new(ds).is_err());
        let four = comp(&[0.25, 0.25, 0.25, 0.25]);
        assert!(barycentric_to_canvas(&four, Canvas::default()).is_err());
    }
}
