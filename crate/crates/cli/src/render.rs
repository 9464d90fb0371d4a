//! Deterministic SVG 1.1 drawings of the three figures.
//!
//! World coordinates are y-up; the drawing keeps a 5% margin on every side,
//! scales uniformly and flips y. Every number is written with 9 decimals.

use std::f64::consts::{PI, TAU};

use goldenextremal_core::construct::{construct_t2, Circle, GeomObject, Line, Point as CPoint};
use goldenextremal_core::exactphi::QPhi;
use goldenextremal_core::extremal::{triangle_from_sides, ThetaBranch};
use goldenextremal_core::goldenseq::tn_entry;

use crate::CliError;

const MARGIN: f64 = 0.05;
const ON_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    MinArea,
    Sequence,
    Construction,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::MinArea => "fig1_min_area",
            Figure::Sequence => "fig2_sequence",
            Figure::Construction => "fig3_construction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub figure: Figure,
    pub width_px: u32,
    pub height_px: u32,
    pub annotate: bool,
    /// Triangles `T(1)..=T(n_max)` in the sequence figure.
    pub n_max: u64,
}

impl RenderSpec {
    pub fn new(figure: Figure, width_px: u32, height_px: u32) -> Result<RenderSpec, CliError> {
        if width_px == 0 || height_px == 0 {
            return Err(CliError::Usage(format!("figure size must be positive, got {width_px}x{height_px}")));
        }
        Ok(RenderSpec { figure, width_px, height_px, annotate: true, n_max: 3 })
    }

    pub fn with_n_max(mut self, n_max: u64) -> Result<RenderSpec, CliError> {
        if !(1..=50).contains(&n_max) {
            return Err(CliError::Usage(format!("--n-max for the sequence figure must be in 1..=50, got {n_max}")));
        }
        self.n_max = n_max;
        Ok(self)
    }

    pub fn with_annotate(mut self, annotate: bool) -> RenderSpec {
        self.annotate = annotate;
        self
    }
}

pub fn num(x: f64) -> String {
    crate::document::fixed(x, 9)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct P(f64, f64);

enum Shape {
    Segment { id: String, from: P, to: P, class: &'static str },
    Polygon { id: String, points: Vec<P>, class: &'static str },
    Dot { id: String, at: P },
    Label { text: String, at: P, dx: f64, dy: f64 },
    Ring { id: String, center: P, r: f64, class: &'static str },
    /// Counter-clockwise (world) arc.
    Arc { id: String, center: P, r: f64, start: f64, sweep: f64 },
}

impl Shape {
    fn extent(&self) -> Vec<P> {
        match self {
            Shape::Segment { from, to, .. } => vec![*from, *to],
            Shape::Polygon { points, .. } => points.clone(),
            Shape::Dot { at, .. } | Shape::Label { at, .. } => vec![*at],
            Shape::Ring { center, r, .. } => vec![P(center.0 - r, center.1 - r), P(center.0 + r, center.1 + r)],
            Shape::Arc { center, r, start, sweep, .. } => (0..=64)
                .map(|i| {
                    let t = start + sweep * i as f64 / 64.0;
                    P(center.0 + r * t.cos(), center.1 + r * t.sin())
                })
                .collect(),
        }
    }
}

struct Frame {
    scale: f64,
    x0: f64,
    y1: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    fn fit(shapes: &[Shape], w: f64, h: f64) -> Frame {
        let pts: Vec<P> = shapes.iter().flat_map(Shape::extent).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            x0 = x0.min(p.0);
            x1 = x1.max(p.0);
            y0 = y0.min(p.1);
            y1 = y1.max(p.1);
        }
        let (iw, ih) = (w * (1.0 - 2.0 * MARGIN), h * (1.0 - 2.0 * MARGIN));
        let scale = (iw / (x1 - x0).max(1e-12)).min(ih / (y1 - y0).max(1e-12));
        let ox = w * MARGIN + (iw - scale * (x1 - x0)) / 2.0;
        let oy = h * MARGIN + (ih - scale * (y1 - y0)) / 2.0;
        Frame { scale, x0, y1, ox, oy }
    }

    fn x(&self, x: f64) -> String {
        num(self.ox + (x - self.x0) * self.scale)
    }

    fn y(&self, y: f64) -> String {
        num(self.oy + (self.y1 - y) * self.scale)
    }

    fn pair(&self, p: P) -> String {
        format!("{},{}", self.x(p.0), self.y(p.1))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg(spec: &RenderSpec, title: &str, shapes: &[Shape]) -> String {
    let (w, h) = (spec.width_px as f64, spec.height_px as f64);
    let f = Frame::fit(shapes, w, h);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" data-figure=\"{2}\" data-scale=\"{3}\">\n",
        spec.width_px,
        spec.height_px,
        spec.figure.name(),
        num(f.scale)
    ));
    s.push_str(&format!("<title>{}</title>\n", escape(title)));
    s.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" font-family=\"serif\" font-size=\"16\">\n");
    for shape in shapes {
        let line = match shape {
            Shape::Segment { id, from, to, class } => format!(
                "<line id=\"{id}\" class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                f.x(from.0),
                f.y(from.1),
                f.x(to.0),
                f.y(to.1)
            ),
            Shape::Polygon { id, points, class } => {
                let pts: Vec<String> = points.iter().map(|p| f.pair(*p)).collect();
                format!("<polygon id=\"{id}\" class=\"{class}\" points=\"{}\"/>", pts.join(" "))
            }
            Shape::Dot { id, at } => format!("<circle id=\"{id}\" class=\"point\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"black\"/>", f.x(at.0), f.y(at.1)),
            Shape::Label { text, at, dx, dy } => format!(
                "<text x=\"{}\" y=\"{}\" fill=\"black\" stroke=\"none\">{}</text>",
                num(f.ox + (at.0 - f.x0) * f.scale + dx),
                num(f.oy + (f.y1 - at.1) * f.scale + dy),
                escape(text)
            ),
            Shape::Ring { id, center, r, class } => format!(
                "<circle id=\"{id}\" class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" stroke-dasharray=\"4 3\" stroke-width=\"0.75\"/>",
                f.x(center.0),
                f.y(center.1),
                num(r * f.scale)
            ),
            Shape::Arc { id, center, r, start, sweep } => {
                let end = start + sweep;
                let from = P(center.0 + r * start.cos(), center.1 + r * start.sin());
                let to = P(center.0 + r * end.cos(), center.1 + r * end.sin());
                let rr = num(r * f.scale);
                // y-flip turns a counter-clockwise world arc into sweep-flag 0
                format!(
                    "<path id=\"{id}\" class=\"arc\" d=\"M {} {} A {rr} {rr} 0 {} 0 {} {}\"/>",
                    f.x(from.0),
                    f.y(from.1),
                    u8::from(*sweep > PI),
                    f.x(to.0),
                    f.y(to.1)
                )
            }
        };
        s.push_str(&line);
        s.push('\n');
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn foot(p: P, a: P, b: P) -> P {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy);
    P(a.0 + t * dx, a.1 + t * dy)
}

fn label(spec: &RenderSpec, shapes: &mut Vec<Shape>, text: &str, at: P, dx: f64, dy: f64) {
    if spec.annotate {
        shapes.push(Shape::Label { text: text.into(), at, dx, dy });
    }
}

fn min_area(spec: &RenderSpec) -> Result<String, CliError> {
    let phi = QPhi::phi().to_f64();
    let tri = triangle_from_sides(phi, phi * phi, ThetaBranch::Acute).map_err(|e| CliError::NonConvergence(e.to_string()))?;
    let pt = |p: goldenextremal_core::geometry::Point| P(p.x, p.y);
    let (a, b, c, o) = (pt(tri.a), pt(tri.b), pt(tri.c), pt(tri.o));
    let (d, e) = (foot(o, a, b), foot(o, a, c));
    let r = tri.r;
    let seg = |id: &str, from, to, class| Shape::Segment { id: id.into(), from, to, class };
    let mut shapes = vec![
        seg("side-BC", b, c, "side"),
        seg("side-AB", a, b, "side"),
        seg("side-AC", a, c, "side"),
        Shape::Arc { id: "semicircle".into(), center: o, r, start: 0.0, sweep: PI },
        seg("radius-OD", o, d, "radius"),
        seg("radius-OE", o, e, "radius"),
    ];
    for (name, p) in [("A", a), ("B", b), ("C", c), ("O", o), ("D", d), ("E", e)] {
        shapes.push(Shape::Dot { id: format!("pt-{name}"), at: p });
    }
    for (name, p, dx, dy) in [("A", a, -5.0, -10.0), ("B", b, -14.0, 18.0), ("C", c, 4.0, 18.0), ("O", o, -5.0, 18.0), ("D", d, -16.0, -4.0), ("E", e, 6.0, -4.0)] {
        label(spec, &mut shapes, name, p, dx, dy);
    }
    label(spec, &mut shapes, "AB = φ, AC = φ², area = φ³/2", P(b.0, a.1), 0.0, 0.0);
    // labels on top
    shapes.sort_by_key(|s| matches!(s, Shape::Label { .. }));
    Ok(svg(spec, "Smallest-area triangle around a unit semicircle", &shapes))
}

fn sequence(spec: &RenderSpec) -> Result<String, CliError> {
    let mut shapes = Vec::new();
    let mut legs: Vec<(String, f64)> = Vec::new();
    for n in 1..=spec.n_max {
        let t = tn_entry(n).map_err(|e| CliError::Usage(e.to_string()))?;
        legs.push((n.to_string(), t.side_mid.to_f64()));
    }
    legs.push(("limit".into(), QPhi::phi().to_f64()));
    for (name, mid) in &legs {
        let class = if name == "limit" { "limit" } else { "tn" };
        shapes.push(Shape::Polygon { id: format!("tri-{name}"), points: vec![P(0.0, 0.0), P(1.0, 0.0), P(0.0, *mid)], class });
    }
    let b = P(0.0, 0.0);
    shapes.push(Shape::Dot { id: "pt-B".into(), at: b });
    label(spec, &mut shapes, "1", P(0.5, 0.0), -4.0, 18.0);
    for (name, mid) in &legs {
        let text = if name == "limit" { "limit (1, φ, √(1+φ²))".to_string() } else { format!("T{name}") };
        label(spec, &mut shapes, &text, P(0.0, *mid), 8.0, 5.0);
    }
    Ok(svg(spec, "Generalized golden right triangles on a shared unit leg", &shapes))
}

fn cp(p: &CPoint) -> P {
    let (x, y) = p.to_f64();
    P(x, y)
}

fn on_line(l: &Line, p: P) -> bool {
    let (a, b, c) = (l.a.to_f64(), l.b.to_f64(), l.c.to_f64());
    (a * p.0 + b * p.1 - c).abs() <= ON_TOL * (a * a + b * b).sqrt().max(1.0)
}

fn on_circle(c: &Circle, p: P) -> bool {
    let ctr = cp(&c.center);
    let d2 = (p.0 - ctr.0).powi(2) + (p.1 - ctr.1).powi(2);
    (d2 - c.r2.to_f64()).abs() <= ON_TOL * c.r2.to_f64().max(1.0)
}

fn construction(spec: &RenderSpec) -> Result<String, CliError> {
    let (trace, _) = construct_t2().map_err(|e| CliError::Verification(e.to_string()))?;
    let table = trace.objects();
    let points: Vec<(&str, P)> = table
        .iter()
        .filter_map(|(id, o)| match o {
            GeomObject::Point(p) => Some((id, cp(p))),
            _ => None,
        })
        .collect();
    let mut shapes = Vec::new();
    for (id, obj) in table.iter() {
        match obj {
            GeomObject::Line(l) => {
                let mut on: Vec<P> = points.iter().map(|(_, p)| *p).filter(|p| on_line(l, *p)).collect();
                if on.len() < 2 {
                    on = vec![cp(&l.through.0), cp(&l.through.1)];
                }
                let dir = (l.b.to_f64(), -l.a.to_f64());
                let key = |p: &P| p.0 * dir.0 + p.1 * dir.1;
                let lo = on.iter().copied().min_by(|p, q| key(p).total_cmp(&key(q))).expect("two points");
                let hi = on.iter().copied().max_by(|p, q| key(p).total_cmp(&key(q))).expect("two points");
                shapes.push(Shape::Segment { id: format!("line-{id}"), from: lo, to: hi, class: "construction" });
            }
            GeomObject::Circle(c) => {
                let center = cp(&c.center);
                let r = c.r2.to_f64().sqrt();
                if id.starts_with("arc") {
                    let angles: Vec<f64> = points
                        .iter()
                        .filter(|(_, p)| on_circle(c, *p))
                        .map(|(_, p)| (p.1 - center.1).atan2(p.0 - center.0).rem_euclid(TAU))
                        .collect();
                    let (start, end) = match angles.as_slice() {
                        [] => (0.0, PI),
                        [only] => (0.0, *only),
                        [first, .., last] => (*first, *last),
                    };
                    shapes.push(Shape::Arc { id: format!("arc-{id}"), center, r, start, sweep: (end - start).rem_euclid(TAU) });
                } else {
                    shapes.push(Shape::Ring { id: format!("circle-{id}"), center, r, class: "construction" });
                }
            }
            GeomObject::Point(_) => {}
        }
    }
    let get = |id: &str| points.iter().find(|(n, _)| *n == id).map(|(_, p)| *p).expect("T2 trace defines its vertices");
    shapes.push(Shape::Polygon { id: "triangle-EBC".into(), points: vec![get("E"), get("B"), get("C")], class: "result" });
    for (id, p) in &points {
        shapes.push(Shape::Dot { id: format!("pt-{id}"), at: *p });
        label(spec, &mut shapes, id, *p, 5.0, -6.0);
    }
    Ok(svg(spec, "A construction of the second generalized golden right triangle", &shapes))
}

pub fn render_svg(spec: &RenderSpec) -> Result<String, CliError> {
    match spec.figure {
        Figure::MinArea => min_area(spec),
        Figure::Sequence => sequence(spec),
        Figure::Construction => construction(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_has_one_path() {
        let s = render_svg(&RenderSpec::new(Figure::MinArea, 800, 600).unwrap()).unwrap();
        assert_eq!(s.matches("<path").count(), 1);
        assert!(s.contains("id=\"radius-OD\"") && s.contains("id=\"radius-OE\""));
    }

    #[test]
    fn deterministic() {
        for fig in [Figure::MinArea, Figure::Sequence, Figure::Construction] {
            let spec = RenderSpec::new(fig, 640, 480).unwrap();
            assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
        }
    }

    #[test]
    fn bad_specs() {
        assert!(RenderSpec::new(Figure::MinArea, 0, 10).is_err());
        assert!(RenderSpec::new(Figure::Sequence, 10, 10).unwrap().with_n_max(0).is_err());
    }

    #[test]
    fn unlabelled_has_no_text() {
        let spec = RenderSpec::new(Figure::Construction, 800, 600).unwrap().with_annotate(false);
        assert!(!render_svg(&spec).unwrap().contains("<text"));
    }
}
