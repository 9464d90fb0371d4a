//! Compass-straightedge construction traces replayed in exact coordinates.
//!
//! Coordinates live in `Q(φ)` extended by at most one square root; anything
//! beyond that drops to a 50-digit fixed-point shadow which every value
//! carries anyway. Frame: `B` at the origin, `BC` along the positive x-axis.

mod number;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactphi::{radical_cmp, QPhi, Radical};
use crate::goldenseq::tn_entry;

pub use number::{Num, Surd, SHADOW_DIGITS, SHADOW_TOL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("object id {0:?} already defined")]
    DuplicateId(String),
    #[error("object {id:?} is not a {expected}")]
    WrongKind { id: String, expected: &'static str },
    #[error("{op} takes {expected} inputs, got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
    #[error("no intersection: {0}")]
    NoIntersection(String),
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("cannot parse step {0:?}")]
    Parse(String),
    #[error("construction left the exact layer: {0}")]
    Inexact(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Num,
    pub y: Num,
}

impl Point {
    pub fn exact(x: QPhi, y: QPhi) -> Point {
        Point { x: Num::field(x), y: Num::field(y) }
    }

    pub fn dist2(&self, other: &Point) -> Num {
        let dx = self.x.sub(&other.x);
        let dy = self.y.sub(&other.y);
        dx.mul(&dx).add(&dy.mul(&dy))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    fn same(&self, other: &Point) -> Result<bool, ConstructError> {
        Ok(self.dist2(other).signum()? == 0)
    }
}

/// `a·x + b·y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Num,
    pub b: Num,
    pub c: Num,
    /// Defining points, kept for drawing.
    pub through: (Point, Point),
}

impl Line {
    fn through(p: &Point, q: &Point) -> Result<Line, ConstructError> {
        if p.same(q)? {
            return Err(ConstructError::Degenerate("line through coincident points".into()));
        }
        let a = q.y.sub(&p.y);
        let b = p.x.sub(&q.x);
        let c = a.mul(&p.x).add(&b.mul(&p.y));
        Ok(Line { a, b, c, through: (p.clone(), q.clone()) })
    }

    fn norm2(&self) -> Num {
        self.a.mul(&self.a).add(&self.b.mul(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub center: Point,
    pub r2: Num,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomObject {
    Point(Point),
    Line(Line),
    Circle(Circle),
}

impl GeomObject {
    pub fn kind(&self) -> &'static str {
        match self {
            GeomObject::Point(_) => "point",
            GeomObject::Line(_) => "line",
            GeomObject::Circle(_) => "circle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    PlacePoint,
    LineThrough,
    PerpendicularAt,
    CircleCenterRadius,
    CircleCenterThrough,
    Intersect,
    GoldenSectionPoint,
    ExtendSegment,
}

const OPS: [(Op, &str); 8] = [
    (Op::PlacePoint, "place_point"),
    (Op::LineThrough, "line_through"),
    (Op::PerpendicularAt, "perpendicular_at"),
    (Op::CircleCenterRadius, "circle_center_radius"),
    (Op::CircleCenterThrough, "circle_center_through"),
    (Op::Intersect, "intersect"),
    (Op::GoldenSectionPoint, "golden_section_point"),
    (Op::ExtendSegment, "extend_segment"),
];

impl Op {
    pub fn name(self) -> &'static str {
        OPS.iter().find(|(op, _)| *op == self).map(|(_, s)| *s).expect("every op is named")
    }

    fn arity(self) -> usize {
        match self {
            Op::PlacePoint => 0,
            Op::CircleCenterRadius => 3,
            _ => 2,
        }
    }
}

/// Which intersection point an `intersect` step keeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Only,
    MinX,
    MaxX,
    MinY,
    MaxY,
    /// On the ray from the first point through the second, past the second.
    Beyond(String, String),
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Only => f.write_str("only"),
            Selector::MinX => f.write_str("min_x"),
            Selector::MaxX => f.write_str("max_x"),
            Selector::MinY => f.write_str("min_y"),
            Selector::MaxY => f.write_str("max_y"),
            Selector::Beyond(p, q) => write!(f, "beyond {p} {q}"),
        }
    }
}

impl FromStr for Selector {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        Ok(match words.as_slice() {
            ["only"] => Selector::Only,
            ["min_x"] => Selector::MinX,
            ["max_x"] => Selector::MaxX,
            ["min_y"] => Selector::MinY,
            ["max_y"] => Selector::MaxY,
            ["beyond", p, q] => Selector::Beyond(p.to_string(), q.to_string()),
            _ => return Err(ConstructError::Parse(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    None,
    At(QPhi, QPhi),
    Select(Selector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionStep {
    pub output: String,
    pub op: Op,
    pub inputs: Vec<String>,
    pub param: Param,
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}({}; ", self.output, self.op.name(), self.inputs.join(", "))?;
        match &self.param {
            Param::None => f.write_str("-")?,
            Param::At(x, y) => write!(f, "at {x}, {y}")?,
            Param::Select(s) => write!(f, "{s}")?,
        }
        f.write_str(")")
    }
}

impl FromStr for ConstructionStep {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructError::Parse(s.to_string());
        let (output, rest) = s.trim().split_once(" = ").ok_or_else(bad)?;
        let (name, rest) = rest.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let (inputs, param) = body.split_once("; ").ok_or_else(bad)?;
        let op = OPS.iter().find(|(_, n)| *n == name).map(|(op, _)| *op).ok_or_else(bad)?;
        let inputs: Vec<String> = if inputs.is_empty() { Vec::new() } else { inputs.split(", ").map(str::to_string).collect() };
        let param = if param == "-" {
            Param::None
        } else if let Some(at) = param.strip_prefix("at ") {
            let (x, y) = at.split_once(", ").ok_or_else(bad)?;
            Param::At(x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?)
        } else {
            Param::Select(param.parse()?)
        };
        if output.is_empty() || output.contains(char::is_whitespace) {
            return Err(bad());
        }
        Ok(ConstructionStep { output: output.to_string(), op, inputs, param })
    }
}

/// Objects in definition order, with lookup by id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ObjectTable {
    order: Vec<(String, GeomObject)>,
    index: HashMap<String, usize>,
}

impl ObjectTable {
    pub fn get(&self, id: &str) -> Result<&GeomObject, ConstructError> {
        self.index.get(id).map(|&i| &self.order[i].1).ok_or_else(|| ConstructError::UnknownObject(id.to_string()))
    }

    pub fn point(&self, id: &str) -> Result<&Point, ConstructError> {
        match self.get(id)? {
            GeomObject::Point(p) => Ok(p),
            _ => Err(ConstructError::WrongKind { id: id.to_string(), expected: "point" }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &GeomObject)> {
        self.order.iter().map(|(id, o)| (id.as_str(), o))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn insert(&mut self, id: &str, obj: GeomObject) -> Result<(), ConstructError> {
        if self.index.contains_key(id) {
            return Err(ConstructError::DuplicateId(id.to_string()));
        }
        self.index.insert(id.to_string(), self.order.len());
        self.order.push((id.to_string(), obj));
        Ok(())
    }

    fn line(&self, id: &str) -> Result<&Line, ConstructError> {
        match self.get(id)? {
            GeomObject::Line(l) => Ok(l),
            _ => Err(ConstructError::WrongKind { id: id.to_string(), expected: "line" }),
        }
    }

    fn apply(&mut self, step: &ConstructionStep) -> Result<(), ConstructError> {
        let inputs = &step.inputs;
        if inputs.len() != step.op.arity() {
            return Err(ConstructError::Arity { op: step.op.name(), expected: step.op.arity(), got: inputs.len() });
        }
        let obj = match (step.op, &step.param) {
            (Op::PlacePoint, Param::At(x, y)) => GeomObject::Point(Point::exact(x.clone(), y.clone())),
            (Op::LineThrough | Op::ExtendSegment, Param::None) => GeomObject::Line(Line::through(self.point(&inputs[0])?, self.point(&inputs[1])?)?),
            (Op::PerpendicularAt, Param::None) => {
                let line = self.line(&inputs[0])?;
                let p = self.point(&inputs[1])?;
                let q = Point { x: p.x.add(&line.a), y: p.y.add(&line.b) };
                GeomObject::Line(Line::through(p, &q)?)
            }
            (Op::CircleCenterRadius, Param::None) => {
                let center = self.point(&inputs[0])?.clone();
                let r2 = self.point(&inputs[1])?.dist2(self.point(&inputs[2])?);
                circle(center, r2)?
            }
            (Op::CircleCenterThrough, Param::None) => {
                let center = self.point(&inputs[0])?.clone();
                let r2 = center.dist2(self.point(&inputs[1])?);
                circle(center, r2)?
            }
            (Op::GoldenSectionPoint, Param::None) => GeomObject::Point(golden_section_point(self.point(&inputs[0])?, self.point(&inputs[1])?)?),
            (Op::Intersect, Param::Select(sel)) => {
                let candidates = intersections(self.get(&inputs[0])?, self.get(&inputs[1])?)?;
                GeomObject::Point(self.select(candidates, sel)?)
            }
            _ => return Err(ConstructError::Parse(step.to_string())),
        };
        self.insert(&step.output, obj)
    }

    fn select(&self, candidates: Vec<Point>, sel: &Selector) -> Result<Point, ConstructError> {
        if candidates.is_empty() {
            return Err(ConstructError::NoIntersection(sel.to_string()));
        }
        let extreme = |key: fn(&Point) -> &Num, want: std::cmp::Ordering| -> Result<Point, ConstructError> {
            if candidates.len() == 1 {
                return Ok(candidates[0].clone());
            }
            match key(&candidates[0]).cmp(key(&candidates[1]))? {
                std::cmp::Ordering::Equal => Err(ConstructError::Ambiguous(format!("{sel} ties"))),
                o if o == want => Ok(candidates[0].clone()),
                _ => Ok(candidates[1].clone()),
            }
        };
        match sel {
            Selector::Only if candidates.len() == 1 => Ok(candidates[0].clone()),
            Selector::Only => Err(ConstructError::Ambiguous("two intersection points, selector only".into())),
            Selector::MinX => extreme(|p| &p.x, std::cmp::Ordering::Less),
            Selector::MaxX => extreme(|p| &p.x, std::cmp::Ordering::Greater),
            Selector::MinY => extreme(|p| &p.y, std::cmp::Ordering::Less),
            Selector::MaxY => extreme(|p| &p.y, std::cmp::Ordering::Greater),
            Selector::Beyond(from, through) => {
                let (p, q) = (self.point(from)?, self.point(through)?);
                let (ux, uy) = (q.x.sub(&p.x), q.y.sub(&p.y));
                let mut kept = Vec::new();
                for c in candidates {
                    let along = c.x.sub(&q.x).mul(&ux).add(&c.y.sub(&q.y).mul(&uy));
                    if along.signum()? > 0 {
                        kept.push(c);
                    }
                }
                match kept.len() {
                    1 => Ok(kept.remove(0)),
                    0 => Err(ConstructError::NoIntersection(format!("nothing {sel}"))),
                    _ => Err(ConstructError::Ambiguous(format!("both points {sel}"))),
                }
            }
        }
    }
}

fn circle(center: Point, r2: Num) -> Result<GeomObject, ConstructError> {
    if r2.signum()? <= 0 {
        return Err(ConstructError::Degenerate("circle of zero radius".into()));
    }
    Ok(GeomObject::Circle(Circle { center, r2 }))
}

fn line_line(l: &Line, m: &Line) -> Result<Vec<Point>, ConstructError> {
    let det = l.a.mul(&m.b).sub(&m.a.mul(&l.b));
    if det.signum()? == 0 {
        return Err(ConstructError::NoIntersection("parallel lines".into()));
    }
    let x = l.c.mul(&m.b).sub(&m.c.mul(&l.b)).div(&det)?;
    let y = l.a.mul(&m.c).sub(&m.a.mul(&l.c)).div(&det)?;
    Ok(vec![Point { x, y }])
}

// Foot of the perpendicular from the centre, then ±√w·(−b, a) with
// w = (r²(a²+b²) − e²)/(a²+b²)², e the centre's signed residual.
fn line_circle(l: &Line, c: &Circle) -> Result<Vec<Point>, ConstructError> {
    let n2 = l.norm2();
    let (h, k) = (&c.center.x, &c.center.y);
    let e = l.a.mul(h).add(&l.b.mul(k)).sub(&l.c);
    let t = e.div(&n2)?;
    let foot = Point { x: h.sub(&t.mul(&l.a)), y: k.sub(&t.mul(&l.b)) };
    let w = c.r2.mul(&n2).sub(&e.mul(&e)).div(&n2.mul(&n2))?;
    match w.signum()? {
        -1 => Err(ConstructError::NoIntersection("line misses circle".into())),
        0 => Ok(vec![foot]),
        _ => {
            let s = w.sqrt()?;
            let (dx, dy) = (l.b.neg().mul(&s), l.a.mul(&s));
            Ok(vec![
                Point { x: foot.x.add(&dx), y: foot.y.add(&dy) },
                Point { x: foot.x.sub(&dx), y: foot.y.sub(&dy) },
            ])
        }
    }
}

fn circle_circle(c1: &Circle, c2: &Circle) -> Result<Vec<Point>, ConstructError> {
    let (p, q) = (&c1.center, &c2.center);
    if p.same(q)? {
        return Err(ConstructError::Degenerate("concentric circles".into()));
    }
    let two = Num::int(2);
    let a = two.mul(&q.x.sub(&p.x));
    let b = two.mul(&q.y.sub(&p.y));
    let c = c1.r2.sub(&c2.r2).add(&q.x.mul(&q.x)).sub(&p.x.mul(&p.x)).add(&q.y.mul(&q.y)).sub(&p.y.mul(&p.y));
    let radical_axis = Line { a, b, c, through: (p.clone(), q.clone()) };
    line_circle(&radical_axis, c1)
}

fn intersections(x: &GeomObject, y: &GeomObject) -> Result<Vec<Point>, ConstructError> {
    match (x, y) {
        (GeomObject::Line(l), GeomObject::Line(m)) => line_line(l, m),
        (GeomObject::Line(l), GeomObject::Circle(c)) | (GeomObject::Circle(c), GeomObject::Line(l)) => line_circle(l, c),
        (GeomObject::Circle(c1), GeomObject::Circle(c2)) => circle_circle(c1, c2),
        _ => Err(ConstructError::WrongKind { id: format!("{} and {}", x.kind(), y.kind()), expected: "line or circle" }),
    }
}

/// The point `O` of segment `PQ` with `PO/OQ = φ`, i.e. `O = P + (Q − P)/φ`.
pub fn golden_section_point(p: &Point, q: &Point) -> Result<Point, ConstructError> {
    if p.same(q)? {
        return Err(ConstructError::Degenerate("golden section of a zero-length segment".into()));
    }
    let inv_phi = Num::field(QPhi::from_ints(-1, 1));
    Ok(Point {
        x: p.x.add(&q.x.sub(&p.x).mul(&inv_phi)),
        y: p.y.add(&q.y.sub(&p.y).mul(&inv_phi)),
    })
}

/// An immutable, replayable construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    steps: Vec<ConstructionStep>,
    table: ObjectTable,
}

impl ConstructionTrace {
    pub fn from_steps(steps: Vec<ConstructionStep>) -> Result<ConstructionTrace, ConstructError> {
        let mut table = ObjectTable::default();
        for step in &steps {
            table.apply(step)?;
        }
        Ok(ConstructionTrace { steps, table })
    }

    pub fn steps(&self) -> &[ConstructionStep] {
        &self.steps
    }

    pub fn objects(&self) -> &ObjectTable {
        &self.table
    }

    /// Resolves every step again from scratch.
    pub fn replay(&self) -> Result<ObjectTable, ConstructError> {
        ConstructionTrace::from_steps(self.steps.clone()).map(|t| t.table)
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<ConstructionTrace, ConstructError> {
        let steps = text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
        ConstructionTrace::from_steps(steps)
    }
}

/// Accumulates steps, resolving each one as it is added.
#[derive(Default)]
pub struct TraceBuilder {
    steps: Vec<ConstructionStep>,
    table: ObjectTable,
}

impl TraceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step(&mut self, output: &str, op: Op, inputs: &[&str], param: Param) -> Result<&mut Self, ConstructError> {
        let step = ConstructionStep { output: output.to_string(), op, inputs: inputs.iter().map(|s| s.to_string()).collect(), param };
        self.table.apply(&step)?;
        self.steps.push(step);
        Ok(self)
    }

    pub fn place(&mut self, id: &str, x: QPhi, y: QPhi) -> Result<&mut Self, ConstructError> {
        self.step(id, Op::PlacePoint, &[], Param::At(x, y))
    }

    pub fn plain(&mut self, id: &str, op: Op, inputs: &[&str]) -> Result<&mut Self, ConstructError> {
        self.step(id, op, inputs, Param::None)
    }

    pub fn meet(&mut self, id: &str, x: &str, y: &str, sel: Selector) -> Result<&mut Self, ConstructError> {
        self.step(id, Op::Intersect, &[x, y], Param::Select(sel))
    }

    pub fn finish(self) -> ConstructionTrace {
        ConstructionTrace { steps: self.steps, table: self.table }
    }
}

fn golden_rectangle_steps(b: &mut TraceBuilder) -> Result<(), ConstructError> {
    b.place("B", QPhi::zero(), QPhi::zero())?
        .place("C", QPhi::one(), QPhi::zero())?
        .plain("lineBC", Op::LineThrough, &["B", "C"])?
        .plain("perpB", Op::PerpendicularAt, &["lineBC", "B"])?
        .plain("perpC", Op::PerpendicularAt, &["lineBC", "C"])?
        .plain("circB", Op::CircleCenterThrough, &["B", "C"])?
        .meet("H", "perpB", "circB", Selector::MaxY)?
        .plain("circC", Op::CircleCenterThrough, &["C", "B"])?
        .meet("G", "perpC", "circC", Selector::MaxY)?
        // midpoint of BH by the perpendicular bisector
        .plain("circBH", Op::CircleCenterThrough, &["B", "H"])?
        .plain("circHB", Op::CircleCenterThrough, &["H", "B"])?
        .meet("X1", "circBH", "circHB", Selector::MinX)?
        .meet("X2", "circBH", "circHB", Selector::MaxX)?
        .plain("bisBH", Op::LineThrough, &["X1", "X2"])?
        .meet("M", "bisBH", "perpB", Selector::Only)?
        // arc from the side midpoint through the far corner of the square
        .plain("arcMG", Op::CircleCenterThrough, &["M", "G"])?
        .meet("A", "arcMG", "perpB", Selector::MaxY)?
        .plain("lineAD", Op::PerpendicularAt, &["perpB", "A"])?
        .meet("D", "lineAD", "perpC", Selector::Only)?;
    Ok(())
}

/// Golden rectangle `ABCD` with `BC = 1`, `AB = φ`, by the square,
/// side-midpoint and arc construction.
pub fn build_golden_rectangle() -> Result<ConstructionTrace, ConstructError> {
    let mut b = TraceBuilder::new();
    golden_rectangle_steps(&mut b)?;
    Ok(b.finish())
}

/// How `O` is placed on `BC` with `BO/OC = φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GoldenSectionMethod {
    /// Compass transfer of `GD = φ − 1` (the rectangle's excess over the
    /// square) onto `BC` from `B`.
    #[default]
    CompassTransfer,
    /// The `golden_section_point` primitive.
    Primitive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCertificate {
    pub bo: QPhi,
    pub eo_sq: QPhi,
    pub ac_sq: QPhi,
    pub be_sq: QPhi,
    pub ec_sq: QPhi,
    pub bc_sq: QPhi,
    /// `(BC, BE, EC)`.
    pub sides: [Radical; 3],
    pub checks: Vec<(String, bool)>,
}

impl TriangleCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn exact_dist2(t: &ObjectTable, p: &str, q: &str) -> Result<QPhi, ConstructError> {
    let d = t.point(p)?.dist2(t.point(q)?);
    d.exact()
        .and_then(Surd::as_field)
        .cloned()
        .ok_or_else(|| ConstructError::Inexact(format!("|{p}{q}|^2")))
}

pub fn construct_t2() -> Result<(ConstructionTrace, TriangleCertificate), ConstructError> {
    construct_t2_with(GoldenSectionMethod::default())
}

/// Golden rectangle, golden section `O` of `BC`, arc about `O` with radius
/// `AC` cut with the extension of `BA` beyond `A` at `E`; then `EBC` is `T(2)`.
pub fn construct_t2_with(method: GoldenSectionMethod) -> Result<(ConstructionTrace, TriangleCertificate), ConstructError> {
    let mut b = TraceBuilder::new();
    golden_rectangle_steps(&mut b)?;
    match method {
        GoldenSectionMethod::CompassTransfer => {
            b.plain("circO", Op::CircleCenterRadius, &["B", "G", "D"])?.meet("O", "circO", "lineBC", Selector::MaxX)?;
        }
        GoldenSectionMethod::Primitive => {
            b.plain("O", Op::GoldenSectionPoint, &["B", "C"])?;
        }
    }
    b.plain("arcE", Op::CircleCenterRadius, &["O", "A", "C"])?
        .plain("rayBA", Op::ExtendSegment, &["B", "A"])?
        .meet("E", "arcE", "rayBA", Selector::Beyond("B".into(), "A".into()))?
        .plain("lineEC", Op::LineThrough, &["E", "C"])?;
    let trace = b.finish();
    let cert = certify_t2(trace.objects())?;
    Ok((trace, cert))
}

fn certify_t2(t: &ObjectTable) -> Result<TriangleCertificate, ConstructError> {
    let bo_sq = exact_dist2(t, "B", "O")?;
    let bo = bo_sq.sqrt_exact().ok_or_else(|| ConstructError::Inexact("|BO|".into()))?;
    let oc_sq = exact_dist2(t, "O", "C")?;
    let eo_sq = exact_dist2(t, "E", "O")?;
    let ac_sq = exact_dist2(t, "A", "C")?;
    let be_sq = exact_dist2(t, "B", "E")?;
    let ec_sq = exact_dist2(t, "E", "C")?;
    let bc_sq = exact_dist2(t, "B", "C")?;
    let phi = QPhi::phi();
    let one = QPhi::one();
    let inv_phi = phi.inv().expect("phi is invertible");
    let sides = [
        Radical::sqrt(bc_sq.clone()).expect("squares are non-negative"),
        Radical::sqrt(be_sq.clone()).expect("squares are non-negative"),
        Radical::sqrt(ec_sq.clone()).expect("squares are non-negative"),
    ];
    let t2 = tn_entry(2).expect("n = 2 is valid");
    let matches = t2.sides().iter().zip(sides.iter()).all(|(x, y)| radical_cmp(x, y).is_eq());
    let checks = vec![
        ("BO = 1/φ exact".to_string(), bo == inv_phi),
        ("BO/OC = φ exact".to_string(), bo_sq == phi.square() * &oc_sq),
        ("EO^2 = AC^2 = 1 + φ^2 exact".to_string(), eo_sq == ac_sq && ac_sq == &one + &phi.square()),
        ("BE^2 = EO^2 - BO^2 exact".to_string(), be_sq == &eo_sq - &bo_sq),
        ("BE^2 = 2φ exact".to_string(), be_sq == QPhi::from_ints(0, 2)),
        ("EC^2 = φ^3 exact".to_string(), ec_sq == phi.pow(3)),
        ("BC = 1 exact".to_string(), bc_sq == one),
        ("1 + BE^2 = EC^2 exact".to_string(), &bc_sq + &be_sq == ec_sq),
        ("sides equal T(2) under radical_cmp".to_string(), matches),
    ];
    Ok(TriangleCertificate { bo, eo_sq, ac_sq, be_sq, ec_sq, bc_sq, sides, checks })
}

/// A length, ratio or angle statement about a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `|PQ| = value`.
    Length(String, String, Radical),
    /// `|PQ| / |RS| = value`.
    Ratio((String, String), (String, String), Radical),
    /// Angle `P V Q` is right.
    RightAngle { vertex: String, p: String, q: String },
}

impl Claim {
    pub fn length(p: &str, q: &str, value: Radical) -> Claim {
        Claim::Length(p.into(), q.into(), value)
    }

    pub fn ratio(num: (&str, &str), den: (&str, &str), value: Radical) -> Claim {
        Claim::Ratio((num.0.into(), num.1.into()), (den.0.into(), den.1.into()), value)
    }

    pub fn right_angle(vertex: &str, p: &str, q: &str) -> Claim {
        Claim::RightAngle { vertex: vertex.into(), p: p.into(), q: q.into() }
    }

    // The claim as `lhs − rhs = 0`, both sides non-negative when squared.
    fn residual(&self, t: &ObjectTable) -> Result<Num, ConstructError> {
        let d2 = |p: &str, q: &str| -> Result<Num, ConstructError> { Ok(t.point(p)?.dist2(t.point(q)?)) };
        let value_sq = |v: &Radical| -> Result<Num, ConstructError> {
            if v.signum() < 0 {
                return Ok(Num::int(-1));
            }
            Ok(Num::field(v.square()))
        };
        match self {
            Claim::Length(p, q, v) => Ok(d2(p, q)?.sub(&value_sq(v)?)),
            Claim::Ratio((p, q), (r, s), v) => Ok(d2(p, q)?.sub(&value_sq(v)?.mul(&d2(r, s)?))),
            Claim::RightAngle { vertex, p, q } => {
                let (v, a, b) = (t.point(vertex)?, t.point(p)?, t.point(q)?);
                Ok(a.x.sub(&v.x).mul(&b.x.sub(&v.x)).add(&a.y.sub(&v.y).mul(&b.y.sub(&v.y))))
            }
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Length(p, q, v) => write!(f, "|{p}{q}| = {v}"),
            Claim::Ratio((p, q), (r, s), v) => write!(f, "|{p}{q}|/|{r}{s}| = {v}"),
            Claim::RightAngle { vertex, p, q } => write!(f, "angle {p}{vertex}{q} = 90deg"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
    /// Decided in exact arithmetic rather than on the fixed-point shadow.
    pub exact: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub results: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

/// Checks each claim exactly where the coordinates allow, else on the
/// 50-digit shadow with tolerance `1e-25`.
pub fn verify_trace(trace: &ConstructionTrace, claims: &[Claim]) -> Result<VerificationReport, ConstructError> {
    let table = trace.replay()?;
    let mut results = Vec::with_capacity(claims.len());
    for claim in claims {
        let r = claim.residual(&table)?;
        let residual = r.approx().abs().to_f64();
        let (passed, exact) = match r.exact() {
            Some(s) => (s.signum() == 0, true),
            None => (residual <= SHADOW_TOL, false),
        };
        results.push(ClaimResult { claim: claim.to_string(), passed, exact, residual });
    }
    Ok(VerificationReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QPhi {
        QPhi::from_ints(a, b)
    }

    fn coords(t: &ObjectTable, id: &str) -> (QPhi, QPhi) {
        let p = t.point(id).unwrap();
        let f = |n: &Num| n.exact().and_then(Surd::as_field).cloned().unwrap();
        (f(&p.x), f(&p.y))
    }

    #[test]
    fn rectangle_corners() {
        let trace = build_golden_rectangle().unwrap();
        let t = trace.objects();
        assert_eq!(coords(t, "B"), (q(0, 0), q(0, 0)));
        assert_eq!(coords(t, "C"), (q(1, 0), q(0, 0)));
        assert_eq!(coords(t, "H"), (q(0, 0), q(1, 0)));
        assert_eq!(coords(t, "M"), (q(0, 0), QPhi::from_ratios(1, 2, 0, 1)));
        assert_eq!(coords(t, "A"), (q(0, 0), q(0, 1)));
        assert_eq!(coords(t, "D"), (q(1, 0), q(0, 1)));
        // the bisector's own points need √3, outside the field
        assert!(t.point("X1").unwrap().x.exact().unwrap().as_field().is_none());
    }

    #[test]
    fn rectangle_claims() {
        let trace = build_golden_rectangle().unwrap();
        let claims = [
            Claim::length("A", "B", Radical::from_qphi(q(0, 1))),
            Claim::length("B", "C", Radical::one()),
            Claim::length("A", "C", Radical::sqrt(q(1, 0) + q(0, 1).square()).unwrap()),
            Claim::ratio(("A", "B"), ("B", "C"), Radical::from_qphi(q(0, 1))),
        ];
        let report = verify_trace(&trace, &claims).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert!(report.results.iter().all(|r| r.exact));
    }

    #[test]
    fn golden_section_examples() {
        let b = Point::exact(q(0, 0), q(0, 0));
        let c = Point::exact(q(1, 0), q(0, 0));
        let o = golden_section_point(&b, &c).unwrap();
        assert_eq!(o, Point::exact(q(-1, 1), q(0, 0)));
        let o2 = golden_section_point(&c, &b).unwrap();
        assert_eq!(o2.dist2(&c).exact().unwrap().as_field(), Some(&q(-1, 1).square()));
        assert!(golden_section_point(&b, &b).is_err());
    }

    #[test]
    fn t2_certificate() {
        for method in [GoldenSectionMethod::CompassTransfer, GoldenSectionMethod::Primitive] {
            let (trace, cert) = construct_t2_with(method).unwrap();
            assert!(cert.all_pass(), "{:?}", cert.checks);
            assert_eq!(cert.be_sq, q(0, 2));
            assert_eq!(cert.ec_sq, q(1, 2));
            let e = trace.objects().point("E").unwrap();
            assert!((e.y.to_f64() - (2.0 * 1.618033988749895f64).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn t2_claims() {
        let (trace, _) = construct_t2().unwrap();
        let report = verify_trace(
            &trace,
            &[
                Claim::right_angle("B", "E", "C"),
                Claim::length("B", "E", Radical::sqrt(q(0, 2)).unwrap()),
                Claim::length("B", "E", Radical::from_qphi(q(0, 1))),
            ],
        )
        .unwrap();
        let passed: Vec<bool> = report.results.iter().map(|r| r.passed).collect();
        assert_eq!(passed, vec![true, true, false]);
    }

    #[test]
    fn text_round_trip_and_replay() {
        let (trace, _) = construct_t2().unwrap();
        let text = trace.to_text();
        assert!(text.contains("E = intersect(arcE, rayBA; beyond B A)\n"));
        assert!(text.starts_with("B = place_point(; at 0 + 0*phi, 0 + 0*phi)\n"));
        let back = ConstructionTrace::parse(&text).unwrap();
        assert_eq!(back, trace);
        assert_eq!(back.to_text(), text);
        assert_eq!(trace.replay().unwrap(), *trace.objects());
    }

    #[test]
    fn bad_steps() {
        let mut b = TraceBuilder::new();
        b.place("B", q(0, 0), q(0, 0)).unwrap();
        assert_eq!(b.place("B", q(1, 0), q(0, 0)).err(), Some(ConstructError::DuplicateId("B".into())));
        assert!(matches!(b.plain("l", Op::LineThrough, &["B", "Z"]), Err(ConstructError::UnknownObject(_))));
        assert!(matches!(b.plain("l", Op::LineThrough, &["B", "B"]), Err(ConstructError::Degenerate(_))));
        b.place("C", q(1, 0), q(0, 0)).unwrap().plain("circ", Op::CircleCenterThrough, &["B", "C"]).unwrap();
        b.plain("axis", Op::LineThrough, &["B", "C"]).unwrap();
        assert!(matches!(b.meet("P", "circ", "axis", Selector::Only), Err(ConstructError::Ambiguous(_))));
        assert!(matches!(b.meet("P", "circ", "axis", Selector::Beyond("C".into(), "B".into())), Ok(_)));
        assert!("X = frobnicate(A; -)".parse::<ConstructionStep>().is_err());
    }
}
