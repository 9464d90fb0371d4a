//! Coordinate geometry of triangles circumscribing a semicircle whose
//! diameter lies on the base `BC`.
//!
//! Triangles are parametrized by their base angles: with the semicircle
//! centred at the origin, `B = (−R/sin β, 0)` and `C = (R/sin γ, 0)` put both
//! slanted sides at distance `R` from `O`, so tangency holds by construction.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

/// Tolerance band around π/2 inside which an angle counts as right.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("base angles beta={beta}, gamma={gamma} do not form a triangle")]
    InvalidAngles { beta: f64, gamma: f64 },
    #[error("invalid triangle: {0}")]
    InvalidTriangle(&'static str),
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

/// Angles of the triangle at `B` and `C`, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseAngles {
    beta: f64,
    gamma: f64,
}

impl BaseAngles {
    pub fn new(beta: f64, gamma: f64) -> Result<Self, GeometryError> {
        let ok = beta.is_finite() && gamma.is_finite() && beta > 0.0 && gamma > 0.0 && beta + gamma < PI;
        if !ok {
            return Err(GeometryError::InvalidAngles { beta, gamma });
        }
        Ok(BaseAngles { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Angle at the apex `A`.
    pub fn apex(&self) -> f64 {
        PI - self.beta - self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    AB,
    AC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AngleClass {
    Acute,
    Right,
    Obtuse,
}

impl AngleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleClass::Acute => "acute",
            AngleClass::Right => "right",
            AngleClass::Obtuse => "obtuse",
        }
    }
}

/// A triangle `ABC` with base `BC` on the x-axis and the semicircle of
/// radius `r` centred at `o` on that base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleGeom {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub o: Point,
    pub r: f64,
}

impl TriangleGeom {
    /// Checks the layout invariants: `B`, `C`, `O` on `y = 0`,
    /// `B.x < O.x < C.x`, apex above the base.
    pub fn new(a: Point, b: Point, c: Point, o: Point, r: f64) -> Result<Self, GeometryError> {
        let finite = [a, b, c, o].iter().all(|p| p.x.is_finite() && p.y.is_finite());
        if !finite {
            return Err(GeometryError::InvalidTriangle("non-finite coordinate"));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(GeometryError::InvalidRadius(r));
        }
        if b.y != 0.0 || c.y != 0.0 || o.y != 0.0 {
            return Err(GeometryError::InvalidTriangle("B, C and O must lie on y = 0"));
        }
        if !(b.x < o.x && o.x < c.x) {
            return Err(GeometryError::InvalidTriangle("O must lie strictly between B and C"));
        }
        if a.y <= 0.0 {
            return Err(GeometryError::InvalidTriangle("apex must lie above the base"));
        }
        Ok(TriangleGeom { a, b, c, o, r })
    }

    pub fn ab(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn ac(&self) -> f64 {
        self.a.dist(self.c)
    }

    pub fn bc(&self) -> f64 {
        self.b.dist(self.c)
    }

    /// Interior angles at `(A, B, C)`.
    pub fn angles(&self) -> (f64, f64, f64) {
        let angle = |p: Point, q: Point, s: Point| {
            let (u, v) = (q.sub(p), s.sub(p));
            u.cross(v).abs().atan2(u.dot(v))
        };
        (angle(self.a, self.b, self.c), angle(self.b, self.a, self.c), angle(self.c, self.a, self.b))
    }

    /// Multiplies every coordinate and the radius by `k`.
    pub fn scaled(&self, k: f64) -> TriangleGeom {
        let s = |p: Point| Point::new(p.x * k, p.y * k);
        TriangleGeom { a: s(self.a), b: s(self.b), c: s(self.c), o: s(self.o), r: self.r * k }
    }

    fn side_points(&self, side: Side) -> (Point, Point) {
        match side {
            Side::AB => (self.a, self.b),
            Side::AC => (self.a, self.c),
        }
    }
}

/// Builds the unit-radius circumscribing triangle with the given base angles.
pub fn triangle_from_base_angles(angles: BaseAngles) -> TriangleGeom {
    let (beta, gamma) = (angles.beta, angles.gamma);
    let b = Point::new(-1.0 / beta.sin(), 0.0);
    let c = Point::new(1.0 / gamma.sin(), 0.0);
    // law of sines on the base BC
    let ab = (c.x - b.x) * gamma.sin() / (beta + gamma).sin();
    let a = Point::new(b.x + ab * beta.cos(), ab * beta.sin());
    TriangleGeom { a, b, c, o: Point::new(0.0, 0.0), r: 1.0 }
}

/// Distance from `O` to the line through the named side.
pub fn tangent_distance(tri: &TriangleGeom, side: Side) -> f64 {
    let (p, q) = tri.side_points(side);
    let dir = q.sub(p);
    dir.cross(tri.o.sub(p)).abs() / dir.dot(dir).sqrt()
}

/// Whether the foot of the perpendicular from `O` lies on the side segment.
pub fn tangency_on_segment(tri: &TriangleGeom, side: Side) -> bool {
    let (p, q) = tri.side_points(side);
    let dir = q.sub(p);
    let t = tri.o.sub(p).dot(dir) / dir.dot(dir);
    (0.0..=1.0).contains(&t)
}

pub fn area(tri: &TriangleGeom) -> f64 {
    0.5 * tri.b.sub(tri.a).cross(tri.c.sub(tri.a)).abs()
}

/// `|S(ABC) − ½·R·(AB + AC)|`.
///
/// The two sub-triangles `AOB` and `AOC` have heights `R` over `AB` and
/// `AC` exactly when both sides are tangent, so the residual vanishes for
/// circumscribing triangles and measures the tangency defect otherwise.
pub fn area_decomposition_residual(tri: &TriangleGeom) -> f64 {
    let s_aob = 0.5 * tri.ab() * tri.r;
    let s_aoc = 0.5 * tri.ac() * tri.r;
    (area(tri) - (s_aob + s_aoc)).abs()
}

pub fn perimeter(tri: &TriangleGeom) -> f64 {
    tri.ab() + tri.ac() + tri.bc()
}

/// Both diameter endpoints `O.x ± R` lie on `BC` (inclusive).
pub fn diameter_contained(tri: &TriangleGeom) -> bool {
    let (lo, hi) = (tri.b.x.min(tri.c.x), tri.b.x.max(tri.c.x));
    lo <= tri.o.x - tri.r && tri.o.x + tri.r <= hi
}

pub fn classify(tri: &TriangleGeom) -> AngleClass {
    let (a, b, c) = tri.angles();
    let largest = a.max(b).max(c);
    if (largest - FRAC_PI_2).abs() <= RIGHT_ANGLE_TOL {
        AngleClass::Right
    } else if largest < FRAC_PI_2 {
        AngleClass::Acute
    } else {
        AngleClass::Obtuse
    }
}
