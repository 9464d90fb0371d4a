//! Smallest circumscribing triangles of the unit semicircle.
//!
//! The triangle is described either by its base angles (see
//! [`crate::geometry`]) or by the two slanted sides `AB = x`, `AC` and the
//! apex angle `θ`. With the semicircle tangent to both slanted sides the
//! area splits as `½·AB·R + ½·AC·R`, which ties `sin θ` to the sides:
//! `sin θ = (AB + AC) / (AB·AC)`.
//!
//! Lengths `R = 1`, `AB`, `AC` failing the triangle inequality leave two
//! boundary cases: `AB + AC = R`, which is impossible, and `AC = AB + R`
//! (or its mirror), whose smallest area sits at `AB = φ`.

pub mod search;

use std::f64::consts::{FRAC_PI_2, PI};

use num::BigRational;
use thiserror::Error;

use crate::exactphi::{QPhi, Radical};
use crate::geometry::{
    self, AngleClass, BaseAngles, GeometryError, Point, Side, TriangleGeom,
};
use search::{Boundary, Constraint, Params, Problem, TraceEntry};

/// Constraint satisfaction required of every reported optimum.
pub const CONSTRAINT_TOL: f64 = 1e-9;
/// First-order stationarity required along feasible directions.
pub const STATIONARITY_TOL: f64 = 1e-6;
/// Agreement between the analytic and numeric smallest area.
pub const AGREEMENT_TOL: f64 = 1e-8;
pub const DEFAULT_GRID: usize = 512;

/// Search box for side-length parametrizations: `AB ∈ [0, 8]`, slack `∈ [0, 8]`.
const SIDE_BOX: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("{op}: argument {value} outside the domain")]
    Domain { op: &'static str, value: f64 },
    #[error("x = {x} is infeasible: {detail}")]
    Infeasible { x: String, detail: &'static str },
    #[error("tolerance {0} outside [1e-14, 1e-3]")]
    InvalidTolerance(f64),
    #[error("{stage} did not converge: {detail}")]
    NonConvergence { stage: &'static str, detail: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn check_tolerance(tol: f64) -> Result<(), SolveError> {
    if (1e-14..=1e-3).contains(&tol) {
        Ok(())
    } else {
        Err(SolveError::InvalidTolerance(tol))
    }
}

fn phi_f64() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

// ---------------------------------------------------------------------------
// case analysis

/// Which length is the longest of `R`, `AB`, `AC` in the degenerate case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LongestSegment {
    Radius,
    Ac,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseAnalysis {
    pub case: LongestSegment,
    pub x: f64,
    pub sin_theta: f64,
    pub feasible: bool,
}

impl CaseAnalysis {
    pub fn evaluate(case: LongestSegment, x: f64) -> Result<Self, SolveError> {
        let sin_theta = match case {
            LongestSegment::Radius => sin_theta_r_longest(x)?,
            LongestSegment::Ac => sin_theta_ac_longest(x)?,
        };
        Ok(CaseAnalysis { case, x, sin_theta, feasible: sin_theta > 0.0 && sin_theta <= 1.0 })
    }
}

/// `1 / (x(1 − x))`, the apex sine forced when `AC = R − AB`.
pub fn sin_theta_r_longest(x: f64) -> Result<f64, SolveError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(SolveError::Domain { op: "sin_theta_r_longest", value: x });
    }
    Ok(1.0 / (x * (1.0 - x)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityProof {
    pub samples: usize,
    pub grid_min: f64,
    pub grid_argmin: f64,
    /// `x(1 − x)` peaks where its derivative `1 − 2x` vanishes.
    pub analytic_argmin: BigRational,
    pub analytic_min: BigRational,
    pub infeasible: bool,
}

/// Shows `sin θ > 1` throughout `0 < x < 1` when the radius is the longest
/// segment, both on an interior grid and analytically.
pub fn prove_r_longest_infeasible(samples: usize) -> Result<InfeasibilityProof, SolveError> {
    if samples == 0 {
        return Err(SolveError::Domain { op: "prove_r_longest_infeasible", value: 0.0 });
    }
    let (mut grid_min, mut grid_argmin) = (f64::INFINITY, f64::NAN);
    for i in 1..=samples {
        let x = i as f64 / (samples + 1) as f64;
        let v = sin_theta_r_longest(x)?;
        if v < grid_min {
            grid_min = v;
            grid_argmin = x;
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    let analytic_min = &one / (&half * (&one - &half));
    let infeasible = grid_min > 1.0 && analytic_min > one;
    Ok(InfeasibilityProof { samples, grid_min, grid_argmin, analytic_argmin: half, analytic_min, infeasible })
}

/// `(2x + 1) / (x² + x)`, the apex sine forced when `AC = AB + R`.
pub fn sin_theta_ac_longest(x: f64) -> Result<f64, SolveError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(SolveError::Domain { op: "sin_theta_ac_longest", value: x });
    }
    Ok((2.0 * x + 1.0) / (x * x + x))
}

pub fn sin_theta_ac_longest_exact(x: &QPhi) -> Result<QPhi, SolveError> {
    if x.signum() <= 0 {
        return Err(SolveError::Domain { op: "sin_theta_ac_longest", value: x.to_f64() });
    }
    let num = x.scale(&BigRational::from_integer(2.into())) + QPhi::one();
    let den = x.square() + x;
    Ok(num.checked_div(&den).expect("x > 0 keeps x² + x non-zero"))
}

/// `(2x + 1)/2`, defined where `sin θ ≤ 1`, i.e. `x ≥ φ`.
pub fn area_ac_longest(x: f64) -> Result<f64, SolveError> {
    if x < phi_f64() - 1e-12 {
        return Err(SolveError::Infeasible { x: x.to_string(), detail: "sin(theta) > 1 below x = phi" });
    }
    Ok((2.0 * x + 1.0) / 2.0)
}

pub fn area_ac_longest_exact(x: &QPhi) -> Result<QPhi, SolveError> {
    let sin = sin_theta_ac_longest_exact(x)?;
    if sin > QPhi::one() {
        return Err(SolveError::Infeasible { x: x.to_string(), detail: "sin(theta) > 1 below x = phi" });
    }
    let half = BigRational::new(1.into(), 2.into());
    Ok((x.scale(&BigRational::from_integer(2.into())) + QPhi::one()).scale(&half))
}

// ---------------------------------------------------------------------------
// conversions between (AB, AC, θ) and triangles

/// Sign of `cos θ` at the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaBranch {
    Acute,
    Obtuse,
}

impl ThetaBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            ThetaBranch::Acute => "acute",
            ThetaBranch::Obtuse => "obtuse",
        }
    }
}

/// `sin θ = (AB + AC)/(AB·AC)` for a circumscribing triangle.
pub fn tangent_sin_theta(ab: f64, ac: f64) -> f64 {
    (ab + ac) / (ab * ac)
}

fn cos_theta(ab: f64, ac: f64, branch: ThetaBranch) -> f64 {
    let s = tangent_sin_theta(ab, ac);
    let c = (1.0 - s * s).sqrt();
    match branch {
        ThetaBranch::Acute => c,
        ThetaBranch::Obtuse => -c,
    }
}

/// `BC` by the law of cosines. `NaN` when `sin θ > 1`.
pub fn third_side(ab: f64, ac: f64, branch: ThetaBranch) -> f64 {
    (ab * ab + ac * ac - 2.0 * ab * ac * cos_theta(ab, ac, branch)).sqrt()
}

/// Base angles of the circumscribing triangle with slanted sides `AB`, `AC`.
pub fn base_angles_from_sides(ab: f64, ac: f64, branch: ThetaBranch) -> Result<BaseAngles, SolveError> {
    let s = tangent_sin_theta(ab, ac);
    if !(ab > 0.0 && ac > 0.0) || s > 1.0 + 1e-12 {
        return Err(SolveError::Infeasible { x: format!("({ab}, {ac})"), detail: "no apex angle with sin(theta) <= 1" });
    }
    let c = cos_theta(ab, ac, branch);
    let s = s.min(1.0);
    let (a, b, cc) = (Point::new(0.0, 0.0), Point::new(ab, 0.0), Point::new(ac * c, ac * s));
    let angle = |p: Point, q: Point, r: Point| {
        let (ux, uy, vx, vy) = (q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y);
        (ux * vy - uy * vx).abs().atan2(ux * vx + uy * vy)
    };
    Ok(BaseAngles::new(angle(b, a, cc), angle(cc, a, b))?)
}

pub fn triangle_from_sides(ab: f64, ac: f64, branch: ThetaBranch) -> Result<TriangleGeom, SolveError> {
    Ok(geometry::triangle_from_base_angles(base_angles_from_sides(ab, ac, branch)?))
}

/// Largest angle of the triangle `(AB, AC, θ)` is `≥ π/2`.
fn non_acute_margin(angles: &BaseAngles) -> f64 {
    angles.beta().max(angles.gamma()).max(angles.apex()) - FRAC_PI_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub diameter_contained: bool,
    pub tangency_on_segment: (bool, bool),
    pub angle_class: AngleClass,
}

impl FeasibilityReport {
    pub fn of(tri: &TriangleGeom) -> Self {
        FeasibilityReport {
            diameter_contained: geometry::diameter_contained(tri),
            tangency_on_segment: (geometry::tangency_on_segment(tri, Side::AB), geometry::tangency_on_segment(tri, Side::AC)),
            angle_class: geometry::classify(tri),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Grid points per axis in the seeding phase.
    pub grid: usize,
    pub max_iter: usize,
    /// Impose diameter containment as a hard constraint.
    pub strict_diameter: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { grid: DEFAULT_GRID, max_iter: 10_000, strict_diameter: false }
    }
}

fn diameter_margin(tri: &TriangleGeom) -> f64 {
    (tri.o.x - tri.r - tri.b.x).min(tri.c.x - tri.o.x - tri.r)
}

fn diameter_margin_of_sides(ab: f64, ac: f64, branch: ThetaBranch) -> f64 {
    triangle_from_sides(ab, ac, branch).map_or(f64::NEG_INFINITY, |t| diameter_margin(&t))
}

// ---------------------------------------------------------------------------
// smallest area

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaBranch {
    /// `AC ≥ AB + R`
    AcLongest,
    /// `AB ≥ AC + R`, the relabelled mirror.
    AbLongest,
}

/// Slanted sides from `[shorter side, slack]` where `longer = shorter + 1 + slack`.
fn sides_from_params(branch: AreaBranch, p: Params) -> (f64, f64) {
    let (short, long) = (p[0], p[0] + 1.0 + p[1]);
    match branch {
        AreaBranch::AcLongest => (short, long),
        AreaBranch::AbLongest => (long, short),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactAreaData {
    pub x_star: QPhi,
    pub ab: Radical,
    pub ac: Radical,
    pub bc: Radical,
    pub area: QPhi,
    pub sin_theta: QPhi,
    pub checks: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaSolution {
    pub branch: AreaBranch,
    /// The shorter slanted side.
    pub x_star: f64,
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
    pub area: f64,
    pub sin_theta: f64,
    pub exact: Option<ExactAreaData>,
    /// Named residuals, each expected at or near zero.
    pub certificate: Vec<(String, f64)>,
    pub trace: Vec<TraceEntry>,
}

/// Closed-form optimum: `AB = φ`, `AC = φ²`, a right angle at `A` and area `φ³/2`.
pub fn solve_min_area_analytic() -> AreaSolution {
    let phi = QPhi::phi();
    let ab = phi.clone();
    let ac = phi.square();
    let sin_theta = sin_theta_ac_longest_exact(&ab).expect("phi > 0");
    let area = area_ac_longest_exact(&ab).expect("x = phi is feasible");
    // BC² = AB² + AC² = φ²(1 + φ²)
    let bc = Radical::new(phi.clone(), QPhi::one() + phi.square()).expect("positive radicand");
    let ab_r = Radical::from_qphi(ab.clone());
    let ac_r = Radical::from_qphi(ac.clone());

    let half = BigRational::new(1.into(), 2.into());
    let checks = vec![
        ("sin_theta = 1".to_string(), sin_theta == QPhi::one()),
        ("AC = 1 + AB".to_string(), ac == QPhi::one() + &ab),
        ("AC/AB = phi".to_string(), ac.checked_div(&ab).ok() == Some(phi.clone())),
        (
            "BC^2/AB^2 = 1 + phi^2".to_string(),
            bc.square().checked_div(&ab.square()).ok() == Some(QPhi::one() + phi.square()),
        ),
        ("BC^2 = AB^2 + AC^2".to_string(), bc.square() == ab.square() + ac.square()),
        ("area = phi^3/2".to_string(), area == phi.pow(3).scale(&half)),
        ("area = (AB + AC)/2".to_string(), area == (&ab + &ac).scale(&half)),
    ];
    let certificate = checks.iter().map(|(name, ok)| (name.clone(), if *ok { 0.0 } else { 1.0 })).collect();
    AreaSolution {
        branch: AreaBranch::AcLongest,
        x_star: ab.to_f64(),
        ab: ab.to_f64(),
        ac: ac.to_f64(),
        bc: bc.to_f64(),
        area: area.to_f64(),
        sin_theta: 1.0,
        exact: Some(ExactAreaData { x_star: ab.clone(), ab: ab_r, ac: ac_r, bc, area, sin_theta, checks }),
        certificate,
        trace: Vec::new(),
    }
}

/// The smallest-area search in `[shorter side, slack]` coordinates.
pub fn area_problem(branch: AreaBranch, opts: SolverOptions) -> Problem<'static> {
    let mut constraints = vec![
        Constraint {
            name: "sin_theta<=1",
            g: Box::new(move |p| {
                let (ab, ac) = sides_from_params(branch, p);
                ab * ac - ab - ac
            }),
        },
        Constraint { name: "no_triangle", g: Box::new(|p| p[1]) },
    ];
    if opts.strict_diameter {
        constraints.push(Constraint {
            name: "diameter_contained",
            g: Box::new(move |p| {
                let (ab, ac) = sides_from_params(branch, p);
                diameter_margin_of_sides(ab, ac, ThetaBranch::Acute)
            }),
        });
    }
    Problem {
        objective: Box::new(move |p| {
            let (ab, ac) = sides_from_params(branch, p);
            (ab + ac) / 2.0
        }),
        constraints,
        boundaries: vec![
            Boundary { name: "no_triangle", curve: Box::new(|x| Some([x, 0.0])), range: (0.0, SIDE_BOX) },
            Boundary {
                name: "sin_theta=1",
                // shorter·longer = shorter + longer
                curve: Box::new(|x| (x > 1.0).then(|| [x, x / (x - 1.0) - x - 1.0])),
                range: (1.0, SIDE_BOX),
            },
        ],
        lower: [0.0, 0.0],
        upper: [SIDE_BOX, SIDE_BOX],
    }
}

pub fn solve_min_area_numeric_branch(tol: f64, branch: AreaBranch, opts: SolverOptions) -> Result<AreaSolution, SolveError> {
    check_tolerance(tol)?;
    let problem = area_problem(branch, opts);
    let found = problem.solve(opts.grid, tol, opts.max_iter)?;
    let (ab, ac) = sides_from_params(branch, found.params);
    let sin_theta = tangent_sin_theta(ab, ac);
    let violation = problem.max_violation(found.params);
    let stationarity = problem.stationarity_residual(found.params);
    if violation > CONSTRAINT_TOL || stationarity > STATIONARITY_TOL {
        return Err(SolveError::NonConvergence {
            stage: "area refinement",
            detail: format!("violation {violation:e}, stationarity {stationarity:e}"),
        });
    }
    let phi = phi_f64();
    let area = found.value;
    Ok(AreaSolution {
        branch,
        x_star: ab.min(ac),
        ab,
        ac,
        bc: third_side(ab, ac, ThetaBranch::Acute),
        area,
        sin_theta,
        exact: None,
        certificate: vec![
            ("max_violation".into(), violation),
            ("stationarity".into(), stationarity),
            ("1 - sin_theta".into(), 1.0 - sin_theta),
            ("|area - phi^3/2|".into(), (area - phi.powi(3) / 2.0).abs()),
        ],
        trace: found.trace,
    })
}

/// Numeric smallest area over both labellings. Ties keep `AC ≥ AB + R`.
pub fn solve_min_area_numeric(tol: f64) -> Result<AreaSolution, SolveError> {
    solve_min_area_numeric_with(tol, SolverOptions::default())
}

pub fn solve_min_area_numeric_with(tol: f64, opts: SolverOptions) -> Result<AreaSolution, SolveError> {
    let primary = solve_min_area_numeric_branch(tol, AreaBranch::AcLongest, opts)?;
    let mirrored = solve_min_area_numeric_branch(tol, AreaBranch::AbLongest, opts)?;
    Ok(if mirrored.area < primary.area { mirrored } else { primary })
}

// ---------------------------------------------------------------------------
// smallest perimeter

/// How the open non-acute variant combines its constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonAcuteReading {
    /// Only the non-acute requirement.
    NonAcuteOnly,
    /// Non-acute and `R`, `AB`, `AC` not forming a triangle.
    WithNoTriangle,
}

impl NonAcuteReading {
    pub fn as_str(self) -> &'static str {
        match self {
            NonAcuteReading::NonAcuteOnly => "non_acute",
            NonAcuteReading::WithNoTriangle => "non_acute+no_triangle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerimeterProblem {
    NoTriangle,
    NonAcute(NonAcuteReading),
    Isosceles,
}

/// Half of an isosceles triangle: half-base, height, slant side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfTriangle {
    pub half_base: f64,
    pub height: f64,
    pub slant: f64,
}

impl HalfTriangle {
    pub fn height_ratio(&self) -> f64 {
        self.height / self.half_base
    }

    pub fn slant_ratio(&self) -> f64 {
        self.slant / self.half_base
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerimeterSolution {
    pub problem: PerimeterProblem,
    /// Named optimization variables at the optimum.
    pub params: Vec<(&'static str, f64)>,
    pub theta_branch: Option<ThetaBranch>,
    pub triangle: TriangleGeom,
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
    pub perimeter: f64,
    pub constraint_set: Vec<&'static str>,
    pub max_violation: f64,
    pub stationarity: f64,
    /// Best value of the seeding grid.
    pub grid_value: f64,
    pub feasibility: FeasibilityReport,
    pub half_triangle: Option<HalfTriangle>,
    pub trace: Vec<TraceEntry>,
}

fn no_triangle_perimeter(ab: f64, ac: f64, branch: ThetaBranch) -> f64 {
    ab + ac + third_side(ab, ac, branch)
}

/// Perimeter search over `[AB, AC − AB − 1]` for one sign of `cos θ`.
pub fn no_triangle_problem(branch: ThetaBranch, opts: SolverOptions) -> Problem<'static> {
    let sides = |p: Params| sides_from_params(AreaBranch::AcLongest, p);
    let mut constraints = vec![
        Constraint {
            name: "sin_theta<=1",
            g: Box::new(move |p| {
                let (ab, ac) = sides(p);
                ab * ac - ab - ac
            }),
        },
        Constraint { name: "no_triangle", g: Box::new(|p| p[1]) },
    ];
    if opts.strict_diameter {
        constraints.push(Constraint {
            name: "diameter_contained",
            g: Box::new(move |p| {
                let (ab, ac) = sides(p);
                diameter_margin_of_sides(ab, ac, branch)
            }),
        });
    }
    Problem {
        objective: Box::new(move |p| {
            let (ab, ac) = sides(p);
            no_triangle_perimeter(ab, ac, branch)
        }),
        constraints,
        boundaries: vec![
            Boundary { name: "no_triangle", curve: Box::new(|x| Some([x, 0.0])), range: (0.0, SIDE_BOX) },
            Boundary {
                name: "sin_theta=1",
                curve: Box::new(|x| (x > 1.0).then(|| [x, x / (x - 1.0) - x - 1.0])),
                range: (1.0, SIDE_BOX),
            },
        ],
        lower: [0.0, 0.0],
        upper: [SIDE_BOX, SIDE_BOX],
    }
}

fn base_angle_triangle(p: Params) -> Option<TriangleGeom> {
    BaseAngles::new(p[0], p[1]).ok().map(geometry::triangle_from_base_angles)
}

/// Perimeter search over base angles `(β, γ)` restricted to non-acute triangles.
pub fn non_acute_problem(reading: NonAcuteReading, opts: SolverOptions) -> Problem<'static> {
    let mut constraints = vec![Constraint {
        name: "non_acute",
        g: Box::new(|p| BaseAngles::new(p[0], p[1]).map_or(f64::NEG_INFINITY, |a| non_acute_margin(&a))),
    }];
    if reading == NonAcuteReading::WithNoTriangle {
        constraints.push(Constraint {
            name: "no_triangle",
            g: Box::new(|p| base_angle_triangle(p).map_or(f64::NEG_INFINITY, |t| (t.ab() - t.ac()).abs() - t.r)),
        });
    }
    if opts.strict_diameter {
        constraints.push(Constraint {
            name: "diameter_contained",
            g: Box::new(|p| base_angle_triangle(p).map_or(f64::NEG_INFINITY, |t| diameter_margin(&t))),
        });
    }
    Problem {
        objective: Box::new(|p| base_angle_triangle(p).map_or(f64::NAN, |t| geometry::perimeter(&t))),
        constraints,
        boundaries: vec![
            Boundary { name: "right_apex", curve: Box::new(|b| Some([b, FRAC_PI_2 - b])), range: (0.0, FRAC_PI_2) },
            Boundary { name: "right_at_b", curve: Box::new(|g| Some([FRAC_PI_2, g])), range: (0.0, FRAC_PI_2) },
            Boundary { name: "right_at_c", curve: Box::new(|b| Some([b, FRAC_PI_2])), range: (0.0, FRAC_PI_2) },
        ],
        lower: [0.0, 0.0],
        upper: [PI, PI],
    }
}

fn finish_perimeter(
    problem_kind: PerimeterProblem,
    problem: &Problem<'_>,
    found: search::SearchResult,
    names: [&'static str; 2],
    triangle: TriangleGeom,
    theta_branch: Option<ThetaBranch>,
) -> Result<PerimeterSolution, SolveError> {
    let max_violation = problem.max_violation(found.params);
    let stationarity = problem.stationarity_residual(found.params);
    if max_violation > CONSTRAINT_TOL || stationarity > STATIONARITY_TOL {
        return Err(SolveError::NonConvergence {
            stage: "perimeter refinement",
            detail: format!("violation {max_violation:e}, stationarity {stationarity:e}"),
        });
    }
    Ok(PerimeterSolution {
        problem: problem_kind,
        params: vec![(names[0], found.params[0]), (names[1], found.params[1])],
        theta_branch,
        ab: triangle.ab(),
        ac: triangle.ac(),
        bc: triangle.bc(),
        perimeter: found.value,
        constraint_set: problem.constraints.iter().map(|c| c.name).collect(),
        max_violation,
        stationarity,
        grid_value: found.grid_value,
        feasibility: FeasibilityReport::of(&triangle),
        half_triangle: None,
        triangle,
        trace: found.trace,
    })
}

/// Smallest perimeter with `R`, `AB`, `AC` not forming a triangle, over
/// both signs of `cos θ`.
pub fn solve_min_perimeter_no_triangle(tol: f64, opts: SolverOptions) -> Result<PerimeterSolution, SolveError> {
    check_tolerance(tol)?;
    let mut best: Option<(ThetaBranch, Problem<'static>, search::SearchResult)> = None;
    for branch in [ThetaBranch::Acute, ThetaBranch::Obtuse] {
        let problem = no_triangle_problem(branch, opts);
        let found = problem.solve(opts.grid, tol, opts.max_iter)?;
        if best.as_ref().map_or(true, |b| found.value < b.2.value) {
            best = Some((branch, problem, found));
        }
    }
    let (branch, problem, found) = best.expect("two branches searched");
    let (ab, ac) = sides_from_params(AreaBranch::AcLongest, found.params);
    let triangle = triangle_from_sides(ab, ac, branch)?;
    finish_perimeter(PerimeterProblem::NoTriangle, &problem, found, ["ab", "slack"], triangle, Some(branch))
}

/// Smallest perimeter among right or obtuse circumscribing triangles.
pub fn solve_min_perimeter_nonacute(tol: f64, reading: NonAcuteReading, opts: SolverOptions) -> Result<PerimeterSolution, SolveError> {
    check_tolerance(tol)?;
    let problem = non_acute_problem(reading, opts);
    let found = problem.solve(opts.grid, tol, opts.max_iter)?;
    let triangle = geometry::triangle_from_base_angles(BaseAngles::new(found.params[0], found.params[1])?);
    finish_perimeter(PerimeterProblem::NonAcute(reading), &problem, found, ["beta", "gamma"], triangle, None)
}

pub fn isosceles_perimeter(beta: f64) -> f64 {
    BaseAngles::new(beta, beta).map_or(f64::NAN, |a| geometry::perimeter(&geometry::triangle_from_base_angles(a)))
}

/// Smallest-perimeter isosceles triangle, by golden-section over the
/// common base angle.
pub fn solve_min_perimeter_isosceles(tol: f64, opts: SolverOptions) -> Result<PerimeterSolution, SolveError> {
    check_tolerance(tol)?;
    let n = opts.grid.max(2);
    let h = FRAC_PI_2 / n as f64;
    let (seed, grid_value) = (1..n)
        .map(|i| (i as f64 * h, isosceles_perimeter(i as f64 * h)))
        .filter(|(_, v)| v.is_finite())
        .fold((f64::NAN, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    if !grid_value.is_finite() {
        return Err(SolveError::NonConvergence { stage: "grid", detail: "no finite isosceles perimeter".into() });
    }
    let found = search::golden_section(isosceles_perimeter, (seed - 2.0 * h).max(h / 2.0), (seed + 2.0 * h).min(FRAC_PI_2), tol, opts.max_iter)?;
    let polished = search::stationary_polish(isosceles_perimeter, found.x, 1e-4).filter(|b| isosceles_perimeter(*b) <= found.fx + 1e-12);
    let beta = polished.unwrap_or(found.x);
    let perimeter = isosceles_perimeter(beta);
    let triangle = geometry::triangle_from_base_angles(BaseAngles::new(beta, beta)?);
    let half = HalfTriangle { half_base: triangle.bc() / 2.0, height: triangle.a.y, slant: triangle.ab() };
    let stationarity = search::derivative(isosceles_perimeter, beta).abs();
    if stationarity > STATIONARITY_TOL {
        return Err(SolveError::NonConvergence { stage: "isosceles refinement", detail: format!("stationarity {stationarity:e}") });
    }
    Ok(PerimeterSolution {
        problem: PerimeterProblem::Isosceles,
        params: vec![("beta", beta)],
        theta_branch: None,
        ab: triangle.ab(),
        ac: triangle.ac(),
        bc: triangle.bc(),
        perimeter,
        constraint_set: vec!["isosceles"],
        max_violation: (triangle.ab() - triangle.ac()).abs(),
        stationarity,
        grid_value,
        feasibility: FeasibilityReport::of(&triangle),
        half_triangle: Some(half),
        triangle,
        trace: vec![
            TraceEntry { stage: "grid".into(), params: [seed, seed], value: grid_value },
            TraceEntry { stage: format!("golden-section ({} iterations)", found.iterations), params: [found.x, found.x], value: found.fx },
            TraceEntry { stage: if polished.is_some() { "derivative polish" } else { "derivative polish skipped" }.into(), params: [beta, beta], value: perimeter },
        ],
    })
}

/// Brute-force grid minimum of a perimeter problem at `n` points per axis,
/// across every branch the solver searches.
pub fn perimeter_grid_oracle(kind: PerimeterProblem, n: usize, opts: SolverOptions) -> Result<f64, SolveError> {
    match kind {
        PerimeterProblem::NoTriangle => {
            let acute = no_triangle_problem(ThetaBranch::Acute, opts).grid_minimum(n)?.1;
            let obtuse = no_triangle_problem(ThetaBranch::Obtuse, opts).grid_minimum(n)?.1;
            Ok(acute.min(obtuse))
        }
        PerimeterProblem::NonAcute(reading) => Ok(non_acute_problem(reading, opts).grid_minimum(n)?.1),
        PerimeterProblem::Isosceles => Ok((1..n)
            .map(|i| isosceles_perimeter(FRAC_PI_2 * i as f64 / n as f64))
            .filter(|v| v.is_finite())
            .fold(f64::INFINITY, f64::min)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn r_longest_sine() {
        assert_eq!(sin_theta_r_longest(0.5).unwrap(), 4.0);
        assert!((sin_theta_r_longest(0.1).unwrap() - 1.0 / 0.09).abs() < 1e-12);
        assert!(sin_theta_r_longest(0.0).is_err());
        assert!(sin_theta_r_longest(1.0).is_err());
        for i in 1..1000 {
            assert!(sin_theta_r_longest(i as f64 / 1000.0).unwrap() > 1.0);
        }
    }

    #[test]
    fn r_longest_proof() {
        let proof = prove_r_longest_infeasible(1).unwrap();
        assert_eq!(proof.analytic_min, BigRational::from_integer(4.into()));
        assert!(proof.infeasible);
        assert!(prove_r_longest_infeasible(0).is_err());
    }

    #[test]
    fn ac_longest_sine() {
        assert_eq!(sin_theta_ac_longest(1.0).unwrap(), 1.5);
        assert!((sin_theta_ac_longest(3.0).unwrap() - 7.0 / 12.0).abs() < 1e-15);
        assert!(sin_theta_ac_longest(0.0).is_err());
        assert_eq!(sin_theta_ac_longest_exact(&QPhi::phi()).unwrap(), QPhi::one());
        assert_eq!(sin_theta_ac_longest_exact(&QPhi::from_ints(3, 0)).unwrap(), QPhi::from_ratios(7, 12, 0, 1));
        assert!(sin_theta_ac_longest_exact(&QPhi::from_ints(1, -1)).is_err());
    }

    #[test]
    fn ac_longest_area() {
        assert!((area_ac_longest(PHI).unwrap() - 2.118_033_988_7).abs() < 1e-10);
        assert_eq!(area_ac_longest(2.0).unwrap(), 2.5);
        assert!(area_ac_longest(1.0).is_err());
        let exact = area_ac_longest_exact(&QPhi::phi()).unwrap();
        assert_eq!(exact, QPhi::from_ratios(1, 2, 1, 1));
        assert!(area_ac_longest_exact(&QPhi::one()).is_err());
        // just below φ in the field: 1.618
        assert!(area_ac_longest_exact(&QPhi::from_ratios(809, 500, 0, 1)).is_err());
    }

    #[test]
    fn analytic_solution_checks_out() {
        let s = solve_min_area_analytic();
        let exact = s.exact.as_ref().unwrap();
        assert!(exact.checks.iter().all(|(_, ok)| *ok), "{:?}", exact.checks);
        assert_eq!(exact.ac.to_qphi().unwrap().checked_div(&exact.ab.to_qphi().unwrap()).unwrap(), QPhi::phi());
        assert!((s.area - 2.118_033_988_749_895).abs() < 1e-10);
        let tri = triangle_from_sides(s.ab, s.ac, ThetaBranch::Acute).unwrap();
        assert!((geometry::area(&tri) - s.area).abs() < 1e-10);
        assert_eq!(geometry::classify(&tri), AngleClass::Right);
    }

    #[test]
    fn side_conversion_round_trip() {
        for (ab, ac, branch) in [(2.0, 3.5, ThetaBranch::Acute), (2.0, 3.5, ThetaBranch::Obtuse), (1.7, 2.9, ThetaBranch::Acute)] {
            let t = triangle_from_sides(ab, ac, branch).unwrap();
            assert!((t.ab() - ab).abs() < 1e-12 && (t.ac() - ac).abs() < 1e-12);
            assert!((t.bc() - third_side(ab, ac, branch)).abs() < 1e-12);
        }
        assert!(triangle_from_sides(1.0, 1.5, ThetaBranch::Acute).is_err());
    }

    #[test]
    fn tolerance_bounds() {
        assert!(solve_min_area_numeric(0.0).is_err());
        assert!(solve_min_area_numeric(1e-2).is_err());
        assert!(solve_min_perimeter_isosceles(1e-15, SolverOptions::default()).is_err());
    }

    #[test]
    fn mirrored_branch_swaps_labels() {
        let m = solve_min_area_numeric_branch(1e-9, AreaBranch::AbLongest, SolverOptions::default()).unwrap();
        assert!((m.ab - PHI * PHI).abs() < 1e-8 && (m.ac - PHI).abs() < 1e-8);
    }

    #[test]
    fn strict_diameter_keeps_area_optimum() {
        let opts = SolverOptions { strict_diameter: true, ..SolverOptions::default() };
        let s = solve_min_area_numeric_with(1e-9, opts).unwrap();
        assert!((s.ab - PHI).abs() < 1e-8);
    }
}
