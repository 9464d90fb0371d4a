use std::path::Path;

use goldenextremal_core::construct::construct_t2;
use goldenextremal_core::exactphi::{phi_pow_decompose, QPhi, Radical};
use goldenextremal_core::extremal::{
    self, check_tolerance, prove_r_longest_infeasible, solve_min_area_analytic, solve_min_area_numeric_with, solve_min_perimeter_isosceles,
    solve_min_perimeter_no_triangle, solve_min_perimeter_nonacute, NonAcuteReading, PerimeterSolution, SolveError,
    SolverOptions, AGREEMENT_TOL,
};
use goldenextremal_core::geometry;
use goldenextremal_core::goldenseq::{tn_area, tn_area_bounds_check, tn_entry};
use num::BigRational;

use crate::document::{fixed, sci, Output, ResultDocument, Table};
use crate::pretty;
use crate::render::{render_svg, Figure, RenderSpec};
use crate::CliError;

pub const SEQUENCE_MAX: u64 = 500;
pub const VERIFY_RANGE: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveProblem {
    Area,
    PerimeterNoTriangle,
    PerimeterNonAcute,
    PerimeterIsosceles,
}

impl SolveProblem {
    pub fn name(self) -> &'static str {
        match self {
            SolveProblem::Area => "area",
            SolveProblem::PerimeterNoTriangle => "perimeter-no-triangle",
            SolveProblem::PerimeterNonAcute => "perimeter-nonacute",
            SolveProblem::PerimeterIsosceles => "perimeter-isosceles",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolveFlags {
    pub strict_diameter: bool,
    pub both_constraint_readings: bool,
    /// Grid points per axis; `None` keeps the solver default.
    pub grid: Option<usize>,
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidTolerance(_) => CliError::Usage(e.to_string()),
            _ => CliError::NonConvergence(e.to_string()),
        }
    }
}

fn exact_out(name: &str, x: &QPhi) -> Output {
    Output::value(name, fixed(x.to_f64(), 12)).exact(x, pretty::qphi(x))
}

fn radical_out(name: &str, x: &Radical) -> Output {
    Output::value(name, fixed(x.to_f64(), 12)).exact(x, pretty::radical(x))
}

pub fn cmd_solve(problem: SolveProblem, tol: f64, flags: SolveFlags) -> Result<ResultDocument, CliError> {
    check_tolerance(tol)?;
    let mut opts = SolverOptions { strict_diameter: flags.strict_diameter, ..SolverOptions::default() };
    if let Some(g) = flags.grid {
        if !(8..=4096).contains(&g) {
            return Err(CliError::Usage(format!("--grid must be in 8..=4096, got {g}")));
        }
        opts.grid = g;
    }
    let mut doc = ResultDocument::new(
        "solve",
        &[
            ("problem", problem.name().into()),
            ("tol", format!("{tol:e}")),
            ("grid", opts.grid.to_string()),
            ("strict_diameter", flags.strict_diameter.to_string()),
            ("both_constraint_readings", flags.both_constraint_readings.to_string()),
        ],
    );
    match problem {
        SolveProblem::Area => solve_area(&mut doc, tol, opts)?,
        SolveProblem::PerimeterNoTriangle => {
            let s = solve_min_perimeter_no_triangle(tol, opts)?;
            perimeter_outputs(&mut doc, "", &s);
            let upper = problem1_perimeter();
            doc.push(Output::value("area-optimal triangle perimeter", fixed(upper, 12)));
            doc.push(Output::check("area-optimal triangle bounds the no-triangle optimum", s.perimeter <= upper + 1e-9));
        }
        SolveProblem::PerimeterNonAcute => {
            let readings: &[NonAcuteReading] = if flags.both_constraint_readings {
                &[NonAcuteReading::NonAcuteOnly, NonAcuteReading::WithNoTriangle]
            } else {
                &[NonAcuteReading::NonAcuteOnly]
            };
            for &reading in readings {
                let s = solve_min_perimeter_nonacute(tol, reading, opts)?;
                let prefix = if flags.both_constraint_readings { format!("{}.", reading.as_str()) } else { String::new() };
                perimeter_outputs(&mut doc, &prefix, &s);
            }
        }
        SolveProblem::PerimeterIsosceles => {
            let s = solve_min_perimeter_isosceles(tol, opts)?;
            perimeter_outputs(&mut doc, "", &s);
            let half = s.half_triangle.expect("isosceles solutions carry the half-triangle");
            let (vh, sh) = (half.height_ratio(), half.slant_ratio());
            doc.push(Output::value("v/h", fixed(vh, 8)).note("√φ"));
            doc.push(Output::value("s/h", fixed(sh, 8)).note("φ"));
            let phi = QPhi::phi().to_f64();
            doc.push(Output::check("v/h = √φ within 1e-6", (vh - phi.sqrt()).abs() <= 1e-6));
            doc.push(Output::check("s/h = φ within 1e-6", (sh - phi).abs() <= 1e-6));
            let pyth = (half.half_base.powi(2) + half.height.powi(2) - half.slant.powi(2)).abs();
            doc.push(Output::value("|h^2 + v^2 - s^2|", sci(pyth, 3)));
        }
    }
    if !doc.all_passed() {
        return Err(CliError::NonConvergence(failed_lines(&doc)));
    }
    Ok(doc)
}

fn failed_lines(doc: &ResultDocument) -> String {
    doc.outputs.iter().filter(|o| !o.passed()).map(Output::line).collect::<Vec<_>>().join("; ")
}

/// Perimeter of the smallest-area triangle, `φ + φ² + φ·√(1 + φ²)`.
pub fn problem1_perimeter() -> f64 {
    let a = solve_min_area_analytic();
    a.ab + a.ac + a.bc
}

fn solve_area(doc: &mut ResultDocument, tol: f64, opts: SolverOptions) -> Result<(), CliError> {
    let analytic = solve_min_area_analytic();
    let exact = analytic.exact.as_ref().expect("analytic solution is exact");
    doc.push(exact_out("analytic.x", &exact.x_star));
    doc.push(radical_out("analytic.AB", &exact.ab));
    doc.push(radical_out("analytic.AC", &exact.ac));
    doc.push(radical_out("analytic.BC", &exact.bc));
    doc.push(exact_out("analytic.sin_theta", &exact.sin_theta));
    let area = &exact.area;
    doc.push(Output::value("area", fixed(area.to_f64(), 10)).exact(area, pretty::ascii(&pretty::qphi(area))));
    for (name, ok) in &exact.checks {
        doc.push(Output::check(format!("{name} exact"), *ok));
    }
    let numeric = solve_min_area_numeric_with(tol, opts)?;
    doc.push(Output::value("numeric.AB", fixed(numeric.ab, 12)));
    doc.push(Output::value("numeric.AC", fixed(numeric.ac, 12)));
    doc.push(Output::value("numeric.area", fixed(numeric.area, 12)));
    for (name, v) in &numeric.certificate {
        doc.push(Output::value(format!("numeric.{name}"), sci(*v, 3)));
    }
    let gap = (numeric.area - analytic.area).abs();
    doc.push(Output::value("|numeric - analytic| area", sci(gap, 3)));
    let arg_gap = (numeric.ab - analytic.ab).abs().max((numeric.ac - analytic.ac).abs());
    doc.push(Output::value("|numeric - analytic| argmin", sci(arg_gap, 3)));
    doc.push(Output::check("analytic and numeric agree within 1e-8", gap <= AGREEMENT_TOL && arg_gap <= AGREEMENT_TOL));
    Ok(())
}

fn perimeter_outputs(doc: &mut ResultDocument, prefix: &str, s: &PerimeterSolution) {
    let name = |n: &str| format!("{prefix}{n}");
    for (p, v) in &s.params {
        doc.push(Output::value(name(p), fixed(*v, 12)));
    }
    if let Some(b) = s.theta_branch {
        doc.push(Output::value(name("theta_branch"), b.as_str().into()));
    }
    doc.push(Output::value(name("AB"), fixed(s.ab, 12)));
    doc.push(Output::value(name("AC"), fixed(s.ac, 12)));
    doc.push(Output::value(name("BC"), fixed(s.bc, 12)));
    doc.push(Output::value(name("perimeter"), fixed(s.perimeter, 12)));
    doc.push(Output::value(name("grid_perimeter"), fixed(s.grid_value, 12)));
    doc.push(Output::value(name("constraint_set"), s.constraint_set.join("+")));
    doc.push(Output::value(name("max_violation"), sci(s.max_violation, 3)));
    doc.push(Output::value(name("stationarity"), sci(s.stationarity, 3)));
    doc.push(Output::value(name("angle_class"), s.feasibility.angle_class.as_str().into()));
    doc.push(Output::value(name("diameter_contained"), s.feasibility.diameter_contained.to_string()));
    let (t_ab, t_ac) = s.feasibility.tangency_on_segment;
    doc.push(Output::value(name("tangency_on_segments"), format!("{t_ab},{t_ac}")));
    let recomputed = geometry::perimeter(&s.triangle);
    doc.push(Output::check(name("geometry reproduces perimeter within 1e-10"), (recomputed - s.perimeter).abs() <= 1e-10));
    doc.push(Output::check(name("constraints within 1e-9"), s.max_violation <= extremal::CONSTRAINT_TOL));
    doc.push(Output::check(name("stationarity within 1e-6"), s.stationarity <= extremal::STATIONARITY_TOL));
}

pub fn cmd_sequence(n_max: u64) -> Result<ResultDocument, CliError> {
    if !(1..=SEQUENCE_MAX).contains(&n_max) {
        return Err(CliError::Usage(format!("--n-max must be in 1..={SEQUENCE_MAX}, got {n_max}")));
    }
    let mut doc = ResultDocument::new("sequence", &[("n_max", n_max.to_string())]);
    let columns = ["n", "F_n", "F_n+1", "sides", "area", "area_float", "sides_exact", "area_exact"];
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let t = tn_entry(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let area = tn_area(n).map_err(|e| CliError::Usage(e.to_string()))?;
        let sides: Vec<String> = t.sides().iter().map(|s| pretty::radical(s)).collect();
        let canon: Vec<String> = t.sides().iter().map(|s| s.to_string()).collect();
        rows.push(vec![
            n.to_string(),
            t.f_n.to_string(),
            t.f_next.to_string(),
            sides.join(", "),
            pretty::radical(&area),
            fixed(area.to_f64(), 12),
            canon.join("; "),
            area.to_string(),
        ]);
    }
    let phi = QPhi::phi();
    let limit_sides = [Radical::one(), Radical::from_qphi(phi.clone()), Radical::sqrt(QPhi::one() + phi.square()).expect("positive")];
    let limit_area = phi.scale(&BigRational::new(1.into(), 2.into()));
    rows.push(vec![
        "limit".into(),
        "-".into(),
        "-".into(),
        limit_sides.iter().map(pretty::radical).collect::<Vec<_>>().join(", "),
        pretty::qphi(&limit_area),
        fixed(limit_area.to_f64(), 12),
        limit_sides.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; "),
        limit_area.to_string(),
    ]);
    doc.table = Some(Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows });
    Ok(doc)
}

pub fn cmd_render(spec: &RenderSpec, out: &Path, trace_out: Option<&Path>) -> Result<ResultDocument, CliError> {
    let svg = render_svg(spec)?;
    std::fs::write(out, &svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let mut doc = ResultDocument::new(
        "render",
        &[
            ("figure", spec.figure.name().into()),
            ("width_px", spec.width_px.to_string()),
            ("height_px", spec.height_px.to_string()),
            ("annotate", spec.annotate.to_string()),
            ("n_max", spec.n_max.to_string()),
        ],
    );
    doc.push(Output::value("svg", out.display().to_string()));
    doc.push(Output::value("bytes", svg.len().to_string()));
    if let Some(path) = trace_out {
        if spec.figure != Figure::Construction {
            return Err(CliError::Usage("--trace-out only applies to fig3".into()));
        }
        let (trace, _) = construct_t2().map_err(|e| CliError::Verification(e.to_string()))?;
        std::fs::write(path, trace.to_text()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        doc.push(Output::value("trace", path.display().to_string()));
    }
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Bounds,
    Construction,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::Construction => "construction",
            Suite::All => "all",
        }
    }
}

fn verify_identities(doc: &mut ResultDocument) {
    let phi = QPhi::phi();
    let mut power = phi.clone();
    let mut ok = true;
    for n in 0..=VERIFY_RANGE {
        ok &= match phi_pow_decompose(n) {
            Ok((a, b)) => QPhi::new(BigRational::from_integer(b.into()), BigRational::from_integer(a.into())) == power,
            Err(_) => false,
        };
        power = &power * &phi;
    }
    doc.push(Output::check(format!("phi^(n+1) = F(n+1)*phi + F(n), n=0..{VERIFY_RANGE}"), ok));

    let half = QPhi::from_ratios(1, 2, 0, 1);
    let (mut pyth, mut closed) = (true, true);
    for n in 1..=VERIFY_RANGE {
        match (tn_entry(n), tn_area(n)) {
            (Ok(t), Ok(area)) => {
                pyth &= QPhi::one() + t.side_mid.square() == t.side_long.square();
                closed &= area == t.side_mid.scale(&half);
            }
            _ => {
                pyth = false;
                closed = false;
            }
        }
    }
    doc.push(Output::check(format!("T(n) Pythagoras 1 + mid^2 = long^2, n=1..{VERIFY_RANGE}"), pyth));
    doc.push(Output::check(format!("area(T(n)) = (√φ/2)·√(F(n+1)/F(n)), n=1..{VERIFY_RANGE}"), closed));

    let proof = prove_r_longest_infeasible(1_000_000);
    let ok = proof.as_ref().map_or(false, |p| p.infeasible && (p.grid_min - 4.0).abs() <= 1e-9);
    let detail = proof.map_or_else(|e| e.to_string(), |p| format!("min 1/(x(1-x)) = {} at x = {}", fixed(p.grid_min, 9), fixed(p.grid_argmin, 6)));
    doc.push(Output::check(format!("radius cannot be the longest segment, {detail}"), ok));
}

fn verify_bounds(doc: &mut ResultDocument) {
    match tn_area_bounds_check(VERIFY_RANGE) {
        Ok(r) => {
            let eq: Vec<String> = r.equality_at.iter().map(u64::to_string).collect();
            doc.push(Output::check(
                format!("area(T1) <= area(Tn) <= area(T2), n=1..{VERIFY_RANGE}, equality at n={}", eq.join(",")),
                r.equality_at == [1, 2],
            ));
        }
        Err(e) => doc.push(Output::check(format!("area bounds: {e}"), false)),
    }
}

fn verify_construction(doc: &mut ResultDocument) {
    match construct_t2() {
        Ok((_, cert)) => {
            for (name, ok) in &cert.checks {
                doc.push(Output::check(name.clone(), *ok));
            }
        }
        Err(e) => doc.push(Output::check(format!("construction: {e}"), false)),
    }
}

/// Runs the exact suites; the document lists one check per item.
pub fn cmd_verify(suite: Suite) -> ResultDocument {
    let mut doc = ResultDocument::new("verify", &[("suite", suite.name().into())]);
    if matches!(suite, Suite::Identities | Suite::All) {
        verify_identities(&mut doc);
    }
    if matches!(suite, Suite::Bounds | Suite::All) {
        verify_bounds(&mut doc);
    }
    if matches!(suite, Suite::Construction | Suite::All) {
        verify_construction(&mut doc);
    }
    doc
}
