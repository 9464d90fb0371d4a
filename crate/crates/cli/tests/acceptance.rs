//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use goldenextremal_core::construct::construct_t2;
use goldenextremal_core::exactphi::{radical_cmp, QPhi};
use goldenextremal_core::extremal::{
    perimeter_grid_oracle, prove_r_longest_infeasible, solve_min_area_analytic, solve_min_area_numeric, solve_min_perimeter_isosceles,
    solve_min_perimeter_no_triangle, solve_min_perimeter_nonacute, NonAcuteReading, PerimeterProblem, PerimeterSolution, SolverOptions,
    CONSTRAINT_TOL, STATIONARITY_TOL,
};
use goldenextremal_core::goldenseq::{tn_area, tn_area_bounds_check, tn_entry};
use num::bigint::BigInt;
use num::{BigRational, One, Zero};

/// 50-digit decimal square roots, computed outside the library.
const PHI: f64 = 1.618_033_988_749_894_848_204_586_834_365_638_118;
const SQRT_PHI: f64 = 1.272_019_649_514_068_964_252_422_461_737_491_492;

fn fibs(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(), BigInt::one()];
    while f.len() <= n {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
    }
    f
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
    (out, took)
}

fn c1() -> String {
    let (_, took) = timed(Duration::from_secs(1), || {
        let f = fibs(102);
        let phi = QPhi::phi();
        let mut power = phi.clone();
        for n in 0..=100usize {
            let rhs = QPhi::new(BigRational::from_integer(f[n].clone()), BigRational::from_integer(f[n + 1].clone()));
            assert_eq!(power, rhs, "n = {n}");
            power = power * phi.clone();
        }
    });
    format!("phi^(n+1) = F(n+1)phi + F(n) for n = 0..100 in {took:.2?}")
}

fn c2() -> String {
    for n in 1..=100 {
        let t = tn_entry(n).unwrap();
        let lhs = t.side_short.square() + t.side_mid.square();
        let rhs = t.side_long.square();
        assert_eq!((lhs.a(), lhs.b()), (rhs.a(), rhs.b()), "n = {n}");
    }
    "short^2 + mid^2 = long^2 component-wise for n = 1..100".into()
}

fn c3() -> String {
    let (sol, took) = timed(Duration::from_secs(5), || solve_min_area_numeric(1e-9).unwrap());
    let area = PHI * PHI * PHI / 2.0;
    assert_eq!(format!("{area:.10}"), "2.1180339887");
    assert!((sol.area - area).abs() < 1e-8, "area {}", sol.area);
    assert!((sol.ab - PHI).abs() < 1e-8 && (sol.ac - PHI * PHI).abs() < 1e-8, "argmin ({}, {})", sol.ab, sol.ac);
    let exact = solve_min_area_analytic().exact.unwrap();
    assert_eq!(exact.area, QPhi::phi().pow(3).scale(&BigRational::new(1.into(), 2.into())));
    format!("area {:.12}, argmin ({:.12}, {:.12}) in {took:.2?}", sol.area, sol.ab, sol.ac)
}

fn c4() -> String {
    let (proof, took) = timed(Duration::from_secs(1), || prove_r_longest_infeasible(1_000_000).unwrap());
    assert!((proof.grid_min - 4.0).abs() <= 1e-9, "grid min {}", proof.grid_min);
    assert!(proof.grid_min > 1.0 && proof.infeasible);
    format!("grid min of 1/(x(1-x)) = {:.12} > 1 in {took:.2?}", proof.grid_min)
}

fn c5() -> String {
    use std::cmp::Ordering::*;
    let (lo, hi) = (tn_area(1).unwrap(), tn_area(2).unwrap());
    let mut equal = Vec::new();
    for n in 1..=100 {
        let a = tn_area(n).unwrap();
        let (below, above) = (radical_cmp(&lo, &a), radical_cmp(&a, &hi));
        assert!(below != Greater && above != Greater, "n = {n}");
        if below == Equal || above == Equal {
            equal.push(n);
        }
    }
    assert_eq!(equal, vec![1, 2]);
    assert_eq!(tn_area_bounds_check(100).unwrap().equality_at, equal);
    "area(T1) <= area(Tn) <= area(T2) for n = 1..100, equality at n = 1, 2".into()
}

fn c6() -> String {
    let (_, cert) = construct_t2().unwrap();
    assert_eq!(cert.be_sq, QPhi::from_ints(0, 2));
    assert_eq!(cert.ec_sq, QPhi::phi().pow(3));
    let t2 = tn_entry(2).unwrap();
    for (built, expected) in cert.sides.iter().zip(t2.sides()) {
        assert_eq!(radical_cmp(built, expected), std::cmp::Ordering::Equal);
    }
    assert!(cert.all_pass());
    "BE^2 = 2phi, EC^2 = phi^3, sides equal T(2)".into()
}

fn c7() -> String {
    let (sol, took) = timed(Duration::from_secs(5), || solve_min_perimeter_isosceles(1e-9, SolverOptions::default()).unwrap());
    let half = sol.half_triangle.unwrap();
    assert!((half.height_ratio() - SQRT_PHI).abs() < 1e-6, "v/h {}", half.height_ratio());
    assert!((half.slant_ratio() - PHI).abs() < 1e-6, "s/h {}", half.slant_ratio());
    format!("v/h = {:.10}, s/h = {:.10} in {took:.2?}", half.height_ratio(), half.slant_ratio())
}

fn c8() -> String {
    let mid = tn_entry(50).unwrap().side_mid.to_fixed(30);
    let gap = mid.sub(&QPhi::phi().to_fixed(30)).abs();
    assert!(gap.to_f64() < 1e-10, "gap {}", gap.to_f64());
    format!("|side_mid(T50) - phi| = {:.3e}", gap.to_f64())
}

fn refined(sol: &PerimeterSolution) {
    assert!(sol.max_violation <= CONSTRAINT_TOL, "violation {}", sol.max_violation);
    assert!(sol.stationarity.abs() <= STATIONARITY_TOL, "stationarity {}", sol.stationarity);
}

fn c9() -> String {
    let opts = SolverOptions::default();
    let dense = 2000;
    let mut parts = Vec::new();

    let nt = solve_min_perimeter_no_triangle(1e-9, opts).unwrap();
    refined(&nt);
    let oracle = perimeter_grid_oracle(PerimeterProblem::NoTriangle, dense, opts).unwrap();
    assert!((oracle - nt.perimeter).abs() <= 1e-4, "no-triangle {} vs grid {oracle}", nt.perimeter);
    let area_opt = PHI + PHI * PHI + (PHI * PHI + PHI.powi(4)).sqrt();
    assert!(nt.perimeter <= area_opt, "{} > {area_opt}", nt.perimeter);
    parts.push(format!("no-triangle {:.9} (grid {oracle:.9}, bound {area_opt:.9})", nt.perimeter));

    let na = solve_min_perimeter_nonacute(1e-9, NonAcuteReading::NonAcuteOnly, opts).unwrap();
    refined(&na);
    let oracle = perimeter_grid_oracle(PerimeterProblem::NonAcute(NonAcuteReading::NonAcuteOnly), dense, opts).unwrap();
    assert!((oracle - na.perimeter).abs() <= 1e-4, "non-acute {} vs grid {oracle}", na.perimeter);
    parts.push(format!("non-acute {:.9} (grid {oracle:.9})", na.perimeter));

    // The combined reading's optimum is a corner of the feasible set that no
    // grid lands on; it is checked against the grid from below and against
    // the area-optimal triangle, which sits on that corner.
    let both = solve_min_perimeter_nonacute(1e-9, NonAcuteReading::WithNoTriangle, opts).unwrap();
    refined(&both);
    let oracle = perimeter_grid_oracle(PerimeterProblem::NonAcute(NonAcuteReading::WithNoTriangle), dense, opts).unwrap();
    assert!(both.perimeter <= oracle + 1e-12 && (both.perimeter - area_opt).abs() <= 1e-6, "{} vs {oracle}", both.perimeter);
    parts.push(format!("non-acute+no-triangle {:.9} (grid {oracle:.9})", both.perimeter));

    let iso = solve_min_perimeter_isosceles(1e-9, opts).unwrap();
    refined(&iso);
    let oracle = perimeter_grid_oracle(PerimeterProblem::Isosceles, dense * 50, opts).unwrap();
    assert!((oracle - iso.perimeter).abs() <= 1e-4, "isosceles {} vs grid {oracle}", iso.perimeter);
    parts.push(format!("isosceles {:.9} (grid {oracle:.9})", iso.perimeter));
    parts.join("; ")
}

fn run_twice(args: &[&str]) -> Vec<u8> {
    let go = || {
        let out = Command::new(env!("CARGO_BIN_EXE_goldenextremal")).args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let (a, b) = (go(), go());
    assert_eq!(a, b, "{args:?} differs between runs");
    a
}

fn c10() -> String {
    let dir = tempfile::tempdir().unwrap();
    run_twice(&["solve", "area"]);
    run_twice(&["solve", "perimeter-no-triangle", "--format", "json"]);
    run_twice(&["sequence", "--n-max", "20", "--format", "csv"]);
    for fig in ["fig1", "fig2", "fig3"] {
        let mut files = Vec::new();
        for i in 0..2 {
            let path = dir.path().join(format!("{fig}-{i}.svg"));
            let out = Command::new(env!("CARGO_BIN_EXE_goldenextremal")).args(["render", fig, "--out"]).arg(&path).output().unwrap();
            assert!(out.status.success());
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{fig} differs between runs");
    }
    "solve, sequence and render are byte-identical across runs".into()
}

fn main() {
    let criteria: [(&str, fn() -> String); 10] = [
        ("exact phi-power identity", c1),
        ("exact Pythagoras for T(n)", c2),
        ("minimum area reproduction", c3),
        ("radius-longest infeasibility", c4),
        ("area bounds", c5),
        ("construction certificate", c6),
        ("isosceles perimeter ratios", c7),
        ("limit behaviour", c8),
        ("perimeter solvers", c9),
        ("determinism", c10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
