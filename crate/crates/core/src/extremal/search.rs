//! Deterministic grid seeding plus golden-section refinement for small
//! constrained problems in one or two variables.

use rayon::prelude::*;

use super::SolveError;

/// Slack allowed on `g(p) ≥ 0` when deciding feasibility.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

/// Constraints whose value is within this band count as active in the
/// stationarity certificate.
pub const ACTIVE_BAND: f64 = 1e-7;

const GOLDEN_SHRINK: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMin {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Golden-section search on `[lo, hi]`.
///
/// Non-finite values are treated as `+∞`, so infeasible stretches of the
/// interval are walked away from. The best finite point seen is returned.
pub fn golden_section<F>(f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<LineMin, SolveError>
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let (mut a, mut d) = (lo.min(hi), lo.max(hi));
    let mut b = d - GOLDEN_SHRINK * (d - a);
    let mut c = a + GOLDEN_SHRINK * (d - a);
    let (mut fb, mut fc) = (eval(b), eval(c));
    let mut best = [(a, eval(a)), (d, eval(d)), (b, fb), (c, fc)]
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let mut iterations = 0;
    while d - a > tol {
        if iterations == max_iter {
            return Err(SolveError::NonConvergence { stage: "golden-section", detail: format!("interval {} after {iterations} iterations", d - a) });
        }
        iterations += 1;
        if fb < fc {
            d = c;
            c = b;
            fc = fb;
            b = d - GOLDEN_SHRINK * (d - a);
            fb = eval(b);
            if fb < best.1 {
                best = (b, fb);
            }
        } else {
            a = b;
            b = c;
            fb = fc;
            c = a + GOLDEN_SHRINK * (d - a);
            fc = eval(c);
            if fc < best.1 {
                best = (c, fc);
            }
        }
    }
    if !best.1.is_finite() {
        return Err(SolveError::NonConvergence { stage: "golden-section", detail: format!("no finite value on [{lo}, {hi}]") });
    }
    Ok(LineMin { x: best.0, fx: best.1, iterations })
}

pub type Params = [f64; 2];

pub struct Constraint<'a> {
    pub name: &'static str,
    pub g: Box<dyn Fn(Params) -> f64 + Sync + 'a>,
}

/// A one-parameter curve on which some constraint is held at equality.
pub struct Boundary<'a> {
    pub name: &'static str,
    pub curve: Box<dyn Fn(f64) -> Option<Params> + Sync + 'a>,
    pub range: (f64, f64),
}

/// `minimize objective(p)` over a box subject to `g_i(p) ≥ 0`.
pub struct Problem<'a> {
    pub objective: Box<dyn Fn(Params) -> f64 + Sync + 'a>,
    pub constraints: Vec<Constraint<'a>>,
    pub boundaries: Vec<Boundary<'a>>,
    pub lower: Params,
    pub upper: Params,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub stage: String,
    pub params: Params,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub params: Params,
    pub value: f64,
    pub grid_seed: Params,
    pub grid_value: f64,
    pub trace: Vec<TraceEntry>,
}

impl<'a> Problem<'a> {
    pub fn max_violation(&self, p: Params) -> f64 {
        self.constraints.iter().map(|c| (-(c.g)(p)).max(0.0)).fold(0.0, f64::max)
    }

    pub fn feasible(&self, p: Params) -> bool {
        let inside = (0..2).all(|k| p[k] >= self.lower[k] && p[k] <= self.upper[k]);
        inside && self.constraints.iter().all(|c| (c.g)(p) >= -FEASIBILITY_SLACK)
    }

    /// Objective where feasible, `+∞` elsewhere.
    pub fn penalized(&self, p: Params) -> f64 {
        if !self.feasible(p) {
            return f64::INFINITY;
        }
        let v = (self.objective)(p);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    }

    fn grid_point(&self, n: usize, i: usize, j: usize) -> Params {
        let at = |k: usize, idx: usize| self.lower[k] + (self.upper[k] - self.lower[k]) * idx as f64 / n as f64;
        [at(0, i), at(1, j)]
    }

    /// Best feasible point of the `(n+1) × (n+1)` grid including the box
    /// edges. Ties go to the lexicographically smallest index pair.
    pub fn grid_minimum(&self, n: usize) -> Result<(Params, f64), SolveError> {
        let best = (0..=n)
            .into_par_iter()
            .map(|i| {
                let mut row_best: Option<(f64, usize, usize)> = None;
                for j in 0..=n {
                    let v = self.penalized(self.grid_point(n, i, j));
                    if v.is_finite() && row_best.map_or(true, |(bv, _, _)| v < bv) {
                        row_best = Some((v, i, j));
                    }
                }
                row_best
            })
            .reduce(
                || None,
                |x, y| match (x, y) {
                    (Some(a), Some(b)) => Some(if (b.0, b.1, b.2) < (a.0, a.1, a.2) { b } else { a }),
                    (a, None) => a,
                    (None, b) => b,
                },
            );
        let (v, i, j) = best.ok_or_else(|| SolveError::NonConvergence { stage: "grid", detail: "no feasible grid point".into() })?;
        Ok((self.grid_point(n, i, j), v))
    }

    /// Grid phase followed by local refinement around the seed: cyclic
    /// coordinate golden-section inside the feasible set, and golden-section
    /// along every boundary curve passing near the seed. The best candidate wins.
    pub fn solve(&self, n: usize, tol: f64, max_iter: usize) -> Result<SearchResult, SolveError> {
        let (seed, seed_value) = self.grid_minimum(n)?;
        let h = [(self.upper[0] - self.lower[0]) / n as f64, (self.upper[1] - self.lower[1]) / n as f64];
        let mut trace = vec![TraceEntry { stage: "grid".into(), params: seed, value: seed_value }];

        let mut best = (seed, seed_value);
        let interior = self.coordinate_descent(seed, h, tol, max_iter)?;
        trace.push(TraceEntry { stage: "interior".into(), params: interior.0, value: interior.1 });
        if interior.1 < best.1 {
            best = interior;
        }

        for boundary in &self.boundaries {
            if let Some(found) = self.refine_on_boundary(boundary, seed, h, tol, max_iter)? {
                trace.push(TraceEntry { stage: format!("boundary:{}", boundary.name), params: found.0, value: found.1 });
                if found.1 < best.1 {
                    best = found;
                }
            }
        }
        trace.push(TraceEntry { stage: "final".into(), params: best.0, value: best.1 });
        Ok(SearchResult { params: best.0, value: best.1, grid_seed: seed, grid_value: seed_value, trace })
    }

    fn coordinate_descent(&self, seed: Params, h: Params, tol: f64, max_iter: usize) -> Result<(Params, f64), SolveError> {
        let lo = [(seed[0] - 2.0 * h[0]).max(self.lower[0]), (seed[1] - 2.0 * h[1]).max(self.lower[1])];
        let hi = [(seed[0] + 2.0 * h[0]).min(self.upper[0]), (seed[1] + 2.0 * h[1]).min(self.upper[1])];
        let mut p = seed;
        let mut value = self.penalized(p);
        for _ in 0..max_iter {
            let start = p;
            for k in 0..2 {
                let line = |x: f64| {
                    let mut q = p;
                    q[k] = x;
                    self.penalized(q)
                };
                let found = golden_section(line, lo[k], hi[k], tol, max_iter)?;
                if found.fx < value {
                    p[k] = found.x;
                    value = found.fx;
                }
            }
            let moved = (p[0] - start[0]).abs().max((p[1] - start[1]).abs());
            if moved <= tol {
                return Ok((p, value));
            }
        }
        Err(SolveError::NonConvergence { stage: "coordinate descent", detail: format!("still moving after {max_iter} sweeps") })
    }

    fn refine_on_boundary(&self, boundary: &Boundary<'_>, seed: Params, h: Params, tol: f64, max_iter: usize) -> Result<Option<(Params, f64)>, SolveError> {
        const SAMPLES: usize = 4096;
        let (t0, t1) = boundary.range;
        let step = (t1 - t0) / SAMPLES as f64;
        let scaled_dist = |p: Params| ((p[0] - seed[0]) / h[0]).hypot((p[1] - seed[1]) / h[1]);
        let nearest = (0..=SAMPLES)
            .filter_map(|k| {
                let t = t0 + step * k as f64;
                (boundary.curve)(t).map(|p| (scaled_dist(p), k))
            })
            .fold(None, |acc: Option<(f64, usize)>, x| match acc {
                Some(a) if a.0 <= x.0 => Some(a),
                _ => Some(x),
            });
        let Some((dist, k)) = nearest else {
            return Ok(None);
        };
        if dist > 3.0 {
            return Ok(None);
        }
        // bracket a few grid cells either side of the closest sample
        let span = step.max(4.0 * h[0].max(h[1]) / curve_speed(boundary, t0 + step * k as f64, step).max(1e-12));
        let centre = t0 + step * k as f64;
        let (a, b) = ((centre - span).max(t0), (centre + span).min(t1));
        let on_curve = |t: f64| (boundary.curve)(t).map_or(f64::INFINITY, |p| self.penalized(p));
        match golden_section(on_curve, a, b, tol, max_iter) {
            Ok(found) => {
                let p = (boundary.curve)(found.x).expect("finite value implies a curve point");
                Ok(Some((p, found.fx)))
            }
            Err(_) => Ok(None),
        }
    }

    /// Worst first-order decrease available along feasible unit directions.
    pub fn stationarity_residual(&self, p: Params) -> f64 {
        let grad_f = gradient(&*self.objective, p);
        let active: Vec<Params> = self
            .constraints
            .iter()
            .filter(|c| (c.g)(p).abs() <= ACTIVE_BAND)
            .map(|c| gradient(&*c.g, p))
            .filter(|g| g[0].hypot(g[1]) > 0.0)
            .collect();
        let mut directions = Vec::new();
        let gn = grad_f[0].hypot(grad_f[1]);
        if gn > 0.0 {
            directions.push([-grad_f[0] / gn, -grad_f[1] / gn]);
        }
        for g in &active {
            let n = g[0].hypot(g[1]);
            directions.push([-g[1] / n, g[0] / n]);
            directions.push([g[1] / n, -g[0] / n]);
        }
        // box edges act as constraints too: (coordinate, inward sign)
        let mut box_active: Vec<(usize, f64)> = Vec::new();
        for k in 0..2 {
            if (p[k] - self.lower[k]).abs() <= ACTIVE_BAND {
                box_active.push((k, 1.0));
            }
            if (p[k] - self.upper[k]).abs() <= ACTIVE_BAND {
                box_active.push((k, -1.0));
            }
        }
        for &(k, _) in &box_active {
            let mut d = [0.0; 2];
            d[1 - k] = 1.0;
            directions.push(d);
            directions.push([-d[0], -d[1]]);
        }
        let feasible_dir = |d: &Params| {
            active.iter().all(|g| {
                let n = g[0].hypot(g[1]);
                (g[0] * d[0] + g[1] * d[1]) / n >= -1e-9
            }) && box_active.iter().all(|&(k, s)| s * d[k] >= -1e-9)
        };
        directions
            .iter()
            .filter(|d| feasible_dir(d))
            .map(|d| -(grad_f[0] * d[0] + grad_f[1] * d[1]))
            .fold(0.0, f64::max)
    }
}

fn curve_speed(boundary: &Boundary<'_>, t: f64, step: f64) -> f64 {
    match ((boundary.curve)(t - step), (boundary.curve)(t + step)) {
        (Some(a), Some(b)) => (b[0] - a[0]).hypot(b[1] - a[1]) / (2.0 * step),
        (Some(a), None) | (None, Some(a)) => match (boundary.curve)(t) {
            Some(m) => (m[0] - a[0]).hypot(m[1] - a[1]) / step,
            None => 1.0,
        },
        (None, None) => 1.0,
    }
}

/// Central differences, falling back to one-sided ones at the edge of the
/// function's domain.
pub fn gradient(f: &(dyn Fn(Params) -> f64 + Sync + '_), p: Params) -> Params {
    let mut g = [0.0; 2];
    for k in 0..2 {
        let h = 1e-6 * p[k].abs().max(1.0);
        let shifted = |delta: f64| {
            let mut q = p;
            q[k] += delta;
            f(q)
        };
        let (fp, fm, f0) = (shifted(h), shifted(-h), f(p));
        g[k] = if fp.is_finite() && fm.is_finite() {
            (fp - fm) / (2.0 * h)
        } else if fp.is_finite() {
            (fp - f0) / h
        } else {
            (f0 - fm) / h
        };
    }
    g
}

/// Derivative of a one-variable function by central differences.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = 1e-6 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Refines a golden-section minimum by bisecting the central-difference
/// derivative on `[x − width, x + width]`.
///
/// A flat minimum only pins `x` to about `√ε` through function values; the
/// derivative's sign change pins it to the derivative's own noise. Returns
/// `None` when the derivative does not change sign across the bracket.
pub fn stationary_polish<F: Fn(f64) -> f64>(f: F, x: f64, width: f64) -> Option<f64> {
    let h = 1e-5 * x.abs().max(1.0);
    let slope = |t: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    let (mut lo, mut hi) = (x - width, x + width);
    if !(slope(lo) < 0.0 && slope(hi) > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
