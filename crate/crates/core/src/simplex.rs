//! Continuous participatory budgeting: L_p aggregation over the probability
//! simplex under the Euclidean metric, plus a randomized Condorcet
//! falsifier.
//!
//! The objective `f(x) = sum_i ||x - v_i||^p` is strictly convex whenever the
//! ideal points are not collinear, so the minimizer is unique; collinear
//! instances are re-parametrized by arc length and delegated to the line
//! solver instead of special-casing non-unique minima. Every minimizer lies
//! in the convex hull of the data (projecting onto the hull weakly decreases
//! every distance), hence inside the simplex; feasibility is asserted in
//! debug builds and the reported point is cleaned to the simplex invariants.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::aggregation::{AggregationSpec, Exponent, Method};
use crate::election::Election;
use crate::error::{Error, Result};
use crate::finite::PowExp;
use crate::line::{reduce_line_lp, solve_line_lp, LineDomain, LineView};
use crate::point::Point;
use crate::result::{AggregationResult, Diagnostics, NoWinnerReason};
use crate::scalar::{real, Real};

/// A budget election as a bag of simplex vectors.
#[derive(Clone, Debug)]
pub struct SimplexInstance<F> {
    m: usize,
    points: Vec<Vec<F>>,
}

/// Arc-length parametrization of a collinear instance.
#[derive(Clone, Debug)]
pub struct LineEmbedding<F> {
    pub origin: Vec<F>,
    pub direction: Vec<F>,
    pub ts: Vec<F>,
}

impl<F: Real> SimplexInstance<F> {
    pub fn new(points: Vec<Vec<F>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyElection);
        }
        let m = points[0].len();
        for p in &points {
            if p.len() != m {
                return Err(Error::DimensionMismatch {
                    left: p.len(),
                    right: m,
                });
            }
        }
        Ok(SimplexInstance { m, points })
    }

    pub fn from_election(election: &Election<F>) -> Result<Self> {
        let mut points = Vec::with_capacity(election.n());
        for p in election.voters() {
            match p {
                Point::Simplex(w) => points.push(w.clone()),
                other => {
                    return Err(Error::VariantMismatch {
                        index: 0,
                        expected: "simplex",
                        got: other.variant_name(),
                    })
                }
            }
        }
        Self::new(points)
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[Vec<F>] {
        &self.points
    }

    /// All ideal points on one line (rank of the centered point matrix at
    /// most 1, with tolerance 1e-9)?
    pub fn line_embedding(&self) -> Option<LineEmbedding<F>> {
        let tol = real(1e-9);
        let origin = self.points[0].clone();
        let mut direction: Option<Vec<F>> = None;
        for p in &self.points[1..] {
            let diff = sub(p, &origin);
            if norm(&diff) > tol {
                direction = Some(scale(&diff, F::one() / norm(&diff)));
                break;
            }
        }
        let direction = direction?; // all points coincide: no 1-D extent
        for p in &self.points {
            let diff = sub(p, &origin);
            let t = dot(&diff, &direction);
            let residual = sub(&diff, &scale(&direction, t));
            if norm(&residual) > tol {
                return None;
            }
        }
        let ts = self
            .points
            .iter()
            .map(|p| dot(&sub(p, &origin), &direction))
            .collect();
        Some(LineEmbedding {
            origin,
            direction,
            ts,
        })
    }

    fn all_identical(&self) -> bool {
        let tol = real(1e-12);
        self.points[1..]
            .iter()
            .all(|p| norm(&sub(p, &self.points[0])) <= tol)
    }
}

/// L_p aggregation over the simplex. When `spec.method` is `ReducedLp` the
/// collinear delegation uses the reduced line solver; everywhere else the
/// minimizer is unique and the reduced form coincides with the plain one.
pub fn solve_simplex_lp<F: Real>(
    instance: &SimplexInstance<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    if instance.all_identical() {
        let x = instance.points[0].clone();
        let mut r = AggregationResult::from_winners(
            vec![Point::Simplex(x)],
            Some(F::zero()),
            spec,
            Diagnostics::default(),
        );
        r.unique = Some(true);
        return Ok(r);
    }

    if let Some(embedding) = instance.line_embedding() {
        return solve_on_embedded_line(instance, &embedding, p, spec);
    }

    let (x, iterations, converged) = match p {
        Exponent::Finite(pv) if is_close(pv, 2.0) => (mean(&instance.points), 1, true),
        Exponent::Finite(pv) if is_close(pv, 1.0) => {
            geometric_median(&instance.points, spec.max_iterations)
        }
        Exponent::Finite(pv) => lp_descent(&instance.points, pv, spec),
        Exponent::Infinity => min_enclosing_ball(&instance.points, spec.max_iterations),
    };

    debug_assert!(simplex_violation(&x) <= 1e-7, "iterate left the simplex");
    let x = clean_to_simplex(&x);
    let objective = lp_objective_at(&instance.points, &x, &p);
    let mut diagnostics = Diagnostics::default();
    diagnostics.iterations = iterations;
    diagnostics.converged = converged;
    let mut result = AggregationResult::from_winners(
        vec![Point::Simplex(x)],
        Some(objective),
        spec,
        diagnostics,
    );
    result.unique = Some(true); // strictly convex off the collinear case
    Ok(result)
}

fn solve_on_embedded_line<F: Real>(
    instance: &SimplexInstance<F>,
    embedding: &LineEmbedding<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let lo = embedding.ts.iter().cloned().fold(F::infinity(), F::min);
    let hi = embedding
        .ts
        .iter()
        .cloned()
        .fold(F::neg_infinity(), F::max);
    let view = LineView::new(embedding.ts.clone(), LineDomain::Interval { lo, hi })?;
    let line_result = if spec.method == Method::ReducedLp {
        reduce_line_lp(&view, p, spec)?
    } else {
        solve_line_lp(&view, p, spec)?
    };

    let map_back = |t: F| {
        clean_to_simplex(&add(
            &embedding.origin,
            &scale(&embedding.direction, t),
        ))
    };
    let winners: Vec<Point<F>> = line_result
        .winners
        .iter()
        .filter_map(|w| match w {
            Point::Real(t) => Some(Point::Simplex(map_back(*t))),
            _ => None,
        })
        .collect();
    let representative = match line_result.representative {
        Some(Point::Real(t)) => Some(Point::Simplex(map_back(t))),
        _ => None,
    };

    let mut diagnostics = line_result.diagnostics.clone();
    diagnostics.notes.push(
        "collinear ideal points: solved on the supporting line; any interval is in arc-length \
         units"
            .into(),
    );
    let objective = representative.as_ref().map(|r| match r {
        Point::Simplex(x) => lp_objective_at(&instance.points, x, &p),
        _ => unreachable!(),
    });
    let mut result = AggregationResult::from_winners(winners, objective, spec, diagnostics);
    result.representative = representative;
    result.unique = line_result.unique;
    Ok(result)
}

/// One-sided randomized Condorcet check: tries to find a challenger that a
/// strict voter majority prefers to `candidate`. It can disprove a Condorcet
/// winner but never certify one.
///
/// Challengers alternate between uniform Dirichlet(1, ..., 1) samples and
/// perturbations of the candidate along random directions at radii 1e-3,
/// 1e-2, 1e-1.
pub fn falsify_condorcet_simplex<F: Real>(
    instance: &SimplexInstance<F>,
    candidate: &[F],
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    if candidate.len() != instance.m {
        return Err(Error::DimensionMismatch {
            left: candidate.len(),
            right: instance.m,
        });
    }
    let candidate = clean_to_simplex(&candidate.to_vec());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let radii = [real::<F>(1e-3), real(1e-2), real(1e-1)];

    let dist_to_candidate: Vec<F> = instance
        .points
        .iter()
        .map(|v| norm(&sub(v, &candidate)))
        .collect();

    for trial in 0..spec.falsifier_trials {
        let challenger = match trial % 4 {
            0 => sample_dirichlet(instance.m, &mut rng),
            k => {
                let dir = sample_direction(instance.m, &mut rng);
                project_to_simplex(&add(&candidate, &scale(&dir, radii[(k - 1) as usize])))
            }
        };
        if norm(&sub(&challenger, &candidate)) <= real(1e-12) {
            continue;
        }
        let mut for_challenger = 0u64;
        let mut for_candidate = 0u64;
        for (v, dc) in instance.points.iter().zip(&dist_to_candidate) {
            let dy = norm(&sub(v, &challenger));
            if dy < *dc {
                for_challenger += 1;
            } else if *dc < dy {
                for_candidate += 1;
            }
        }
        if for_challenger > for_candidate {
            let mut diagnostics = Diagnostics::default();
            diagnostics.trials = Some(trial + 1);
            diagnostics.notes.push(format!(
                "candidate beaten {for_challenger}-{for_candidate} by a challenger on trial {trial}; \
                 one-sided check, existence of some other Condorcet winner stays open"
            ));
            let mut result =
                AggregationResult::no_winner(NoWinnerReason::NoCondorcetWinner, spec, diagnostics);
            result.witness = Some(Point::Simplex(challenger));
            return Ok(result);
        }
    }

    let mut diagnostics = Diagnostics::default();
    diagnostics.trials = Some(spec.falsifier_trials);
    diagnostics.notes.push(format!(
        "not falsified after {} trials; one-sided check, this does not certify a Condorcet winner",
        spec.falsifier_trials
    ));
    let mut result = AggregationResult::from_winners(
        vec![Point::Simplex(candidate)],
        None,
        spec,
        diagnostics,
    );
    result.unique = None;
    Ok(result)
}

/// Gradient of `sum_i ||x - v_i||^p` (zero contribution from coincident
/// points, valid for p > 1).
pub fn lp_gradient<F: Real>(points: &[Vec<F>], x: &[F], p: F) -> Vec<F> {
    let mut g = vec![F::zero(); x.len()];
    for v in points {
        let diff = sub(x, v);
        let d = norm(&diff);
        if d <= real(1e-300) {
            continue;
        }
        let w = p * d.powf(p - F::one()) / d;
        for (gi, di) in g.iter_mut().zip(&diff) {
            *gi = *gi + *di * w;
        }
    }
    g
}

/// Weiszfeld iteration with the standard data-point handling: at a data
/// point `a` of multiplicity `eta`, `a` is optimal iff the residual
/// `|| sum_{v != a} (v - a)/||v - a|| ||` is at most `eta`; otherwise step
/// away along the residual direction.
pub(crate) fn geometric_median<F: Real>(
    points: &[Vec<F>],
    max_iterations: u64,
) -> (Vec<F>, u64, bool) {
    let coincide_tol = real(1e-12);
    let mut x = mean(points);
    let mut f_prev = l1_objective(points, &x);
    let cap = max_iterations.min(100_000);
    for it in 0..cap {
        let mut multiplicity = 0u32;
        let mut weight_sum = F::zero();
        let mut weighted = vec![F::zero(); x.len()];
        let mut residual = vec![F::zero(); x.len()];
        for v in points {
            let diff = sub(v, &x);
            let d = norm(&diff);
            if d <= coincide_tol {
                multiplicity += 1;
            } else {
                let w = F::one() / d;
                weight_sum = weight_sum + w;
                for i in 0..x.len() {
                    weighted[i] = weighted[i] + v[i] * w;
                    residual[i] = residual[i] + diff[i] * w;
                }
            }
        }
        if weight_sum == F::zero() {
            return (x, it, true); // every point coincides with x
        }
        let t_step = scale(&weighted, F::one() / weight_sum);
        let next = if multiplicity == 0 {
            t_step
        } else {
            let rn = norm(&residual);
            if rn <= real::<F>(multiplicity as f64) + real(1e-12) {
                return (x, it, true);
            }
            let damp = F::one() - real::<F>(multiplicity as f64) / rn;
            add(&x, &scale(&sub(&t_step, &x), damp))
        };
        let moved = norm(&sub(&next, &x));
        let f_next = l1_objective(points, &next);
        x = next;
        if moved < real(1e-10) || (f_prev - f_next).abs() < real(1e-12) {
            return (x, it + 1, true);
        }
        f_prev = f_next;
    }
    (x, cap, false)
}

/// Minimum enclosing ball center: the iterative scheme
/// `x_{k+1} = x_k + (farthest - x_k)/(k+1)`, refined by an exact
/// circumcenter check when few points stay at the maximum distance.
pub(crate) fn min_enclosing_ball<F: Real>(
    points: &[Vec<F>],
    max_iterations: u64,
) -> (Vec<F>, u64, bool) {
    let mut x = mean(points);
    let cap = max_iterations.min(100_000);
    for k in 1..=cap {
        let (far, _) = farthest(points, &x);
        let step = F::one() / real::<F>((k + 1) as f64);
        x = add(&x, &scale(&sub(&points[far], &x), step));
    }
    let (_, mut best_obj) = farthest(points, &x);

    // Refinement: when few points stay at the maximum distance, the exact
    // center is the midpoint or circumcenter of some support pair/triple;
    // adopt the best such candidate if it improves the radius.
    let slack = real::<F>(1e-7) * (F::one() + best_obj);
    let support: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| norm(&sub(p, &x)) >= best_obj - slack)
        .map(|(i, _)| i)
        .collect();
    let mut refined = false;
    if support.len() <= 8 {
        let mut candidates: Vec<Vec<F>> = Vec::new();
        for (ai, &i) in support.iter().enumerate() {
            for &j in &support[ai + 1..] {
                candidates.push(midpoint(&points[i], &points[j]));
            }
        }
        for (ai, &i) in support.iter().enumerate() {
            for (bi, &j) in support[ai + 1..].iter().enumerate() {
                for &l in &support[ai + 1 + bi + 1..] {
                    if let Some(c) = circumcenter(&points[i], &points[j], &points[l]) {
                        candidates.push(c);
                    }
                }
            }
        }
        for c in candidates {
            let (_, obj) = farthest(points, &c);
            if obj < best_obj {
                best_obj = obj;
                x = c;
            }
        }
        refined = true;
    }
    (x, cap, refined)
}

/// Descent with backtracking line search on the convex objective for
/// general p. No projection inside the loop: the minimizer lies in the
/// convex hull of the data, so the unconstrained optimum is feasible.
pub(crate) fn lp_descent<F: Real>(
    points: &[Vec<F>],
    p: F,
    spec: &AggregationSpec<F>,
) -> (Vec<F>, u64, bool) {
    let n = points.len();
    let mut x = mean(points);
    let pe = PowExp::from_p(p);
    let obj = |y: &[F]| {
        points
            .iter()
            .fold(F::zero(), |acc, v| acc + pe.apply(norm(&sub(y, v))))
    };
    let mut f = obj(&x);
    let mut step0 = F::one() / (p * real::<F>(n as f64));
    let cap = spec.max_iterations.min(100_000);
    for it in 0..cap {
        let g = lp_gradient(points, &x, p);
        let gn2 = dot(&g, &g);
        if gn2.sqrt() <= real(1e-12) {
            return (x, it, true);
        }
        let mut step = step0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn = sub(&x, &scale(&g, step));
            let fnx = obj(&xn);
            if fnx <= f - real::<F>(1e-4) * step * gn2 {
                accepted = Some((xn, fnx));
                break;
            }
            step = step / real(2.0);
        }
        let Some((xn, fnx)) = accepted else {
            // No descent direction left at floating-point resolution.
            return (x, it, true);
        };
        let moved = norm(&sub(&xn, &x));
        let improved = f - fnx;
        x = xn;
        f = fnx;
        step0 = step * real(2.0);
        if moved < real(1e-10) && improved < real(1e-12) {
            return (x, it + 1, true);
        }
    }
    (x, cap, false)
}

/// Euclidean projection onto the probability simplex.
pub fn project_to_simplex<F: Real>(y: &[F]) -> Vec<F> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite coordinates"));
    let mut css = F::zero();
    let mut rho = 0usize;
    let mut tau = F::zero();
    for (j, &uj) in u.iter().enumerate() {
        css = css + uj;
        let t = (css - F::one()) / real::<F>((j + 1) as f64);
        if uj - t > F::zero() {
            rho = j + 1;
            tau = t;
        }
    }
    debug_assert!(rho > 0);
    y.iter().map(|&v| (v - tau).max(F::zero())).collect()
}

/// Uniform sample from the simplex (Dirichlet with all parameters 1),
/// via normalized unit-rate exponentials.
pub fn sample_dirichlet<F: Real, R: Rng>(m: usize, rng: &mut R) -> Vec<F> {
    let mut coords: Vec<F> = (0..m)
        .map(|_| {
            let u: f64 = rng.gen();
            real::<F>(-(1.0 - u).ln().max(1e-300_f64.ln()))
        })
        .collect();
    let sum = coords.iter().fold(F::zero(), |a, c| a + *c);
    if sum <= F::zero() {
        return vec![F::one() / real::<F>(m as f64); m];
    }
    for c in coords.iter_mut() {
        *c = *c / sum;
    }
    coords
}

fn sample_direction<F: Real, R: Rng>(m: usize, rng: &mut R) -> Vec<F> {
    // Box-Muller standard normals, normalized.
    let mut dir = Vec::with_capacity(m);
    while dir.len() < m {
        let u1: f64 = rng.gen::<f64>().max(1e-12);
        let u2: f64 = rng.gen();
        let r = (-2.0 * u1.ln()).sqrt();
        dir.push(real::<F>(r * (2.0 * std::f64::consts::PI * u2).cos()));
        if dir.len() < m {
            dir.push(real::<F>(r * (2.0 * std::f64::consts::PI * u2).sin()));
        }
    }
    let n = norm(&dir);
    if n <= real(1e-12) {
        return vec![F::one() / real::<F>((m as f64).sqrt()); m];
    }
    scale(&dir, F::one() / n)
}

fn lp_objective_at<F: Real>(points: &[Vec<F>], x: &[F], p: &Exponent<F>) -> F {
    match p {
        Exponent::Finite(pv) => {
            let pe = PowExp::from_p(*pv);
            points
                .iter()
                .fold(F::zero(), |acc, v| acc + pe.apply(norm(&sub(x, v))))
        }
        Exponent::Infinity => points
            .iter()
            .fold(F::zero(), |acc, v| acc.max(norm(&sub(x, v)))),
    }
}

fn l1_objective<F: Real>(points: &[Vec<F>], x: &[F]) -> F {
    points
        .iter()
        .fold(F::zero(), |acc, v| acc + norm(&sub(x, v)))
}

fn farthest<F: Real>(points: &[Vec<F>], x: &[F]) -> (usize, F) {
    let mut best = (0usize, F::neg_infinity());
    for (i, p) in points.iter().enumerate() {
        let d = norm(&sub(p, x));
        if d > best.1 {
            best = (i, d);
        }
    }
    best
}

fn midpoint<F: Real>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x + *y) / real(2.0))
        .collect()
}

fn circumcenter<F: Real>(a: &[F], b: &[F], c: &[F]) -> Option<Vec<F>> {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let bb = dot(&ab, &ab);
    let cc = dot(&ac, &ac);
    let bc = dot(&ab, &ac);
    let det = real::<F>(2.0) * (bb * cc - bc * bc);
    if det.abs() <= real(1e-18) {
        return None;
    }
    let s = (cc * bb - bc * cc) / det;
    let t = (bb * cc - bc * bb) / det;
    let mut center = a.to_vec();
    for i in 0..center.len() {
        center[i] = center[i] + s * ab[i] + t * ac[i];
    }
    Some(center)
}

/// Clamps stray negatives (at most ~1e-9 from iterative solvers) and
/// renormalizes to an exact unit sum.
fn clean_to_simplex<F: Real>(x: &[F]) -> Vec<F> {
    let mut out: Vec<F> = x.iter().map(|&v| v.max(F::zero())).collect();
    let sum = out.iter().fold(F::zero(), |a, v| a + *v);
    if sum > F::zero() {
        for v in out.iter_mut() {
            *v = *v / sum;
        }
    }
    out
}

fn simplex_violation<F: Real>(x: &[F]) -> f64 {
    let neg: F = x
        .iter()
        .fold(F::zero(), |a, &v| a + (-v).max(F::zero()));
    let sum = x.iter().fold(F::zero(), |a, &v| a + v);
    let dev = (sum - F::one()).abs();
    neg.max(dev).to_f64().unwrap_or(f64::INFINITY)
}

pub(crate) fn sub<F: Real>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub(crate) fn add<F: Real>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub(crate) fn scale<F: Real>(a: &[F], s: F) -> Vec<F> {
    a.iter().map(|x| *x * s).collect()
}

pub(crate) fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + *x * *y)
}

pub(crate) fn norm<F: Real>(a: &[F]) -> F {
    dot(a, a).sqrt()
}

fn mean<F: Real>(points: &[Vec<F>]) -> Vec<F> {
    let m = points[0].len();
    let mut out = vec![F::zero(); m];
    for p in points {
        for i in 0..m {
            out[i] = out[i] + p[i];
        }
    }
    let n = real::<F>(points.len() as f64);
    for v in out.iter_mut() {
        *v = *v / n;
    }
    out
}

fn is_close<F: Real>(p: F, target: f64) -> bool {
    (p - real(target)).abs() <= real(1e-12)
}
