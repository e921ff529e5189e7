//! Shared machinery for exact aggregation over finite candidate spaces:
//! objective evaluation, tie collection, pairwise tournaments, and reduced
//! (limit) winner sets.

use std::cmp::Ordering;

use crate::aggregation::Exponent;
use crate::scalar::{real, Real};

/// Distances enter objectives through `d^p`. Integer exponents go through
/// `powi` so that integer-valued metrics stay exactly representable.
#[derive(Clone, Copy, Debug)]
pub(crate) enum PowExp<F> {
    Int(i32),
    Frac(F),
}

impl<F: Real> PowExp<F> {
    pub fn from_p(p: F) -> Self {
        let rounded = p.round();
        if (p - rounded).abs() <= real(1e-12) && rounded >= F::one() && rounded <= real(64.0) {
            PowExp::Int(rounded.to_i32().unwrap())
        } else {
            PowExp::Frac(p)
        }
    }

    pub fn apply(&self, d: F) -> F {
        match self {
            PowExp::Int(1) => d,
            PowExp::Int(k) => d.powi(*k),
            PowExp::Frac(p) => {
                if d == F::zero() {
                    F::zero()
                } else {
                    d.powf(*p)
                }
            }
        }
    }
}

/// Sum of `d^p` over voters, or the maximum distance for p = inf.
pub(crate) fn lp_objective<F: Real>(dists: impl Iterator<Item = F>, p: &Exponent<F>) -> F {
    match p {
        Exponent::Finite(p) => {
            let pe = PowExp::from_p(*p);
            dists.fold(F::zero(), |acc, d| acc + pe.apply(d))
        }
        Exponent::Infinity => dists.fold(F::zero(), |acc, d| acc.max(d)),
    }
}

/// Streaming argmin collector with an absolute tie tolerance.
///
/// Keeps every index whose objective is within `tol` of the best seen so
/// far, re-filtering lazily; `finish` applies the final cutoff.
pub(crate) struct ArgminSet<F> {
    tol: F,
    best: F,
    entries: Vec<(usize, F)>,
}

impl<F: Real> ArgminSet<F> {
    pub fn new(tol: F) -> Self {
        ArgminSet {
            tol,
            best: F::infinity(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, index: usize, objective: F) {
        if objective < self.best {
            self.best = objective;
        }
        if objective <= self.best + self.tol {
            self.entries.push((index, objective));
            if self.entries.len() > 64 && self.entries.len() % 64 == 0 {
                let cutoff = self.best + self.tol;
                self.entries.retain(|&(_, o)| o <= cutoff);
            }
        }
    }

    pub fn finish(mut self) -> (Vec<usize>, F) {
        let cutoff = self.best + self.tol;
        self.entries.retain(|&(_, o)| o <= cutoff);
        (
            self.entries.into_iter().map(|(i, _)| i).collect(),
            self.best,
        )
    }
}

/// Exact argmin set of the L_p objective over `candidates.len()` candidates,
/// where `dist(c, v)` is the distance from candidate `c` to voter `v`.
pub(crate) fn lp_winner_indices<F: Real>(
    n_candidates: usize,
    n_voters: usize,
    p: &Exponent<F>,
    tol: F,
    dist: &impl Fn(usize, usize) -> F,
) -> (Vec<usize>, F) {
    let mut set = ArgminSet::new(tol);
    for c in 0..n_candidates {
        let obj = lp_objective((0..n_voters).map(|v| dist(c, v)), p);
        set.push(c, obj);
    }
    set.finish()
}

/// Indices of the reduced L_p winners: the limit of L_q argmin sets as
/// q -> p, taken over both admissible sides.
///
/// For finite p the limit is approximated by solving at `p - eps` and
/// `p + eps` (one-sided at p = 1, since q >= 1) and taking the union; the
/// union is correct because a point belongs to the limit set exactly when it
/// wins for exponents arbitrarily close to p on at least one side. For
/// p = inf the limit is computed exactly: as q grows, comparing
/// `sum d_i^q` reduces to lexicographic comparison of the distance
/// multisets sorted in descending order ("leximax").
pub(crate) fn reduced_winner_indices<F: Real>(
    n_candidates: usize,
    n_voters: usize,
    p: &Exponent<F>,
    eps: F,
    tol: F,
    dist: &impl Fn(usize, usize) -> F,
) -> Vec<usize> {
    match p {
        Exponent::Finite(p) => {
            let mut qs = vec![*p + eps];
            if *p - eps >= F::one() {
                qs.push(*p - eps);
            }
            let mut union: Vec<usize> = Vec::new();
            for q in qs {
                let (w, _) =
                    lp_winner_indices(n_candidates, n_voters, &Exponent::Finite(q), tol, dist);
                union.extend(w);
            }
            union.sort_unstable();
            union.dedup();
            union
        }
        Exponent::Infinity => leximax_winner_indices(n_candidates, n_voters, tol, dist),
    }
}

/// Candidates minimizing the descending-sorted distance vector
/// lexicographically; this is the exact limit of L_q argmins as q -> inf
/// over a finite space.
fn leximax_winner_indices<F: Real>(
    n_candidates: usize,
    n_voters: usize,
    tol: F,
    dist: &impl Fn(usize, usize) -> F,
) -> Vec<usize> {
    let sorted_desc = |c: usize| {
        let mut d: Vec<F> = (0..n_voters).map(|v| dist(c, v)).collect();
        d.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        d
    };
    let mut best: Option<Vec<F>> = None;
    let mut winners: Vec<usize> = Vec::new();
    for c in 0..n_candidates {
        let d = sorted_desc(c);
        match &best {
            None => {
                best = Some(d);
                winners.push(c);
            }
            Some(b) => match lex_cmp(&d, b, tol) {
                Ordering::Less => {
                    best = Some(d);
                    winners.clear();
                    winners.push(c);
                }
                Ordering::Equal => winners.push(c),
                Ordering::Greater => {}
            },
        }
    }
    winners
}

fn lex_cmp<F: Real>(a: &[F], b: &[F], tol: F) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (*x - *y).abs() > tol {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

/// Outcome of a pairwise comparison matrix sweep.
pub(crate) struct Tournament {
    pub winners: Vec<usize>,
}

/// Exact Condorcet winners over an explicit candidate list.
///
/// `prefer(v, i, j)` orders candidate `i` against candidate `j` from voter
/// `v`'s perspective (`Less` = strictly closer to `i`). A candidate wins if
/// for every opponent the strict supporter count exceeds (strict) or is at
/// least (weak) the opponent's.
pub(crate) fn condorcet_winners(
    n_candidates: usize,
    n_voters: usize,
    strict: bool,
    prefer: &impl Fn(usize, usize, usize) -> Ordering,
) -> Tournament {
    let mut winners = Vec::new();
    for x in 0..n_candidates {
        let mut beats_all = true;
        for y in 0..n_candidates {
            if x == y {
                continue;
            }
            let mut for_x = 0u64;
            let mut for_y = 0u64;
            for v in 0..n_voters {
                match prefer(v, x, y) {
                    Ordering::Less => for_x += 1,
                    Ordering::Greater => for_y += 1,
                    Ordering::Equal => {}
                }
            }
            let ok = if strict { for_x > for_y } else { for_x >= for_y };
            if !ok {
                beats_all = false;
                break;
            }
        }
        if beats_all {
            winners.push(x);
        }
    }
    Tournament { winners }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_exp_integer_path_is_exact() {
        let pe = PowExp::from_p(2.0_f64);
        assert_eq!(pe.apply(3.0), 9.0);
        let pe = PowExp::from_p(1.5_f64);
        assert!((pe.apply(4.0) - 8.0).abs() < 1e-12);
        assert_eq!(pe.apply(0.0), 0.0);
    }

    #[test]
    fn argmin_set_keeps_ties_within_tolerance() {
        let mut s = ArgminSet::new(1e-9);
        s.push(0, 5.0);
        s.push(1, 3.0);
        s.push(2, 3.0);
        s.push(3, 3.0 + 1e-12);
        s.push(4, 3.1);
        let (idx, best) = s.finish();
        assert_eq!(idx, vec![1, 2, 3]);
        assert_eq!(best, 3.0);
    }

    #[test]
    fn leximax_distinguishes_max_multiplicity() {
        // Candidate 0: distances (2, 0); candidate 1: (2, 2); candidate 2: (3, 0).
        let d = vec![vec![2.0, 0.0], vec![2.0, 2.0], vec![3.0, 0.0]];
        let winners = leximax_winner_indices(3, 2, 1e-9, &|c, v| d[c][v]);
        assert_eq!(winners, vec![0]);
    }

    #[test]
    fn condorcet_majority_point_wins() {
        // Three voters on a line at 0, 0, 1; candidates {0, 1}.
        let pos = [0.0_f64, 0.0, 1.0];
        let cand = [0.0_f64, 1.0];
        let prefer = |v: usize, i: usize, j: usize| {
            let di = (pos[v] - cand[i]).abs();
            let dj = (pos[v] - cand[j]).abs();
            di.partial_cmp(&dj).unwrap()
        };
        let t = condorcet_winners(2, 3, true, &prefer);
        assert_eq!(t.winners, vec![0]);
    }
}
