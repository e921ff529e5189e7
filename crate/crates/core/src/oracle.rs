//! Brute-force reference implementations over finite point spaces.
//!
//! These serve two roles: standalone exact solvers for tiny instances, and
//! ground truth the specialized solvers are tested against. They are exact
//! or absent — each operation enforces an instance-size guard and fails
//! loudly with the required size rather than sampling.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use itertools::Itertools;

use crate::aggregation::{AggregationSpec, Exponent};
use crate::election::{Election, Setting};
use crate::error::{Error, Result};
use crate::finite::{condorcet_winners, lp_winner_indices, reduced_winner_indices};
use crate::metrics::distance;
use crate::point::Point;
use crate::result::{AggregationResult, Diagnostics, NoWinnerReason};
use crate::scalar::{real_u64, Real};

/// Largest candidate space `enumerate_space` will materialize.
pub const SPACE_GUARD: u128 = 2_000_000;

/// Largest pairwise workload (`|space|^2 * n`) allowed in a Condorcet
/// tournament.
pub const PAIRWISE_GUARD: u128 = 1_000_000_000;

/// An explicit enumeration of a finite outcome space.
#[derive(Clone, Debug)]
pub struct FiniteSpace<F> {
    pub points: Vec<Point<F>>,
}

impl<F> FiniteSpace<F> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Materializes the outcome space of a finite-setting election.
///
/// For legislation the space is every ordered arrangement of every subset of
/// the sentence pool up to `length_bound` (default: the whole pool).
pub fn enumerate_space<F: Real>(
    election: &Election<F>,
    length_bound: Option<usize>,
) -> Result<FiniteSpace<F>> {
    let m = election.m();
    let points = match election.setting() {
        Setting::Plurality => {
            guard_space(m as u128, "plurality space")?;
            election
                .alternatives()
                .iter()
                .map(|a| Point::Label(a.clone()))
                .collect()
        }
        Setting::Ranking => {
            guard_space(factorial(m as u128, m as u128), "permutation space")?;
            election
                .alternatives()
                .iter()
                .cloned()
                .permutations(m)
                .map(Point::Permutation)
                .collect()
        }
        Setting::Committee => {
            if m >= 64 {
                return Err(Error::GuardExceeded {
                    what: "subset space",
                    required: u128::MAX,
                    limit: SPACE_GUARD,
                    unit: "points",
                });
            }
            guard_space(1u128 << m, "subset space")?;
            let alts = election.alternatives();
            (0u64..(1u64 << m))
                .map(|mask| {
                    Point::Subset(
                        (0..m)
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| alts[i].clone())
                            .collect(),
                    )
                })
                .collect()
        }
        Setting::CommitteeFixedK => {
            let k = election.k().expect("validated fixed-k election");
            guard_space(binomial(m as u128, k as u128), "k-subset space")?;
            election
                .alternatives()
                .iter()
                .cloned()
                .combinations(k)
                .map(|c| Point::Subset(c.into_iter().collect()))
                .collect()
        }
        Setting::Legislation => {
            let bound = length_bound.unwrap_or(m).min(m);
            guard_space(arrangement_count(m as u128, bound as u128), "document space")?;
            let mut points = vec![Point::Document(Vec::new())];
            for len in 1..=bound {
                for combo in election.alternatives().iter().cloned().combinations(len) {
                    for perm in combo.into_iter().permutations(len) {
                        points.push(Point::Document(perm));
                    }
                }
            }
            points
        }
        other => {
            return Err(Error::Unsupported(format!(
                "no finite enumeration for the {} setting",
                other.as_str()
            )))
        }
    };
    Ok(FiniteSpace { points })
}

/// Exact L_p argmin set over an enumerated space.
pub fn brute_force_lp<F: Real>(
    election: &Election<F>,
    space: &FiniteSpace<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let dist = distance_table(election, space)?;
    let (idx, best) = lp_winner_indices(
        space.len(),
        election.n(),
        &p,
        spec.closed_tol(),
        &|c, v| dist[c][v],
    );
    let winners = idx.iter().map(|&i| space.points[i].clone()).collect();
    Ok(AggregationResult::from_winners(
        winners,
        Some(best),
        spec,
        Diagnostics::default(),
    ))
}

/// Exact reduced L_p (limit) winner set over an enumerated space.
pub fn brute_force_reduced_lp<F: Real>(
    election: &Election<F>,
    space: &FiniteSpace<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let dist = distance_table(election, space)?;
    let idx = reduced_winner_indices(
        space.len(),
        election.n(),
        &p,
        spec.reduced_epsilon,
        spec.closed_tol(),
        &|c, v| dist[c][v],
    );
    let objective = idx.first().map(|&i| {
        crate::finite::lp_objective((0..election.n()).map(|v| dist[i][v]), &p)
    });
    let winners = idx.iter().map(|&i| space.points[i].clone()).collect();
    Ok(AggregationResult::from_winners(
        winners,
        objective,
        spec,
        Diagnostics::default(),
    ))
}

/// Exact Condorcet winner set over an enumerated space.
pub fn brute_force_condorcet<F: Real>(
    election: &Election<F>,
    space: &FiniteSpace<F>,
    strict: bool,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let workload = (space.len() as u128)
        .saturating_mul(space.len() as u128)
        .saturating_mul(election.n() as u128);
    if workload > PAIRWISE_GUARD {
        return Err(Error::GuardExceeded {
            what: "pairwise tournament",
            required: workload,
            limit: PAIRWISE_GUARD,
            unit: "comparisons",
        });
    }
    let dist = distance_table(election, space)?;
    let t = condorcet_winners(space.len(), election.n(), strict, &|v, i, j| {
        dist[i][v].partial_cmp(&dist[j][v]).unwrap_or(Ordering::Equal)
    });
    if t.winners.is_empty() {
        return Ok(AggregationResult::no_winner(
            NoWinnerReason::NoCondorcetWinner,
            spec,
            Diagnostics::default(),
        ));
    }
    let winners = t.winners.iter().map(|&i| space.points[i].clone()).collect();
    Ok(AggregationResult::from_winners(
        winners,
        None,
        spec,
        Diagnostics::default(),
    ))
}

/// Exact minimum-weight edit-sequence cost between two documents, as an
/// integer numerator over `l^2`, found by uniform-cost search over document
/// states.
///
/// Operation costs in numerator units: insert and delete cost `l^2`, an
/// adjacent swap costs 1. Inserts draw only from sentences of `y`: inserting
/// any other sentence would have to be deleted again, so the pruning is
/// sound. Guards: both documents at most 5 sentences, joint pool at most 6.
pub fn bfs_edit_distance_numerator(x: &[String], y: &[String], ell: usize) -> Result<u64> {
    if x.len().max(y.len()) > 5 {
        return Err(Error::GuardExceeded {
            what: "edit-sequence search document length",
            required: x.len().max(y.len()) as u128,
            limit: 5,
            unit: "sentences",
        });
    }
    let pool: BTreeSet<&str> = x.iter().chain(y).map(String::as_str).collect();
    if pool.len() > 6 {
        return Err(Error::GuardExceeded {
            what: "edit-sequence search sentence pool",
            required: pool.len() as u128,
            limit: 6,
            unit: "sentences",
        });
    }
    let longest = x.len().max(y.len());
    if ell < longest || ell == 0 {
        return Err(Error::EllTooSmall {
            ell,
            len: longest,
        });
    }

    let ids: Vec<&str> = pool.into_iter().collect();
    let id_of: HashMap<&str, u8> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u8))
        .collect();
    let encode = |doc: &[String]| -> Vec<u8> {
        doc.iter().map(|s| id_of[s.as_str()]).collect()
    };
    let start = encode(x);
    let goal = encode(y);
    let goal_set: BTreeSet<u8> = goal.iter().copied().collect();
    let unit = (ell as u64) * (ell as u64);

    let mut best: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut heap: BinaryHeap<(std::cmp::Reverse<u64>, Vec<u8>)> = BinaryHeap::new();
    best.insert(start.clone(), 0);
    heap.push((std::cmp::Reverse(0), start));

    while let Some((std::cmp::Reverse(cost), state)) = heap.pop() {
        if state == goal {
            return Ok(cost);
        }
        if best.get(&state).copied().unwrap_or(u64::MAX) < cost {
            continue;
        }
        let mut push = |next: Vec<u8>, c: u64, best: &mut HashMap<Vec<u8>, u64>| {
            let entry = best.entry(next.clone()).or_insert(u64::MAX);
            if c < *entry {
                *entry = c;
                heap.push((std::cmp::Reverse(c), next));
            }
        };
        // Deletes.
        for i in 0..state.len() {
            let mut next = state.clone();
            next.remove(i);
            push(next, cost + unit, &mut best);
        }
        // Adjacent swaps.
        for i in 0..state.len().saturating_sub(1) {
            let mut next = state.clone();
            next.swap(i, i + 1);
            push(next, cost + 1, &mut best);
        }
        // Inserts of goal sentences not yet present.
        let present: BTreeSet<u8> = state.iter().copied().collect();
        for &s in goal_set.difference(&present) {
            for i in 0..=state.len() {
                let mut next = state.clone();
                next.insert(i, s);
                push(next, cost + unit, &mut best);
            }
        }
    }
    unreachable!("the goal document is always reachable by deletes and inserts")
}

/// Exact minimum edit cost as a scalar (see
/// [`bfs_edit_distance_numerator`]).
pub fn bfs_edit_distance<F: Real>(x: &[String], y: &[String], ell: usize) -> Result<F> {
    let numer = bfs_edit_distance_numerator(x, y, ell)?;
    let unit = (ell as u64) * (ell as u64);
    Ok(real_u64::<F>(numer) / real_u64::<F>(unit))
}

fn distance_table<F: Real>(
    election: &Election<F>,
    space: &FiniteSpace<F>,
) -> Result<Vec<Vec<F>>> {
    let mut desc = election.metric();
    // Enumerated documents may be longer than every proposal; widen l so the
    // whole space is measured under one metric.
    if let Some(ell) = desc.ell {
        let longest = space
            .points
            .iter()
            .map(|p| match p {
                Point::Document(d) => d.len(),
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        desc.ell = Some(ell.max(longest));
    }
    space
        .points
        .iter()
        .map(|c| {
            election
                .voters()
                .iter()
                .map(|v| distance(v, c, &desc))
                .collect()
        })
        .collect()
}

fn guard_space(required: u128, what: &'static str) -> Result<()> {
    if required > SPACE_GUARD {
        return Err(Error::GuardExceeded {
            what,
            required,
            limit: SPACE_GUARD,
            unit: "points",
        });
    }
    Ok(())
}

fn factorial(n: u128, take: u128) -> u128 {
    let mut acc: u128 = 1;
    let mut v = n;
    for _ in 0..take {
        if v == 0 {
            break;
        }
        acc = acc.saturating_mul(v);
        v -= 1;
    }
    acc
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of ordered arrangements of subsets of an `n`-sentence pool with
/// length at most `bound`: sum over j of n!/(n-j)!.
fn arrangement_count(n: u128, bound: u128) -> u128 {
    let mut total: u128 = 0;
    for j in 0..=bound.min(n) {
        total = total.saturating_add(factorial(n, j));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Election;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn plurality(votes: &[&str], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Plurality,
            strs(alts),
            votes.iter().map(|v| Point::Label(v.to_string())).collect(),
            None,
        )
        .unwrap()
    }

    fn committee(votes: &[&[&str]], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Committee,
            strs(alts),
            votes
                .iter()
                .map(|v| Point::subset_from(v.iter().copied()))
                .collect(),
            None,
        )
        .unwrap()
    }

    fn ranking(votes: &[&[&str]], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Ranking,
            strs(alts),
            votes
                .iter()
                .map(|v| Point::permutation_from(v.iter().copied()))
                .collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn space_sizes() {
        let e = plurality(&["a", "a", "b"], &["a", "b", "c"]);
        assert_eq!(enumerate_space(&e, None).unwrap().len(), 3);

        let e = ranking(&[&["a", "b", "c"]], &["a", "b", "c"]);
        assert_eq!(enumerate_space(&e, None).unwrap().len(), 6);

        let e = committee(&[&["a"]], &["a", "b", "c"]);
        assert_eq!(enumerate_space(&e, None).unwrap().len(), 8);
    }

    #[test]
    fn lp_plurality_counts_votes() {
        let e = plurality(&["a", "a", "b"], &["a", "b", "c"]);
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::lp_finite(1.0);
        let r = brute_force_lp(&e, &space, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(r.objective, Some(1.0));
    }

    #[test]
    fn lp_committee_four_way_tie() {
        let e = committee(&[&["a"], &["b"]], &["a", "b"]);
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::lp_finite(1.0);
        let r = brute_force_lp(&e, &space, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["", "a", "a,b", "b"]);
        assert_eq!(r.objective, Some(2.0));
    }

    #[test]
    fn lp_ranking_majority_order_wins() {
        let e = ranking(
            &[&["a", "b", "c"], &["a", "b", "c"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::lp_finite(1.0);
        let r = brute_force_lp(&e, &space, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>b>c"]);
        assert_eq!(r.objective, Some(2.0));
    }

    #[test]
    fn condorcet_majority_ideal_wins() {
        let e = plurality(&["a", "a", "b"], &["a", "b"]);
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::<f64>::condorcet();
        let r = brute_force_condorcet(&e, &space, true, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
    }

    #[test]
    fn condorcet_committee_nonexistence() {
        let e = committee(
            &[&[], &[], &["a", "b"], &["a", "c"], &["b", "c"]],
            &["a", "b", "c"],
        );
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::<f64>::condorcet();
        let r = brute_force_condorcet(&e, &space, true, &spec).unwrap();
        assert!(r.winners.is_empty());
        assert_eq!(r.reason, Some(NoWinnerReason::NoCondorcetWinner));
    }

    #[test]
    fn condorcet_ranking_cycle() {
        let e = ranking(
            &[&["a", "b", "c"], &["b", "c", "a"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        let space = enumerate_space(&e, None).unwrap();
        let spec = AggregationSpec::<f64>::condorcet();
        let r = brute_force_condorcet(&e, &space, true, &spec).unwrap();
        assert!(r.winners.is_empty());
    }

    #[test]
    fn bfs_examples() {
        let s12 = strs(&["s1", "s2"]);
        let s21 = strs(&["s2", "s1"]);
        assert_eq!(bfs_edit_distance::<f64>(&s12, &s21, 2).unwrap(), 0.25);
        assert_eq!(bfs_edit_distance::<f64>(&s12, &s12, 7).unwrap(), 0.0);

        let x = strs(&["s1", "s2", "s3"]);
        let y = strs(&["s3", "s1"]);
        assert_eq!(bfs_edit_distance_numerator(&x, &y, 3).unwrap(), 10);
    }

    #[test]
    fn bfs_guard_trips() {
        let x = strs(&["a", "b", "c", "d", "e", "f"]);
        assert!(bfs_edit_distance::<f64>(&x, &x, 6).is_err());
    }
}
