//! Social welfare functions: aggregation over the permutation group under
//! the adjacent-swap (Kendall tau) metric.
//!
//! L_1 is the Kemeny ranking, solved exactly by dynamic programming over
//! subsets via the pairwise decomposition
//! `sum_i kendall(x, v_i) = sum over ordered pairs (b above a in x) of
//! #voters ranking a above b`. L_inf (the center permutation) and general p
//! are solved by exhaustive enumeration under tighter guards, and a
//! hill-climbing heuristic covers instances beyond them.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use itertools::Itertools;

use crate::aggregation::{AggregationSpec, Exponent};
use crate::election::Election;
use crate::error::{Error, Result};
use crate::finite::{condorcet_winners, lp_winner_indices, reduced_winner_indices};
use crate::point::Point;
use crate::result::{AggregationResult, Diagnostics, NoWinnerReason, WINNER_CAP};
use crate::scalar::{real_u64, Real};

/// Subset-DP guard: 2^z states.
pub const KEMENY_MAX_Z: usize = 18;
/// Exhaustive-enumeration guard: z! candidates.
pub const EXHAUSTIVE_MAX_Z: usize = 9;
/// Pairwise-tournament guard: (z!)^2 comparisons.
pub const CONDORCET_MAX_Z: usize = 6;

/// Voter orders interned as index permutations.
#[derive(Clone, Debug)]
pub struct RankingView {
    alternatives: Vec<String>,
    voters: Vec<Vec<u8>>,
}

/// `counts[a][b]` = number of voters ranking alternative `a` above `b`.
/// For complete orders `counts[a][b] + counts[b][a] = n`.
#[derive(Clone, Debug)]
pub struct PairwiseMatrix {
    pub counts: Vec<Vec<u64>>,
}

impl RankingView {
    pub fn from_election<F: Real>(election: &Election<F>) -> Result<Self> {
        let alternatives: Vec<String> = election.alternatives().to_vec();
        let index_of = |id: &str| alternatives.iter().position(|a| a == id).unwrap() as u8;
        let mut voters = Vec::with_capacity(election.n());
        for p in election.voters() {
            match p {
                Point::Permutation(order) => {
                    voters.push(order.iter().map(|id| index_of(id)).collect())
                }
                other => {
                    return Err(Error::VariantMismatch {
                        index: 0,
                        expected: "permutation",
                        got: other.variant_name(),
                    })
                }
            }
        }
        Ok(RankingView {
            alternatives,
            voters,
        })
    }

    pub fn z(&self) -> usize {
        self.alternatives.len()
    }

    fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn pairwise(&self) -> PairwiseMatrix {
        let z = self.z();
        let mut counts = vec![vec![0u64; z]; z];
        for v in &self.voters {
            for i in 0..z {
                for j in i + 1..z {
                    counts[v[i] as usize][v[j] as usize] += 1;
                }
            }
        }
        PairwiseMatrix { counts }
    }

    fn to_point<F: Real>(&self, perm: &[u8]) -> Point<F> {
        Point::Permutation(
            perm.iter()
                .map(|&i| self.alternatives[i as usize].clone())
                .collect(),
        )
    }

    fn distances_to_voters(&self, perm: &[u8]) -> Vec<u64> {
        self.voters
            .iter()
            .map(|v| kendall_indices(perm, v))
            .collect()
    }
}

/// Kendall distance between two index permutations (number of discordant
/// pairs), O(z^2) — z is tiny wherever this is called.
pub(crate) fn kendall_indices(x: &[u8], y: &[u8]) -> u64 {
    let z = x.len();
    let mut pos_y = vec![0u8; z];
    for (i, &a) in y.iter().enumerate() {
        pos_y[a as usize] = i as u8;
    }
    let mut inv = 0u64;
    for i in 0..z {
        for j in i + 1..z {
            if pos_y[x[i] as usize] > pos_y[x[j] as usize] {
                inv += 1;
            }
        }
    }
    inv
}

/// Exact Kemeny (L_1) winners via dynamic programming over subsets.
///
/// `best(S)` is the cheapest ranking of the alternatives in `S`, built by
/// choosing which element is placed last: placing `a` last among `S` costs
/// `sum_{b in S \ {a}} counts[a][b]` (each voter ranking `a` above such a
/// `b` disagrees with that pair). Co-winners are recovered by walking every
/// tying choice, up to the winner cap.
pub fn solve_kemeny<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = RankingView::from_election(election)?;
    let w = view.pairwise().counts;
    let (objective, winners, truncated) = kemeny_dp(&w)?;
    let mut diagnostics = Diagnostics::default();
    diagnostics.truncated = truncated;
    let points = winners.iter().map(|p| view.to_point(p)).collect();
    Ok(AggregationResult::from_winners(
        points,
        Some(real_u64(objective)),
        spec,
        diagnostics,
    ))
}

/// Subset DP over an arbitrary pairwise weight matrix; `w[a][b]` is the cost
/// incurred per pair when the output ranks `b` above `a`. Returns the
/// minimum total cost and every optimal order (capped).
pub(crate) fn kemeny_dp(w: &[Vec<u64>]) -> Result<(u64, Vec<Vec<u8>>, bool)> {
    let z = w.len();
    if z > KEMENY_MAX_Z {
        return Err(Error::GuardExceeded {
            what: "Kemeny subset DP",
            required: 1u128 << z,
            limit: 1u128 << KEMENY_MAX_Z,
            unit: "DP states",
        });
    }
    if z == 0 {
        return Ok((0, vec![Vec::new()], false));
    }
    let full: u32 = (1u32 << z) - 1;
    let mut best = vec![u64::MAX; (full as usize) + 1];
    best[0] = 0;
    for mask in 1..=full {
        let mut m = u64::MAX;
        for a in 0..z {
            if mask >> a & 1 == 0 {
                continue;
            }
            let rest = mask & !(1 << a);
            let cost = place_last_cost(w, a, rest);
            m = m.min(best[rest as usize] + cost);
        }
        best[mask as usize] = m;
    }
    let objective = best[full as usize];

    // Backtrack all tying orders (suffix built last-to-first).
    let mut winners: Vec<Vec<u8>> = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(u32, Vec<u8>)> = vec![(full, Vec::new())];
    while let Some((mask, suffix)) = stack.pop() {
        if mask == 0 {
            if winners.len() >= WINNER_CAP {
                truncated = true;
                continue;
            }
            // The suffix holds last-placed first; the order is its reverse.
            winners.push(suffix.iter().rev().copied().collect());
            continue;
        }
        for a in 0..z {
            if mask >> a & 1 == 0 {
                continue;
            }
            let rest = mask & !(1 << a);
            if best[rest as usize].saturating_add(place_last_cost(w, a, rest))
                == best[mask as usize]
            {
                let mut next = suffix.clone();
                next.push(a as u8);
                stack.push((rest, next));
            }
        }
    }
    Ok((objective, winners, truncated))
}

fn place_last_cost(w: &[Vec<u64>], a: usize, rest_mask: u32) -> u64 {
    let mut cost = 0;
    let mut mask = rest_mask;
    while mask != 0 {
        let b = mask.trailing_zeros() as usize;
        cost += w[a][b];
        mask &= mask - 1;
    }
    cost
}

/// Exact L_inf winners (center permutations) by enumeration.
pub fn solve_center_permutation<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    solve_exhaustive(election, spec, Exponent::Infinity)
}

/// Exact L_p winners by enumeration (general p lacks the pairwise
/// decomposition).
pub fn solve_ranking_lp<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    solve_exhaustive(election, spec, p)
}

fn solve_exhaustive<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
    p: Exponent<F>,
) -> Result<AggregationResult<F>> {
    let view = RankingView::from_election(election)?;
    let perms = enumerate_perms(&view, EXHAUSTIVE_MAX_Z, "permutation enumeration")?;
    let dists = distance_rows(&view, &perms);
    let (idx, best) = lp_winner_indices(perms.len(), view.n(), &p, spec.closed_tol(), &|c, v| {
        real_u64::<F>(dists[c][v])
    });
    let winners = idx.iter().map(|&i| view.to_point(&perms[i])).collect();
    Ok(AggregationResult::from_winners(
        winners,
        Some(best),
        spec,
        Diagnostics::default(),
    ))
}

/// Reduced L_p winner set over the full permutation space.
pub fn solve_ranking_reduced<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = RankingView::from_election(election)?;
    let perms = enumerate_perms(&view, EXHAUSTIVE_MAX_Z, "permutation enumeration")?;
    let dists = distance_rows(&view, &perms);
    let idx = reduced_winner_indices(
        perms.len(),
        view.n(),
        &p,
        spec.reduced_epsilon,
        spec.closed_tol(),
        &|c, v| real_u64::<F>(dists[c][v]),
    );
    let objective = idx.first().map(|&i| {
        crate::finite::lp_objective(dists[i].iter().map(|&d| real_u64::<F>(d)), &p)
    });
    let winners = idx.iter().map(|&i| view.to_point(&perms[i])).collect();
    Ok(AggregationResult::from_winners(
        winners,
        objective,
        spec,
        Diagnostics::default(),
    ))
}

/// Exact Condorcet winners by full pairwise tournament among all z!
/// permutations.
pub fn solve_ranking_condorcet<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = RankingView::from_election(election)?;
    let perms = enumerate_perms(&view, CONDORCET_MAX_Z, "permutation tournament")?;
    let dists = distance_rows(&view, &perms);
    let t = condorcet_winners(
        perms.len(),
        view.n(),
        spec.strict_condorcet,
        &|v, i, j| dists[i][v].cmp(&dists[j][v]),
    );
    if t.winners.is_empty() {
        return Ok(AggregationResult::no_winner(
            NoWinnerReason::NoCondorcetWinner,
            spec,
            Diagnostics::default(),
        ));
    }
    let winners = t.winners.iter().map(|&i| view.to_point(&perms[i])).collect();
    Ok(AggregationResult::from_winners(
        winners,
        None,
        spec,
        Diagnostics::default(),
    ))
}

/// Best-of-restarts adjacent-transposition hill climbing for the Kemeny
/// objective; exact on no instance class, flagged heuristic in the result.
///
/// Restarts from every voter order plus `RANDOM_RESTARTS` seeded shuffles.
pub fn kemeny_local_search<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    const RANDOM_RESTARTS: usize = 32;
    let view = RankingView::from_election(election)?;
    let w = view.pairwise().counts;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut starts: Vec<Vec<u8>> = view.voters.clone();
    let base: Vec<u8> = (0..view.z() as u8).collect();
    for _ in 0..RANDOM_RESTARTS {
        let mut s = base.clone();
        s.shuffle(&mut rng);
        starts.push(s);
    }

    let (order, objective, iterations) = local_search_weighted(&w, starts);
    let mut diagnostics = Diagnostics::default();
    diagnostics.heuristic = true;
    diagnostics.iterations = iterations;
    Ok(AggregationResult::from_winners(
        vec![view.to_point(&order)],
        Some(real_u64(objective)),
        spec,
        diagnostics,
    ))
}

/// Hill climbing on a pairwise weight matrix: repeatedly applies the best
/// improving adjacent transposition. Also used by the legislation pipeline,
/// whose projected profiles yield incomplete (abstention-aware) weights.
pub(crate) fn local_search_weighted(
    w: &[Vec<u64>],
    starts: Vec<Vec<u8>>,
) -> (Vec<u8>, u64, u64) {
    let objective = |order: &[u8]| -> u64 {
        let mut obj = 0;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                obj += w[order[j] as usize][order[i] as usize];
            }
        }
        obj
    };
    let mut best_order: Vec<u8> = Vec::new();
    let mut best_obj = u64::MAX;
    let mut iterations = 0u64;
    for start in starts {
        let mut order = start;
        let mut obj = objective(&order);
        loop {
            iterations += 1;
            let mut best_delta = 0i64;
            let mut best_pos = None;
            for i in 0..order.len().saturating_sub(1) {
                let (a, b) = (order[i] as usize, order[i + 1] as usize);
                // Pair (a before b) costs w[b][a]; swapped it costs w[a][b].
                let delta = w[a][b] as i64 - w[b][a] as i64;
                if delta < best_delta {
                    best_delta = delta;
                    best_pos = Some(i);
                }
            }
            match best_pos {
                Some(i) => {
                    order.swap(i, i + 1);
                    obj = (obj as i64 + best_delta) as u64;
                }
                None => break,
            }
        }
        if obj < best_obj || (obj == best_obj && order < best_order) {
            best_obj = obj;
            best_order = order;
        }
    }
    (best_order, best_obj, iterations)
}

fn enumerate_perms(
    view: &RankingView,
    max_z: usize,
    what: &'static str,
) -> Result<Vec<Vec<u8>>> {
    let z = view.z();
    if z > max_z {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        return Err(Error::GuardExceeded {
            what,
            required: fact(z),
            limit: fact(max_z),
            unit: "permutations",
        });
    }
    Ok((0..z as u8).permutations(z).collect())
}

fn distance_rows(view: &RankingView, perms: &[Vec<u8>]) -> Vec<Vec<u64>> {
    perms
        .iter()
        .map(|p| view.distances_to_voters(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Setting;

    fn ranking(votes: &[&[&str]], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Ranking,
            alts.iter().map(|s| s.to_string()).collect(),
            votes
                .iter()
                .map(|v| Point::permutation_from(v.iter().copied()))
                .collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn kemeny_examples() {
        let spec = AggregationSpec::lp_finite(1.0);

        let e = ranking(
            &[&["a", "b", "c"], &["a", "b", "c"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        let r = solve_kemeny(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>b>c"]);
        assert_eq!(r.objective, Some(2.0));

        let e = ranking(&[&["b", "a", "c"]], &["a", "b", "c"]);
        let r = solve_kemeny(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["b>a>c"]);
        assert_eq!(r.objective, Some(0.0));

        // Two voters four swaps apart: the named midpoint co-wins at cost 4.
        let e = ranking(
            &[&["a", "b", "c", "d", "e"], &["e", "a", "b", "c", "d"]],
            &["a", "b", "c", "d", "e"],
        );
        let r = solve_kemeny(&e, &spec).unwrap();
        assert_eq!(r.objective, Some(4.0));
        assert!(r.winner_keys().contains(&"a>b>e>c>d".to_string()));
    }

    #[test]
    fn center_permutation_examples() {
        let spec = AggregationSpec::lp(Exponent::Infinity);

        let e = ranking(&[&["a", "b"], &["a", "b"]], &["a", "b"]);
        let r = solve_center_permutation(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>b"]);
        assert_eq!(r.objective, Some(0.0));

        let e = ranking(
            &[&["a", "b", "c", "d", "e"], &["e", "a", "b", "c", "d"]],
            &["a", "b", "c", "d", "e"],
        );
        let r = solve_center_permutation(&e, &spec).unwrap();
        assert!(r.winner_keys().contains(&"a>b>e>c>d".to_string()));
        assert_eq!(r.objective, Some(2.0));

        let e = ranking(&[&["a", "b"], &["b", "a"]], &["a", "b"]);
        let r = solve_center_permutation(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>b", "b>a"]);
        assert_eq!(r.objective, Some(1.0));
    }

    #[test]
    fn lp_p2_prefers_balanced_order() {
        let spec = AggregationSpec::lp_finite(2.0);
        let e = ranking(
            &[&["a", "b", "c"], &["a", "b", "c"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        let r = solve_ranking_lp(&e, Exponent::Finite(2.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>c>b"]);
        assert_eq!(r.objective, Some(3.0));
    }

    #[test]
    fn single_voter_any_p() {
        for p in [1.0, 1.5, 2.0, 4.0] {
            let spec = AggregationSpec::lp_finite(p);
            let e = ranking(&[&["c", "a", "b"]], &["a", "b", "c"]);
            let r = solve_ranking_lp(&e, Exponent::Finite(p), &spec).unwrap();
            assert_eq!(r.winner_keys(), ["c>a>b"]);
        }
    }

    #[test]
    fn condorcet_cycle_has_no_winner() {
        let spec = AggregationSpec::<f64>::condorcet();
        let e = ranking(
            &[&["a", "b", "c"], &["b", "c", "a"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        let r = solve_ranking_condorcet(&e, &spec).unwrap();
        assert!(r.winners.is_empty());
        assert_eq!(r.reason, Some(NoWinnerReason::NoCondorcetWinner));
    }

    #[test]
    fn condorcet_unanimous_and_majority() {
        let spec = AggregationSpec::<f64>::condorcet();
        let e = ranking(&[&["b", "a"], &["b", "a"]], &["a", "b"]);
        let r = solve_ranking_condorcet(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["b>a"]);

        let e = ranking(
            &[&["a", "b", "c"], &["a", "b", "c"], &["c", "b", "a"]],
            &["a", "b", "c"],
        );
        let r = solve_ranking_condorcet(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a>b>c"]);
    }

    #[test]
    fn local_search_reaches_exact_on_small_instances() {
        let spec = AggregationSpec::lp_finite(1.0);
        let e = ranking(
            &[
                &["a", "b", "c", "d"],
                &["b", "a", "d", "c"],
                &["a", "c", "b", "d"],
            ],
            &["a", "b", "c", "d"],
        );
        let exact = solve_kemeny(&e, &spec).unwrap();
        let heur = kemeny_local_search(&e, &spec).unwrap();
        assert!(heur.diagnostics.heuristic);
        assert!(heur.objective.unwrap() >= exact.objective.unwrap() - 1e-12);
        assert_eq!(heur.objective, exact.objective);
    }

    #[test]
    fn unanimous_local_search() {
        let spec = AggregationSpec::lp_finite(1.0);
        let order: &[&str] = &["c", "b", "a"];
        let e = ranking(&[order, order, order], &["a", "b", "c"]);
        let r = kemeny_local_search(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["c>b>a"]);
        assert_eq!(r.objective, Some(0.0));
    }

    #[test]
    fn dp_objective_matches_direct_distance_sum() {
        // Random-ish profiles over z = 5 via deterministic shuffles.
        let alts = ["a", "b", "c", "d", "e"];
        let mut orders: Vec<Vec<&str>> = Vec::new();
        let mut cur: Vec<&str> = alts.to_vec();
        for step in 0..9 {
            cur.swap(step % 5, (step * 3 + 1) % 5);
            orders.push(cur.clone());
        }
        let votes: Vec<&[&str]> = orders.iter().map(|o| o.as_slice()).collect();
        let e = ranking(&votes, &alts);
        let spec = AggregationSpec::lp_finite(1.0);
        let dp = solve_kemeny(&e, &spec).unwrap();
        let exhaustive = solve_ranking_lp(&e, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(dp.objective, exhaustive.objective);
        assert_eq!(dp.winner_keys(), exhaustive.winner_keys());
    }

    #[test]
    fn relabeling_equivariance() {
        let spec = AggregationSpec::lp_finite(1.0);
        let e = ranking(
            &[&["a", "b", "c"], &["b", "a", "c"], &["c", "a", "b"]],
            &["a", "b", "c"],
        );
        // Rename a->x, b->y, c->z (sorted order is preserved).
        let e2 = ranking(
            &[&["x", "y", "z"], &["y", "x", "z"], &["z", "x", "y"]],
            &["x", "y", "z"],
        );
        let r1 = solve_kemeny(&e, &spec).unwrap();
        let r2 = solve_kemeny(&e2, &spec).unwrap();
        let renamed: Vec<String> = r1
            .winner_keys()
            .iter()
            .map(|k| {
                k.replace('a', "x")
                    .replace('b', "y")
                    .replace('c', "z")
            })
            .collect();
        assert_eq!(renamed, r2.winner_keys());
    }
}
