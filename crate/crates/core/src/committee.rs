//! Committee elections under the symmetric-difference (Hamming) metric,
//! for both variable-size committees (all subsets) and fixed-size ones
//! (all k-subsets).
//!
//! L_1 over all subsets is the median element: the committee containing
//! exactly the alternatives approved by at least half the voters. L_1 over
//! k-subsets is approval voting. L_inf is the closest-subset (minimax)
//! problem, solved exactly by enumeration under the instance-size guard;
//! subsets are bitmasks internally, symbolic in every external surface.

use itertools::Itertools;

use crate::aggregation::{AggregationSpec, Exponent};
use crate::election::{Election, Setting};
use crate::error::{Error, Result};
use crate::finite::{condorcet_winners, lp_winner_indices, reduced_winner_indices};
use crate::point::Point;
use crate::result::{AggregationResult, Diagnostics, NoWinnerReason, WINNER_CAP};
use crate::scalar::{real_u64, Real};

/// Exhaustive-enumeration guard: 2^m candidate committees.
pub const ENUMERATION_MAX_M: usize = 22;
/// Pairwise-tournament guard: 4^m comparisons.
pub const CONDORCET_MAX_M: usize = 10;

/// Voter approval sets interned as bitmasks.
#[derive(Clone, Debug)]
pub struct CommitteeView {
    alternatives: Vec<String>,
    voters: Vec<u32>,
    k: Option<usize>,
}

impl CommitteeView {
    pub fn from_election<F: Real>(election: &Election<F>) -> Result<Self> {
        let alternatives: Vec<String> = election.alternatives().to_vec();
        let mut voters = Vec::with_capacity(election.n());
        for p in election.voters() {
            match p {
                Point::Subset(members) => {
                    let mut mask = 0u32;
                    for id in members {
                        let pos = alternatives.binary_search(id).expect("validated member");
                        mask |= 1 << pos;
                    }
                    voters.push(mask);
                }
                other => {
                    return Err(Error::VariantMismatch {
                        index: 0,
                        expected: "subset",
                        got: other.variant_name(),
                    })
                }
            }
        }
        Ok(CommitteeView {
            alternatives,
            voters,
            k: election.k(),
        })
    }

    pub fn m(&self) -> usize {
        self.alternatives.len()
    }

    fn n(&self) -> usize {
        self.voters.len()
    }

    /// Approval count per alternative.
    pub fn approvals(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.m()];
        for &v in &self.voters {
            for (a, count) in counts.iter_mut().enumerate() {
                *count += u64::from(v >> a & 1);
            }
        }
        counts
    }

    fn to_point<F: Real>(&self, mask: u32) -> Point<F> {
        Point::Subset(
            (0..self.m())
                .filter(|a| mask >> a & 1 == 1)
                .map(|a| self.alternatives[a].clone())
                .collect(),
        )
    }

    fn l1_objective(&self, mask: u32) -> u64 {
        self.voters
            .iter()
            .map(|&v| u64::from((v ^ mask).count_ones()))
            .sum()
    }

    fn candidates(&self) -> Result<Vec<u32>> {
        let m = self.m();
        if m > ENUMERATION_MAX_M {
            return Err(Error::GuardExceeded {
                what: "committee enumeration",
                required: 1u128 << m,
                limit: 1u128 << ENUMERATION_MAX_M,
                unit: "subsets",
            });
        }
        Ok(match self.k {
            None => (0u32..(1u32 << m)).collect(),
            Some(k) => (0..m)
                .combinations(k)
                .map(|bits| bits.into_iter().fold(0u32, |acc, b| acc | 1 << b))
                .collect(),
        })
    }
}

/// The median element: the committee of alternatives approved by at least
/// n/2 voters. The canonical representative includes every threshold
/// alternative; when some alternative sits exactly at n/2 the full co-winner
/// lattice (each such alternative in or out) is reported, capped.
pub fn solve_median_element<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    if election.setting() != Setting::Committee {
        return Err(Error::Unsupported(
            "the median element is defined for variable-size committees".into(),
        ));
    }
    let view = CommitteeView::from_election(election)?;
    let counts = view.approvals();
    let n = view.n() as u64;

    let mut mandatory = 0u32;
    let mut optional: Vec<usize> = Vec::new();
    for (a, &c) in counts.iter().enumerate() {
        if 2 * c > n {
            mandatory |= 1 << a;
        } else if 2 * c == n {
            optional.push(a);
        }
    }
    let median_mask = optional.iter().fold(mandatory, |acc, &a| acc | 1 << a);

    let mut diagnostics = Diagnostics::default();
    let mut winners: Vec<Point<F>> = Vec::new();
    if optional.len() >= 32 || (1u64 << optional.len()) > WINNER_CAP as u64 {
        diagnostics.truncated = true;
        winners.push(view.to_point(median_mask));
    } else {
        for choice in 0u32..(1u32 << optional.len()) {
            let mask = optional
                .iter()
                .enumerate()
                .fold(mandatory, |acc, (bit, &a)| {
                    if choice >> bit & 1 == 1 {
                        acc | 1 << a
                    } else {
                        acc
                    }
                });
            winners.push(view.to_point(mask));
        }
    }

    let objective = real_u64(view.l1_objective(median_mask));
    let mut result = AggregationResult::from_winners(winners, Some(objective), spec, diagnostics);
    // The deterministic representative is the full median element, not the
    // least key of the lattice.
    result.representative = Some(view.to_point(median_mask));
    if result.method_echo.tie_break == crate::aggregation::TieBreak::Lexicographic {
        result.winners = vec![view.to_point(median_mask)];
    }
    result.unique = Some(optional.is_empty());
    Ok(result)
}

/// Approval voting: the k alternatives with the highest approval counts,
/// with boundary ties enumerated.
pub fn solve_topk_approval<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let Some(k) = election.k() else {
        return Err(Error::MissingK);
    };
    let view = CommitteeView::from_election(election)?;
    let counts = view.approvals();
    let mut order: Vec<usize> = (0..view.m()).collect();
    order.sort_by(|&a, &b| {
        counts[b]
            .cmp(&counts[a])
            .then_with(|| view.alternatives[a].cmp(&view.alternatives[b]))
    });
    let boundary = counts[order[k - 1]];
    let mandatory: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&a| counts[a] > boundary)
        .collect();
    let mut optional: Vec<usize> = (0..view.m()).filter(|&a| counts[a] == boundary).collect();
    optional.sort_by(|&a, &b| view.alternatives[a].cmp(&view.alternatives[b]));
    let need = k - mandatory.len();

    let base = mandatory.iter().fold(0u32, |acc, &a| acc | 1 << a);
    let mut diagnostics = Diagnostics::default();
    let mut winners: Vec<Point<F>> = Vec::new();
    let mut truncated = false;
    for combo in optional.iter().combinations(need) {
        if winners.len() > WINNER_CAP {
            truncated = true;
            break;
        }
        let mask = combo.into_iter().fold(base, |acc, &a| acc | 1 << a);
        winners.push(view.to_point(mask));
    }
    diagnostics.truncated = truncated;

    let rep_mask = optional[..need].iter().fold(base, |acc, &a| acc | 1 << a);
    let objective = real_u64(view.l1_objective(rep_mask));
    Ok(AggregationResult::from_winners(
        winners,
        Some(objective),
        spec,
        diagnostics,
    ))
}

/// Exact minimax committee: argmin of the maximum Hamming distance to any
/// voter, by exhaustive search over the committee space.
pub fn solve_closest_subset<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    solve_committee_lp(election, Exponent::Infinity, spec)
}

/// Exact L_p aggregation by exhaustive search over the committee space.
pub fn solve_committee_lp<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = CommitteeView::from_election(election)?;
    let candidates = view.candidates()?;
    let (idx, best) = lp_winner_indices(
        candidates.len(),
        view.n(),
        &p,
        spec.closed_tol(),
        &|c, v| real_u64::<F>(u64::from((candidates[c] ^ view.voters[v]).count_ones())),
    );
    let winners = idx.iter().map(|&i| view.to_point(candidates[i])).collect();
    Ok(AggregationResult::from_winners(
        winners,
        Some(best),
        spec,
        Diagnostics::default(),
    ))
}

/// Reduced L_p winner set over the committee space.
pub fn solve_committee_reduced<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = CommitteeView::from_election(election)?;
    let candidates = view.candidates()?;
    let dist = |c: usize, v: usize| {
        real_u64::<F>(u64::from((candidates[c] ^ view.voters[v]).count_ones()))
    };
    let idx = reduced_winner_indices(
        candidates.len(),
        view.n(),
        &p,
        spec.reduced_epsilon,
        spec.closed_tol(),
        &dist,
    );
    let objective = idx.first().map(|&i| {
        crate::finite::lp_objective((0..view.n()).map(|v| dist(i, v)), &p)
    });
    let winners = idx.iter().map(|&i| view.to_point(candidates[i])).collect();
    Ok(AggregationResult::from_winners(
        winners,
        objective,
        spec,
        Diagnostics::default(),
    ))
}

/// Exact Condorcet winners over the committee space.
pub fn solve_committee_condorcet<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let view = CommitteeView::from_election(election)?;
    if view.m() > CONDORCET_MAX_M {
        return Err(Error::GuardExceeded {
            what: "committee tournament",
            required: 1u128 << (2 * view.m()),
            limit: 1u128 << (2 * CONDORCET_MAX_M),
            unit: "comparisons",
        });
    }
    let candidates = view.candidates()?;
    let t = condorcet_winners(
        candidates.len(),
        view.n(),
        spec.strict_condorcet,
        &|v, i, j| {
            let di = (candidates[i] ^ view.voters[v]).count_ones();
            let dj = (candidates[j] ^ view.voters[v]).count_ones();
            di.cmp(&dj)
        },
    );
    if t.winners.is_empty() {
        return Ok(AggregationResult::no_winner(
            NoWinnerReason::NoCondorcetWinner,
            spec,
            Diagnostics::default(),
        ));
    }
    let winners = t
        .winners
        .iter()
        .map(|&i| view.to_point(candidates[i]))
        .collect();
    Ok(AggregationResult::from_winners(
        winners,
        None,
        spec,
        Diagnostics::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn committee(votes: &[&[&str]], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Committee,
            alts.iter().map(|s| s.to_string()).collect(),
            votes
                .iter()
                .map(|v| Point::subset_from(v.iter().copied()))
                .collect(),
            None,
        )
        .unwrap()
    }

    fn fixed_k(votes: &[&[&str]], alts: &[&str], k: usize) -> Election<f64> {
        Election::new(
            Setting::CommitteeFixedK,
            alts.iter().map(|s| s.to_string()).collect(),
            votes
                .iter()
                .map(|v| Point::subset_from(v.iter().copied()))
                .collect(),
            Some(k),
        )
        .unwrap()
    }

    #[test]
    fn median_element_examples() {
        let spec = AggregationSpec::lp_finite(1.0);

        let e = committee(&[&["a"], &["a"], &["b"]], &["a", "b"]);
        let r = solve_median_element(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(r.unique, Some(true));

        let e = committee(&[&["a"], &["b"]], &["a", "b"]);
        let r = solve_median_element(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["", "a", "a,b", "b"]);
        assert_eq!(
            r.representative.as_ref().unwrap().canonical_encode(),
            "a,b"
        );
        assert_eq!(r.unique, Some(false));

        let e = committee(&[&["a", "b"], &["a", "c"], &["b", "c"]], &["a", "b", "c"]);
        let r = solve_median_element(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a,b,c"]);
    }

    #[test]
    fn topk_examples() {
        let spec = AggregationSpec::lp_finite(1.0);

        let e = fixed_k(&[&["a", "b"], &["a", "c"]], &["a", "b", "c"], 1);
        let r = solve_topk_approval(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);

        let e = fixed_k(&[&["a"], &["b"]], &["a", "b"], 2);
        let r = solve_topk_approval(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a,b"]);

        let e = fixed_k(&[&["a"], &["b"]], &["a", "b"], 1);
        let r = solve_topk_approval(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a", "b"]);
    }

    #[test]
    fn closest_subset_examples() {
        let spec = AggregationSpec::lp(Exponent::Infinity);

        let e = committee(&[&[], &["a", "b"]], &["a", "b"]);
        let r = solve_closest_subset(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a", "b"]);
        assert_eq!(r.objective, Some(1.0));

        let e = committee(&[&[], &["a", "b", "c", "d"]], &["a", "b", "c", "d"]);
        let r = solve_closest_subset(&e, &spec).unwrap();
        assert_eq!(r.objective, Some(2.0));
        assert_eq!(r.winners.len(), 6); // every 2-subset
        assert!(r.winner_keys().contains(&"a,b".to_string()));

        let e = committee(&[&["b", "c"], &["b", "c"]], &["a", "b", "c"]);
        let r = solve_closest_subset(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["b,c"]);
        assert_eq!(r.objective, Some(0.0));
    }

    #[test]
    fn lp_examples() {
        let e = committee(&[&["a"], &["a"], &["b"]], &["a", "b"]);

        let spec = AggregationSpec::lp_finite(2.0);
        let r = solve_committee_lp(&e, Exponent::Finite(2.0), &spec).unwrap();
        // {a,b} and the empty set tie at 3; the majority choice {a} scores 4.
        assert_eq!(r.winner_keys(), ["", "a,b"]);
        assert_eq!(r.objective, Some(3.0));

        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_committee_lp(&e, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(r.objective, Some(2.0));
    }

    #[test]
    fn lp_p1_matches_median_element() {
        let spec = AggregationSpec::lp_finite(1.0);
        let profiles: Vec<Vec<&[&str]>> = vec![
            vec![&["a"], &["a", "b"], &["c"]],
            vec![&[], &["a", "b", "c"]],
            vec![&["a", "c"], &["b", "c"], &["c"], &["a"]],
        ];
        for votes in profiles {
            let e = committee(&votes, &["a", "b", "c"]);
            let median = solve_median_element(&e, &spec).unwrap();
            let lp = solve_committee_lp(&e, Exponent::Finite(1.0), &spec).unwrap();
            assert_eq!(median.winner_keys(), lp.winner_keys());
        }
    }

    #[test]
    fn monotonicity_counterexample_profile() {
        // Winner {a,b} at p = 2; moving the second voter onto it flips the
        // winner set to the singletons.
        let spec = AggregationSpec::lp_finite(2.0);
        let e = committee(&[&[], &["a", "b", "c", "d"]], &["a", "b", "c", "d"]);
        let r = solve_committee_lp(&e, Exponent::Finite(2.0), &spec).unwrap();
        assert!(r.winner_keys().contains(&"a,b".to_string()));

        let moved = e
            .with_voter(1, Point::subset_from(["a", "b"]))
            .unwrap();
        let r2 = solve_committee_lp(&moved, Exponent::Finite(2.0), &spec).unwrap();
        assert_eq!(r2.winner_keys(), ["a", "b"]);
    }

    #[test]
    fn condorcet_examples() {
        let spec = AggregationSpec::<f64>::condorcet();

        let e = committee(
            &[&[], &[], &["a", "b"], &["a", "c"], &["b", "c"]],
            &["a", "b", "c"],
        );
        let r = solve_committee_condorcet(&e, &spec).unwrap();
        assert!(r.winners.is_empty());
        assert_eq!(r.reason, Some(NoWinnerReason::NoCondorcetWinner));

        let ac: &[&str] = &["a", "c"];
        let e = committee(&[ac, ac, ac], &["a", "b", "c"]);
        let r = solve_committee_condorcet(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a,c"]);

        let e = committee(&[&["a"], &["a"], &["a"], &["b", "c"], &["b"]], &["a", "b", "c"]);
        let r = solve_committee_condorcet(&e, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
    }

    #[test]
    fn reduced_p1_keeps_median_element() {
        let spec = AggregationSpec::<f64>::reduced(Exponent::Finite(1.0));
        let e = committee(&[&["a"], &["b"]], &["a", "b"]);
        let r = solve_committee_reduced(&e, Exponent::Finite(1.0), &spec).unwrap();
        // L_{1+eps} drops the lopsided singletons, keeping the balanced pair.
        assert_eq!(r.winner_keys(), ["", "a,b"]);
    }

    #[test]
    fn guard_trips_on_wide_committee_condorcet() {
        let alts: Vec<String> = (0..11).map(|i| format!("x{i:02}")).collect();
        let e = Election::<f64>::new(
            Setting::Committee,
            alts,
            vec![Point::subset_from(["x00"])],
            None,
        )
        .unwrap();
        let spec = AggregationSpec::<f64>::condorcet();
        assert!(matches!(
            solve_committee_condorcet(&e, &spec),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
