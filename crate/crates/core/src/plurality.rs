//! Plurality elections: the discrete metric makes every aggregation rule a
//! vote-count computation, so these fast paths never enumerate anything.
//!
//! For finite p the objective of alternative `x` is `n - votes(x)`, so every
//! L_p aggregation is plurality. Plain L_inf degenerates: any non-unanimous
//! profile puts every alternative at max distance 1, so all alternatives
//! co-win; its reduced form recovers the plurality winners.

use std::collections::BTreeMap;

use crate::aggregation::{AggregationSpec, Exponent};
use crate::election::{Election, Setting};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::result::{AggregationResult, Diagnostics, NoWinnerReason};
use crate::scalar::{real_u64, Real};

fn vote_counts<F: Real>(election: &Election<F>) -> Result<BTreeMap<String, u64>> {
    if election.setting() != Setting::Plurality {
        return Err(Error::Unsupported("plurality solver on non-plurality election".into()));
    }
    let mut counts: BTreeMap<String, u64> = election
        .alternatives()
        .iter()
        .map(|a| (a.clone(), 0))
        .collect();
    for p in election.voters() {
        match p {
            Point::Label(id) => *counts.get_mut(id).expect("validated label") += 1,
            other => {
                return Err(Error::VariantMismatch {
                    index: 0,
                    expected: "label",
                    got: other.variant_name(),
                })
            }
        }
    }
    Ok(counts)
}

fn plurality_winners<F: Real>(counts: &BTreeMap<String, u64>) -> (Vec<Point<F>>, u64) {
    let max = counts.values().copied().max().unwrap_or(0);
    let winners = counts
        .iter()
        .filter(|(_, &c)| c == max)
        .map(|(a, _)| Point::Label(a.clone()))
        .collect();
    (winners, max)
}

/// L_p aggregation: plurality winners for any finite p; for p = inf the
/// degenerate all-alternatives tie unless the profile is unanimous.
pub fn solve_plurality_lp<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let counts = vote_counts(election)?;
    let n = election.n() as u64;
    match p {
        Exponent::Finite(_) => {
            let (winners, max) = plurality_winners(&counts);
            Ok(AggregationResult::from_winners(
                winners,
                Some(real_u64(n - max)),
                spec,
                Diagnostics::default(),
            ))
        }
        Exponent::Infinity => {
            let (winners, max) = plurality_winners(&counts);
            if max == n {
                return Ok(AggregationResult::from_winners(
                    winners,
                    Some(F::zero()),
                    spec,
                    Diagnostics::default(),
                ));
            }
            let all = counts.keys().map(|a| Point::Label(a.clone())).collect();
            Ok(AggregationResult::from_winners(
                all,
                Some(F::one()),
                spec,
                Diagnostics::default(),
            ))
        }
    }
}

/// Reduced L_p aggregation: plurality winners for every p including inf.
pub fn solve_plurality_reduced<F: Real>(
    election: &Election<F>,
    p: Exponent<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let counts = vote_counts(election)?;
    let n = election.n() as u64;
    let (winners, max) = plurality_winners(&counts);
    let objective = match p {
        Exponent::Finite(_) => real_u64(n - max),
        Exponent::Infinity => {
            if max == n {
                F::zero()
            } else {
                F::one()
            }
        }
    };
    Ok(AggregationResult::from_winners(
        winners,
        Some(objective),
        spec,
        Diagnostics::default(),
    ))
}

/// Condorcet winners: under strict comparison the unique plurality leader
/// (none when the lead is tied); under weak comparison the plurality set.
pub fn solve_plurality_condorcet<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let counts = vote_counts(election)?;
    let (winners, _) = plurality_winners::<F>(&counts);
    if spec.strict_condorcet && winners.len() > 1 {
        let mut diagnostics = Diagnostics::default();
        diagnostics
            .notes
            .push("plurality lead is tied; the tied leaders are weak winners only".into());
        return Ok(AggregationResult::no_winner(
            NoWinnerReason::OnlyWeakWinners,
            spec,
            diagnostics,
        ));
    }
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
    use crate::oracle::{brute_force_condorcet, brute_force_lp, brute_force_reduced_lp, enumerate_space};

    fn plurality(votes: &[&str], alts: &[&str]) -> Election<f64> {
        Election::new(
            Setting::Plurality,
            alts.iter().map(|s| s.to_string()).collect(),
            votes.iter().map(|v| Point::Label(v.to_string())).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn lp_is_plurality() {
        let e = plurality(&["a", "a", "b"], &["a", "b", "c"]);
        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_plurality_lp(&e, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(r.objective, Some(1.0));
    }

    #[test]
    fn linf_degenerates_unless_unanimous() {
        let spec = AggregationSpec::lp(Exponent::Infinity);
        let e = plurality(&["a", "a", "b"], &["a", "b", "c"]);
        let r = solve_plurality_lp(&e, Exponent::Infinity, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a", "b", "c"]);

        let e = plurality(&["a", "a"], &["a", "b"]);
        let r = solve_plurality_lp(&e, Exponent::Infinity, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(r.objective, Some(0.0));
    }

    #[test]
    fn reduced_linf_recovers_plurality() {
        let spec = AggregationSpec::<f64>::reduced(Exponent::Infinity);
        let e = plurality(&["a", "a", "b", "c"], &["a", "b", "c"]);
        let r = solve_plurality_reduced(&e, Exponent::Infinity, &spec).unwrap();
        assert_eq!(r.winner_keys(), ["a"]);
        // Agrees with the exact limit over the enumerated space.
        let space = enumerate_space(&e, None).unwrap();
        let oracle = brute_force_reduced_lp(&e, &space, Exponent::Infinity, &spec).unwrap();
        assert_eq!(r.winner_keys(), oracle.winner_keys());
    }

    #[test]
    fn condorcet_matches_oracle() {
        let spec = AggregationSpec::<f64>::condorcet();
        for votes in [
            vec!["a", "a", "b"],
            vec!["a", "b"],
            vec!["c", "c", "b", "b", "a"],
        ] {
            let e = plurality(&votes, &["a", "b", "c"]);
            let fast = solve_plurality_condorcet(&e, &spec).unwrap();
            let space = enumerate_space(&e, None).unwrap();
            let oracle = brute_force_condorcet(&e, &space, true, &spec).unwrap();
            assert_eq!(fast.winner_keys(), oracle.winner_keys());
        }
    }

    #[test]
    fn lp_matches_oracle_for_several_p() {
        let e = plurality(&["a", "b", "b", "c", "c"], &["a", "b", "c"]);
        let space = enumerate_space(&e, None).unwrap();
        for p in [1.0, 2.0, 3.5] {
            let spec = AggregationSpec::lp_finite(p);
            let fast = solve_plurality_lp(&e, Exponent::Finite(p), &spec).unwrap();
            let oracle = brute_force_lp(&e, &space, Exponent::Finite(p), &spec).unwrap();
            assert_eq!(fast.winner_keys(), oracle.winner_keys());
        }
    }
}
