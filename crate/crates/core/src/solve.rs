//! Single entry point dispatching an election and an aggregation spec to
//! the setting's solver.

use crate::aggregation::{AggregationSpec, Exponent, Method};
use crate::committee::{
    solve_closest_subset, solve_committee_condorcet, solve_committee_lp,
    solve_committee_reduced, solve_median_element, solve_topk_approval,
};
use crate::election::{Election, Setting};
use crate::error::Result;
use crate::legislation::solve_legislation;
use crate::line::{reduce_line_lp, solve_line_condorcet, solve_line_lp, LineView};
use crate::oracle::{brute_force_condorcet, enumerate_space};
use crate::plurality::{
    solve_plurality_condorcet, solve_plurality_lp, solve_plurality_reduced,
};
use crate::point::Point;
use crate::ranking::{
    solve_center_permutation, solve_kemeny, solve_ranking_condorcet, solve_ranking_lp,
    solve_ranking_reduced,
};
use crate::result::AggregationResult;
use crate::scalar::Real;
use crate::simplex::{falsify_condorcet_simplex, solve_simplex_lp, SimplexInstance};

/// Aggregates an election under the given method, exponent, and knobs.
///
/// Condorcet over the budget simplex has no exact decision procedure here:
/// the dispatcher aggregates at reduced L_1 (the geometric median) and runs
/// the one-sided randomized falsifier against that candidate, which can
/// disprove but never certify a Condorcet winner; the result is labeled
/// accordingly.
pub fn aggregate<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    spec.validate()?;
    match (election.setting(), spec.method) {
        (Setting::Plurality, Method::Condorcet) => solve_plurality_condorcet(election, spec),
        (Setting::Plurality, Method::Lp) => solve_plurality_lp(election, spec.p, spec),
        (Setting::Plurality, Method::ReducedLp) => {
            solve_plurality_reduced(election, spec.p, spec)
        }

        (Setting::Line, method) => {
            let view = LineView::from_election(election)?;
            match method {
                Method::Condorcet => solve_line_condorcet(&view, spec),
                Method::Lp => solve_line_lp(&view, spec.p, spec),
                Method::ReducedLp => reduce_line_lp(&view, spec.p, spec),
            }
        }

        (Setting::Budget, Method::Condorcet) => {
            let instance = SimplexInstance::from_election(election)?;
            let mut median_spec = spec.clone();
            median_spec.method = Method::ReducedLp;
            median_spec.p = Exponent::Finite(F::one());
            let median = solve_simplex_lp(&instance, median_spec.p, &median_spec)?;
            let candidate = match median.representative {
                Some(Point::Simplex(x)) => x,
                _ => unreachable!("simplex solver always returns a representative"),
            };
            falsify_condorcet_simplex(&instance, &candidate, spec)
        }
        (Setting::Budget, Method::Lp | Method::ReducedLp) => {
            let instance = SimplexInstance::from_election(election)?;
            solve_simplex_lp(&instance, spec.p, spec)
        }

        (Setting::Ranking, Method::Condorcet) => solve_ranking_condorcet(election, spec),
        (Setting::Ranking, Method::Lp) => match spec.p {
            Exponent::Finite(p) if (p - F::one()).abs() <= F::epsilon() => {
                solve_kemeny(election, spec)
            }
            Exponent::Infinity => solve_center_permutation(election, spec),
            p => solve_ranking_lp(election, p, spec),
        },
        (Setting::Ranking, Method::ReducedLp) => solve_ranking_reduced(election, spec.p, spec),

        (Setting::Committee | Setting::CommitteeFixedK, Method::Condorcet) => {
            solve_committee_condorcet(election, spec)
        }
        (Setting::Committee, Method::Lp) => match spec.p {
            Exponent::Finite(p) if (p - F::one()).abs() <= F::epsilon() => {
                solve_median_element(election, spec)
            }
            Exponent::Infinity => solve_closest_subset(election, spec),
            p => solve_committee_lp(election, p, spec),
        },
        (Setting::CommitteeFixedK, Method::Lp) => match spec.p {
            Exponent::Finite(p) if (p - F::one()).abs() <= F::epsilon() => {
                solve_topk_approval(election, spec)
            }
            Exponent::Infinity => solve_closest_subset(election, spec),
            p => solve_committee_lp(election, p, spec),
        },
        (Setting::Committee | Setting::CommitteeFixedK, Method::ReducedLp) => {
            solve_committee_reduced(election, spec.p, spec)
        }

        (Setting::Legislation, Method::Condorcet) => {
            let space = enumerate_space(election, None)?;
            brute_force_condorcet(election, &space, spec.strict_condorcet, spec)
        }
        (Setting::Legislation, Method::Lp | Method::ReducedLp) => {
            solve_legislation(election, spec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::result::NoWinnerReason;

    #[test]
    fn dispatch_covers_every_setting() {
        let spec = AggregationSpec::lp_finite(1.0);

        let e = Election::<f64>::new(
            Setting::Plurality,
            vec!["a".into(), "b".into()],
            vec![Point::Label("a".into()), Point::Label("a".into())],
            None,
        )
        .unwrap();
        assert_eq!(aggregate(&e, &spec).unwrap().winner_keys(), ["a"]);

        let e = Election::<f64>::new(
            Setting::Line,
            vec![],
            vec![Point::Real(0.0), Point::Real(0.0), Point::Real(1.0)],
            None,
        )
        .unwrap();
        assert_eq!(
            aggregate(&e, &spec).unwrap().winner_keys(),
            ["0.000000000000"]
        );

        let e = Election::<f64>::new(
            Setting::Budget,
            vec!["a".into(), "b".into()],
            vec![Point::Simplex(vec![0.5, 0.5]); 2],
            None,
        )
        .unwrap();
        assert!(aggregate(&e, &spec).is_ok());

        let e = Election::<f64>::new(
            Setting::Ranking,
            vec!["a".into(), "b".into()],
            vec![Point::permutation_from(["a", "b"])],
            None,
        )
        .unwrap();
        assert_eq!(aggregate(&e, &spec).unwrap().winner_keys(), ["a>b"]);

        let e = Election::<f64>::new(
            Setting::Committee,
            vec!["a".into(), "b".into()],
            vec![Point::subset_from(["a"])],
            None,
        )
        .unwrap();
        assert_eq!(aggregate(&e, &spec).unwrap().winner_keys(), ["a"]);

        let e = Election::<f64>::new(
            Setting::CommitteeFixedK,
            vec!["a".into(), "b".into()],
            vec![Point::subset_from(["a"])],
            Some(1),
        )
        .unwrap();
        assert_eq!(aggregate(&e, &spec).unwrap().winner_keys(), ["a"]);

        let draft = crate::election::ElectionDraft::<f64> {
            setting: "legislation".into(),
            alternatives: None,
            k: None,
            voters: vec![crate::election::DraftBallot::Document(vec![
                "s1".into(),
                "s2".into(),
            ])],
        };
        let e = crate::election::validate_election(&draft).unwrap();
        assert_eq!(aggregate(&e, &spec).unwrap().winners.len(), 1);
    }

    #[test]
    fn budget_condorcet_runs_falsifier() {
        let mut spec = AggregationSpec::<f64>::condorcet();
        spec.falsifier_trials = 500;
        let e = Election::<f64>::new(
            Setting::Budget,
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Point::Simplex(vec![0.8, 0.1, 0.1]),
                Point::Simplex(vec![0.1, 0.8, 0.1]),
                Point::Simplex(vec![0.2, 0.2, 0.6]),
            ],
            None,
        )
        .unwrap();
        let r = aggregate(&e, &spec).unwrap();
        // Either a witness was found or the candidate survived; both carry
        // the one-sided label.
        assert!(r.diagnostics.trials.is_some());
        assert!(r
            .diagnostics
            .notes
            .iter()
            .any(|n| n.contains("one-sided")));
        if r.winners.is_empty() {
            assert_eq!(r.reason, Some(NoWinnerReason::NoCondorcetWinner));
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn legislation_condorcet_uses_document_space() {
        let draft = crate::election::ElectionDraft::<f64> {
            setting: "legislation".into(),
            alternatives: None,
            k: None,
            voters: vec![
                crate::election::DraftBallot::Document(vec!["s1".into(), "s2".into()]),
                crate::election::DraftBallot::Document(vec!["s1".into(), "s2".into()]),
                crate::election::DraftBallot::Document(vec!["s1".into()]),
            ],
        };
        let e = crate::election::validate_election(&draft).unwrap();
        let spec = AggregationSpec::<f64>::condorcet();
        let r = aggregate(&e, &spec).unwrap();
        assert_eq!(
            r.winner_keys(),
            [Point::<f64>::document_from(["s1", "s2"]).canonical_encode()]
        );
    }
}
