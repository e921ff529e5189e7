//! Aggregation outcomes: winner sets, objectives, and solver diagnostics.

use crate::aggregation::AggregationSpec;
use crate::point::{sort_canonical, Point};
use crate::scalar::Real;
use crate::TieBreak;

/// Finite-space solvers return at most this many co-winners; beyond it the
/// truncation flag is set. Guards the 2^m blowup of committee ties.
pub const WINNER_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoWinnerReason {
    /// No point beats every other point in pairwise majority comparison.
    NoCondorcetWinner,
    /// Weak Condorcet winners exist but no strict one; the weak set is in
    /// the diagnostics.
    OnlyWeakWinners,
}

impl NoWinnerReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoWinnerReason::NoCondorcetWinner => "no-condorcet-winner",
            NoWinnerReason::OnlyWeakWinners => "only-weak-winners",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostics<F> {
    pub iterations: u64,
    pub converged: bool,
    pub truncated: bool,
    pub heuristic: bool,
    /// Endpoints of a continuous tie region (line median / weak intervals).
    pub interval: Option<(F, F)>,
    /// Falsifier trials performed.
    pub trials: Option<u64>,
    pub notes: Vec<String>,
}

impl<F> Default for Diagnostics<F> {
    fn default() -> Self {
        Diagnostics {
            iterations: 0,
            converged: true,
            truncated: false,
            heuristic: false,
            interval: None,
            trials: None,
            notes: Vec::new(),
        }
    }
}

/// The outcome of one aggregation run.
#[derive(Clone, Debug)]
pub struct AggregationResult<F> {
    /// Co-winners, canonically sorted and capped at [`WINNER_CAP`].
    /// Empty only for Condorcet methods when no winner exists.
    pub winners: Vec<Point<F>>,
    /// Deterministic representative: the least canonical key among the
    /// winners (the reduced point for continuous tie intervals).
    pub representative: Option<Point<F>>,
    /// Sum of p-powered distances (max distance for p = inf); absent for
    /// Condorcet.
    pub objective: Option<F>,
    /// Whether the winner is unique. `None` when unknown (falsifier runs).
    pub unique: Option<bool>,
    pub reason: Option<NoWinnerReason>,
    /// Counterexample produced by the Condorcet falsifier, if any.
    pub witness: Option<Point<F>>,
    pub method_echo: AggregationSpec<F>,
    pub diagnostics: Diagnostics<F>,
}

impl<F: Real> AggregationResult<F> {
    /// Builds a result from an unordered co-winner set.
    ///
    /// Sorts canonically, caps, applies the tie-break policy, and fills the
    /// uniqueness flag from the (pre-cap) winner count.
    pub fn from_winners(
        mut winners: Vec<Point<F>>,
        objective: Option<F>,
        spec: &AggregationSpec<F>,
        mut diagnostics: Diagnostics<F>,
    ) -> Self {
        sort_canonical(&mut winners);
        if winners.len() > WINNER_CAP {
            winners.truncate(WINNER_CAP);
            diagnostics.truncated = true;
        }
        let representative = winners.first().cloned();
        let unique = Some(winners.len() == 1 && !diagnostics.truncated);
        if spec.tie_break == TieBreak::Lexicographic && winners.len() > 1 {
            winners = representative.iter().cloned().collect();
        }
        AggregationResult {
            winners,
            representative,
            objective,
            unique,
            reason: None,
            witness: None,
            method_echo: spec.clone(),
            diagnostics,
        }
    }

    /// A result representing "no winner exists" (Condorcet only).
    pub fn no_winner(
        reason: NoWinnerReason,
        spec: &AggregationSpec<F>,
        diagnostics: Diagnostics<F>,
    ) -> Self {
        AggregationResult {
            winners: Vec::new(),
            representative: None,
            objective: None,
            unique: None,
            reason: Some(reason),
            witness: None,
            method_echo: spec.clone(),
            diagnostics,
        }
    }

    /// Canonical encodings of the winner set, sorted.
    pub fn winner_keys(&self) -> Vec<String> {
        self.winners.iter().map(Point::canonical_encode).collect()
    }

    pub fn contains(&self, point: &Point<F>) -> bool {
        let key = point.canonical_encode();
        self.winners.iter().any(|w| w.canonical_encode() == key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::{AggregationSpec, Exponent, Method};

    #[test]
    fn winners_sorted_and_lex_tie_break() {
        let mut spec: AggregationSpec<f64> =
            AggregationSpec::new(Method::Lp, Exponent::Finite(1.0));
        let winners = vec![Point::Label("b".into()), Point::Label("a".into())];
        let r = AggregationResult::from_winners(
            winners.clone(),
            Some(1.0),
            &spec,
            Diagnostics::default(),
        );
        assert_eq!(r.winner_keys(), ["a", "b"]);
        assert_eq!(r.unique, Some(false));

        spec.tie_break = TieBreak::Lexicographic;
        let r = AggregationResult::from_winners(winners, Some(1.0), &spec, Diagnostics::default());
        assert_eq!(r.winner_keys(), ["a"]);
        assert_eq!(
            r.representative.as_ref().map(|p| p.canonical_encode()),
            Some("a".to_string())
        );
    }
}
