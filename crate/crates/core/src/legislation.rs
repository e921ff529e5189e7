//! Participatory legislation: aggregating sentence-sequence documents under
//! the weighted edit metric (unit inserts/deletes, adjacent swaps at 1/l^2).
//!
//! Because a swap is always cheaper than a delete+insert, the aggregation
//! decomposes into two phases: first elect the set of sentences (a
//! variable-size committee election over the sentence pool), then order the
//! elected sentences (a social welfare election over the projected voter
//! orders). A voter silent on a sentence pair contributes to neither
//! direction of that pair's count. Whether the two-phase optimum always
//! equals the global document-space optimum is measured against the oracle
//! on tiny pools, not assumed.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::aggregation::{AggregationSpec, Exponent, Method, TieBreak};
use crate::committee::{
    solve_closest_subset, solve_committee_lp, solve_committee_reduced, solve_median_element,
};
use crate::election::{Election, Setting};
use crate::error::{Error, Result};
use crate::finite::{lp_winner_indices, reduced_winner_indices};
use crate::metrics::document_distance;
use crate::point::Point;
use crate::ranking::{kemeny_dp, local_search_weighted, EXHAUSTIVE_MAX_Z, KEMENY_MAX_Z};
use crate::result::{AggregationResult, Diagnostics, WINNER_CAP};
use crate::scalar::{real_u64, Real};

/// Both phase views of a legislation election.
#[derive(Clone, Debug)]
pub struct LegislationPlan<F> {
    pool: Vec<String>,
    ell: usize,
    phase1: Election<F>,
    docs: Vec<Vec<String>>,
}

/// Phase-2 election over one elected sentence set: per-voter projected
/// orders and the pairwise counts they induce.
#[derive(Clone, Debug)]
pub struct Phase2View {
    pub elected: Vec<String>,
    /// Per voter: indices into `elected`, in the voter's document order;
    /// holds only the elected sentences the voter's document contains.
    pub projections: Vec<Vec<u8>>,
    /// `weights[a][b]` = number of voters whose document contains both and
    /// places `a` before `b`.
    pub weights: Vec<Vec<u64>>,
}

impl<F: Real> LegislationPlan<F> {
    pub fn pool(&self) -> &[String] {
        &self.pool
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The committee view of phase 1: each voter's sentence set.
    pub fn phase1(&self) -> &Election<F> {
        &self.phase1
    }

    /// The ranking view of phase 2 for a given elected set.
    pub fn phase2(&self, elected: &BTreeSet<String>) -> Phase2View {
        let elected: Vec<String> = elected.iter().cloned().collect();
        let index_of = |s: &str| elected.iter().position(|e| e == s).map(|i| i as u8);
        let z = elected.len();
        let mut projections = Vec::with_capacity(self.docs.len());
        let mut weights = vec![vec![0u64; z]; z];
        for doc in &self.docs {
            let proj: Vec<u8> = doc.iter().filter_map(|s| index_of(s)).collect();
            for i in 0..proj.len() {
                for j in i + 1..proj.len() {
                    weights[proj[i] as usize][proj[j] as usize] += 1;
                }
            }
            projections.push(proj);
        }
        Phase2View {
            elected,
            projections,
            weights,
        }
    }
}

/// Builds both phase views of a legislation election.
pub fn plan_legislation<F: Real>(election: &Election<F>) -> Result<LegislationPlan<F>> {
    if election.setting() != Setting::Legislation {
        return Err(Error::Unsupported(
            "legislation pipeline on a non-legislation election".into(),
        ));
    }
    let pool: Vec<String> = election.alternatives().to_vec();
    let mut docs = Vec::with_capacity(election.n());
    let mut sets: Vec<Point<F>> = Vec::with_capacity(election.n());
    for p in election.voters() {
        match p {
            Point::Document(sentences) => {
                sets.push(Point::Subset(sentences.iter().cloned().collect()));
                docs.push(sentences.clone());
            }
            other => {
                return Err(Error::VariantMismatch {
                    index: 0,
                    expected: "document",
                    got: other.variant_name(),
                })
            }
        }
    }
    let phase1 = Election::new(Setting::Committee, pool.clone(), sets, None)?;
    Ok(LegislationPlan {
        pool,
        ell: election.ell().unwrap_or(1),
        phase1,
        docs,
    })
}

/// Two-phase L_p (or reduced L_p) aggregation of documents.
pub fn solve_legislation<F: Real>(
    election: &Election<F>,
    spec: &AggregationSpec<F>,
) -> Result<AggregationResult<F>> {
    let plan = plan_legislation(election)?;
    let mut inner = spec.clone();
    inner.tie_break = TieBreak::ReportAll;

    let phase1_result = match (spec.method, spec.p) {
        (Method::ReducedLp, p) => solve_committee_reduced(&plan.phase1, p, &inner)?,
        (_, Exponent::Infinity) => solve_closest_subset(&plan.phase1, &inner)?,
        (_, Exponent::Finite(pv)) if (pv - F::one()).abs() <= F::epsilon() => {
            solve_median_element(&plan.phase1, &inner)?
        }
        (_, p) => solve_committee_lp(&plan.phase1, p, &inner)?,
    };

    let mut diagnostics = Diagnostics::default();
    diagnostics.truncated = phase1_result.diagnostics.truncated;
    let mut winners: Vec<Point<F>> = Vec::new();
    let mut heuristic = false;

    for set_point in &phase1_result.winners {
        let Point::Subset(elected) = set_point else {
            continue;
        };
        let view = plan.phase2(elected);
        let (orders, used_heuristic, truncated) = phase2_orders(&view, spec, &mut diagnostics)?;
        heuristic |= used_heuristic;
        diagnostics.truncated |= truncated;
        for order in orders {
            if winners.len() > WINNER_CAP {
                diagnostics.truncated = true;
                break;
            }
            winners.push(Point::Document(
                order.iter().map(|&i| view.elected[i as usize].clone()).collect(),
            ));
        }
    }
    diagnostics.heuristic = heuristic;

    // The deterministic representative: the canonical phase-1 set (for L_1,
    // the median element) ordered by its phase-2 representative.
    let representative = match &phase1_result.representative {
        Some(Point::Subset(elected)) => {
            let view = plan.phase2(elected);
            let (orders, _, _) = phase2_orders(&view, spec, &mut diagnostics)?;
            let mut docs: Vec<Point<F>> = orders
                .iter()
                .map(|order| {
                    Point::Document(
                        order.iter().map(|&i| view.elected[i as usize].clone()).collect(),
                    )
                })
                .collect();
            crate::point::sort_canonical(&mut docs);
            docs.into_iter().next()
        }
        _ => None,
    };

    // End-to-end objective of the representative under the document metric;
    // l is widened when the output outgrows every proposal, so the reported
    // distances stay a metric.
    let objective = match &representative {
        Some(Point::Document(doc)) => {
            let ell_report = plan.ell.max(doc.len());
            if ell_report > plan.ell {
                diagnostics.notes.push(format!(
                    "output has {} sentences, longer than every proposal; distances reported \
                     with l = {ell_report}",
                    doc.len()
                ));
            }
            let mut total = F::zero();
            let pe = match spec.p {
                Exponent::Finite(pv) => Some(crate::finite::PowExp::from_p(pv)),
                Exponent::Infinity => None,
            };
            for voter_doc in &plan.docs {
                let d: F = document_distance(voter_doc, doc, ell_report)?;
                total = match &pe {
                    Some(pe) => total + pe.apply(d),
                    None => total.max(d),
                };
            }
            Some(total)
        }
        _ => None,
    };

    let mut result = AggregationResult::from_winners(winners, objective, spec, diagnostics);
    if representative.is_some() {
        result.representative = representative;
        if spec.tie_break == TieBreak::Lexicographic {
            result.winners = result.representative.iter().cloned().collect();
        }
    }
    Ok(result)
}

/// Optimal phase-2 orders for one elected set.
fn phase2_orders<F: Real>(
    view: &Phase2View,
    spec: &AggregationSpec<F>,
    diagnostics: &mut Diagnostics<F>,
) -> Result<(Vec<Vec<u8>>, bool, bool)> {
    let z = view.elected.len();
    if z <= 1 {
        return Ok((vec![(0..z as u8).collect()], false, false));
    }

    let is_p1 = matches!(spec.p, Exponent::Finite(pv) if (pv - F::one()).abs() <= F::epsilon());
    let exact_possible = match (spec.method, is_p1) {
        (Method::Lp, true) => z <= KEMENY_MAX_Z,
        _ => z <= EXHAUSTIVE_MAX_Z,
    };

    if !exact_possible {
        // Heuristic fallback: hill climbing on the pairwise weights (the L_1
        // surrogate for other exponents).
        let mut starts: Vec<Vec<u8>> = Vec::new();
        starts.push((0..z as u8).collect());
        for proj in &view.projections {
            let mut order: Vec<u8> = proj.clone();
            for e in 0..z as u8 {
                if !order.contains(&e) {
                    order.push(e);
                }
            }
            starts.push(order);
        }
        let (order, _, iters) = local_search_weighted(&view.weights, starts);
        diagnostics.iterations += iters;
        if !is_p1 || spec.method == Method::ReducedLp {
            diagnostics.notes.push(
                "phase 2 beyond the exact guard: hill climbing optimizes the pairwise \
                 disagreement count"
                    .into(),
            );
        }
        return Ok((vec![order], true, false));
    }

    if spec.method == Method::Lp && is_p1 {
        let (_, orders, truncated) = kemeny_dp(&view.weights)?;
        return Ok((orders, false, truncated));
    }

    // Exhaustive enumeration with per-voter projected distances.
    let perms: Vec<Vec<u8>> = (0..z as u8).permutations(z).collect();
    let dists: Vec<Vec<u64>> = perms
        .iter()
        .map(|perm| {
            view.projections
                .iter()
                .map(|proj| projected_disagreements(perm, proj))
                .collect()
        })
        .collect();
    let idx = match spec.method {
        Method::ReducedLp => reduced_winner_indices(
            perms.len(),
            view.projections.len(),
            &spec.p,
            spec.reduced_epsilon,
            spec.closed_tol(),
            &|c, v| real_u64::<F>(dists[c][v]),
        ),
        _ => {
            lp_winner_indices(
                perms.len(),
                view.projections.len(),
                &spec.p,
                spec.closed_tol(),
                &|c, v| real_u64::<F>(dists[c][v]),
            )
            .0
        }
    };
    Ok((idx.into_iter().map(|i| perms[i].clone()).collect(), false, false))
}

/// Number of sentence pairs in the voter's projection that `order` places
/// the other way around.
fn projected_disagreements(order: &[u8], projection: &[u8]) -> u64 {
    let mut pos = vec![0u8; order.len()];
    for (i, &e) in order.iter().enumerate() {
        pos[e as usize] = i as u8;
    }
    let mut count = 0;
    for i in 0..projection.len() {
        for j in i + 1..projection.len() {
            if pos[projection[i] as usize] > pos[projection[j] as usize] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_lp, enumerate_space};

    fn legislation(votes: &[&[&str]]) -> Election<f64> {
        let draft = crate::election::ElectionDraft {
            setting: "legislation".to_string(),
            alternatives: None,
            k: None,
            voters: votes
                .iter()
                .map(|v| {
                    crate::election::DraftBallot::Document(
                        v.iter().map(|s| s.to_string()).collect(),
                    )
                })
                .collect(),
        };
        crate::election::validate_election(&draft).unwrap()
    }

    #[test]
    fn plan_builds_both_phases() {
        let e = legislation(&[&["s1", "s2"], &["s2", "s1"]]);
        let plan = plan_legislation(&e).unwrap();
        assert_eq!(plan.pool(), ["s1", "s2"]);
        assert_eq!(plan.ell(), 2);
        let elected: BTreeSet<String> = ["s1", "s2"].iter().map(|s| s.to_string()).collect();
        let p2 = plan.phase2(&elected);
        assert_eq!(p2.weights[0][1], 1);
        assert_eq!(p2.weights[1][0], 1);
    }

    #[test]
    fn plan_projects_missing_sentences_to_empty() {
        let e = legislation(&[&["s1", "s3"], &["s2"]]);
        let plan = plan_legislation(&e).unwrap();
        let elected: BTreeSet<String> = ["s1", "s3"].iter().map(|s| s.to_string()).collect();
        let p2 = plan.phase2(&elected);
        assert_eq!(p2.projections[0], vec![0, 1]);
        assert!(p2.projections[1].is_empty());
    }

    #[test]
    fn pipeline_example_matches_oracle() {
        let e = legislation(&[&["s1", "s2"], &["s1", "s2"], &["s2", "s1"]]);
        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_legislation(&e, &spec).unwrap();
        assert_eq!(
            r.representative.as_ref().unwrap().canonical_encode(),
            Point::<f64>::document_from(["s1", "s2"]).canonical_encode()
        );
        assert!((r.objective.unwrap() - 0.25).abs() < 1e-12);

        let space = enumerate_space(&e, None).unwrap();
        let oracle = brute_force_lp(&e, &space, Exponent::Finite(1.0), &spec).unwrap();
        assert_eq!(oracle.winner_keys(), r.winner_keys());
    }

    #[test]
    fn unanimous_documents_return_the_document() {
        for p in [1.0, 2.0] {
            let doc: &[&str] = &["s2", "s1", "s3"];
            let e = legislation(&[doc, doc, doc]);
            let spec = AggregationSpec::lp_finite(p);
            let r = solve_legislation(&e, &spec).unwrap();
            assert_eq!(r.winner_keys().len(), 1);
            assert_eq!(
                r.representative.as_ref().unwrap().canonical_encode(),
                Point::<f64>::document_from(["s2", "s1", "s3"]).canonical_encode()
            );
            assert_eq!(r.objective, Some(0.0));
        }
    }

    #[test]
    fn minority_sentence_dropped() {
        let e = legislation(&[&["s1"], &["s1"], &["s2"]]);
        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_legislation(&e, &spec).unwrap();
        assert_eq!(
            r.representative.as_ref().unwrap().canonical_encode(),
            "s1"
        );
    }

    #[test]
    fn output_never_duplicates_sentences() {
        let e = legislation(&[
            &["s1", "s2", "s3"],
            &["s3", "s2"],
            &["s2", "s1"],
            &["s1", "s3"],
        ]);
        for p in [1.0, 2.0] {
            let spec = AggregationSpec::lp_finite(p);
            let r = solve_legislation(&e, &spec).unwrap();
            for w in &r.winners {
                let Point::Document(doc) = w else { panic!() };
                let set: BTreeSet<&String> = doc.iter().collect();
                assert_eq!(set.len(), doc.len());
            }
        }
    }

    #[test]
    fn ell_extension_is_flagged() {
        // Both proposals have one sentence; the median element elects both
        // sentences, so the output is longer than any proposal.
        let e = legislation(&[&["s1"], &["s2"]]);
        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_legislation(&e, &spec).unwrap();
        let Point::Document(doc) = r.representative.as_ref().unwrap() else {
            panic!()
        };
        assert_eq!(doc.len(), 2);
        assert!(r
            .diagnostics
            .notes
            .iter()
            .any(|n| n.contains("longer than every proposal")));
    }

    #[test]
    fn all_voters_complete_yields_kemeny_order_of_pool() {
        let e = legislation(&[
            &["s1", "s2", "s3"],
            &["s1", "s3", "s2"],
            &["s1", "s2", "s3"],
        ]);
        let spec = AggregationSpec::lp_finite(1.0);
        let r = solve_legislation(&e, &spec).unwrap();
        assert_eq!(
            r.representative.as_ref().unwrap().canonical_encode(),
            Point::<f64>::document_from(["s1", "s2", "s3"]).canonical_encode()
        );
    }
}
