//! Elections: a setting, an alternative universe, and voter ideal points.
//!
//! [`validate_election`] is the single ingestion point. It normalizes raw
//! ballots (budget proposals zero-filled to the union of proposed
//! alternatives, simplex weights re-normalized, documents deduplicated) and
//! checks every setting-specific invariant, so that downstream solvers can
//! assume well-formed data.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::metrics::MetricDescriptor;
use crate::point::{Point, DOCUMENT_SEPARATOR};
use crate::scalar::{real, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    Plurality,
    Line,
    Budget,
    Ranking,
    Committee,
    CommitteeFixedK,
    Legislation,
}

impl Setting {
    pub fn as_str(&self) -> &'static str {
        match self {
            Setting::Plurality => "plurality",
            Setting::Line => "line",
            Setting::Budget => "budget",
            Setting::Ranking => "ranking",
            Setting::Committee => "committee",
            Setting::CommitteeFixedK => "committee_fixed_k",
            Setting::Legislation => "legislation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "plurality" => Setting::Plurality,
            "line" => Setting::Line,
            "budget" => Setting::Budget,
            "ranking" => Setting::Ranking,
            "committee" => Setting::Committee,
            "committee_fixed_k" => Setting::CommitteeFixedK,
            "legislation" => Setting::Legislation,
            other => return Err(Error::UnknownSetting(other.to_string())),
        })
    }

    fn expected_variant(&self) -> &'static str {
        match self {
            Setting::Plurality => "label",
            Setting::Line => "real",
            Setting::Budget => "simplex",
            Setting::Ranking => "permutation",
            Setting::Committee | Setting::CommitteeFixedK => "subset",
            Setting::Legislation => "document",
        }
    }
}

/// A raw ballot as parsed from an external format, before validation.
///
/// Budget proposals carry their own alternative set `A_i` with weights; the
/// union over voters forms the election's universe and each proposal is
/// zero-filled to it.
#[derive(Clone, Debug)]
pub enum DraftBallot<F> {
    Label(String),
    Real(F),
    Budget(Vec<(String, F)>),
    Ranking(Vec<String>),
    Subset(Vec<String>),
    Document(Vec<String>),
}

/// A parsed-but-unvalidated election.
#[derive(Clone, Debug, Default)]
pub struct ElectionDraft<F> {
    pub setting: String,
    pub alternatives: Option<Vec<String>>,
    pub k: Option<usize>,
    pub voters: Vec<DraftBallot<F>>,
}

/// A validated, normalized election.
#[derive(Clone, Debug, PartialEq)]
pub struct Election<F> {
    setting: Setting,
    alternatives: Vec<String>,
    voters: Vec<Point<F>>,
    k: Option<usize>,
    ell: Option<usize>,
}

impl<F: Real> Election<F> {
    pub fn setting(&self) -> Setting {
        self.setting
    }

    /// The alternative universe, lexicographically sorted. For legislation
    /// this is the sentence pool; empty for line elections.
    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn voters(&self) -> &[Point<F>] {
        &self.voters
    }

    /// Number of alternatives m.
    pub fn m(&self) -> usize {
        self.alternatives.len()
    }

    /// Number of voters n.
    pub fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Longest voter document (legislation only), clamped to at least 1.
    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn metric(&self) -> MetricDescriptor {
        MetricDescriptor {
            setting: self.setting,
            ell: self.ell,
        }
    }

    /// Replaces one voter's ideal point and re-validates.
    ///
    /// Used by the monotonicity harness; the replacement must already be a
    /// valid point of this election's space. For budget elections the new
    /// point must use this election's coordinate order.
    pub fn with_voter(&self, index: usize, point: Point<F>) -> Result<Election<F>> {
        let mut voters = self.voters.clone();
        voters[index] = point;
        build_election(self.setting, self.alternatives.clone(), voters, self.k)
    }

    /// Builds an election directly from validated-shape parts.
    ///
    /// Runs the same checks as [`validate_election`]; library callers that
    /// already hold `Point`s use this instead of going through a draft.
    pub fn new(
        setting: Setting,
        alternatives: Vec<String>,
        voters: Vec<Point<F>>,
        k: Option<usize>,
    ) -> Result<Election<F>> {
        let mut alternatives = alternatives;
        alternatives.sort();
        for w in alternatives.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateAlternative(w[0].clone()));
            }
        }
        build_election(setting, alternatives, voters, k)
    }
}

/// Validates and normalizes a raw election.
pub fn validate_election<F: Real>(draft: &ElectionDraft<F>) -> Result<Election<F>> {
    let setting = Setting::parse(&draft.setting)?;
    if draft.voters.is_empty() {
        return Err(Error::EmptyElection);
    }

    // Assemble the universe.
    let mut universe: BTreeSet<String> = match &draft.alternatives {
        Some(list) => {
            let set: BTreeSet<String> = list.iter().cloned().collect();
            if set.len() != list.len() {
                let dup = list
                    .iter()
                    .find(|a| list.iter().filter(|b| b == a).count() > 1)
                    .unwrap();
                return Err(Error::DuplicateAlternative(dup.clone()));
            }
            set
        }
        None => BTreeSet::new(),
    };
    match setting {
        Setting::Budget => {
            for ballot in &draft.voters {
                if let DraftBallot::Budget(entries) = ballot {
                    universe.extend(entries.iter().map(|(a, _)| a.clone()));
                }
            }
        }
        Setting::Legislation => {
            for ballot in &draft.voters {
                if let DraftBallot::Document(sentences) = ballot {
                    universe.extend(sentences.iter().cloned());
                }
            }
        }
        _ => {}
    }
    let alternatives: Vec<String> = universe.into_iter().collect();

    // Convert ballots to points; budget zero-fill happens here.
    let mut voters = Vec::with_capacity(draft.voters.len());
    for (index, ballot) in draft.voters.iter().enumerate() {
        let point = match (setting, ballot) {
            (Setting::Plurality, DraftBallot::Label(id)) => Point::Label(id.clone()),
            (Setting::Line, DraftBallot::Real(v)) => Point::Real(*v),
            (Setting::Budget, DraftBallot::Budget(entries)) => {
                let mut weights = vec![F::zero(); alternatives.len()];
                for (id, w) in entries {
                    let pos = alternatives
                        .binary_search(id)
                        .map_err(|_| Error::UnknownAlternative {
                            index,
                            id: id.clone(),
                        })?;
                    weights[pos] = weights[pos] + *w;
                }
                Point::Simplex(weights)
            }
            (Setting::Ranking, DraftBallot::Ranking(order)) => {
                Point::Permutation(order.clone())
            }
            (Setting::Committee | Setting::CommitteeFixedK, DraftBallot::Subset(members)) => {
                Point::Subset(members.iter().cloned().collect())
            }
            (Setting::Legislation, DraftBallot::Document(sentences)) => {
                Point::Document(sentences.clone())
            }
            (_, other) => {
                return Err(Error::VariantMismatch {
                    index,
                    expected: setting.expected_variant(),
                    got: match other {
                        DraftBallot::Label(_) => "label",
                        DraftBallot::Real(_) => "real",
                        DraftBallot::Budget(_) => "budget proposal",
                        DraftBallot::Ranking(_) => "ranking",
                        DraftBallot::Subset(_) => "subset",
                        DraftBallot::Document(_) => "document",
                    },
                })
            }
        };
        voters.push(point);
    }

    build_election(setting, alternatives, voters, draft.k)
}

fn build_election<F: Real>(
    setting: Setting,
    alternatives: Vec<String>,
    mut voters: Vec<Point<F>>,
    k: Option<usize>,
) -> Result<Election<F>> {
    if voters.is_empty() {
        return Err(Error::EmptyElection);
    }
    if matches!(
        setting,
        Setting::Plurality
            | Setting::Budget
            | Setting::Ranking
            | Setting::Committee
            | Setting::CommitteeFixedK
    ) && alternatives.is_empty()
    {
        return Err(Error::EmptyUniverse);
    }

    let k = match setting {
        Setting::CommitteeFixedK => {
            let k = k.ok_or(Error::MissingK)?;
            if k == 0 {
                return Err(Error::KZero);
            }
            if k > alternatives.len() {
                return Err(Error::KTooLarge {
                    k,
                    m: alternatives.len(),
                });
            }
            Some(k)
        }
        _ => None,
    };

    let universe: BTreeSet<&str> = alternatives.iter().map(String::as_str).collect();
    let mut ell = None;

    for (index, point) in voters.iter_mut().enumerate() {
        match (setting, &mut *point) {
            (Setting::Plurality, Point::Label(id)) => {
                if !universe.contains(id.as_str()) {
                    return Err(Error::UnknownAlternative {
                        index,
                        id: id.clone(),
                    });
                }
            }
            (Setting::Line, Point::Real(_)) => {}
            (Setting::Budget, Point::Simplex(weights)) => {
                if weights.len() != alternatives.len() {
                    return Err(Error::DimensionMismatch {
                        left: weights.len(),
                        right: alternatives.len(),
                    });
                }
                normalize_simplex(index, weights)?;
            }
            (Setting::Ranking, Point::Permutation(order)) => {
                let seen: BTreeSet<&str> = order.iter().map(String::as_str).collect();
                if order.len() != alternatives.len() || seen != universe {
                    return Err(Error::NotABijection { index });
                }
            }
            (Setting::Committee | Setting::CommitteeFixedK, Point::Subset(members)) => {
                for id in members.iter() {
                    if !universe.contains(id.as_str()) {
                        return Err(Error::UnknownAlternative {
                            index,
                            id: id.clone(),
                        });
                    }
                }
            }
            (Setting::Legislation, Point::Document(sentences)) => {
                if sentences.iter().any(|s| s.contains(DOCUMENT_SEPARATOR)) {
                    return Err(Error::ReservedSeparator);
                }
                // Dedupe, keeping the first occurrence of each sentence.
                let mut seen = BTreeSet::new();
                sentences.retain(|s| seen.insert(s.clone()));
                for s in sentences.iter() {
                    if !universe.contains(s.as_str()) {
                        return Err(Error::UnknownAlternative {
                            index,
                            id: s.clone(),
                        });
                    }
                }
            }
            (_, other) => {
                return Err(Error::VariantMismatch {
                    index,
                    expected: setting.expected_variant(),
                    got: other.variant_name(),
                });
            }
        }
    }

    if setting == Setting::Legislation {
        let longest = voters
            .iter()
            .map(|p| match p {
                Point::Document(s) => s.len(),
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        ell = Some(longest.max(1));
    }

    Ok(Election {
        setting,
        alternatives,
        voters,
        k,
        ell,
    })
}

fn normalize_simplex<F: Real>(index: usize, weights: &mut [F]) -> Result<()> {
    let mut sum = F::zero();
    for w in weights.iter() {
        if *w < F::zero() {
            return Err(Error::NegativeWeight {
                index,
                weight: w.to_f64().unwrap_or(f64::NAN),
            });
        }
        sum = sum + *w;
    }
    if (sum - F::one()).abs() > real(1e-6) {
        return Err(Error::WeightSumOff {
            index,
            sum: sum.to_f64().unwrap_or(f64::NAN),
        });
    }
    for w in weights.iter_mut() {
        *w = *w / sum;
    }
    Ok(())
}
