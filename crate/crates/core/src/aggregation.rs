//! Aggregation method descriptors: which rule to run and with what knobs.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Aggregation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Pairwise voter-majority winner (strict or weak per the spec flag).
    Condorcet,
    /// Minimize the sum of p-th powers of distances (max distance for p = inf).
    Lp,
    /// The limit of L_q winner sets as q approaches p; refines ties.
    ReducedLp,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Condorcet => "condorcet",
            Method::Lp => "lp",
            Method::ReducedLp => "reduced-lp",
        }
    }
}

/// The exponent p. Infinity is a distinct variant, never a large float, so
/// that `d^p` cannot overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent<F> {
    Finite(F),
    Infinity,
}

impl<F: Real> Exponent<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn finite(&self) -> Option<F> {
        match self {
            Exponent::Finite(p) => Some(*p),
            Exponent::Infinity => None,
        }
    }

    /// True when p is 1 within 1e-12.
    pub fn is_one(&self) -> bool {
        matches!(self, Exponent::Finite(p) if (*p - F::one()).abs() <= real(1e-12))
    }

    pub fn label(&self) -> String {
        match self {
            Exponent::Finite(p) => format!("{p}"),
            Exponent::Infinity => "inf".to_string(),
        }
    }
}

/// Tie handling for winner sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Return the full co-winner set (capped), representative = least key.
    ReportAll,
    /// Return only the point with the lexicographically least canonical key.
    Lexicographic,
}

/// All solver parameters. Construct via [`AggregationSpec::new`] (or the
/// convenience constructors) and adjust fields as needed; [`validate`] is
/// called by the dispatcher before solving.
///
/// [`validate`]: AggregationSpec::validate
#[derive(Clone, Debug)]
pub struct AggregationSpec<F> {
    pub method: Method,
    pub p: Exponent<F>,
    /// Equality/tie tolerance. `None` selects the per-context default:
    /// 1e-9 for closed forms and exact searches, 1e-7 for iterative
    /// objectives.
    pub tolerance: Option<F>,
    pub max_iterations: u64,
    /// Offset used when approximating reduced (limit) aggregation by solving
    /// at p +/- epsilon; reduced L_inf solves at q = 1/epsilon.
    pub reduced_epsilon: F,
    pub tie_break: TieBreak,
    pub seed: u64,
    pub falsifier_trials: u64,
    /// Strict (`>`) vs weak (`>=`) pairwise majority for Condorcet winners.
    pub strict_condorcet: bool,
}

impl<F: Real> AggregationSpec<F> {
    pub fn new(method: Method, p: Exponent<F>) -> Self {
        AggregationSpec {
            method,
            p,
            tolerance: None,
            max_iterations: 100_000,
            reduced_epsilon: real(1e-4),
            tie_break: TieBreak::ReportAll,
            seed: 0,
            falsifier_trials: 10_000,
            strict_condorcet: true,
        }
    }

    pub fn condorcet() -> Self {
        Self::new(Method::Condorcet, Exponent::Finite(F::one()))
    }

    pub fn lp(p: Exponent<F>) -> Self {
        Self::new(Method::Lp, p)
    }

    pub fn lp_finite(p: f64) -> Self {
        Self::new(Method::Lp, Exponent::Finite(real(p)))
    }

    pub fn reduced(p: Exponent<F>) -> Self {
        Self::new(Method::ReducedLp, p)
    }

    /// Tolerance for closed forms and exact tie detection.
    pub fn closed_tol(&self) -> F {
        self.tolerance.unwrap_or_else(|| real(1e-9))
    }

    /// Tolerance for iterative objectives.
    pub fn iter_tol(&self) -> F {
        self.tolerance.unwrap_or_else(|| real(1e-7))
    }

    pub fn validate(&self) -> Result<()> {
        if let Exponent::Finite(p) = self.p {
            if !(p >= F::one()) {
                return Err(Error::InvalidSpec(format!("p = {p} must be at least 1")));
            }
            if !p.is_finite() {
                return Err(Error::InvalidSpec(
                    "non-finite p; use the infinity variant".into(),
                ));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > F::zero()) {
                return Err(Error::InvalidSpec("tolerance must be positive".into()));
            }
        }
        let eps = self.reduced_epsilon;
        if !(eps > F::zero() && eps <= real(0.1)) {
            return Err(Error::InvalidSpec(
                "reduced_epsilon must lie in (0, 0.1]".into(),
            ));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidSpec("max_iterations must be positive".into()));
        }
        Ok(())
    }
}
