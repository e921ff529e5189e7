//! Ideal points: one variant per setting, plus the canonical encoding that
//! winner lists are ordered and tie-broken by.

use std::collections::BTreeSet;

use crate::scalar::{format_fixed12, Real};

/// Separator used when encoding a document as a single key. Validation
/// rejects sentences containing it, which keeps the encoding injective.
pub const DOCUMENT_SEPARATOR: char = '\u{1e}';

/// A voter's ideal element of the metric space. Doubles as a ballot and as a
/// candidate outcome.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    /// One alternative out of an unstructured set (plurality).
    Label(String),
    /// A position on the real line.
    Real(F),
    /// A budget allocation: non-negative weights summing to 1.
    Simplex(Vec<F>),
    /// A total order over the alternative universe, most-preferred first.
    Permutation(Vec<String>),
    /// A committee: any subset of the alternatives.
    Subset(BTreeSet<String>),
    /// A document: a sequence of pairwise distinct sentences.
    Document(Vec<String>),
}

impl<F: Real> Point<F> {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Point::Label(_) => "label",
            Point::Real(_) => "real",
            Point::Simplex(_) => "simplex",
            Point::Permutation(_) => "permutation",
            Point::Subset(_) => "subset",
            Point::Document(_) => "document",
        }
    }

    /// Total-order key for this point.
    ///
    /// Keys are unique per point within one election's point space, and
    /// winner lists are sorted by them; the lexicographically least key is
    /// the deterministic tie-break representative.
    pub fn canonical_encode(&self) -> String {
        match self {
            Point::Label(id) => id.clone(),
            Point::Real(v) => format_fixed12(*v),
            Point::Simplex(w) => w
                .iter()
                .map(|c| format_fixed12(*c))
                .collect::<Vec<_>>()
                .join(","),
            Point::Permutation(order) => order.join(">"),
            Point::Subset(members) => members.iter().cloned().collect::<Vec<_>>().join(","),
            Point::Document(sentences) => sentences.join(&DOCUMENT_SEPARATOR.to_string()),
        }
    }

    pub fn subset_from<I: IntoIterator<Item = S>, S: Into<String>>(members: I) -> Self {
        Point::Subset(members.into_iter().map(Into::into).collect())
    }

    pub fn permutation_from<I: IntoIterator<Item = S>, S: Into<String>>(order: I) -> Self {
        Point::Permutation(order.into_iter().map(Into::into).collect())
    }

    pub fn document_from<I: IntoIterator<Item = S>, S: Into<String>>(sentences: I) -> Self {
        Point::Document(sentences.into_iter().map(Into::into).collect())
    }
}

/// Sorts points by canonical key and removes duplicates.
pub(crate) fn sort_canonical<F: Real>(points: &mut Vec<Point<F>>) {
    points.sort_by(|a, b| a.canonical_encode().cmp(&b.canonical_encode()));
    points.dedup_by(|a, b| a.canonical_encode() == b.canonical_encode());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_subset_is_sorted() {
        let p: Point<f64> = Point::subset_from(["b", "a"]);
        assert_eq!(p.canonical_encode(), "a,b");
    }

    #[test]
    fn canonical_real_fixed_precision() {
        let p: Point<f64> = Point::Real(0.5);
        assert_eq!(p.canonical_encode(), "0.500000000000");
    }

    #[test]
    fn canonical_permutation_preserves_order() {
        let p: Point<f64> = Point::permutation_from(["a", "c", "b"]);
        assert_eq!(p.canonical_encode(), "a>c>b");
    }

    #[test]
    fn sort_canonical_orders_and_dedups() {
        let mut pts: Vec<Point<f64>> = vec![
            Point::subset_from(["b"]),
            Point::subset_from(["a"]),
            Point::subset_from(["b"]),
        ];
        sort_canonical(&mut pts);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].canonical_encode(), "a");
    }
}
