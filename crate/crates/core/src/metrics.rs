//! The six distance functions, one per setting. Each is a true metric on its
//! setting's point space.
//!
//! Integer-valued metrics (discrete, Kendall, Hamming) are computed exactly
//! as `u64`. The legislation metric is a weighted edit distance with unit
//! inserts/deletes and adjacent swaps costing `1/l^2`; every distance is an
//! integer multiple of `1/l^2`, so it is computed as an exact integer
//! numerator (see [`document_distance_numerator`]) and only converted to the
//! scalar type at the boundary. The closed form used here —
//! `|set(x) sym-diff set(y)| + inversions(x, y) / l^2` — must agree with the
//! uniform-cost-search oracle in [`crate::oracle::bfs_edit_distance`]; the
//! oracle value is authoritative if they ever disagree.

use std::collections::{BTreeSet, HashMap};

use crate::election::Setting;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::{real_u64, Real};

/// Identifies which metric to use and carries the legislation swap-cost
/// denominator l (the longest voter document).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricDescriptor {
    pub setting: Setting,
    pub ell: Option<usize>,
}

/// 0 if the labels coincide, 1 otherwise.
pub fn discrete_distance(x: &str, y: &str) -> u64 {
    u64::from(x != y)
}

/// Absolute difference on the line.
pub fn line_distance<F: Real>(x: F, y: F) -> F {
    (x - y).abs()
}

/// Euclidean distance between two points of the simplex.
pub fn simplex_distance<F: Real>(x: &[F], y: &[F]) -> Result<F> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut sum = F::zero();
    for (a, b) in x.iter().zip(y) {
        let d = *a - *b;
        sum = sum + d * d;
    }
    Ok(sum.sqrt())
}

/// Number of discordant alternative pairs between two total orders; equals
/// the minimum number of adjacent swaps transforming one into the other.
///
/// Computed in O(z log z): relabel each alternative by its position in `x`,
/// read those labels in `y`'s order, and merge-count inversions.
pub fn kendall_distance(x: &[String], y: &[String]) -> Result<u64> {
    if x.len() != y.len() {
        return Err(Error::UniverseMismatch);
    }
    let pos_in_x: HashMap<&str, u32> = x
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i as u32))
        .collect();
    if pos_in_x.len() != x.len() {
        return Err(Error::UniverseMismatch);
    }
    let mut seq = Vec::with_capacity(y.len());
    for id in y {
        match pos_in_x.get(id.as_str()) {
            Some(&p) => seq.push(p),
            None => return Err(Error::UniverseMismatch),
        }
    }
    Ok(count_inversions(&mut seq))
}

/// Size of the symmetric difference of two subsets.
pub fn hamming_distance(x: &BTreeSet<String>, y: &BTreeSet<String>) -> u64 {
    let common = x.intersection(y).count();
    (x.len() + y.len() - 2 * common) as u64
}

/// Weighted edit distance between two documents, as an exact integer
/// numerator over `l^2`: `|set diff| * l^2 + inversions among common
/// sentences`.
///
/// Reordering via adjacent swaps always dominates delete+insert here: moving
/// a sentence across the whole document costs at most `(l-1)/l^2 < 1`, so an
/// optimal edit sequence deletes the extra sentences, inserts the missing
/// ones in place, and sorts the rest.
pub fn document_distance_numerator(x: &[String], y: &[String], ell: usize) -> Result<u64> {
    let longest = x.len().max(y.len());
    if ell < longest || ell == 0 {
        return Err(Error::EllTooSmall {
            ell,
            len: longest,
        });
    }
    let set_x: BTreeSet<&str> = x.iter().map(String::as_str).collect();
    let set_y: BTreeSet<&str> = y.iter().map(String::as_str).collect();
    let common = set_x.intersection(&set_y).count();
    let sym_diff = (set_x.len() + set_y.len() - 2 * common) as u64;

    // Inversions among common sentences: positions in y of the common
    // sentences, read in x's order.
    let pos_in_y: HashMap<&str, u32> = y
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as u32))
        .collect();
    let mut seq: Vec<u32> = x
        .iter()
        .filter_map(|s| pos_in_y.get(s.as_str()).copied())
        .collect();
    let inversions = count_inversions(&mut seq);

    let ell = ell as u64;
    Ok(sym_diff * ell * ell + inversions)
}

/// Weighted edit distance between two documents (see
/// [`document_distance_numerator`]).
pub fn document_distance<F: Real>(x: &[String], y: &[String], ell: usize) -> Result<F> {
    let numer = document_distance_numerator(x, y, ell)?;
    let ell = ell as u64;
    Ok(real_u64::<F>(numer) / real_u64::<F>(ell * ell))
}

/// Distance between two points of the same setting.
pub fn distance<F: Real>(x: &Point<F>, y: &Point<F>, desc: &MetricDescriptor) -> Result<F> {
    match (desc.setting, x, y) {
        (Setting::Plurality, Point::Label(a), Point::Label(b)) => {
            Ok(real_u64(discrete_distance(a, b)))
        }
        (Setting::Line, Point::Real(a), Point::Real(b)) => Ok(line_distance(*a, *b)),
        (Setting::Budget, Point::Simplex(a), Point::Simplex(b)) => simplex_distance(a, b),
        (Setting::Ranking, Point::Permutation(a), Point::Permutation(b)) => {
            Ok(real_u64(kendall_distance(a, b)?))
        }
        (
            Setting::Committee | Setting::CommitteeFixedK,
            Point::Subset(a),
            Point::Subset(b),
        ) => Ok(real_u64(hamming_distance(a, b))),
        (Setting::Legislation, Point::Document(a), Point::Document(b)) => {
            let ell = desc.ell.unwrap_or_else(|| a.len().max(b.len()).max(1));
            document_distance(a, b, ell)
        }
        (_, x, y) => Err(Error::VariantMismatch {
            index: 0,
            expected: desc.setting.as_str(),
            got: if x.variant_name() == desc.setting.as_str() {
                y.variant_name()
            } else {
                x.variant_name()
            },
        }),
    }
}

/// Merge-count of inversions; sorts `seq` as a side effect.
fn count_inversions(seq: &mut [u32]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mut buf = vec![0u32; n];
    merge_count(seq, &mut buf)
}

fn merge_count(seq: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = seq.split_at_mut(mid);
        merge_count(left, &mut buf[..mid]) + merge_count(right, &mut buf[mid..])
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            j += 1;
            inv += (mid - i) as u64;
        }
        k += 1;
    }
    while i < mid {
        buf[k] = seq[i];
        i += 1;
        k += 1;
    }
    while j < n {
        buf[k] = seq[j];
        j += 1;
        k += 1;
    }
    seq.copy_from_slice(&buf[..n]);
    inv
}
