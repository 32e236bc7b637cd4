//! Verifiers and constructors for combinatorial designs characterized by
//! group-ring identities and character sums: difference sets, relative
//! difference sets, partial difference sets, multipliers, hyperplane
//! systems, spreads, and LP-packings.
//!
//! Every verifier runs the exact group-ring identity and the character-sum
//! criterion independently and records both verdicts; the underlying theory
//! makes them agree, and the test suite leans on that redundancy.

mod collections;
mod difference;
mod projection;
mod search;

pub use collections::{all_hyperplanes, spread_to_lp_packing, verify_lp_packing, verify_spread};
pub use difference::{
    intersection_numbers, numerical_multiplier_check, verify_difference_set,
    verify_partial_difference_set, verify_relative_difference_set,
};
pub use projection::{project_and_verify, ProjectionInput};
pub use search::{search_difference_sets, search_difference_sets_seq, DEFAULT_SEARCH_BUDGET};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Element, Group, DEFAULT_ENUMERATION_CAP};
use crate::report::Witness;
use crate::ring::RingElement;

/// Validates a subset: every element in the group, no duplicates. Returns
/// sorted element indices.
pub(crate) fn validate_subset(g: &Group, set: &[Element]) -> Result<Vec<u64>> {
    let mut indices = Vec::with_capacity(set.len());
    for e in set {
        indices.push(g.index_of(e)?);
    }
    indices.sort_unstable();
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("duplicate element in set".into()));
    }
    Ok(indices)
}

/// Derives a parameter as num/den, pushing a witness and returning None when
/// it is not a nonnegative integer.
pub(crate) fn derive_parameter(
    name: &'static str,
    num: i128,
    den: i128,
    witnesses: &mut Vec<Witness>,
) -> Option<i64> {
    if den != 0 && num % den == 0 && num / den >= 0 && num / den <= i64::MAX as i128 {
        Some((num / den) as i64)
    } else {
        witnesses.push(Witness::NonIntegralParameter {
            name,
            numerator: num,
            denominator: den,
        });
        None
    }
}

/// Compares a computed ring element against a per-index expected coefficient
/// over the whole group, appending a witness per mismatch.
pub(crate) fn compare_ring(
    g: &Group,
    observed: &RingElement,
    expected: impl Fn(u64) -> i64,
    witnesses: &mut Vec<Witness>,
) -> Result<bool> {
    g.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let mut ok = true;
    for idx in 0..g.order() {
        let got = observed.coeff_idx(idx);
        let want = expected(idx);
        if got != want {
            ok = false;
            witnesses.push(Witness::RingCoefficient {
                element: g.element_at(idx),
                observed: got,
                expected: want,
            });
        }
    }
    Ok(ok)
}

/// |s|^2 = s * conj(s) as a rational integer, when it is one.
pub(crate) fn norm_sq(s: &Cyclotomic) -> Option<i64> {
    s.checked_mul(&s.conjugate()).ok()?.as_integer()
}
