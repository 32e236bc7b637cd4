//! Exhaustive difference-set search: the brute-force oracle behind the
//! verifiers. Enumerates k-subsets in lexicographic order and keeps those
//! satisfying the difference-set identity, testing by direct difference
//! counting with early abort.

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group, DEFAULT_ENUMERATION_CAP};

/// Default cap on the number of k-subsets the search will enumerate.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Subsets per block when streaming combinations through the filter.
const SEARCH_BLOCK: usize = 1 << 15;

/// All k-subsets of G that are (v,k,lambda) difference sets, in
/// lexicographic order of index tuples. Deterministic; parallel under the
/// `parallel` feature with bit-identical output.
pub fn search_difference_sets(
    g: &Group,
    k: u64,
    budget: Option<u64>,
) -> Result<Vec<Vec<Element>>> {
    search_impl(g, k, budget, false)
}

/// Sequential twin of [`search_difference_sets`].
pub fn search_difference_sets_seq(
    g: &Group,
    k: u64,
    budget: Option<u64>,
) -> Result<Vec<Vec<Element>>> {
    search_impl(g, k, budget, true)
}

fn search_impl(g: &Group, k: u64, budget: Option<u64>, force_seq: bool) -> Result<Vec<Vec<Element>>> {
    g.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let v = g.order();
    if k > v {
        return Ok(Vec::new());
    }
    let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let total = binomial_u128(v, k);
    if total > budget as u128 {
        return Err(Error::SizeLimit {
            what: "difference-set search space",
            requested: total,
            limit: budget as u128,
        });
    }

    // lambda from the counting relation; non-integral means no sets exist
    let lambda = if v == 1 || k == v {
        k as i64
    } else {
        let num = k as i128 * (k as i128 - 1);
        let den = v as i128 - 1;
        if num % den != 0 {
            return Ok(Vec::new());
        }
        (num / den) as i64
    };

    let kk = k as usize;
    let accept = |subset: &[u64]| -> bool {
        let mut counts = vec![0i64; v as usize];
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = g.mul_idx(x, g.inv_idx(y)) as usize;
                counts[d] += 1;
                if counts[d] > lambda {
                    return false;
                }
            }
        }
        counts[1..].iter().all(|&c| c == lambda)
    };

    // lexicographic odometer over index combinations, streamed through a
    // flat block buffer (k indices per row) to keep allocation out of the
    // inner loop
    let mut out: Vec<Vec<Element>> = Vec::new();
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut state: Vec<u64> = (0..k).collect();
    let mut exhausted = false;
    let mut block: Vec<u64> = Vec::with_capacity(SEARCH_BLOCK * kk);
    while !exhausted {
        block.clear();
        while block.len() < SEARCH_BLOCK * kk {
            block.extend_from_slice(&state);
            // advance to the next combination
            let mut pos = kk;
            loop {
                if pos == 0 {
                    exhausted = true;
                    break;
                }
                pos -= 1;
                state[pos] += 1;
                if state[pos] <= v - (kk - pos) as u64 {
                    for i in pos + 1..kk {
                        state[i] = state[i - 1] + 1;
                    }
                    break;
                }
            }
            if exhausted {
                break;
            }
        }
        let rows = (block.len() / kk) as u64;
        let block_ref = &block;
        let kernel = |r: u64| accept(&block_ref[r as usize * kk..(r as usize + 1) * kk]);
        let keep = if force_seq {
            exec::map_range_seq(rows, kernel)
        } else {
            exec::map_range(rows, kernel)
        };
        for (r, ok) in keep.into_iter().enumerate() {
            if ok {
                out.push(
                    block[r * kk..(r + 1) * kk]
                        .iter()
                        .map(|&i| g.element_at(i))
                        .collect(),
                );
            }
        }
    }
    Ok(out)
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > u128::MAX / 2 {
            return u128::MAX;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_difference_set;

    #[test]
    fn z7_k3_finds_the_quadratic_residue_set() {
        let g = Group::cyclic(7).unwrap();
        let found = search_difference_sets(&g, 3, None).unwrap();
        let qr: Vec<Element> = [1i64, 2, 4].iter().map(|&i| g.element(&[i]).unwrap()).collect();
        assert!(found.contains(&qr));
        // every returned set re-verifies
        for d in &found {
            assert!(verify_difference_set(&g, d, None).unwrap().verdict);
        }
        // translate closure: the whole translate orbit of each hit is a hit
        for d in &found {
            for h in 0..7 {
                let mut shifted: Vec<Element> = d
                    .iter()
                    .map(|e| g.mul(e, &g.element(&[h]).unwrap()).unwrap())
                    .collect();
                shifted.sort();
                assert!(found.iter().any(|s| {
                    let mut s = s.clone();
                    s.sort();
                    s == shifted
                }));
            }
        }
    }

    #[test]
    fn z7_k2_is_empty_by_counting() {
        let g = Group::cyclic(7).unwrap();
        assert!(search_difference_sets(&g, 2, None).unwrap().is_empty());
    }

    #[test]
    fn search_is_deterministic_and_matches_sequential() {
        let g = Group::cyclic(13).unwrap();
        let par = search_difference_sets(&g, 4, None).unwrap();
        let seq = search_difference_sets_seq(&g, 4, None).unwrap();
        assert_eq!(par, seq);
        let planar: Vec<Element> = [0i64, 1, 3, 9].iter().map(|&i| g.element(&[i]).unwrap()).collect();
        assert!(par.contains(&planar));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Group::cyclic(40).unwrap();
        assert!(matches!(
            search_difference_sets(&g, 12, Some(1000)),
            Err(Error::SizeLimit { .. })
        ));
    }
}
