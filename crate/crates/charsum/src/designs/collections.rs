//! Collections of subgroups and subsets with regular character behavior:
//! hyperplane systems, spreads of elementary abelian groups, and
//! LP-packings of Latin-square-type partial difference sets.

use super::{compare_ring, validate_subset, verify_partial_difference_set};
use crate::characters::{annihilator, subgroup_sum, Character};
use crate::error::{Error, Result};
use crate::group::{is_prime, Element, Group, Subgroup, DEFAULT_ENUMERATION_CAP};
use crate::report::{CheckOutcome, DesignKind, DesignParams, DesignReport, ReportFlag, Witness};
use crate::ring::RingElement;

/// All (p^n - 1)/(p - 1) distinct hyperplanes of Z_p^n, deduplicated via the
/// projective normalization: H_a = H_b exactly when a and b generate the
/// same cyclic subgroup. Returns the group
/// together with the subgroups.
pub fn all_hyperplanes(p: u64, n: u32) -> Result<(Group, Vec<Subgroup>)> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if n < 1 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let g = Group::elementary(p, n)?;
    g.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let mut planes = Vec::new();
    for a in g.enumerate()? {
        // projective representative: first nonzero coordinate equals 1
        match a.residues().iter().find(|&&r| r != 0) {
            Some(1) => planes.push(g.hyperplane(&a)?),
            _ => continue,
        }
    }
    debug_assert_eq!(planes.len() as u64, (g.order() - 1) / (p - 1));
    Ok((g, planes))
}

/// Verifies that the given order-p^n subgroups form a spread of Z_p^(2n):
/// the ring identity sum H_i = p^n + G, the character condition that every
/// nonprincipal character sum multiset is {{p^n, 0, ..., 0}}, and the dual
/// spread property that the annihilators intersect pairwise trivially.
pub fn verify_spread(g: &Group, members: &[Subgroup]) -> Result<DesignReport> {
    let p = g.orders()[0];
    if !is_prime(p) || g.orders().iter().any(|&o| o != p) {
        return Err(Error::InvalidInput(format!(
            "a spread lives in an elementary abelian group, got orders {:?}",
            g.orders()
        )));
    }
    let dim = g.orders().len() as u32;
    if dim % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "a spread needs Z_p^(2n); dimension {dim} is odd"
        )));
    }
    let half = dim / 2;
    let member_order = p.pow(half);
    let expected_count = member_order + 1;
    if members.len() as u64 != expected_count {
        return Err(Error::InvalidInput(format!(
            "a spread of Z_{p}^{dim} has {expected_count} members, got {}",
            members.len()
        )));
    }
    for (i, h) in members.iter().enumerate() {
        if h.parent() != g {
            return Err(Error::InvalidInput(format!(
                "member {i} is a subgroup of a different group"
            )));
        }
        if h.order() != member_order {
            return Err(Error::InvalidInput(format!(
                "member {i} has order {}, expected {member_order}",
                h.order()
            )));
        }
    }

    let mut witnesses = Vec::new();

    // ring identity: sum of the indicators equals p^n + G
    let mut total = RingElement::zero(g);
    for h in members {
        total = total.add(&RingElement::from_subgroup(h))?;
    }
    let ring_check = compare_ring(
        g,
        &total,
        |idx| if idx == 0 { member_order as i64 + 1 } else { 1 },
        &mut witnesses,
    )?;

    // character multiset condition, by direct subgroup summation
    let mut char_ok = true;
    for a in g.enumerate()? {
        if a == g.identity() {
            continue;
        }
        let chi = Character::new(g, &a)?;
        let mut values: Vec<i64> = Vec::with_capacity(members.len());
        for h in members {
            let s = subgroup_sum(&chi, h)?;
            values.push(s.as_integer().unwrap_or(i64::MIN));
        }
        let big = values.iter().filter(|&&v| v == member_order as i64).count();
        let zero = values.iter().filter(|&&v| v == 0).count();
        if !(big == 1 && zero == values.len() - 1) {
            char_ok = false;
            witnesses.push(Witness::CharacterValue {
                index: a.clone(),
                observed: format!("{values:?}"),
                expected: format!("{{{{{member_order}, 0, ..., 0}}}}"),
            });
        }
    }

    // dual spread: annihilators intersect pairwise in the principal
    // character only
    for i in 0..members.len() {
        let perp_i = annihilator(&members[i])?;
        for (j, member_j) in members.iter().enumerate().skip(i + 1) {
            let perp_j = annihilator(member_j)?;
            let common = perp_i
                .index_subgroup()
                .elements()
                .into_iter()
                .filter(|a| perp_j.index_subgroup().contains(a).unwrap_or(false))
                .count() as u64;
            if common != 1 {
                char_ok = false;
                witnesses.push(Witness::SubgroupIntersection { i, j, size: common });
            }
        }
    }

    Ok(DesignReport::build(
        DesignKind::Spread,
        DesignParams::Spread { p, n: half },
        ring_check,
        if char_ok { CheckOutcome::Passed } else { CheckOutcome::Failed },
        witnesses,
        vec![],
    ))
}

/// Verifies a (c,t) LP-packing relative to U: each part is a
/// (t^2c^2, c(tc-1), c(t+c-3), c(c-1)) partial difference set fixed by the
/// involution, the parts partition G - U, and every nonprincipal character
/// sum multiset matches {{-c,...,-c}} on U-perp and {{(t-1)c, -c,...,-c}}
/// off it.
pub fn verify_lp_packing(g: &Group, u: &Subgroup, parts: &[Vec<Element>]) -> Result<DesignReport> {
    if u.parent() != g {
        return Err(Error::InvalidInput(
            "U is a subgroup of a different group".into(),
        ));
    }
    let t = parts.len() as u64;
    if t < 2 {
        return Err(Error::InvalidInput(format!(
            "an LP-packing needs t > 1 parts, got {t}"
        )));
    }
    if u.order() % t != 0 {
        return Err(Error::InvalidInput(format!(
            "|U| = {} is not divisible by t = {t}",
            u.order()
        )));
    }
    let c = u.order() / t;
    if c < 1 {
        return Err(Error::InvalidInput("c must be positive".into()));
    }
    let v = g.order();
    if v != t * t * c * c {
        return Err(Error::InvalidInput(format!(
            "|G| = {v} but t^2 c^2 = {}",
            t * t * c * c
        )));
    }
    let part_size = c * (t * c - 1);
    for (i, p) in parts.iter().enumerate() {
        let indices = validate_subset(g, p)?;
        if indices.len() as u64 != part_size {
            return Err(Error::InvalidInput(format!(
                "P_{i} has {} elements, expected c(tc-1) = {part_size}",
                indices.len()
            )));
        }
        if indices.first() == Some(&0) {
            return Err(Error::InvalidInput(format!("P_{i} contains the identity")));
        }
    }

    let mut witnesses = Vec::new();
    let expected_pds = (
        v,
        part_size,
        (c as i64) * (t as i64 + c as i64 - 3),
        (c as i64) * (c as i64 - 1),
    );

    // each part is a Latin-square-type partial difference set with
    // D^(-1) = D
    let mut parts_ring_ok = true;
    let mut parts_char_ok = true;
    for (i, p) in parts.iter().enumerate() {
        let sub = verify_partial_difference_set(g, p, Some(expected_pds))?;
        if !sub.ring_check {
            parts_ring_ok = false;
        }
        if !sub.char_check.passed_or_na() {
            parts_char_ok = false;
        }
        if !sub.has_flag(ReportFlag::Symmetric) {
            parts_ring_ok = false;
            witnesses.push(Witness::Structure {
                reason: format!("P_{i} is not fixed by the involution"),
            });
        }
        if !sub.verdict {
            for w in sub.witnesses {
                witnesses.push(Witness::Structure {
                    reason: format!("P_{i}: {w}"),
                });
            }
        }
    }

    // partition identity: sum of the parts equals G - U
    let mut total = RingElement::zero(g);
    for p in parts {
        total = total.add(&RingElement::from_subset(g, p)?)?;
    }
    let partition_ok = compare_ring(
        g,
        &total,
        |idx| if u.contains_index(idx) { 0 } else { 1 },
        &mut witnesses,
    )?;

    // multiset character condition across the parts
    let mut multiset_ok = true;
    let minus_c = -(c as i64);
    let big = (t as i64 - 1) * c as i64;
    for a in g.enumerate()? {
        if a == g.identity() {
            continue;
        }
        let chi = Character::new(g, &a)?;
        let mut values = Vec::with_capacity(parts.len());
        for p in parts {
            values.push(chi.sum_over_set(p)?.as_integer().unwrap_or(i64::MIN));
        }
        let ok = if chi.is_principal_on(u)? {
            values.iter().all(|&x| x == minus_c)
        } else {
            values.iter().filter(|&&x| x == big).count() == 1
                && values.iter().filter(|&&x| x == minus_c).count() == values.len() - 1
        };
        if !ok {
            multiset_ok = false;
            witnesses.push(Witness::CharacterValue {
                index: a.clone(),
                observed: format!("{values:?}"),
                expected: if chi.is_principal_on(u)? {
                    format!("{{{{{minus_c}, ..., {minus_c}}}}}")
                } else {
                    format!("{{{{{big}, {minus_c}, ..., {minus_c}}}}}")
                },
            });
        }
    }

    let ring_check = parts_ring_ok && partition_ok;
    let char_ok = parts_char_ok && multiset_ok;
    Ok(DesignReport::build(
        DesignKind::LpPacking,
        DesignParams::LpPacking { c, t },
        ring_check,
        if char_ok { CheckOutcome::Passed } else { CheckOutcome::Failed },
        witnesses,
        vec![],
    ))
}

/// Converts a spread H_0, ..., H_(p^n) into a (1, p^n) LP-packing relative
/// to U = H_0 by deleting the identity from each of the other members.
pub fn spread_to_lp_packing(
    g: &Group,
    members: &[Subgroup],
) -> Result<(Subgroup, Vec<Vec<Element>>)> {
    let report = verify_spread(g, members)?;
    if !report.verdict {
        return Err(Error::InvalidInput(format!(
            "input is not a spread: {}",
            report
                .witnesses
                .first()
                .map(|w| w.to_string())
                .unwrap_or_else(|| "no witness".into())
        )));
    }
    let u = members[0].clone();
    let parts = members[1..]
        .iter()
        .map(|h| {
            h.elements()
                .into_iter()
                .filter(|e| *e != g.identity())
                .collect()
        })
        .collect();
    Ok((u, parts))
}
