//! Projection of verified designs to quotient groups, with verification in
//! the quotient.
//!
//! A projected relative difference set is itself a relative difference set
//! in G/U relative to N/U (provided U lies inside the forbidden subgroup);
//! a projected difference set satisfies a ring identity in `Z[G/U]` but need
//! not be a set. Quotient-side character checks use induced characters,
//! enumerating U-perp.

use super::{derive_parameter, norm_sq, validate_subset};
use crate::characters::{annihilator, induced_character};
use crate::error::{Error, Result};
use crate::group::{Element, QuotientGroup, Subgroup};
use crate::report::{CheckOutcome, DesignKind, DesignParams, DesignReport, ReportFlag, Witness};
use crate::ring::{project_ring, RingElement};

/// Input to [`project_and_verify`].
pub enum ProjectionInput<'a> {
    /// A (v,k,lambda) difference set in the parent group.
    DifferenceSet { set: &'a [Element] },
    /// An (m,n,k,lambda) relative difference set in the parent group with
    /// its forbidden subgroup; the quotient modulus must lie inside it.
    RelativeDifferenceSet {
        forbidden: &'a Subgroup,
        set: &'a [Element],
    },
}

/// Projects a design along the canonical projection and verifies the
/// projected identity in the quotient group.
pub fn project_and_verify(q: &QuotientGroup, input: ProjectionInput<'_>) -> Result<DesignReport> {
    match input {
        ProjectionInput::DifferenceSet { set } => project_difference_set(q, set),
        ProjectionInput::RelativeDifferenceSet { forbidden, set } => {
            project_relative_difference_set(q, forbidden, set)
        }
    }
}

fn project_difference_set(q: &QuotientGroup, set: &[Element]) -> Result<DesignReport> {
    let g = q.parent();
    validate_subset(g, set)?;
    let v = g.order();
    let k = set.len() as u64;
    let u_order = q.modulus().order();
    let m = q.coset_count() as u64;

    // parent-level parameters are a precondition of the projection
    let mut pre = Vec::new();
    let lambda = if v == 1 || k == v {
        k as i64
    } else {
        derive_parameter("lambda", k as i128 * (k as i128 - 1), v as i128 - 1, &mut pre)
            .ok_or_else(|| {
                Error::InvalidInput("input parameters do not satisfy k(k-1) = lambda(v-1)".into())
            })?
    };
    let lambda_u = lambda * u_order as i64;

    let indicator = RingElement::from_subset(g, set)?;
    let rho = project_ring(q, &indicator)?;
    let intersection = rho.coeffs().to_vec();

    let mut witnesses = Vec::new();
    let mut flags = vec![if rho.is_set_indicator() {
        ReportFlag::ProjectionIsSet
    } else {
        ReportFlag::ProjectionNotSet
    }];
    if u_order == 1 {
        flags.push(ReportFlag::Trivial);
    }

    // ring identity in Z[G/U]: rho(D) rho(D)^(-1) = (k - lambda) + lambda|U|(G/U)
    let product = rho.mul(q, &rho.involution(q)?)?;
    let mut ring_check = true;
    for (coset, &got) in product.coeffs().iter().enumerate() {
        let want = if coset == q.identity_coset() {
            k as i64 - lambda + lambda_u
        } else {
            lambda_u
        };
        if got != want {
            ring_check = false;
            witnesses.push(Witness::RingCoefficient {
                element: q.representative(coset),
                observed: got,
                expected: want,
            });
        }
    }

    // induced-character check: |chi~(rho(D))|^2 is k^2 for the principal
    // character and k - lambda for the others
    let mut char_ok = true;
    for chi in annihilator(q.modulus())?.characters()? {
        let ind = induced_character(&chi, q)?;
        let s = ind.sum(&rho)?;
        let target = if ind.is_principal() {
            (k as i64) * (k as i64)
        } else {
            k as i64 - lambda
        };
        if norm_sq(&s) != Some(target) {
            char_ok = false;
            witnesses.push(Witness::CharacterValue {
                index: chi.index().clone(),
                observed: format!("|{s}|^2"),
                expected: format!("{target}"),
            });
        }
    }

    Ok(DesignReport::build(
        DesignKind::ProjectedDifferenceSet,
        DesignParams::ProjectedDifferenceSet {
            quotient_order: m,
            k,
            lambda_u,
            intersection,
        },
        ring_check,
        if char_ok { CheckOutcome::Passed } else { CheckOutcome::Failed },
        witnesses,
        flags,
    ))
}

fn project_relative_difference_set(
    q: &QuotientGroup,
    forbidden: &Subgroup,
    set: &[Element],
) -> Result<DesignReport> {
    let g = q.parent();
    if forbidden.parent() != g {
        return Err(Error::InvalidSubgroup(
            "forbidden subgroup belongs to a different group".into(),
        ));
    }
    // U must sit inside N for N/U to make sense
    for u_el in q.modulus().elements() {
        if !forbidden.contains(&u_el)? {
            return Err(Error::Domain(format!(
                "modulus element {u_el} lies outside the forbidden subgroup"
            )));
        }
    }
    validate_subset(g, set)?;
    let v = g.order();
    let n = forbidden.order();
    let m = v / n;
    let k = set.len() as u64;
    let u_order = q.modulus().order();

    let mut pre = Vec::new();
    let lambda = if m == 1 {
        0
    } else {
        derive_parameter(
            "lambda",
            k as i128 * (k as i128 - 1),
            n as i128 * (m as i128 - 1),
            &mut pre,
        )
        .ok_or_else(|| {
            Error::InvalidInput("input parameters do not satisfy k(k-1) = lambda n(m-1)".into())
        })?
    };

    // projected parameters: (m, n/|U|, k, lambda |U|)
    let n_quot = n / u_order;
    let lambda_u = lambda * u_order as i64;

    let indicator = RingElement::from_subset(g, set)?;
    let rho = project_ring(q, &indicator)?;

    let mut witnesses = Vec::new();
    let mut flags = Vec::new();
    if rho.is_set_indicator() {
        flags.push(ReportFlag::ProjectionIsSet);
    } else {
        // the forbidden subgroup guarantees injectivity on genuine inputs
        flags.push(ReportFlag::ProjectionNotSet);
        for (coset, &c) in rho.coeffs().iter().enumerate() {
            if c != 0 && c != 1 {
                witnesses.push(Witness::Membership {
                    element: q.representative(coset),
                    reason: format!("projected multiplicity {c} exceeds 1"),
                });
            }
        }
    }
    if u_order == 1 {
        flags.push(ReportFlag::Trivial);
    }

    let forbidden_cosets = q.project_subgroup(forbidden)?;
    let in_forbidden = |coset: usize| forbidden_cosets.binary_search(&coset).is_ok();

    // ring identity in Z[G/U]: rho(R) rho(R)^(-1) = k + lambda|U| (G/U - N/U)
    let product = rho.mul(q, &rho.involution(q)?)?;
    let mut ring_check = true;
    for (coset, &got) in product.coeffs().iter().enumerate() {
        let want = if coset == q.identity_coset() {
            k as i64
        } else if in_forbidden(coset) {
            0
        } else {
            lambda_u
        };
        if got != want {
            ring_check = false;
            witnesses.push(Witness::RingCoefficient {
                element: q.representative(coset),
                observed: got,
                expected: want,
            });
        }
    }

    // induced-character check per the relative-difference-set criterion in
    // the quotient: the induced character is principal on N/U iff the base
    // character is principal on N
    let mut char_ok = true;
    for chi in annihilator(q.modulus())?.characters()? {
        let ind = induced_character(&chi, q)?;
        if ind.is_principal() {
            continue;
        }
        let s = ind.sum(&rho)?;
        let target = if chi.is_principal_on(forbidden)? {
            k as i64 - lambda_u * n_quot as i64
        } else {
            k as i64
        };
        if norm_sq(&s) != Some(target) {
            char_ok = false;
            witnesses.push(Witness::CharacterValue {
                index: chi.index().clone(),
                observed: format!("|{s}|^2"),
                expected: format!("{target}"),
            });
        }
    }

    let char_check = if char_ok { CheckOutcome::Passed } else { CheckOutcome::Failed };
    Ok(DesignReport::build(
        DesignKind::RelativeDifferenceSet,
        DesignParams::RelativeDifferenceSet {
            m,
            n: n_quot,
            k,
            lambda: lambda_u,
        },
        ring_check,
        char_check,
        witnesses,
        flags,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn rds_projection_golden() {
        // the (4,4,4,1) set projected by U = <a^2> is a (4,2,4,2) relative
        // difference set in Z2 x Z4 relative to N/U
        let g = Group::new(vec![4, 4]).unwrap();
        let n = g
            .subgroup_from_generators(&[g.element(&[2, 0]).unwrap(), g.element(&[0, 2]).unwrap()])
            .unwrap();
        let u = g.subgroup_from_generators(&[g.element(&[2, 0]).unwrap()]).unwrap();
        let q = g.quotient(&u).unwrap();
        let r: Vec<Element> = [[0i64, 0], [1, 0], [0, 1], [3, 3]]
            .iter()
            .map(|x| g.element(x).unwrap())
            .collect();
        let report = project_and_verify(
            &q,
            ProjectionInput::RelativeDifferenceSet { forbidden: &n, set: &r },
        )
        .unwrap();
        assert!(report.verdict, "{report}");
        assert_eq!(
            report.params,
            DesignParams::RelativeDifferenceSet { m: 4, n: 2, k: 4, lambda: 2 }
        );
        assert!(report.has_flag(ReportFlag::ProjectionIsSet));
        // the image is exactly the cosets of 1, a, b, and a b^3
        let rho = crate::ring::project_ring(&q, &crate::ring::RingElement::from_subset(&g, &r).unwrap()).unwrap();
        for (coset, &c) in rho.coeffs().iter().enumerate() {
            let rep = q.representative(coset);
            let expected = [[0i64, 0], [1, 0], [0, 1], [1, 3]]
                .iter()
                .any(|x| rep == g.element(x).unwrap());
            assert_eq!(c == 1, expected, "coset of {rep}");
        }
    }

    #[test]
    fn ds_projection_golden() {
        // the (15,7,3) set projected by U = <g^5>: coefficients (1,3,1,1,1),
        // identity 4 + 9 G/U, and not a set
        let g = Group::cyclic(15).unwrap();
        let u = g.subgroup_from_generators(&[g.element(&[5]).unwrap()]).unwrap();
        let q = g.quotient(&u).unwrap();
        let d: Vec<Element> = [1i64, 2, 3, 5, 6, 9, 11]
            .iter()
            .map(|&i| g.element(&[i]).unwrap())
            .collect();
        let report =
            project_and_verify(&q, ProjectionInput::DifferenceSet { set: &d }).unwrap();
        assert!(report.verdict, "{report}");
        assert!(report.has_flag(ReportFlag::ProjectionNotSet));
        match &report.params {
            DesignParams::ProjectedDifferenceSet { quotient_order, k, lambda_u, intersection } => {
                assert_eq!(*quotient_order, 5);
                assert_eq!(*k, 7);
                assert_eq!(*lambda_u, 9);
                assert_eq!(intersection, &vec![1, 3, 1, 1, 1]);
            }
            other => panic!("wrong params {other:?}"),
        }
    }

    #[test]
    fn trivial_modulus_projects_to_the_original() {
        let g = Group::cyclic(15).unwrap();
        let u = g.subgroup_from_generators(&[]).unwrap();
        let q = g.quotient(&u).unwrap();
        let d: Vec<Element> = [1i64, 2, 3, 5, 6, 9, 11]
            .iter()
            .map(|&i| g.element(&[i]).unwrap())
            .collect();
        let report = project_and_verify(&q, ProjectionInput::DifferenceSet { set: &d }).unwrap();
        assert!(report.verdict);
        assert!(report.has_flag(ReportFlag::ProjectionIsSet));
        assert!(report.has_flag(ReportFlag::Trivial));
    }

    #[test]
    fn rds_projection_requires_modulus_inside_forbidden() {
        let g = Group::new(vec![4, 4]).unwrap();
        let n = g
            .subgroup_from_generators(&[g.element(&[2, 0]).unwrap(), g.element(&[0, 2]).unwrap()])
            .unwrap();
        let u = g.subgroup_from_generators(&[g.element(&[1, 0]).unwrap()]).unwrap();
        let q = g.quotient(&u).unwrap();
        let r: Vec<Element> = [[0i64, 0], [1, 0], [0, 1], [3, 3]]
            .iter()
            .map(|x| g.element(x).unwrap())
            .collect();
        assert!(matches!(
            project_and_verify(
                &q,
                ProjectionInput::RelativeDifferenceSet { forbidden: &n, set: &r }
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_design_projection_fails_with_witnesses() {
        let g = Group::cyclic(15).unwrap();
        let u = g.subgroup_from_generators(&[g.element(&[5]).unwrap()]).unwrap();
        let q = g.quotient(&u).unwrap();
        // a 7-subset that is not a difference set
        let d: Vec<Element> = [1i64, 2, 3, 4, 5, 6, 7]
            .iter()
            .map(|&i| g.element(&[i]).unwrap())
            .collect();
        let report = project_and_verify(&q, ProjectionInput::DifferenceSet { set: &d }).unwrap();
        assert!(!report.verdict);
        assert!(!report.witnesses.is_empty());
    }
}
