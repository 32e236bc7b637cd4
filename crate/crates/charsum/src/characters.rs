//! Characters of a finite abelian group, character sums, annihilators,
//! duality, induced characters, orthogonality, and Fourier inversion.
//!
//! The character indexed by a = (a_1,...,a_t) acts on x = (x_1,...,x_t) as
//! the product of (zeta_{n_i}^{a_i})^{x_i}; this indexing realizes the
//! isomorphism between the group and its character group, and the
//! character-group operation is addition of indices. All values are produced
//! at the single order n = exp(G), with each component root zeta_{n_i}
//! embedded as zeta_n^(n/n_i), so sums are directly comparable.

use std::collections::BTreeMap;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group, QuotientGroup, Subgroup, DEFAULT_ENUMERATION_CAP};
use crate::ring::{QuotientRingElement, RingElement};

/// Default cap on materialized character tables.
pub const DEFAULT_TABLE_CAP: u64 = 4096;

/// The character chi_a of a finite abelian group, indexed by a group
/// element a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    group: Group,
    index: Element,
    /// w_i = a_i * (n / n_i) mod n, so chi_a(x) = zeta_n ^ (sum w_i x_i).
    weights: Vec<u64>,
}

impl Character {
    pub fn new(group: &Group, index: &Element) -> Result<Self> {
        group.check(index)?;
        let n = group.exponent();
        let weights = index
            .residues()
            .iter()
            .zip(group.orders())
            .map(|(&a, &ni)| (a as u128 * (n / ni) as u128 % n as u128) as u64)
            .collect();
        Ok(Character {
            group: group.clone(),
            index: index.clone(),
            weights,
        })
    }

    pub fn principal(group: &Group) -> Self {
        Character::new(group, &group.identity()).expect("identity is always valid")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn index(&self) -> &Element {
        &self.index
    }

    pub fn is_principal(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// The exponent e with chi(x) = zeta_n^e.
    pub(crate) fn exponent_at(&self, x: &Element) -> u64 {
        let n = self.group.exponent();
        let mut acc: u128 = 0;
        for (&w, &xi) in self.weights.iter().zip(x.residues()) {
            acc += w as u128 * xi as u128;
        }
        (acc % n as u128) as u64
    }

    pub fn evaluate(&self, x: &Element) -> Result<Cyclotomic> {
        self.group.check(x)?;
        Cyclotomic::root_power(self.group.exponent(), self.exponent_at(x) as i64)
    }

    /// The character sum chi(A) = sum of a_g chi(g), an exact cyclotomic
    /// integer of order exp(G).
    pub fn sum(&self, a: &RingElement) -> Result<Cyclotomic> {
        if a.group() != &self.group {
            return Err(Error::SpecMismatch(
                "ring element belongs to a different group than the character".into(),
            ));
        }
        let n = self.group.exponent();
        let mut acc = vec![0i64; n as usize];
        for (e, c) in a.terms() {
            let slot = &mut acc[self.exponent_at(&e) as usize];
            *slot = slot.checked_add(c).ok_or(Error::Overflow("character sum"))?;
        }
        Cyclotomic::from_exponent_coeffs(n, &acc)
    }

    /// Character sum over an explicit subset.
    pub fn sum_over_set(&self, set: &[Element]) -> Result<Cyclotomic> {
        let n = self.group.exponent();
        let mut acc = vec![0i64; n as usize];
        for e in set {
            self.group.check(e)?;
            acc[self.exponent_at(e) as usize] += 1;
        }
        Cyclotomic::from_exponent_coeffs(n, &acc)
    }

    pub fn is_principal_on(&self, n: &Subgroup) -> Result<bool> {
        if n.parent() != &self.group {
            return Err(Error::InvalidSubgroup(
                "subgroup belongs to a different group than the character".into(),
            ));
        }
        Ok(n.elements().iter().all(|u| self.exponent_at(u) == 0))
    }

    /// The character-group operation: chi_a o chi_b = chi_(a+b).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let idx = self.group.mul(&self.index, &other.index)?;
        Character::new(&self.group, &idx)
    }
}

/// A set of characters closed under the character-group operation,
/// represented by the subgroup of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSet {
    indices: Subgroup,
}

impl CharacterSet {
    /// Builds a character set from explicit indices, validating closure
    /// under the character-group operation.
    pub fn from_indices(group: &Group, indices: &[Element]) -> Result<Self> {
        let sub = group
            .subgroup_from_elements(indices)
            .map_err(|e| Error::InvalidInput(format!("not a character subgroup: {e}")))?;
        Ok(CharacterSet { indices: sub })
    }

    pub fn group(&self) -> &Group {
        self.indices.parent()
    }

    pub fn len(&self) -> u64 {
        self.indices.order()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the principal character
    }

    pub fn index_subgroup(&self) -> &Subgroup {
        &self.indices
    }

    pub fn contains(&self, c: &Character) -> Result<bool> {
        self.indices.contains(c.index())
    }

    pub fn characters(&self) -> Result<Vec<Character>> {
        self.indices
            .elements()
            .into_iter()
            .map(|a| Character::new(self.indices.parent(), &a))
            .collect()
    }
}

/// The annihilator N-perp: all characters principal on N. Its size is
/// |G| / |N| and it is a subgroup of the character group.
pub fn annihilator(n: &Subgroup) -> Result<CharacterSet> {
    let g = n.parent();
    g.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let members = n.elements();
    let mut indices = Vec::new();
    for a in g.enumerate()? {
        let chi = Character::new(g, &a)?;
        if members.iter().all(|u| chi.exponent_at(u) == 0) {
            indices.push(a);
        }
    }
    let sub = g.subgroup_from_elements(&indices)?;
    Ok(CharacterSet { indices: sub })
}

/// Recovers the subgroup annihilated by a character set:
/// { g : chi(g) = 1 for all chi in X }. Round trip law:
/// dual_subgroup(annihilator(N)) = N.
pub fn dual_subgroup(x: &CharacterSet) -> Result<Subgroup> {
    let g = x.group();
    g.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let chars = x.characters()?;
    let mut members = Vec::new();
    for e in g.enumerate()? {
        if chars.iter().all(|chi| chi.exponent_at(&e) == 0) {
            members.push(e);
        }
    }
    g.subgroup_from_elements(&members)
}

/// A character of a quotient group G/U obtained by inducing a character
/// that is principal on U; the map chi -> induced chi is a bijection from
/// U-perp onto the character group of G/U.
#[derive(Debug, Clone)]
pub struct InducedCharacter<'q> {
    quotient: &'q QuotientGroup,
    base: Character,
}

impl<'q> InducedCharacter<'q> {
    pub fn base(&self) -> &Character {
        &self.base
    }

    pub fn quotient(&self) -> &'q QuotientGroup {
        self.quotient
    }

    pub fn is_principal(&self) -> bool {
        self.base.is_principal()
    }

    /// Value on a coset: chi~(gU) = chi(g), well defined because the base
    /// character is principal on U.
    pub fn evaluate_coset(&self, coset: usize) -> Result<Cyclotomic> {
        let rep = self.quotient.representative(coset);
        self.base.evaluate(&rep)
    }

    /// Character sum over an element of `Z[G/U]`.
    pub fn sum(&self, a: &QuotientRingElement) -> Result<Cyclotomic> {
        let n = self.base.group().exponent();
        let mut acc = vec![0i64; n as usize];
        for (coset, &c) in a.coeffs().iter().enumerate() {
            if c != 0 {
                let rep = self.quotient.representative(coset);
                let slot = &mut acc[self.base.exponent_at(&rep) as usize];
                *slot = slot
                    .checked_add(c)
                    .ok_or(Error::Overflow("induced character sum"))?;
            }
        }
        Cyclotomic::from_exponent_coeffs(n, &acc)
    }

    /// True iff the induced character is principal on the given coset set.
    pub fn is_principal_on_cosets(&self, cosets: &[usize]) -> bool {
        cosets.iter().all(|&c| {
            let rep = self.quotient.representative(c);
            self.base.exponent_at(&rep) == 0
        })
    }
}

/// Induces `c` on the quotient `q`; errors when `c` is not principal on the
/// modulus of `q`.
pub fn induced_character<'q>(c: &Character, q: &'q QuotientGroup) -> Result<InducedCharacter<'q>> {
    if c.group() != q.parent() {
        return Err(Error::SpecMismatch(
            "character belongs to a different group than the quotient".into(),
        ));
    }
    if !c.is_principal_on(q.modulus())? {
        return Err(Error::NotInducible(format!(
            "chi_{} is not principal on the modulus",
            c.index()
        )));
    }
    Ok(InducedCharacter {
        quotient: q,
        base: c.clone(),
    })
}

/// The subgroup sum chi(N), computed by direct summation. By orthogonality
/// it equals |N| when chi is principal on N and 0 otherwise.
pub fn subgroup_sum(c: &Character, n: &Subgroup) -> Result<Cyclotomic> {
    if n.parent() != c.group() {
        return Err(Error::InvalidSubgroup(
            "subgroup belongs to a different group than the character".into(),
        ));
    }
    let order = c.group().exponent();
    let mut acc = vec![0i64; order as usize];
    for u in n.elements() {
        acc[c.exponent_at(&u) as usize] += 1;
    }
    Cyclotomic::from_exponent_coeffs(order, &acc)
}

/// The column sum over an annihilator subgroup: sum of chi(g) as chi ranges
/// over X. By orthogonality it equals |X| when g lies in the dual subgroup
/// and 0 otherwise.
pub fn character_column_sum(g_el: &Element, x: &CharacterSet) -> Result<Cyclotomic> {
    let g = x.group();
    g.check(g_el)?;
    let n = g.exponent();
    let mut acc = vec![0i64; n as usize];
    for chi in x.characters()? {
        acc[chi.exponent_at(g_el) as usize] += 1;
    }
    Cyclotomic::from_exponent_coeffs(n, &acc)
}

/// Reconstructs the unique A with the given character sums via
/// a_g = (1/|G|) sum over chi of chi(A) chi(g^-1). Fails loudly when any
/// reconstructed coefficient is not a rational integer.
pub fn fourier_invert(group: &Group, sums: &BTreeMap<Element, Cyclotomic>) -> Result<RingElement> {
    group.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let v = group.order();
    if sums.len() as u64 != v {
        return Err(Error::InvalidInput(format!(
            "need sums for all {v} characters, got {}",
            sums.len()
        )));
    }
    let n = group.exponent();
    let mut lifted: Vec<(Character, Cyclotomic)> = Vec::with_capacity(sums.len());
    for (a, s) in sums {
        let chi = Character::new(group, a)?;
        let s = if s.order() == n {
            s.clone()
        } else if n % s.order() == 0 {
            s.lift_to(n)?
        } else {
            return Err(Error::InvalidInput(format!(
                "character sum of order {} does not embed in order {n}",
                s.order()
            )));
        };
        lifted.push((chi, s));
    }
    let mut terms = Vec::new();
    for gi in 0..v {
        let g_inv = group.element_at(group.inv_idx(gi));
        let mut acc = vec![0i64; n as usize];
        for (chi, s) in &lifted {
            let shift = chi.exponent_at(&g_inv) as usize;
            for (i, &c) in s.coeffs().iter().enumerate() {
                if c != 0 {
                    let slot = &mut acc[(i + shift) % n as usize];
                    *slot = slot
                        .checked_add(c)
                        .ok_or(Error::Overflow("fourier inversion"))?;
                }
            }
        }
        let total = Cyclotomic::from_exponent_coeffs(n, &acc)?;
        let scalar = total.as_integer().ok_or_else(|| {
            Error::InconsistentSpectrum(format!(
                "coefficient at {} reconstructs to the irrational value {total}",
                group.element_at(gi)
            ))
        })?;
        if scalar.rem_euclid(v as i64) != 0 {
            return Err(Error::InconsistentSpectrum(format!(
                "coefficient at {} reconstructs to {scalar}/{v}, not an integer",
                group.element_at(gi)
            )));
        }
        let coeff = scalar / v as i64;
        if coeff != 0 {
            terms.push((group.element_at(gi), coeff));
        }
    }
    RingElement::from_terms(group, &terms)
}

/// Character sums of `a` for every character, in index order. Runs in
/// parallel under the `parallel` feature.
pub fn all_character_sums(group: &Group, a: &RingElement) -> Result<Vec<(Element, Cyclotomic)>> {
    all_sums_impl(group, a, false)
}

/// Sequential twin of [`all_character_sums`]; bit-identical results.
pub fn all_character_sums_seq(
    group: &Group,
    a: &RingElement,
) -> Result<Vec<(Element, Cyclotomic)>> {
    all_sums_impl(group, a, true)
}

fn all_sums_impl(
    group: &Group,
    a: &RingElement,
    force_seq: bool,
) -> Result<Vec<(Element, Cyclotomic)>> {
    if a.group() != group {
        return Err(Error::SpecMismatch(
            "ring element belongs to a different group".into(),
        ));
    }
    group.cap_check(DEFAULT_ENUMERATION_CAP)?;
    let v = group.order();
    let n = group.exponent();
    let support: Vec<(Element, i64)> = a.terms().collect();
    let kernel = |ci: u64| -> Result<(Element, Cyclotomic)> {
        let idx = group.element_at(ci);
        let chi = Character::new(group, &idx)?;
        let mut acc = vec![0i64; n as usize];
        for (e, c) in &support {
            let slot = &mut acc[chi.exponent_at(e) as usize];
            *slot = slot.checked_add(*c).ok_or(Error::Overflow("character sum"))?;
        }
        Ok((idx, Cyclotomic::from_exponent_coeffs(n, &acc)?))
    };
    let rows = if force_seq {
        exec::map_range_seq(v, kernel)
    } else {
        exec::map_range(v, kernel)
    };
    rows.into_iter().collect()
}

/// A materialized character table: the exponent e(a, g) with
/// chi_a(g) = zeta_n^e for every pair, in enumeration order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Group,
    exponents: Vec<u32>,
}

impl CharacterTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn exponent(&self, char_idx: u64, elem_idx: u64) -> u32 {
        self.exponents[(char_idx * self.group.order() + elem_idx) as usize]
    }

    pub fn value(&self, char_idx: u64, elem_idx: u64) -> Result<Cyclotomic> {
        Cyclotomic::root_power(
            self.group.exponent(),
            self.exponent(char_idx, elem_idx) as i64,
        )
    }
}

/// Materializes the full character table, capped (default 4096) because the
/// table is quadratic in the group order.
pub fn character_table(group: &Group, cap: Option<u64>) -> Result<CharacterTable> {
    let cap = cap.unwrap_or(DEFAULT_TABLE_CAP);
    if group.order() > cap {
        return Err(Error::SizeLimit {
            what: "character table",
            requested: group.order() as u128,
            limit: cap as u128,
        });
    }
    let v = group.order();
    let elems = group.enumerate_capped(cap)?;
    let rows = exec::map_range(v, |ci| {
        let chi = Character::new(group, &group.element_at(ci)).expect("valid index");
        elems
            .iter()
            .map(|e| chi.exponent_at(e) as u32)
            .collect::<Vec<u32>>()
    });
    Ok(CharacterTable {
        group: group.clone(),
        exponents: rows.concat(),
    })
}
