//! Finite abelian groups presented as explicit products of cyclic groups,
//! with subgroups, quotients, and the canonical projection.
//!
//! A group `Z_{n1} x ... x Z_{nt}` is a [`Group`] context value; its elements
//! are residue tuples stored reduced modulo the component orders. Elements do
//! not carry a back-reference to their group: every operation lives on the
//! `Group` and validates the elements it is given. Two groups are equal only
//! if their order sequences match; no invariant-factor normalization is
//! performed.
//!
//! All values are immutable after construction and safe to share across
//! threads.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default cap on explicit enumeration (elements of a group, subgroup
/// closures, coset tables).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// An element of a finite abelian group: a tuple of residues, one per cyclic
/// component, always stored reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// A finite abelian group `Z_{n1} x ... x Z_{nt}` given by its component
/// orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    orders: Vec<u64>,
    order: u64,
    exponent: u64,
    /// Mixed-radix strides: index of (x_1,...,x_t) is sum x_i * strides[i],
    /// so index order equals lexicographic order on residue tuples.
    strides: Vec<u64>,
}

impl Group {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Domain("a group needs at least one cyclic component".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::Domain(format!("component order must be >= 1, got {bad}")));
        }
        let mut order: u64 = 1;
        for &n in &orders {
            order = order
                .checked_mul(n)
                .ok_or(Error::Overflow("group order"))?;
        }
        let mut exponent: u64 = 1;
        for &n in &orders {
            exponent = exponent.lcm(&n);
        }
        let mut strides = vec![1u64; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Ok(Group {
            orders,
            order,
            exponent,
            strides,
        })
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Group::new(vec![n])
    }

    /// Elementary abelian group `Z_p^n`.
    pub fn elementary(p: u64, n: u32) -> Result<Self> {
        Group::new(vec![p; n as usize])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The smallest positive n with g^n = identity for every g.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.orders.len()])
    }

    /// Builds an element from (possibly unreduced, possibly negative)
    /// residues. Errors when the component count does not match.
    pub fn element(&self, residues: &[i64]) -> Result<Element> {
        if residues.len() != self.orders.len() {
            return Err(Error::SpecMismatch(format!(
                "element has {} components, group has {}",
                residues.len(),
                self.orders.len()
            )));
        }
        Ok(Element(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    /// Checks that `e` is a reduced residue tuple of this group.
    pub fn check(&self, e: &Element) -> Result<()> {
        if e.0.len() != self.orders.len() {
            return Err(Error::SpecMismatch(format!(
                "element {e} has {} components, group has {}",
                e.0.len(),
                self.orders.len()
            )));
        }
        for (i, (&r, &n)) in e.0.iter().zip(&self.orders).enumerate() {
            if r >= n {
                return Err(Error::SpecMismatch(format!(
                    "residue {r} at position {i} exceeds component order {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| {
                    let s = x + y;
                    if s >= n {
                        s - n
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        self.pow(a, -1)
    }

    /// g^t for any integer t (negative allowed). Componentwise this is
    /// t*x_i with t reduced modulo the component order first.
    pub fn pow(&self, a: &Element, t: i64) -> Result<Element> {
        self.check(a)?;
        Ok(Element(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let t = t.rem_euclid(n as i64) as u64;
                    ((x as u128 * t as u128) % n as u128) as u64
                })
                .collect(),
        ))
    }

    /// Lexicographic index of an element, in `0..order()`.
    pub fn index_of(&self, e: &Element) -> Result<u64> {
        self.check(e)?;
        Ok(self.index_unchecked(e))
    }

    pub(crate) fn index_unchecked(&self, e: &Element) -> u64 {
        e.0.iter().zip(&self.strides).map(|(&x, &s)| x * s).sum()
    }

    /// The element with the given lexicographic index. Panics when the index
    /// is out of range.
    pub fn element_at(&self, mut idx: u64) -> Element {
        assert!(idx < self.order, "element index {idx} out of range");
        let mut res = vec![0u64; self.orders.len()];
        for (i, &s) in self.strides.iter().enumerate() {
            res[i] = idx / s;
            idx %= s;
        }
        Element(res)
    }

    pub(crate) fn mul_idx(&self, i: u64, j: u64) -> u64 {
        let mut out = 0;
        let mut i = i;
        let mut j = j;
        for (k, &s) in self.strides.iter().enumerate() {
            let a = i / s;
            let b = j / s;
            i %= s;
            j %= s;
            let n = self.orders[k];
            let c = {
                let t = a + b;
                if t >= n {
                    t - n
                } else {
                    t
                }
            };
            out += c * s;
        }
        out
    }

    pub(crate) fn inv_idx(&self, i: u64) -> u64 {
        let mut out = 0;
        let mut i = i;
        for (k, &s) in self.strides.iter().enumerate() {
            let a = i / s;
            i %= s;
            let n = self.orders[k];
            let c = if a == 0 { 0 } else { n - a };
            out += c * s;
        }
        out
    }

    pub(crate) fn pow_idx(&self, i: u64, t: i64) -> u64 {
        let mut out = 0;
        let mut i = i;
        for (k, &s) in self.strides.iter().enumerate() {
            let a = i / s;
            i %= s;
            let n = self.orders[k];
            let t = t.rem_euclid(n as i64) as u64;
            out += ((a as u128 * t as u128) % n as u128) as u64 * s;
        }
        out
    }

    /// All elements in lexicographic order of residue tuples.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        self.enumerate_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_capped(&self, cap: u64) -> Result<Vec<Element>> {
        self.cap_check(cap)?;
        Ok((0..self.order).map(|i| self.element_at(i)).collect())
    }

    pub(crate) fn cap_check(&self, cap: u64) -> Result<()> {
        if self.order > cap {
            return Err(Error::SizeLimit {
                what: "group enumeration",
                requested: self.order as u128,
                limit: cap as u128,
            });
        }
        Ok(())
    }

    /// Smallest subgroup containing all generators, by saturation. The empty
    /// generator list yields the trivial subgroup.
    pub fn subgroup_from_generators(&self, gens: &[Element]) -> Result<Subgroup> {
        self.subgroup_from_generators_capped(gens, DEFAULT_ENUMERATION_CAP)
    }

    pub fn subgroup_from_generators_capped(&self, gens: &[Element], cap: u64) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let mut seen: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
        seen.insert(0);
        let gen_idx: Vec<u64> = gens.iter().map(|g| self.index_unchecked(g)).collect();
        let mut frontier: Vec<u64> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in &gen_idx {
                let y = self.mul_idx(x, g);
                if seen.insert(y) {
                    if seen.len() as u64 > cap {
                        return Err(Error::SizeLimit {
                            what: "subgroup closure",
                            requested: seen.len() as u128,
                            limit: cap as u128,
                        });
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            parent: self.clone(),
            indices: seen.into_iter().collect(),
            generators: Some(gens.to_vec()),
        })
    }

    /// The cyclic subgroup generated by a single element.
    pub fn cyclic_subgroup(&self, a: &Element) -> Result<Subgroup> {
        self.subgroup_from_generators(std::slice::from_ref(a))
    }

    /// Builds a subgroup from an explicit element list, validating closure.
    pub fn subgroup_from_elements(&self, elems: &[Element]) -> Result<Subgroup> {
        let mut indices: Vec<u64> = Vec::with_capacity(elems.len());
        for e in elems {
            self.check(e)?;
            indices.push(self.index_unchecked(e));
        }
        indices.sort_unstable();
        indices.dedup();
        if indices.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("identity element is missing".into()));
        }
        let s = Subgroup {
            parent: self.clone(),
            indices,
            generators: None,
        };
        for &i in &s.indices {
            if !s.contains_index(self.inv_idx(i)) {
                return Err(Error::InvalidSubgroup(format!(
                    "not closed under inversion at {}",
                    self.element_at(i)
                )));
            }
            for &j in &s.indices {
                if !s.contains_index(self.mul_idx(i, j)) {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under the group operation at {} * {}",
                        self.element_at(i),
                        self.element_at(j)
                    )));
                }
            }
        }
        Ok(s)
    }

    /// The hyperplane `H_a = { x : a.x = 0 }` of an elementary abelian group
    /// `Z_p^n`, an index-p subgroup determined by a nonidentity `a`.
    pub fn hyperplane(&self, a: &Element) -> Result<Subgroup> {
        let p = self.orders[0];
        if !is_prime(p) || self.orders.iter().any(|&n| n != p) {
            return Err(Error::Domain(format!(
                "hyperplanes need an elementary abelian group, got Z{}",
                self.orders
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(" x Z")
            )));
        }
        self.check(a)?;
        if *a == self.identity() {
            return Err(Error::DegenerateIndex(
                "the hyperplane index must be a nonidentity element".into(),
            ));
        }
        self.cap_check(DEFAULT_ENUMERATION_CAP)?;
        let indices: Vec<u64> = (0..self.order)
            .filter(|&i| {
                let x = self.element_at(i);
                let dot: u128 = a
                    .0
                    .iter()
                    .zip(&x.0)
                    .map(|(&ai, &xi)| ai as u128 * xi as u128)
                    .sum();
                dot % p as u128 == 0
            })
            .collect();
        Ok(Subgroup {
            parent: self.clone(),
            indices,
            generators: None,
        })
    }

    /// Forms the quotient group G/U with lexicographically least coset
    /// representatives.
    pub fn quotient(&self, u: &Subgroup) -> Result<QuotientGroup> {
        if u.parent != *self {
            return Err(Error::InvalidSubgroup(
                "the modulus is a subgroup of a different group".into(),
            ));
        }
        self.cap_check(DEFAULT_ENUMERATION_CAP)?;
        let order = self.order as usize;
        const UNASSIGNED: u32 = u32::MAX;
        let mut rep_of = vec![UNASSIGNED; order];
        let mut reps = Vec::new();
        for i in 0..self.order {
            if rep_of[i as usize] != UNASSIGNED {
                continue;
            }
            // i is the least element of a fresh coset: every smaller member
            // would already have marked it.
            let c = reps.len() as u32;
            reps.push(i);
            for &u_idx in &u.indices {
                rep_of[self.mul_idx(i, u_idx) as usize] = c;
            }
        }
        Ok(QuotientGroup {
            parent: self.clone(),
            modulus: u.clone(),
            reps,
            rep_of,
        })
    }
}

/// A subgroup stored as its explicitly enumerated, canonically ordered
/// element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Group,
    /// Element indices, ascending; always contains 0 (the identity).
    indices: Vec<u64>,
    generators: Option<Vec<Element>>,
}

impl Subgroup {
    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn elements(&self) -> Vec<Element> {
        self.indices.iter().map(|&i| self.parent.element_at(i)).collect()
    }

    pub fn generators(&self) -> Option<&[Element]> {
        self.generators.as_deref()
    }

    pub fn contains(&self, e: &Element) -> Result<bool> {
        self.parent.check(e)?;
        Ok(self.contains_index(self.parent.index_unchecked(e)))
    }

    pub(crate) fn contains_index(&self, i: u64) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub(crate) fn indices(&self) -> &[u64] {
        &self.indices
    }
}

/// A quotient group G/U, represented by coset representatives and a total
/// element-to-coset map rather than re-expressed as a product of cyclics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    parent: Group,
    modulus: Subgroup,
    /// Lexicographically least element of each coset, ascending.
    reps: Vec<u64>,
    /// Element index -> coset index, total on the parent.
    rep_of: Vec<u32>,
}

impl QuotientGroup {
    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn modulus(&self) -> &Subgroup {
        &self.modulus
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives in canonical order.
    pub fn representatives(&self) -> Vec<Element> {
        self.reps.iter().map(|&i| self.parent.element_at(i)).collect()
    }

    pub fn representative(&self, coset: usize) -> Element {
        self.parent.element_at(self.reps[coset])
    }

    /// The canonical projection g -> gU, as a coset index.
    pub fn project(&self, g: &Element) -> Result<usize> {
        self.parent.check(g)?;
        Ok(self.project_index(self.parent.index_unchecked(g)))
    }

    pub(crate) fn project_index(&self, i: u64) -> usize {
        self.rep_of[i as usize] as usize
    }

    /// The quotient group operation on coset indices.
    pub fn coset_op(&self, a: usize, b: usize) -> usize {
        self.project_index(self.parent.mul_idx(self.reps[a], self.reps[b]))
    }

    pub fn coset_inv(&self, a: usize) -> usize {
        self.project_index(self.parent.inv_idx(self.reps[a]))
    }

    pub fn identity_coset(&self) -> usize {
        self.rep_of[0] as usize
    }

    /// The image of a subgroup of the parent (containing the modulus or not)
    /// as a sorted set of coset indices.
    pub fn project_subgroup(&self, s: &Subgroup) -> Result<Vec<usize>> {
        if s.parent != self.parent {
            return Err(Error::InvalidSubgroup(
                "subgroup belongs to a different group".into(),
            ));
        }
        let mut out: Vec<usize> = s.indices.iter().map(|&i| self.project_index(i)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Deterministic trial-division primality test; inputs here are desk-scale.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
