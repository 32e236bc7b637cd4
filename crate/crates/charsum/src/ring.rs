//! The integer group ring `Z[G]`: sparse formal sums of group elements with
//! convolution, the power maps A^(t), translation, and projection to
//! quotient groups.
//!
//! Coefficients are exact i64 integers (negative values are permitted, e.g.
//! for G - N); convolution accumulates in i128 and fails loudly on overflow.
//! The sparse map is keyed by canonical element index, so iteration order is
//! deterministic. Convolution falls back to a dense kernel when one operand's
//! support exceeds half the group order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group, QuotientGroup, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    group: Group,
    /// element index -> nonzero coefficient
    coeffs: BTreeMap<u64, i64>,
}

impl RingElement {
    pub fn zero(group: &Group) -> Self {
        RingElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The indicator of a subset: coefficient 1 on each member.
    pub fn from_subset(group: &Group, set: &[Element]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for e in set {
            let idx = group.index_of(e)?;
            if coeffs.insert(idx, 1).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element {e} in set")));
            }
        }
        Ok(RingElement {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn from_terms(group: &Group, terms: &[(Element, i64)]) -> Result<Self> {
        let mut coeffs: BTreeMap<u64, i64> = BTreeMap::new();
        for (e, c) in terms {
            let idx = group.index_of(e)?;
            let slot = coeffs.entry(idx).or_insert(0);
            *slot = slot.checked_add(*c).ok_or(Error::Overflow("ring coefficient"))?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(RingElement {
            group: group.clone(),
            coeffs,
        })
    }

    /// c times the identity element.
    pub fn constant(group: &Group, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(0, c);
        }
        RingElement {
            group: group.clone(),
            coeffs,
        }
    }

    /// The indicator of the whole group (the element usually written G).
    pub fn full_group(group: &Group) -> Result<Self> {
        group.cap_check(DEFAULT_ENUMERATION_CAP)?;
        Ok(RingElement {
            group: group.clone(),
            coeffs: (0..group.order()).map(|i| (i, 1)).collect(),
        })
    }

    /// The indicator of a subgroup viewed inside `Z[G]`.
    pub fn from_subgroup(s: &crate::group::Subgroup) -> Self {
        RingElement {
            group: s.parent().clone(),
            coeffs: s.indices().iter().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeff(&self, e: &Element) -> Result<i64> {
        let idx = self.group.index_of(e)?;
        Ok(self.coeff_idx(idx))
    }

    pub(crate) fn coeff_idx(&self, idx: u64) -> i64 {
        self.coeffs.get(&idx).copied().unwrap_or(0)
    }

    /// Terms in canonical element order.
    pub fn terms(&self) -> impl Iterator<Item = (Element, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (self.group.element_at(i), c))
    }

    pub(crate) fn index_terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True iff every coefficient is 0 or 1.
    pub fn is_set_indicator(&self) -> bool {
        self.coeffs.values().all(|&c| c == 1)
    }

    /// Sum of all coefficients; the size of the associated multiset.
    pub fn augmentation(&self) -> i64 {
        let total: i128 = self.coeffs.values().map(|&c| c as i128).sum();
        i64::try_from(total).expect("augmentation overflow")
    }

    fn same_group(&self, rhs: &Self) -> Result<()> {
        if self.group != rhs.group {
            return Err(Error::SpecMismatch(
                "ring elements belong to different groups".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_group(rhs)?;
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &rhs.coeffs {
            let slot = coeffs.entry(i).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow("ring sum"))?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(-1)?)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        if c == 0 {
            return Ok(Self::zero(&self.group));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&i, &x)| Ok((i, x.checked_mul(c).ok_or(Error::Overflow("ring scale"))?)))
            .collect::<Result<_>>()?;
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// Exact convolution in `Z[G]`; the multiset sumset when both inputs are
    /// nonnegative.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, false)
    }

    /// Sequential reference convolution; bit-identical to [`Self::mul`].
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, true)
    }

    fn mul_impl(&self, rhs: &Self, force_seq: bool) -> Result<Self> {
        self.same_group(rhs)?;
        let v = self.group.order();
        let max_support = self.coeffs.len().max(rhs.coeffs.len()) as u64;
        if v <= DEFAULT_ENUMERATION_CAP && max_support * 2 > v {
            // dense path: the larger operand becomes the dense side
            if self.coeffs.len() >= rhs.coeffs.len() {
                rhs.mul_dense(self, force_seq)
            } else {
                self.mul_dense(rhs, force_seq)
            }
        } else {
            self.mul_sparse(rhs)
        }
    }

    /// out[k] = sum over sparse self of a_i * dense_rhs[k * i^-1].
    fn mul_dense(&self, rhs: &Self, force_seq: bool) -> Result<Self> {
        let g = &self.group;
        let v = g.order();
        let mut dense = vec![0i64; v as usize];
        for (&i, &c) in &rhs.coeffs {
            dense[i as usize] = c;
        }
        let sparse: Vec<(u64, i64)> = self.coeffs.iter().map(|(&i, &c)| (i, c)).collect();
        let inv_sparse: Vec<(u64, i64)> =
            sparse.iter().map(|&(i, c)| (g.inv_idx(i), c)).collect();
        let kernel = |k: u64| -> i128 {
            inv_sparse
                .iter()
                .map(|&(inv_i, c)| c as i128 * dense[g.mul_idx(k, inv_i) as usize] as i128)
                .sum()
        };
        let raw: Vec<i128> = if force_seq {
            exec::map_range_seq(v, kernel)
        } else {
            exec::map_range(v, kernel)
        };
        let mut coeffs = BTreeMap::new();
        for (k, val) in raw.into_iter().enumerate() {
            if val != 0 {
                coeffs.insert(
                    k as u64,
                    i64::try_from(val).map_err(|_| Error::Overflow("ring convolution"))?,
                );
            }
        }
        Ok(RingElement {
            group: g.clone(),
            coeffs,
        })
    }

    fn mul_sparse(&self, rhs: &Self) -> Result<Self> {
        let g = &self.group;
        let mut acc: BTreeMap<u64, i128> = BTreeMap::new();
        for (&i, &a) in &self.coeffs {
            for (&j, &b) in &rhs.coeffs {
                *acc.entry(g.mul_idx(i, j)).or_insert(0) += a as i128 * b as i128;
            }
        }
        let mut coeffs = BTreeMap::new();
        for (k, val) in acc {
            if val != 0 {
                coeffs.insert(
                    k,
                    i64::try_from(val).map_err(|_| Error::Overflow("ring convolution"))?,
                );
            }
        }
        Ok(RingElement {
            group: g.clone(),
            coeffs,
        })
    }

    /// A^(t): transports each coefficient along g -> g^t, accumulating on
    /// collisions. t = -1 gives the involution A^(-1).
    pub fn power_map(&self, t: i64) -> Self {
        let g = &self.group;
        let mut coeffs: BTreeMap<u64, i64> = BTreeMap::new();
        for (&i, &c) in &self.coeffs {
            let j = g.pow_idx(i, t);
            let slot = coeffs.entry(j).or_insert(0);
            *slot = slot.checked_add(c).expect("power_map coefficient overflow");
        }
        coeffs.retain(|_, c| *c != 0);
        RingElement {
            group: g.clone(),
            coeffs,
        }
    }

    /// The right translate hA: the coefficient of g in the result is the
    /// coefficient of g h^(-1) in A.
    pub fn translate(&self, h: &Element) -> Result<Self> {
        let hi = self.group.index_of(h)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&i, &c)| (self.group.mul_idx(i, hi), c))
            .collect();
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }
}

impl fmt::Display for RingElement {
    /// Monomial-list syntax: the identity coefficient prints bare, the rest
    /// as `c*(tuple)` (or `c*g^k` for cyclic groups).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let cyclic = self.group.orders().len() == 1;
        let mut first = true;
        for (&i, &c) in &self.coeffs {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else if cyclic {
                let e = self.group.element_at(i);
                let k = e.residues()[0];
                if k == 1 {
                    write!(f, "{mag}*g")?;
                } else {
                    write!(f, "{mag}*g^{k}")?;
                }
            } else {
                write!(f, "{}*{}", mag, self.group.element_at(i))?;
            }
        }
        Ok(())
    }
}

/// An element of `Z[G/U]`, dense over coset indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRingElement {
    coeffs: Vec<i64>,
}

impl QuotientRingElement {
    pub fn zero(q: &QuotientGroup) -> Self {
        QuotientRingElement {
            coeffs: vec![0; q.coset_count()],
        }
    }

    pub fn from_coset_coeffs(coeffs: Vec<i64>) -> Self {
        QuotientRingElement { coeffs }
    }

    /// The indicator of the whole quotient group.
    pub fn full(q: &QuotientGroup) -> Self {
        QuotientRingElement {
            coeffs: vec![1; q.coset_count()],
        }
    }

    /// c times the identity coset.
    pub fn constant(q: &QuotientGroup, c: i64) -> Self {
        let mut coeffs = vec![0; q.coset_count()];
        coeffs[q.identity_coset()] = c;
        QuotientRingElement { coeffs }
    }

    /// The indicator of a set of coset indices.
    pub fn from_coset_set(q: &QuotientGroup, cosets: &[usize]) -> Self {
        let mut coeffs = vec![0; q.coset_count()];
        for &c in cosets {
            coeffs[c] = 1;
        }
        QuotientRingElement { coeffs }
    }

    /// Coefficients indexed by coset, in representative order.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn augmentation(&self) -> i64 {
        let total: i128 = self.coeffs.iter().map(|&c| c as i128).sum();
        i64::try_from(total).expect("augmentation overflow")
    }

    pub fn is_set_indicator(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0 || c == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_len(&self, q: &QuotientGroup) -> Result<()> {
        if self.coeffs.len() != q.coset_count() {
            return Err(Error::SpecMismatch(
                "quotient ring element does not match the quotient group".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.coeffs.len() != rhs.coeffs.len() {
            return Err(Error::SpecMismatch(
                "quotient ring elements of different quotients".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("quotient ring sum")))
            .collect::<Result<_>>()?;
        Ok(QuotientRingElement { coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(-1)?)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| x.checked_mul(c).ok_or(Error::Overflow("quotient ring scale")))
            .collect::<Result<_>>()?;
        Ok(QuotientRingElement { coeffs })
    }

    /// Convolution in `Z[G/U]` via the coset operation of `q`.
    pub fn mul(&self, q: &QuotientGroup, rhs: &Self) -> Result<Self> {
        self.check_len(q)?;
        rhs.check_len(q)?;
        let m = q.coset_count();
        let mut acc = vec![0i128; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                acc[q.coset_op(i, j)] += a as i128 * b as i128;
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|v| i64::try_from(v).map_err(|_| Error::Overflow("quotient ring convolution")))
            .collect::<Result<_>>()?;
        Ok(QuotientRingElement { coeffs })
    }

    /// The involution A^(-1) over the quotient.
    pub fn involution(&self, q: &QuotientGroup) -> Result<Self> {
        self.check_len(q)?;
        let mut coeffs = vec![0i64; self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[q.coset_inv(i)] = c;
        }
        Ok(QuotientRingElement { coeffs })
    }
}

/// The projection rho: `Z[G]` -> `Z[G/U]`. The coefficient of a coset is the
/// sum of the parent coefficients over its members; augmentation is
/// preserved.
pub fn project_ring(q: &QuotientGroup, a: &RingElement) -> Result<QuotientRingElement> {
    if a.group() != q.parent() {
        return Err(Error::SpecMismatch(
            "ring element does not live over the parent of the quotient".into(),
        ));
    }
    let mut coeffs = vec![0i64; q.coset_count()];
    for (i, c) in a.index_terms() {
        let slot = &mut coeffs[q.project_index(i)];
        *slot = slot.checked_add(c).ok_or(Error::Overflow("ring projection"))?;
    }
    Ok(QuotientRingElement { coeffs })
}
