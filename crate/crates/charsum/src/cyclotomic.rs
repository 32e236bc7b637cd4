//! Exact arithmetic in the ring of cyclotomic integers `Z[zeta_n]`.
//!
//! Values are kept in canonical form: the residue of a polynomial in zeta_n
//! modulo the n-th cyclotomic polynomial, expressed over the power basis
//! 1, zeta, ..., zeta^(phi(n)-1). Canonical form is unique, so equality is a
//! plain coefficient comparison. Mixed-order arithmetic lifts both operands
//! to the lcm of their orders via zeta_m = zeta_lcm^(lcm/m).
//!
//! Coefficients are i64 with all intermediate arithmetic in i128 and checked
//! narrowing; overflow fails loudly instead of wrapping.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Cap on the cyclotomic order n for which Phi_n is computed.
pub const MAX_CYCLOTOMIC_ORDER: u64 = 1 << 16;

/// Euler's totient by trial-division factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial Phi_n: monic with integer coefficients,
/// stored in ascending degree (length phi(n) + 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    order: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicPoly {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in ascending degree; the leading coefficient is 1.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

static PHI_CACHE: LazyLock<RwLock<HashMap<u64, Arc<CyclotomicPoly>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Computes Phi_n by exact division: Phi_n = (x^n - 1) / prod of Phi_d over
/// proper divisors d of n. Results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Result<Arc<CyclotomicPoly>> {
    if n < 1 {
        return Err(Error::Domain("cyclotomic order must be >= 1".into()));
    }
    if n > MAX_CYCLOTOMIC_ORDER {
        return Err(Error::SizeLimit {
            what: "cyclotomic polynomial order",
            requested: n as u128,
            limit: MAX_CYCLOTOMIC_ORDER as u128,
        });
    }
    if let Some(hit) = PHI_CACHE.read().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if PHI_CACHE.read().unwrap().contains_key(&d) {
            continue;
        }
        // dividend x^d - 1
        let mut dividend = vec![0i128; d as usize + 1];
        dividend[0] = -1;
        dividend[d as usize] = 1;
        let mut divisor = vec![1i128];
        for e in 1..d {
            if d % e == 0 {
                let phi_e = PHI_CACHE.read().unwrap().get(&e).unwrap().clone();
                let rhs: Vec<i128> = phi_e.coeffs.iter().map(|&c| c as i128).collect();
                divisor = poly_mul(&divisor, &rhs)?;
            }
        }
        let quotient = poly_divide_exact(&dividend, &divisor)?;
        let coeffs: Vec<i64> = quotient
            .iter()
            .map(|&c| narrow(c, "cyclotomic polynomial coefficient"))
            .collect::<Result<_>>()?;
        let poly = Arc::new(CyclotomicPoly { order: d, coeffs });
        PHI_CACHE.write().unwrap().entry(d).or_insert(poly);
    }
    Ok(PHI_CACHE.read().unwrap().get(&n).unwrap().clone())
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Exact polynomial product with checked arithmetic.
fn poly_mul(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or(Error::Overflow("polynomial product"))?;
            out[i + j] = out[i + j]
                .checked_add(t)
                .ok_or(Error::Overflow("polynomial product"))?;
        }
    }
    Ok(out)
}

/// Divides by a monic polynomial, requiring a zero remainder.
fn poly_divide_exact(dividend: &[i128], divisor: &[i128]) -> Result<Vec<i128>> {
    assert_eq!(*divisor.last().unwrap(), 1, "divisor must be monic");
    let mut rem = dividend.to_vec();
    let dd = divisor.len() - 1;
    let mut quot = vec![0i128; rem.len().saturating_sub(dd)];
    for pos in (dd..rem.len()).rev() {
        let c = rem[pos];
        if c == 0 {
            continue;
        }
        quot[pos - dd] = c;
        for (j, &dj) in divisor.iter().enumerate() {
            let t = c.checked_mul(dj).ok_or(Error::Overflow("polynomial division"))?;
            rem[pos - dd + j] = rem[pos - dd + j]
                .checked_sub(t)
                .ok_or(Error::Overflow("polynomial division"))?;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return Err(Error::InvalidInput("polynomial division left a remainder".into()));
    }
    Ok(quot)
}

/// An exact element of `Z[zeta_n]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    /// Length phi(order): coefficients over 1, zeta, ..., zeta^(phi-1).
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Result<Self> {
        Self::from_integer(n, 0)
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u64, c: i64) -> Result<Self> {
        let phi = cyclotomic_polynomial(n)?.degree();
        let mut coeffs = vec![0i64; phi];
        coeffs[0] = c;
        Ok(Cyclotomic { order: n, coeffs })
    }

    /// The canonical form of zeta_n^(k mod n).
    pub fn root_power(n: u64, k: i64) -> Result<Self> {
        let phi = cyclotomic_polynomial(n)?;
        let k = k.rem_euclid(n as i64) as usize;
        if k < phi.degree() {
            let mut coeffs = vec![0i64; phi.degree()];
            coeffs[k] = 1;
            return Ok(Cyclotomic { order: n, coeffs });
        }
        let mut exps = vec![0i64; n as usize];
        exps[k] = 1;
        Self::from_exponent_coeffs(n, &exps)
    }

    /// Canonicalizes an exponent-coefficient vector: entry e is the
    /// coefficient of zeta_n^e. The vector may be any length; exponents are
    /// taken modulo n.
    pub fn from_exponent_coeffs(n: u64, exps: &[i64]) -> Result<Self> {
        let phi = cyclotomic_polynomial(n)?;
        let mut folded = vec![0i128; n as usize];
        for (e, &c) in exps.iter().enumerate() {
            if c != 0 {
                let slot = e % n as usize;
                folded[slot] += c as i128;
            }
        }
        Self::reduce(n, &phi, folded)
    }

    fn reduce(n: u64, phi: &CyclotomicPoly, mut buf: Vec<i128>) -> Result<Self> {
        let deg = phi.degree();
        for pos in (deg..buf.len()).rev() {
            let c = buf[pos];
            if c == 0 {
                continue;
            }
            buf[pos] = 0;
            // x^pos = x^(pos-deg) * (x^deg - Phi_n)
            for (j, &pj) in phi.coeffs.iter().take(deg).enumerate() {
                let t = c
                    .checked_mul(pj as i128)
                    .ok_or(Error::Overflow("cyclotomic reduction"))?;
                buf[pos - deg + j] = buf[pos - deg + j]
                    .checked_sub(t)
                    .ok_or(Error::Overflow("cyclotomic reduction"))?;
            }
        }
        buf.truncate(deg);
        buf.resize(deg, 0);
        let coeffs = buf
            .into_iter()
            .map(|c| narrow(c, "cyclotomic coefficient"))
            .collect::<Result<_>>()?;
        Ok(Cyclotomic { order: n, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coefficients over the power basis.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer value, if the canonical form is a constant.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value at a multiple of its order.
    pub fn lift_to(&self, m: u64) -> Result<Self> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot lift order {} to non-multiple {}",
                self.order, m
            )));
        }
        let step = (m / self.order) as usize;
        let mut exps = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            exps[i * step] = c;
        }
        Self::from_exponent_coeffs(m, &exps)
    }

    fn coerced(&self, other: &Self) -> Result<(Self, Self)> {
        if self.order == other.order {
            return Ok((self.clone(), other.clone()));
        }
        let l = self.order.lcm(&other.order);
        Ok((self.lift_to(l)?, other.lift_to(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.coerced(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| x.checked_add(y).ok_or(Error::Overflow("cyclotomic sum")))
            .collect::<Result<_>>()?;
        Ok(Cyclotomic { order: a.order, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.coerced(other)?;
        let phi = cyclotomic_polynomial(a.order)?;
        let prod = poly_mul(
            &a.coeffs.iter().map(|&c| c as i128).collect::<Vec<_>>(),
            &b.coeffs.iter().map(|&c| c as i128).collect::<Vec<_>>(),
        )?;
        Self::reduce(a.order, &phi, prod)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| x.checked_mul(c).ok_or(Error::Overflow("cyclotomic scale")))
            .collect::<Result<_>>()?;
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    /// The image under zeta -> zeta^(-1); complex conjugation, an involution.
    pub fn conjugate(&self) -> Self {
        self.map_exponents(|i, n| (n - i % n) % n)
            .expect("conjugation cannot overflow")
    }

    /// The ring automorphism zeta -> zeta^t for gcd(t, n) = 1.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let n = self.order;
        let tm = t.rem_euclid(n as i64) as u64;
        if tm.gcd(&n) != 1 {
            return Err(Error::NonInvertibleMap { t, n });
        }
        self.map_exponents(|i, n| (i as u128 * tm as u128 % n as u128) as u64)
    }

    fn map_exponents(&self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        let n = self.order;
        let mut exps = vec![0i64; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                exps[f(i as u64, n) as usize] += c;
            }
        }
        Self::from_exponent_coeffs(n, &exps)
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("cyclotomic addition failed")
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("cyclotomic subtraction failed")
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("cyclotomic product failed")
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.checked_scale(-1).expect("cyclotomic negation failed")
    }
}

impl fmt::Display for Cyclotomic {
    /// Integer-combination-of-roots form: plain integers when rational,
    /// `c*zN^k` when the value is an integer multiple of a single root
    /// (smallest such k wins), otherwise the canonical basis expansion.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        let n = self.order;
        for k in 1..n {
            let basis = Cyclotomic::root_power(n, k as i64).map_err(|_| fmt::Error)?;
            if let Some(c) = multiple_of(&self.coeffs, &basis.coeffs) {
                return write!(f, "{}", term(c, n, k));
            }
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if i == 0 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{}", term(c, n, i as u64))?;
                }
                first = false;
            } else {
                let sign = if c < 0 { " - " } else { " + " };
                let mag = c.unsigned_abs() as i64;
                if i == 0 {
                    write!(f, "{sign}{mag}")?;
                } else {
                    write!(f, "{}{}", sign, term(mag, n, i as u64))?;
                }
            }
        }
        Ok(())
    }
}

fn term(c: i64, n: u64, k: u64) -> String {
    let root = if k == 1 {
        format!("z{n}")
    } else {
        format!("z{n}^{k}")
    };
    match c {
        1 => root,
        -1 => format!("-{root}"),
        _ => format!("{c}*{root}"),
    }
}

/// If `value = c * basis` for a (unique) integer c != 0, returns c.
fn multiple_of(value: &[i64], basis: &[i64]) -> Option<i64> {
    let j = basis.iter().position(|&b| b != 0)?;
    let b = basis[j];
    if value[j] % b != 0 {
        return None;
    }
    let c = value[j] / b;
    if c == 0 {
        return None;
    }
    for (v, bb) in value.iter().zip(basis) {
        if bb.checked_mul(c)? != *v {
            return None;
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_function() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(36), 12);
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).unwrap().coeffs(), &[1, 1]);
        assert_eq!(cyclotomic_polynomial(3).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8).unwrap().coeffs(), &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn phi_15_product_reconstructs_x15_minus_1() {
        // Phi_1 * Phi_3 * Phi_5 * Phi_15 = x^15 - 1
        let mut prod = vec![1i128];
        for d in [1u64, 3, 5, 15] {
            let p = cyclotomic_polynomial(d).unwrap();
            assert_eq!(p.degree() as u64, euler_phi(d));
            prod = poly_mul(&prod, &p.coeffs().iter().map(|&c| c as i128).collect::<Vec<_>>())
                .unwrap();
        }
        let mut expect = vec![0i128; 16];
        expect[0] = -1;
        expect[15] = 1;
        assert_eq!(prod, expect);
        assert_eq!(cyclotomic_polynomial(15).unwrap().degree(), 8);
    }

    #[test]
    fn phi_rejects_bad_orders() {
        assert!(matches!(cyclotomic_polynomial(0), Err(Error::Domain(_))));
        assert!(matches!(
            cyclotomic_polynomial(MAX_CYCLOTOMIC_ORDER + 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn root_powers() {
        // zeta_4^2 = -1
        assert_eq!(
            Cyclotomic::root_power(4, 2).unwrap(),
            Cyclotomic::from_integer(4, -1).unwrap()
        );
        // full rotation
        assert_eq!(
            Cyclotomic::root_power(15, 15).unwrap(),
            Cyclotomic::one(15).unwrap()
        );
        // phi(8) = 4, so zeta_8^3 stays the x^3 monomial
        assert_eq!(Cyclotomic::root_power(8, 3).unwrap().coeffs(), &[0, 0, 0, 1]);
        // negative exponents wrap
        assert_eq!(
            Cyclotomic::root_power(8, -5).unwrap(),
            Cyclotomic::root_power(8, 3).unwrap()
        );
    }

    #[test]
    fn addition() {
        let z3 = Cyclotomic::root_power(3, 1).unwrap();
        let z3sq = Cyclotomic::root_power(3, 2).unwrap();
        assert_eq!(&z3 + &z3sq, Cyclotomic::from_integer(3, -1).unwrap());

        let x = Cyclotomic::root_power(15, 7).unwrap();
        assert_eq!(&x + &Cyclotomic::zero(15).unwrap(), x);

        let a = Cyclotomic::root_power(15, 3).unwrap();
        let two_a = &a + &a;
        assert_eq!(two_a, a.checked_scale(2).unwrap());
        assert_eq!(two_a.to_string(), "2*z15^3");
    }

    #[test]
    fn multiplication() {
        let a = Cyclotomic::root_power(8, 3).unwrap();
        let b = Cyclotomic::root_power(8, 5).unwrap();
        assert_eq!(&a * &b, Cyclotomic::one(8).unwrap());

        let x = Cyclotomic::root_power(15, 11).unwrap();
        assert_eq!(&x * &Cyclotomic::one(15).unwrap(), x);

        // (2 zeta_15^3)(2 zeta_15^12) = 4
        let p = Cyclotomic::root_power(15, 3).unwrap().checked_scale(2).unwrap();
        let q = Cyclotomic::root_power(15, 12).unwrap().checked_scale(2).unwrap();
        assert_eq!((&p * &q).as_integer(), Some(4));
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            Cyclotomic::root_power(8, 3).unwrap().conjugate(),
            Cyclotomic::root_power(8, 5).unwrap()
        );
        let c = Cyclotomic::from_integer(12, -7).unwrap();
        assert_eq!(c.conjugate(), c);
    }

    #[test]
    fn galois_action() {
        let z = Cyclotomic::root_power(15, 1).unwrap();
        assert_eq!(z.galois(2).unwrap(), Cyclotomic::root_power(15, 2).unwrap());
        let x = Cyclotomic::root_power(15, 7).unwrap().checked_scale(3).unwrap();
        assert_eq!(x.galois(1).unwrap(), x);
        let a = Cyclotomic::root_power(15, 3).unwrap().checked_scale(2).unwrap();
        assert_eq!(
            a.galois(2).unwrap(),
            Cyclotomic::root_power(15, 6).unwrap().checked_scale(2).unwrap()
        );
        assert!(matches!(
            a.galois(5),
            Err(Error::NonInvertibleMap { t: 5, n: 15 })
        ));
        // galois(-1) is conjugation
        let v = Cyclotomic::from_exponent_coeffs(15, &[1, 0, 2, -1, 0, 0, 0, 3]).unwrap();
        assert_eq!(v.galois(-1).unwrap(), v.conjugate());
    }

    #[test]
    fn rational_detection() {
        let a = Cyclotomic::root_power(15, 3).unwrap().checked_scale(2).unwrap();
        let norm = &a * &a.conjugate();
        assert_eq!(norm.as_integer(), Some(4));
        assert_eq!(Cyclotomic::root_power(15, 1).unwrap().as_integer(), None);
        assert_eq!(Cyclotomic::zero(9).unwrap().as_integer(), Some(0));
    }

    #[test]
    fn mixed_order_coercion() {
        // zeta_3 viewed in Z[zeta_15]
        let z3 = Cyclotomic::root_power(3, 1).unwrap();
        let z15_5 = Cyclotomic::root_power(15, 5).unwrap();
        assert_eq!(&z3 + &z15_5, z15_5.checked_scale(2).unwrap());
        // orders 4 and 6 coerce to 12
        let s = &Cyclotomic::root_power(4, 1).unwrap() + &Cyclotomic::root_power(6, 1).unwrap();
        assert_eq!(s.order(), 12);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::from_integer(15, 4).unwrap().to_string(), "4");
        assert_eq!(Cyclotomic::root_power(8, 3).unwrap().to_string(), "z8^3");
        assert_eq!(
            Cyclotomic::root_power(15, 5).unwrap().checked_scale(-2).unwrap().to_string(),
            "-2*z15^5"
        );
        assert_eq!(Cyclotomic::root_power(12, 1).unwrap().to_string(), "z12");
        // a reduced high power still displays as the root it equals
        assert_eq!(
            Cyclotomic::root_power(15, 10).unwrap().checked_scale(-2).unwrap().to_string(),
            "-2*z15^10"
        );
        let s = Cyclotomic::from_exponent_coeffs(15, &[5, 1, 0, -2]).unwrap();
        assert_eq!(s.to_string(), "5 + z15 - 2*z15^3");
    }

    #[test]
    fn recanonicalization_is_identity() {
        let v = Cyclotomic::from_exponent_coeffs(12, &[3, -1, 0, 4, 0, 0, 0, 2, 1]).unwrap();
        let again = Cyclotomic::from_exponent_coeffs(12, v.coeffs()).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn reduction_certificate() {
        // original - canonical is exactly divisible by Phi_n
        for n in [4u64, 8, 12, 15, 36] {
            let phi = cyclotomic_polynomial(n).unwrap();
            let exps: Vec<i64> = (0..n as usize).map(|i| ((i * 7) % 5) as i64 - 2).collect();
            let canon = Cyclotomic::from_exponent_coeffs(n, &exps).unwrap();
            let mut diff: Vec<i128> = exps.iter().map(|&c| c as i128).collect();
            for (i, &c) in canon.coeffs().iter().enumerate() {
                diff[i] -= c as i128;
            }
            let phi_i128: Vec<i128> = phi.coeffs().iter().map(|&c| c as i128).collect();
            // panics (returns Err) if not exactly divisible
            poly_divide_exact(&diff, &phi_i128).unwrap();
            assert!(canon.coeffs().len() == phi.degree());
        }
    }
}
