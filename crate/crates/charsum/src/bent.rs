//! Boolean functions, the Walsh-Hadamard transform, and bentness testing
//! cross-checked against the difference-set characterization.
//!
//! Truth tables are indexed by input tuples (x_1,...,x_n) in lexicographic
//! order, x_1 most significant; the same convention indexes the spectrum and
//! matches the element order of Z_2^n. Two transforms are implemented: the
//! O(n 2^n) in-place butterfly (the default) and the O(4^n) definition-based
//! sum, which serves as the independent oracle.

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, Group};
use crate::report::{CheckOutcome, DesignKind, DesignParams, DesignReport, ReportFlag, Witness};
use crate::ring::RingElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: u32,
    bits: Vec<bool>,
}

impl BooleanFunction {
    pub fn new(n: u32, bits: Vec<bool>) -> Result<Self> {
        if n < 1 || n > 30 {
            return Err(Error::Domain(format!("variable count {n} out of range 1..=30")));
        }
        if bits.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "truth table has {} entries, expected 2^{n}",
                bits.len()
            )));
        }
        Ok(BooleanFunction { n, bits })
    }

    /// Parses a binary string, leftmost character = truth-table index 0.
    pub fn from_binary_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("expected 0 or 1, found {ch:?}"),
                    })
                }
            }
        }
        let n = bits.len().trailing_zeros();
        if bits.len() < 2 || bits.len() != 1usize << n {
            return Err(Error::Parse {
                position: 0,
                message: format!("truth table length {} is not a power of two >= 2", bits.len()),
            });
        }
        BooleanFunction::new(n, bits)
    }

    /// Parses a hex string; each digit covers four consecutive truth-table
    /// positions, most significant bit first.
    pub fn from_hex_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len() * 4);
        for (i, ch) in s.chars().enumerate() {
            let d = ch.to_digit(16).ok_or_else(|| Error::Parse {
                position: i,
                message: format!("expected a hex digit, found {ch:?}"),
            })?;
            for b in (0..4).rev() {
                bits.push(d >> b & 1 == 1);
            }
        }
        let n = bits.len().trailing_zeros();
        if bits.len() < 4 || bits.len() != 1usize << n {
            return Err(Error::Parse {
                position: 0,
                message: format!("truth table length {} is not a power of two >= 4", bits.len()),
            });
        }
        BooleanFunction::new(n, bits)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn value(&self, idx: usize) -> bool {
        self.bits[idx]
    }

    pub fn support_size(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// 1 + f: complements every truth-table entry.
    pub fn complement(&self) -> Self {
        BooleanFunction {
            n: self.n,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

/// The exact Walsh-Hadamard spectrum by the fast in-place butterfly.
pub fn wht_spectrum(f: &BooleanFunction) -> Vec<i64> {
    let mut s: Vec<i64> = f.bits.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut half = 1;
    while half < s.len() {
        let mut start = 0;
        while start < s.len() {
            for i in start..start + half {
                let a = s[i];
                let b = s[i + half];
                s[i] = a + b;
                s[i + half] = a - b;
            }
            start += 2 * half;
        }
        half *= 2;
    }
    s
}

/// The spectrum straight from the definition: the O(4^n) double sum over
/// (a, x). Kept as the independent oracle for the fast transform.
pub fn wht_spectrum_by_definition(f: &BooleanFunction) -> Vec<i64> {
    let len = f.bits.len();
    (0..len)
        .map(|a| {
            (0..len)
                .map(|x| {
                    let sign = f.bits[x] as u32 + (a & x).count_ones();
                    if sign % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum()
        })
        .collect()
}

/// Spectra for a batch of functions; parallel under the `parallel` feature
/// with per-function deterministic results.
pub fn wht_batch(fs: &[BooleanFunction]) -> Vec<Vec<i64>> {
    exec::map_range(fs.len() as u64, |i| wht_spectrum(&fs[i as usize]))
}

/// Sequential twin of [`wht_batch`].
pub fn wht_batch_seq(fs: &[BooleanFunction]) -> Vec<Vec<i64>> {
    exec::map_range_seq(fs.len() as u64, |i| wht_spectrum(&fs[i as usize]))
}

/// The support indicator D_f inside Z[Z_2^n], with its group.
pub fn boolean_support(f: &BooleanFunction) -> Result<(Group, RingElement)> {
    let g = Group::elementary(2, f.n)?;
    let members: Vec<Element> = (0..f.bits.len())
        .filter(|&i| f.bits[i])
        .map(|i| g.element_at(i as u64))
        .collect();
    let d = RingElement::from_subset(&g, &members)?;
    Ok((g, d))
}

/// Verifies bentness three ways, all of which must agree: the spectrum
/// profile (every value is +-2^(n/2)), the support profile
/// (|D_f| = 2^(n-1) - 2^(n/2-1) and |chi_a(D_f)| = 2^(n/2-1) for nonzero a),
/// and the difference-set characterization of D_f with Hadamard parameters.
/// When |D_f| > 2^(n-1) the function is first replaced by its complement.
pub fn verify_bent(f: &BooleanFunction) -> Result<DesignReport> {
    let n = f.n;
    if n % 2 != 0 {
        let support = f.support_size();
        return Ok(DesignReport::build(
            DesignKind::Bent,
            DesignParams::Bent { n, support, magnitude: 0 },
            false,
            CheckOutcome::NotApplicable,
            vec![Witness::Structure {
                reason: format!("bent functions need even n; 2^({n}/2) is not an integer"),
            }],
            vec![],
        ));
    }

    let mut flags = Vec::new();
    let normalized;
    let f = if f.support_size() > 1 << (n - 1) {
        flags.push(ReportFlag::Normalized);
        normalized = f.complement();
        &normalized
    } else {
        f
    };

    let magnitude = 1i64 << (n / 2);
    let half_mag = magnitude / 2;
    let target_support = (1u64 << (n - 1)) - half_mag as u64;
    let support = f.support_size();
    let mut witnesses = Vec::new();

    // (a) flat spectrum at +-2^(n/2)
    let spectrum = wht_spectrum(f);
    let mut spectrum_ok = true;
    for (i, &s) in spectrum.iter().enumerate() {
        if s.abs() != magnitude {
            spectrum_ok = false;
            witnesses.push(Witness::SpectrumValue {
                index: i as u64,
                observed: s,
                expected: format!("+-{magnitude}"),
            });
        }
    }

    // (b) support size and character-sum magnitudes of D_f
    let (g, d) = boolean_support(f)?;
    let mut profile_ok = support == target_support;
    if !profile_ok {
        witnesses.push(Witness::Structure {
            reason: format!("|D_f| = {support}, expected 2^(n-1) - 2^(n/2-1) = {target_support}"),
        });
    }
    for a in g.enumerate()? {
        if a == g.identity() {
            continue;
        }
        let chi = Character::new(&g, &a)?;
        let s = chi
            .sum(&d)?
            .as_integer()
            .expect("order-2 character sums are integers");
        if s.abs() != half_mag {
            profile_ok = false;
            witnesses.push(Witness::CharacterValue {
                index: a,
                observed: s.to_string(),
                expected: format!("|chi_a(D_f)| = {half_mag}"),
            });
        }
    }

    // (c) D_f as a difference set with Hadamard parameters
    let members: Vec<Element> = d.terms().map(|(e, _)| e).collect();
    let expected_lambda = (1i64 << (n - 2)) - half_mag;
    let ds = crate::designs::verify_difference_set(
        &g,
        &members,
        Some((1u64 << n, target_support, expected_lambda)),
    )?;
    if !ds.verdict {
        for w in ds.witnesses {
            witnesses.push(w);
        }
    }

    let char_ok = spectrum_ok && profile_ok;
    Ok(DesignReport::build(
        DesignKind::Bent,
        DesignParams::Bent { n, support, magnitude },
        ds.verdict,
        if char_ok { CheckOutcome::Passed } else { CheckOutcome::Failed },
        witnesses,
        flags,
    ))
}
