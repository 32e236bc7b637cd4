//! Verifier verdicts: derived parameters, dual-check outcomes, failure
//! witnesses, and the structured line-oriented record format.
//!
//! Every verifier runs both a group-ring identity check and a character-sum
//! check (where applicable) and records both; the verdict is their
//! conjunction. Witnesses are collected only on failure and capped at
//! [`MAX_WITNESSES`] per report, with the total count preserved.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Element;

/// Cap on stored failure witnesses per report.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignKind {
    DifferenceSet,
    RelativeDifferenceSet,
    PartialDifferenceSet,
    Spread,
    LpPacking,
    Bent,
    ProjectedDifferenceSet,
}

impl DesignKind {
    pub fn tag(&self) -> &'static str {
        match self {
            DesignKind::DifferenceSet => "DS",
            DesignKind::RelativeDifferenceSet => "RDS",
            DesignKind::PartialDifferenceSet => "PDS",
            DesignKind::Spread => "SPREAD",
            DesignKind::LpPacking => "LP_PACKING",
            DesignKind::Bent => "BENT",
            DesignKind::ProjectedDifferenceSet => "PROJECTED_DS",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "DS" => DesignKind::DifferenceSet,
            "RDS" => DesignKind::RelativeDifferenceSet,
            "PDS" => DesignKind::PartialDifferenceSet,
            "SPREAD" => DesignKind::Spread,
            "LP_PACKING" => DesignKind::LpPacking,
            "BENT" => DesignKind::Bent,
            "PROJECTED_DS" => DesignKind::ProjectedDifferenceSet,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed,
    /// The check does not apply (e.g. the character criterion for an
    /// asymmetric partial difference set).
    NotApplicable,
}

impl CheckOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckOutcome::Passed => "pass",
            CheckOutcome::Failed => "fail",
            CheckOutcome::NotApplicable => "n/a",
        }
    }

    pub fn passed_or_na(&self) -> bool {
        !matches!(self, CheckOutcome::Failed)
    }
}

/// Derived parameters per design kind, with the counting-relation residual
/// where one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignParams {
    DifferenceSet {
        v: u64,
        k: u64,
        lambda: i64,
    },
    RelativeDifferenceSet {
        m: u64,
        n: u64,
        k: u64,
        lambda: i64,
    },
    PartialDifferenceSet {
        v: u64,
        k: u64,
        lambda: i64,
        mu: i64,
    },
    /// A spread of p^n + 1 subgroups of order p^n in Z_p^(2n).
    Spread {
        p: u64,
        n: u32,
    },
    LpPacking {
        c: u64,
        t: u64,
    },
    Bent {
        n: u32,
        support: u64,
        magnitude: i64,
    },
    /// Projection of a (v,k,lambda) difference set by a subgroup of order
    /// |U|: the identity rho(D) rho(D)^(-1) = (k - lambda) + lambda|U|(G/U).
    ProjectedDifferenceSet {
        quotient_order: u64,
        k: u64,
        lambda_u: i64,
        intersection: Vec<i64>,
    },
}

impl DesignParams {
    /// The counting-relation residual; zero iff the relation holds.
    pub fn counting_residual(&self) -> Option<i128> {
        match *self {
            DesignParams::DifferenceSet { v, k, lambda } => {
                Some(k as i128 * (k as i128 - 1) - lambda as i128 * (v as i128 - 1))
            }
            DesignParams::RelativeDifferenceSet { m, n, k, lambda } => {
                Some(k as i128 * (k as i128 - 1) - lambda as i128 * n as i128 * (m as i128 - 1))
            }
            DesignParams::PartialDifferenceSet { v, k, lambda, mu } => Some(
                k as i128 * (k as i128 - 1)
                    - lambda as i128 * k as i128
                    - mu as i128 * (v as i128 - 1 - k as i128),
            ),
            _ => None,
        }
    }

    fn record_pairs(&self) -> Vec<(String, String)> {
        match self {
            DesignParams::DifferenceSet { v, k, lambda } => vec![
                ("params.v".into(), v.to_string()),
                ("params.k".into(), k.to_string()),
                ("params.lambda".into(), lambda.to_string()),
            ],
            DesignParams::RelativeDifferenceSet { m, n, k, lambda } => vec![
                ("params.m".into(), m.to_string()),
                ("params.n".into(), n.to_string()),
                ("params.k".into(), k.to_string()),
                ("params.lambda".into(), lambda.to_string()),
            ],
            DesignParams::PartialDifferenceSet { v, k, lambda, mu } => vec![
                ("params.v".into(), v.to_string()),
                ("params.k".into(), k.to_string()),
                ("params.lambda".into(), lambda.to_string()),
                ("params.mu".into(), mu.to_string()),
            ],
            DesignParams::Spread { p, n } => vec![
                ("params.p".into(), p.to_string()),
                ("params.n".into(), n.to_string()),
            ],
            DesignParams::LpPacking { c, t } => vec![
                ("params.c".into(), c.to_string()),
                ("params.t".into(), t.to_string()),
            ],
            DesignParams::Bent { n, support, magnitude } => vec![
                ("params.n".into(), n.to_string()),
                ("params.support".into(), support.to_string()),
                ("params.magnitude".into(), magnitude.to_string()),
            ],
            DesignParams::ProjectedDifferenceSet {
                quotient_order,
                k,
                lambda_u,
                intersection,
            } => vec![
                ("params.quotient_order".into(), quotient_order.to_string()),
                ("params.k".into(), k.to_string()),
                ("params.lambda_u".into(), lambda_u.to_string()),
                (
                    "params.intersection".into(),
                    intersection
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ),
            ],
        }
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignParams::DifferenceSet { v, k, lambda } => write!(f, "({v},{k},{lambda})"),
            DesignParams::RelativeDifferenceSet { m, n, k, lambda } => {
                write!(f, "({m},{n},{k},{lambda})")
            }
            DesignParams::PartialDifferenceSet { v, k, lambda, mu } => {
                write!(f, "({v},{k},{lambda},{mu})")
            }
            DesignParams::Spread { p, n } => write!(f, "spread of Z{p}^{}", 2 * n),
            DesignParams::LpPacking { c, t } => write!(f, "(c,t)=({c},{t})"),
            DesignParams::Bent { n, support, magnitude } => {
                write!(f, "n={n}, |D_f|={support}, magnitude={magnitude}")
            }
            DesignParams::ProjectedDifferenceSet {
                quotient_order,
                k,
                lambda_u,
                intersection,
            } => write!(
                f,
                "projection to order {quotient_order}: k={k}, lambda*|U|={lambda_u}, intersection numbers ({})",
                intersection
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// A failure witness: the offending element or character index plus the
/// observed and expected values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A derived parameter is not a nonnegative integer.
    NonIntegralParameter {
        name: &'static str,
        numerator: i128,
        denominator: i128,
    },
    /// The counting relation fails.
    CountingRelation { relation: &'static str, residual: i128 },
    /// A derived parameter disagrees with the expected one.
    ParameterMismatch {
        name: &'static str,
        derived: i128,
        expected: i128,
    },
    /// A coefficient of the group-ring identity is off.
    RingCoefficient {
        element: Element,
        observed: i64,
        expected: i64,
    },
    /// A character-sum value is off; values are rendered in the cyclotomic
    /// display syntax.
    CharacterValue {
        index: Element,
        observed: String,
        expected: String,
    },
    /// A membership precondition fails (identity in a PDS, duplicates, ...).
    Membership { element: Element, reason: String },
    /// Two collection members intersect too much.
    SubgroupIntersection { i: usize, j: usize, size: u64 },
    /// A structural count is off (number of subgroups, orders, ...).
    Structure { reason: String },
    /// Walsh-Hadamard spectrum value off the bent profile.
    SpectrumValue { index: u64, observed: i64, expected: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NonIntegralParameter { name, numerator, denominator } => {
                write!(f, "parameter {name} = {numerator}/{denominator} is not a nonnegative integer")
            }
            Witness::CountingRelation { relation, residual } => {
                write!(f, "counting relation {relation} fails with residual {residual}")
            }
            Witness::ParameterMismatch { name, derived, expected } => {
                write!(f, "parameter {name}: derived {derived}, expected {expected}")
            }
            Witness::RingCoefficient { element, observed, expected } => {
                write!(f, "ring coefficient at {element}: observed {observed}, expected {expected}")
            }
            Witness::CharacterValue { index, observed, expected } => {
                write!(f, "character chi_{index}: observed {observed}, expected {expected}")
            }
            Witness::Membership { element, reason } => write!(f, "element {element}: {reason}"),
            Witness::SubgroupIntersection { i, j, size } => {
                write!(f, "members {i} and {j} intersect in {size} elements")
            }
            Witness::Structure { reason } => write!(f, "{reason}"),
            Witness::SpectrumValue { index, observed, expected } => {
                write!(f, "spectrum at index {index}: observed {observed}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFlag {
    /// Degenerate input (empty set, singleton, or the whole group) accepted
    /// by the identity but of no design-theoretic interest.
    Trivial,
    /// A relative difference set with trivial forbidden subgroup.
    ReducesToDifferenceSet,
    /// The set is fixed by the involution D^(-1) = D.
    Symmetric,
    Asymmetric,
    /// The Boolean function was replaced by its complement to normalize the
    /// support size.
    Normalized,
    /// The projected multiset is a genuine subset of the quotient.
    ProjectionIsSet,
    /// The projected multiset has a coefficient outside {0,1}.
    ProjectionNotSet,
}

impl ReportFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportFlag::Trivial => "trivial",
            ReportFlag::ReducesToDifferenceSet => "reduces-to-difference-set",
            ReportFlag::Symmetric => "symmetric",
            ReportFlag::Asymmetric => "asymmetric",
            ReportFlag::Normalized => "normalized",
            ReportFlag::ProjectionIsSet => "projection-is-set",
            ReportFlag::ProjectionNotSet => "projection-not-set",
        }
    }
}

/// Verdict plus derived parameters and failure witnesses for any verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignReport {
    pub kind: DesignKind,
    pub verdict: bool,
    pub params: DesignParams,
    pub ring_check: bool,
    pub char_check: CheckOutcome,
    pub witnesses: Vec<Witness>,
    /// Number of witnesses dropped beyond [`MAX_WITNESSES`].
    pub suppressed_witnesses: usize,
    pub flags: Vec<ReportFlag>,
}

impl DesignReport {
    pub(crate) fn build(
        kind: DesignKind,
        params: DesignParams,
        ring_check: bool,
        char_check: CheckOutcome,
        mut witnesses: Vec<Witness>,
        flags: Vec<ReportFlag>,
    ) -> Self {
        let verdict = ring_check && char_check.passed_or_na() && witnesses.is_empty();
        debug_assert!(
            ring_check || !witnesses.is_empty(),
            "a failed ring check must carry a witness"
        );
        debug_assert!(
            char_check != CheckOutcome::Failed || !witnesses.is_empty(),
            "a failed character check must carry a witness"
        );
        let total = witnesses.len();
        let suppressed = total.saturating_sub(MAX_WITNESSES);
        witnesses.truncate(MAX_WITNESSES);
        DesignReport {
            kind,
            verdict,
            params,
            ring_check,
            char_check,
            witnesses,
            suppressed_witnesses: suppressed,
            flags,
        }
    }

    pub fn has_flag(&self, flag: ReportFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// Line-oriented key=value records (stable keys, diff-friendly).
    pub fn to_records(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("kind".to_string(), self.kind.tag().to_string()),
            ("verdict".to_string(), self.verdict.to_string()),
            ("ring_check".to_string(), self.ring_check.to_string()),
            ("char_check".to_string(), self.char_check.as_str().to_string()),
        ];
        out.extend(self.params.record_pairs());
        if let Some(r) = self.params.counting_residual() {
            out.push(("counting_residual".into(), r.to_string()));
        }
        for (i, flag) in self.flags.iter().enumerate() {
            out.push((format!("flag.{i}"), flag.as_str().to_string()));
        }
        for (i, w) in self.witnesses.iter().enumerate() {
            out.push((format!("witness.{i}"), w.to_string()));
        }
        out.push((
            "witnesses_total".into(),
            (self.witnesses.len() + self.suppressed_witnesses).to_string(),
        ));
        out
    }

    pub fn render_records(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.to_records() {
            s.push_str(&k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind.tag())?;
        writeln!(f, "verdict: {}", if self.verdict { "TRUE" } else { "FALSE" })?;
        writeln!(f, "parameters: {}", self.params)?;
        writeln!(f, "ring check: {}", if self.ring_check { "pass" } else { "fail" })?;
        writeln!(f, "character check: {}", self.char_check.as_str())?;
        if !self.flags.is_empty() {
            let flags: Vec<&str> = self.flags.iter().map(|fl| fl.as_str()).collect();
            writeln!(f, "flags: {}", flags.join(", "))?;
        }
        for w in &self.witnesses {
            writeln!(f, "witness: {w}")?;
        }
        if self.suppressed_witnesses > 0 {
            writeln!(f, "... and {} more witnesses", self.suppressed_witnesses)?;
        }
        Ok(())
    }
}

/// The round-trippable core of a structured report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedReport {
    pub kind: DesignKind,
    pub verdict: bool,
    pub params: DesignParams,
}

/// Parses the output of [`DesignReport::render_records`] back into verdict
/// and parameters.
pub fn parse_records(text: &str) -> Result<ParsedReport> {
    let mut map = std::collections::BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("record line without '=': {line}"),
        })?;
        map.insert(k.to_string(), v.to_string());
    }
    let get = |key: &str| -> Result<&String> {
        map.get(key).ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("missing record key {key}"),
        })
    };
    let int = |key: &str| -> Result<i64> {
        get(key)?.parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("record key {key} is not an integer"),
        })
    };
    let kind = DesignKind::from_tag(get("kind")?).ok_or_else(|| Error::Parse {
        position: 0,
        message: "unknown design kind".into(),
    })?;
    let verdict = get("verdict")? == "true";
    let params = match kind {
        DesignKind::DifferenceSet => DesignParams::DifferenceSet {
            v: int("params.v")? as u64,
            k: int("params.k")? as u64,
            lambda: int("params.lambda")?,
        },
        DesignKind::RelativeDifferenceSet => DesignParams::RelativeDifferenceSet {
            m: int("params.m")? as u64,
            n: int("params.n")? as u64,
            k: int("params.k")? as u64,
            lambda: int("params.lambda")?,
        },
        DesignKind::PartialDifferenceSet => DesignParams::PartialDifferenceSet {
            v: int("params.v")? as u64,
            k: int("params.k")? as u64,
            lambda: int("params.lambda")?,
            mu: int("params.mu")?,
        },
        DesignKind::Spread => DesignParams::Spread {
            p: int("params.p")? as u64,
            n: int("params.n")? as u32,
        },
        DesignKind::LpPacking => DesignParams::LpPacking {
            c: int("params.c")? as u64,
            t: int("params.t")? as u64,
        },
        DesignKind::Bent => DesignParams::Bent {
            n: int("params.n")? as u32,
            support: int("params.support")? as u64,
            magnitude: int("params.magnitude")?,
        },
        DesignKind::ProjectedDifferenceSet => {
            let raw = get("params.intersection")?;
            let intersection = if raw.is_empty() {
                Vec::new()
            } else {
                raw.split(',')
                    .map(|s| {
                        s.parse().map_err(|_| Error::Parse {
                            position: 0,
                            message: "bad intersection number".into(),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            DesignParams::ProjectedDifferenceSet {
                quotient_order: int("params.quotient_order")? as u64,
                k: int("params.k")? as u64,
                lambda_u: int("params.lambda_u")?,
                intersection,
            }
        }
    };
    Ok(ParsedReport { kind, verdict, params })
}
