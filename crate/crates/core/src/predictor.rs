//! Closed-form prediction of which Newton numbers below `(p-1)(q-1)` are
//! attainable by deformations of `x^p + y^q`, and which values may be gaps.

use serde::Serialize;
use thiserror::Error;

use crate::{gcd, intervals_from_sorted};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictorError {
    #[error("parameters must satisfy 2 <= p <= q, got ({0}, {1})")]
    OutOfRange(i64, i64),
}

/// Exponent pair `2 <= p <= q` together with the derived quantities used
/// throughout: `q = k*p + r` with `0 <= r < p`, and `m = gcd(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SqhParams {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub r: i64,
    pub m: i64,
}

impl SqhParams {
    pub fn new(p: i64, q: i64) -> Result<Self, PredictorError> {
        if p < 2 || q < p {
            return Err(PredictorError::OutOfRange(p, q));
        }
        Ok(SqhParams {
            p,
            q,
            k: q / p,
            r: q % p,
            m: gcd(p, q),
        })
    }
}

/// Milnor number of `x^p + y^q`, equal to the Newton number of `tr(p, q)`.
pub fn mu_sqh(p: i64, q: i64) -> Result<i64, PredictorError> {
    SqhParams::new(p, q)?;
    Ok((p - 1) * (q - 1))
}

/// Which rule produced a predicted gap value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    FirstJumpBand,
    PkpBand,
    Pkp2pMinus1,
    NuMinusP,
    SmallPCatalog,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::FirstJumpBand => "first-jump-band",
            CaseTag::PkpBand => "pkp-band",
            CaseTag::Pkp2pMinus1 => "pkp-2p-1",
            CaseTag::NuMinusP => "nu-minus-p",
            CaseTag::SmallPCatalog => "small-p-catalog",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value the prediction marks as unattainable, or possibly unattainable.
/// `definitive` is set only where the rules are known to be exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PossibleGap {
    pub value: i64,
    pub case: CaseTag,
    pub definitive: bool,
}

/// Whether the closed-form rules cover the pair at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    /// The rules list guaranteed values and candidate gaps.
    Full,
    /// No closed-form claim; only enumeration can answer.
    OracleOnly,
}

impl Applicability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Applicability::Full => "full",
            Applicability::OracleOnly => "oracle-only",
        }
    }
}

/// Predicted spectrum for deformations of `x^p + y^q`: guaranteed attainable
/// intervals, candidate gaps with their provenance, and how much of the
/// prediction is backed by explicit constructions.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub params: SqhParams,
    pub mu: i64,
    pub mu_pkp: i64,
    pub guaranteed: Vec<(i64, i64)>,
    pub possible_gaps: Vec<PossibleGap>,
    pub applicability: Applicability,
    pub construction_backed: bool,
}

pub fn predicted_report(p: i64, q: i64) -> Result<GapReport, PredictorError> {
    let params = SqhParams::new(p, q)?;
    let SqhParams { k, r, m, .. } = params;
    let mu = (p - 1) * (q - 1);
    let mu_pkp = (p - 1) * (k * p - 1);

    let mut gaps: Vec<PossibleGap> = Vec::new();
    let applicability;
    if r == 0 {
        applicability = Applicability::Full;
        let definitive = p <= 4;
        let mut push = |value: i64, case: CaseTag| {
            gaps.push(PossibleGap {
                value,
                case,
                definitive,
            })
        };
        match p {
            2 => {}
            3 => push(mu - 1, CaseTag::SmallPCatalog),
            4 => {
                push(mu - 1, CaseTag::SmallPCatalog);
                push(mu - 2, CaseTag::SmallPCatalog);
                if k >= 3 {
                    push(mu - 7, CaseTag::SmallPCatalog);
                }
            }
            _ => {
                for value in (mu - (p - 2)..=mu - 1).rev() {
                    push(value, CaseTag::PkpBand);
                }
                if p % 2 == 0 {
                    push(mu - (2 * p - 1), CaseTag::Pkp2pMinus1);
                }
            }
        }
    } else if p <= 4 {
        applicability = Applicability::OracleOnly;
    } else {
        applicability = Applicability::Full;
        let mut push = |value: i64, case: CaseTag| {
            gaps.push(PossibleGap {
                value,
                case,
                definitive: false,
            })
        };
        for value in (mu - m + 1..=mu - 1).rev() {
            push(value, CaseTag::FirstJumpBand);
        }
        for value in (mu_pkp - (p - 2)..=mu_pkp - 1).rev() {
            push(value, CaseTag::PkpBand);
        }
        if p % 2 == 0 {
            push(mu_pkp - (2 * p - 1), CaseTag::Pkp2pMinus1);
        }
        if p % 2 == 0 && r == p - 1 {
            push(mu - p, CaseTag::NuMinusP);
        }
    }

    gaps.retain(|g| g.value >= 1 && g.value <= mu);
    gaps.sort_by_key(|g| std::cmp::Reverse(g.value));
    gaps.dedup_by_key(|g| g.value);

    let guaranteed = match applicability {
        Applicability::Full => {
            let gap_values: std::collections::BTreeSet<i64> =
                gaps.iter().map(|g| g.value).collect();
            intervals_from_sorted((1..=mu).filter(|v| !gap_values.contains(v)))
        }
        Applicability::OracleOnly => Vec::new(),
    };

    let construction_backed = applicability == Applicability::Full && !(p >= 5 && k == 1);

    Ok(GapReport {
        params,
        mu,
        mu_pkp,
        guaranteed,
        possible_gaps: gaps,
        applicability,
        construction_backed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gap_values(r: &GapReport) -> Vec<i64> {
        r.possible_gaps.iter().map(|g| g.value).collect()
    }

    #[test]
    fn params_and_mu() {
        let s = SqhParams::new(6, 11).unwrap();
        assert_eq!((s.k, s.r, s.m), (1, 5, 1));
        assert_eq!(mu_sqh(5, 7).unwrap(), 24);
        assert!(SqhParams::new(1, 5).is_err());
        assert!(SqhParams::new(5, 4).is_err());
    }

    #[test]
    fn divisible_small_p() {
        let r = predicted_report(2, 6).unwrap();
        assert!(r.possible_gaps.is_empty());
        assert_eq!(r.guaranteed, [(1, 5)]);
        assert_eq!(r.applicability, Applicability::Full);
        assert!(r.construction_backed);

        let r = predicted_report(3, 6).unwrap();
        assert_eq!(gap_values(&r), [9]);
        assert!(r.possible_gaps[0].definitive);
        assert_eq!(r.guaranteed, [(1, 8), (10, 10)]);

        let r = predicted_report(4, 8).unwrap();
        assert_eq!(gap_values(&r), [20, 19]);
        assert_eq!(r.guaranteed, [(1, 18), (21, 21)]);

        let r = predicted_report(4, 12).unwrap();
        assert_eq!(gap_values(&r), [32, 31, 26]);
        assert!(r.possible_gaps.iter().all(|g| g.definitive));
        assert_eq!(r.guaranteed, [(1, 25), (27, 30), (33, 33)]);
    }

    #[test]
    fn divisible_large_p() {
        let r = predicted_report(5, 10).unwrap();
        assert_eq!(gap_values(&r), [35, 34, 33]);
        assert!(r.possible_gaps.iter().all(|g| !g.definitive));
        assert_eq!(r.mu_pkp, 36);

        let r = predicted_report(6, 12).unwrap();
        assert_eq!(gap_values(&r), [54, 53, 52, 51, 44]);
        assert_eq!(r.possible_gaps[4].case, CaseTag::Pkp2pMinus1);
    }

    #[test]
    fn small_p_indivisible_is_oracle_only() {
        for (p, q) in [(2, 3), (3, 7), (4, 6), (4, 9)] {
            let r = predicted_report(p, q).unwrap();
            assert_eq!(r.applicability, Applicability::OracleOnly);
            assert!(r.possible_gaps.is_empty());
            assert!(r.guaranteed.is_empty());
            assert!(!r.construction_backed);
        }
    }

    #[test]
    fn indivisible_bands() {
        let r = predicted_report(6, 9).unwrap();
        assert_eq!(r.mu, 40);
        assert_eq!(r.mu_pkp, 25);
        assert_eq!(gap_values(&r), [39, 38, 24, 23, 22, 21, 14]);
        assert_eq!(r.possible_gaps[0].case, CaseTag::FirstJumpBand);
        assert_eq!(r.possible_gaps[2].case, CaseTag::PkpBand);
        assert_eq!(r.possible_gaps[6].case, CaseTag::Pkp2pMinus1);

        let r = predicted_report(6, 11).unwrap();
        assert_eq!(gap_values(&r), [44, 24, 23, 22, 21, 14]);
        assert_eq!(r.possible_gaps[0].case, CaseTag::NuMinusP);
        assert!(!r.construction_backed);

        let r = predicted_report(5, 9).unwrap();
        assert_eq!(r.mu_pkp, 16);
        assert_eq!(gap_values(&r), [15, 14, 13]);
        assert!(!r.construction_backed);

        let r = predicted_report(5, 12).unwrap();
        assert_eq!(r.mu_pkp, 36);
        assert_eq!(gap_values(&r), [35, 34, 33]);
        assert!(r.construction_backed);
    }

    #[test]
    fn guaranteed_partitions_range() {
        for p in 2..=12 {
            for q in p..=14 {
                let r = predicted_report(p, q).unwrap();
                if r.applicability == Applicability::OracleOnly {
                    continue;
                }
                let mut covered = std::collections::BTreeSet::new();
                for &(lo, hi) in &r.guaranteed {
                    assert!(lo <= hi);
                    covered.extend(lo..=hi);
                }
                for g in &r.possible_gaps {
                    assert!(covered.insert(g.value), "gap overlaps guaranteed");
                }
                let full: std::collections::BTreeSet<i64> = (1..=r.mu).collect();
                assert_eq!(covered, full, "partition broken for ({p}, {q})");
            }
        }
    }
}
