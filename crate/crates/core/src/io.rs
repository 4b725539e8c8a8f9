//! Stable serialized shapes: the report/oracle JSON envelope, the verify
//! JSON, and the sweep CSV.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::intervals_from_sorted;
use crate::oracle::{SpectrumResult, VerificationReport, VerifyStatus};
use crate::predictor::{GapReport, SqhParams};

#[derive(Debug, Clone, Serialize)]
pub struct GapJson {
    pub value: i64,
    pub case: &'static str,
    pub definitive: bool,
}

/// Shared envelope of `report` and `oracle`. The first seven fields are the
/// stable contract; the optional tail fields are additive extras.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub params: SqhParams,
    pub mu: i64,
    pub mu_pkp: i64,
    pub guaranteed: Vec<[i64; 2]>,
    pub possible_gaps: Vec<GapJson>,
    pub witnesses: BTreeMap<i64, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applicability: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction_backed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_terms: Option<BTreeMap<i64, String>>,
}

pub const SCHEMA_VERSION: &str = "1";

fn gaps_json(report: &GapReport) -> Vec<GapJson> {
    report
        .possible_gaps
        .iter()
        .map(|g| GapJson {
            value: g.value,
            case: g.case.as_str(),
            definitive: g.definitive,
        })
        .collect()
}

pub fn report_envelope(report: &GapReport) -> Envelope {
    Envelope {
        schema_version: SCHEMA_VERSION,
        params: report.params,
        mu: report.mu,
        mu_pkp: report.mu_pkp,
        guaranteed: report.guaranteed.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        possible_gaps: gaps_json(report),
        witnesses: BTreeMap::new(),
        applicability: Some(report.applicability.as_str()),
        construction_backed: Some(report.construction_backed),
        witness_terms: None,
    }
}

pub fn oracle_envelope(params: SqhParams, spectrum: &SpectrumResult) -> Envelope {
    let witnesses: BTreeMap<i64, String> = spectrum
        .witnesses
        .iter()
        .map(|(nu, d)| (*nu, d.to_string()))
        .collect();
    let witness_terms: BTreeMap<i64, String> = spectrum
        .witnesses
        .iter()
        .map(|(nu, d)| (*nu, d.term_form().unwrap_or_else(|| d.to_string())))
        .collect();
    Envelope {
        schema_version: SCHEMA_VERSION,
        params,
        mu: (params.p - 1) * (params.q - 1),
        mu_pkp: (params.p - 1) * (params.k * params.p - 1),
        guaranteed: intervals_from_sorted(spectrum.attainable.iter().copied())
            .into_iter()
            .map(|(lo, hi)| [lo, hi])
            .collect(),
        possible_gaps: Vec::new(),
        witnesses,
        applicability: None,
        construction_backed: None,
        witness_terms: Some(witness_terms),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictedJson {
    pub guaranteed: Vec<[i64; 2]>,
    pub possible_gaps: Vec<GapJson>,
    pub applicability: &'static str,
    pub construction_backed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservedJson {
    pub attainable: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyJson {
    pub schema_version: &'static str,
    pub params: SqhParams,
    pub mu: i64,
    pub mu_pkp: i64,
    pub predicted: PredictedJson,
    pub observed: ObservedJson,
    pub missing_guaranteed: Vec<i64>,
    pub closed_gaps: Vec<i64>,
    pub status: &'static str,
}

pub fn verify_json(report: &VerificationReport) -> VerifyJson {
    let p = &report.predicted;
    VerifyJson {
        schema_version: SCHEMA_VERSION,
        params: p.params,
        mu: p.mu,
        mu_pkp: p.mu_pkp,
        predicted: PredictedJson {
            guaranteed: p.guaranteed.iter().map(|&(lo, hi)| [lo, hi]).collect(),
            possible_gaps: gaps_json(p),
            applicability: p.applicability.as_str(),
            construction_backed: p.construction_backed,
        },
        observed: ObservedJson {
            attainable: intervals_from_sorted(report.observed.attainable.iter().copied())
                .into_iter()
                .map(|(lo, hi)| [lo, hi])
                .collect(),
        },
        missing_guaranteed: report.missing_guaranteed.clone(),
        closed_gaps: report.closed_gaps.clone(),
        status: report.status.as_str(),
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub p: i64,
    pub q: i64,
    pub mu: i64,
    pub status: VerifyStatus,
    pub n_gaps_predicted: usize,
    pub n_gaps_observed: usize,
    pub runtime_ms: u128,
}

pub const SWEEP_HEADER: &str = "p,q,mu,status,n_gaps_predicted,n_gaps_observed,runtime_ms";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p,
            r.q,
            r.mu,
            r.status.as_str(),
            r.n_gaps_predicted,
            r.n_gaps_observed,
            r.runtime_ms
        ));
    }
    out
}

pub fn to_pretty_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}
