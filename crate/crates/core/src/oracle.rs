//! Brute-force ground truth: enumerate every deformation diagram under a
//! convenient base, collect the attained Newton numbers with lexicographically
//! minimal witnesses, and check predictions against the result.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{pt, Diagram, GeometryError, LatticePoint};
use crate::predictor::{predicted_report, GapReport, PredictorError, SqhParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "intercepts ({a}, {b}) exceed the enumeration budget ({max_x}, {max_y}); \
         raise the budget explicitly to go further"
    )]
    BudgetExceeded {
        a: i64,
        b: i64,
        max_x: i64,
        max_y: i64,
    },
    #[error("enumeration needs a convenient base, got [{0}]")]
    BaseNotConvenient(String),
    #[error("enumeration without the convenient restriction is not supported")]
    NonConvenientUnsupported,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Params(#[from] PredictorError),
}

/// Which chains count as admissible deformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConstraints {
    /// Every vertex `(x, y)` must satisfy `x + y >= min_total_degree`.
    pub min_total_degree: i64,
    /// Only convenient chains are enumerated. The enumerators reject `false`.
    pub require_convenient: bool,
    /// Spectrum entries below this Newton number are discarded.
    pub min_nu: i64,
}

impl Default for EnumerationConstraints {
    fn default() -> Self {
        EnumerationConstraints {
            min_total_degree: 2,
            require_convenient: true,
            min_nu: 1,
        }
    }
}

/// Hard ceiling on base intercepts, so a typo cannot start a week-long
/// enumeration. The `_budgeted` entry points take an explicit one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_x: i64,
    pub max_y: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_x: 12,
            max_y: 14,
        }
    }
}

fn check_base(
    base: &Diagram,
    constraints: &EnumerationConstraints,
    budget: Budget,
) -> Result<(i64, i64), OracleError> {
    if !constraints.require_convenient {
        return Err(OracleError::NonConvenientUnsupported);
    }
    if !base.is_convenient() {
        return Err(OracleError::BaseNotConvenient(base.to_string()));
    }
    let (a, b) = base.intercepts().expect("convenient base has intercepts");
    if a > budget.max_x || b > budget.max_y {
        return Err(OracleError::BudgetExceeded {
            a,
            b,
            max_x: budget.max_x,
            max_y: budget.max_y,
        });
    }
    Ok((a, b))
}

/// Depth-first extension of a partial chain. Every appended edge is checked
/// against the base vertices it passes, so a finished chain contains all of
/// them in its region and is a deformation by construction.
fn extend_chain(
    base: &Diagram,
    constraints: &EnumerationConstraints,
    max_x: i64,
    chain: &mut Vec<LatticePoint>,
    emit: &mut impl FnMut(&[LatticePoint]),
) {
    let cur = *chain.last().expect("chain starts nonempty");
    let prev_drop = if chain.len() >= 2 {
        let before = chain[chain.len() - 2];
        Some((cur.x - before.x, before.y - cur.y))
    } else {
        None
    };
    for nx in cur.x + 1..=max_x {
        'next_y: for ny in (0..cur.y).rev() {
            if nx + ny < constraints.min_total_degree {
                continue;
            }
            let (dx, dy) = (nx - cur.x, cur.y - ny);
            if let Some((pdx, pdy)) = prev_drop {
                if pdy as i128 * dx as i128 - pdx as i128 * dy as i128 <= 0 {
                    continue;
                }
            }
            for v in base.vertices() {
                if v.x > cur.x && v.x <= nx {
                    let above =
                        dx as i128 * (v.y - cur.y) as i128 + dy as i128 * (v.x - cur.x) as i128;
                    if above < 0 {
                        continue 'next_y;
                    }
                }
            }
            chain.push(pt(nx, ny));
            if ny == 0 {
                emit(chain);
            } else {
                extend_chain(base, constraints, max_x, chain, emit);
            }
            chain.pop();
        }
    }
}

fn start_rows(constraints: &EnumerationConstraints, b: i64) -> (bool, Vec<i64>) {
    let singleton = constraints.min_total_degree <= 0;
    let lo = constraints.min_total_degree.max(1);
    (singleton, (lo..=b).collect())
}

fn chains_from_row(
    base: &Diagram,
    constraints: &EnumerationConstraints,
    max_x: i64,
    y0: i64,
    emit: &mut impl FnMut(&[LatticePoint]),
) {
    let mut chain = vec![pt(0, y0)];
    extend_chain(base, constraints, max_x, &mut chain, emit);
}

/// Every convenient chain whose region contains all base vertices and whose
/// vertices clear the degree threshold. Output order is deterministic:
/// the single-point chain first if admitted, then by starting row ascending.
pub fn enumerate_subdiagrams(
    base: &Diagram,
    constraints: &EnumerationConstraints,
) -> Result<Vec<Diagram>, OracleError> {
    enumerate_subdiagrams_budgeted(base, constraints, Budget::default())
}

pub fn enumerate_subdiagrams_budgeted(
    base: &Diagram,
    constraints: &EnumerationConstraints,
    budget: Budget,
) -> Result<Vec<Diagram>, OracleError> {
    let (a, b) = check_base(base, constraints, budget)?;
    let (singleton, rows) = start_rows(constraints, b);
    let mut out = Vec::new();
    if singleton {
        out.push(Diagram::from_canonical(vec![pt(0, 0)]));
    }
    for y0 in rows {
        chains_from_row(base, constraints, a, y0, &mut |verts| {
            out.push(Diagram::from_canonical(verts.to_vec()));
        });
    }
    Ok(out)
}

fn witness_key(d: &Diagram) -> Vec<(i64, i64)> {
    d.vertices().iter().map(|v| (v.y, v.x)).collect()
}

fn keep_min(map: &mut BTreeMap<i64, Diagram>, nu: i64, d: Diagram) {
    match map.entry(nu) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(d);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            if witness_key(&d) < witness_key(e.get()) {
                e.insert(d);
            }
        }
    }
}

/// Attained Newton numbers of all deformations of `tr(p, q)`, with the
/// lexicographically smallest witness per value (vertices compared as
/// `(y, x)` pairs). Deterministic regardless of thread count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumResult {
    pub base: Diagram,
    pub constraints: EnumerationConstraints,
    pub attainable: BTreeSet<i64>,
    pub witnesses: BTreeMap<i64, Diagram>,
}

pub fn attainable_spectrum(
    p: i64,
    q: i64,
    constraints: &EnumerationConstraints,
) -> Result<SpectrumResult, OracleError> {
    attainable_spectrum_budgeted(p, q, constraints, Budget::default())
}

pub fn attainable_spectrum_budgeted(
    p: i64,
    q: i64,
    constraints: &EnumerationConstraints,
    budget: Budget,
) -> Result<SpectrumResult, OracleError> {
    SqhParams::new(p, q)?;
    let base = Diagram::segment(p, q)?;
    let (a, b) = check_base(&base, constraints, budget)?;
    let (_, rows) = start_rows(constraints, b);

    let row_maps: Vec<BTreeMap<i64, Diagram>> = rows
        .par_iter()
        .map(|&y0| {
            let mut local: BTreeMap<i64, Diagram> = BTreeMap::new();
            chains_from_row(&base, constraints, a, y0, &mut |verts| {
                let d = Diagram::from_canonical(verts.to_vec());
                if let Ok(nu) = d.newton_number() {
                    if nu >= constraints.min_nu {
                        keep_min(&mut local, nu, d);
                    }
                }
            });
            local
        })
        .collect();

    let mut witnesses: BTreeMap<i64, Diagram> = BTreeMap::new();
    for row in row_maps {
        for (nu, d) in row {
            keep_min(&mut witnesses, nu, d);
        }
    }
    Ok(SpectrumResult {
        base,
        constraints: *constraints,
        attainable: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// The lexicographically smallest deformation of `base` with the given
/// Newton number, or `None` when the value is a gap.
pub fn find_witness(
    base: &Diagram,
    target: i64,
    constraints: &EnumerationConstraints,
) -> Result<Option<Diagram>, OracleError> {
    let mut best: Option<Diagram> = None;
    for d in enumerate_subdiagrams(base, constraints)? {
        if d.newton_number().ok() != Some(target) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(cur) => witness_key(&d) < witness_key(cur),
        };
        if better {
            best = Some(d);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    Pass,
    Fail,
}

impl VerifyStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyStatus::Pass => "pass",
            VerifyStatus::Fail => "fail",
        }
    }
}

/// Prediction vs enumeration. `missing_guaranteed` holds predicted-attainable
/// values the oracle could not realize (each one falsifies the prediction);
/// `closed_gaps` holds predicted gaps that turned out attainable, which
/// falsifies only `definitive` ones.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub predicted: GapReport,
    pub observed: SpectrumResult,
    pub missing_guaranteed: Vec<i64>,
    pub closed_gaps: Vec<i64>,
    pub status: VerifyStatus,
}

pub fn verify(p: i64, q: i64) -> Result<VerificationReport, OracleError> {
    let predicted = predicted_report(p, q)?;
    let observed = attainable_spectrum(p, q, &EnumerationConstraints::default())?;

    let mut missing_guaranteed = Vec::new();
    for &(lo, hi) in &predicted.guaranteed {
        for v in lo..=hi {
            if !observed.attainable.contains(&v) {
                missing_guaranteed.push(v);
            }
        }
    }
    let closed_gaps: Vec<i64> = predicted
        .possible_gaps
        .iter()
        .filter(|g| observed.attainable.contains(&g.value))
        .map(|g| g.value)
        .collect();
    let definitive_closed = predicted
        .possible_gaps
        .iter()
        .any(|g| g.definitive && observed.attainable.contains(&g.value));

    let status = if missing_guaranteed.is_empty() && !definitive_closed {
        VerifyStatus::Pass
    } else {
        VerifyStatus::Fail
    };
    Ok(VerificationReport {
        predicted,
        observed,
        missing_guaranteed,
        closed_gaps,
        status,
    })
}

/// Independent re-derivation of `enumerate_subdiagrams` that never walks
/// chains: starting from the base, repeatedly deform by one candidate lattice
/// point and keep every diagram reached. Quadratic and slow, used to
/// cross-check the walker.
pub fn enumerate_by_point_subsets(
    base: &Diagram,
    constraints: &EnumerationConstraints,
) -> Result<Vec<Diagram>, OracleError> {
    enumerate_by_point_subsets_budgeted(base, constraints, Budget::default())
}

pub fn enumerate_by_point_subsets_budgeted(
    base: &Diagram,
    constraints: &EnumerationConstraints,
    budget: Budget,
) -> Result<Vec<Diagram>, OracleError> {
    let (a, b) = check_base(base, constraints, budget)?;

    let mut candidates = Vec::new();
    for x in 0..=a {
        for y in 0..=b {
            let c = pt(x, y);
            if x + y >= constraints.min_total_degree && !base.region_contains(c) {
                candidates.push(c);
            }
        }
    }

    let mut reached: HashSet<Diagram> = HashSet::new();
    reached.insert(base.clone());
    for c in candidates {
        let snapshot: Vec<Diagram> = reached.iter().cloned().collect();
        for d in snapshot {
            reached.insert(d.deform(&[c])?);
        }
    }

    let mut out: Vec<Diagram> = reached
        .into_iter()
        .filter(|d| {
            d.vertices()
                .iter()
                .all(|v| v.x + v.y >= constraints.min_total_degree)
        })
        .collect();
    out.sort_by_key(witness_key);
    Ok(out)
}
