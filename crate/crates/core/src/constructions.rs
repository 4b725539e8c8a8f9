//! Explicit deformation diagrams below `tr(p, q)`: the first-jump diagram,
//! staircase brackets, continued-fraction sigma chains, the `tr(p, kp)`
//! catalog for `p >= 5`, and the exhaustive catalogs for `p <= 4`.

use thiserror::Error;

use crate::eea::{eea_sequence, solve_in_basis, EeaError};
use crate::gcd;
use crate::geometry::{pt, Diagram, GeometryError, LatticePoint, SegmentTerm};
use crate::predictor::{PredictorError, SqhParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{0}")]
    OutOfRange(String),
    #[error("construction invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Eea(#[from] EeaError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Params(#[from] PredictorError),
}

/// A catalog entry: a deformation diagram, its label, and the Newton number
/// the catalog claims for it, when it claims one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDeformation {
    pub label: String,
    pub diagram: Diagram,
    pub claimed_nu: Option<i64>,
}

impl NamedDeformation {
    fn new(label: impl Into<String>, diagram: Diagram, claimed_nu: Option<i64>) -> Self {
        NamedDeformation {
            label: label.into(),
            diagram,
            claimed_nu,
        }
    }
}

/// Builds the convex chain using all the given `(multiplicity, dx, dy)`
/// terms, anchored on the y-axis and sorted steepest first, so the listing
/// order never matters. Zero-multiplicity and null terms are dropped.
fn chain(parts: &[(i64, i64, i64)]) -> Result<Diagram, FamilyError> {
    let mut terms = Vec::new();
    let mut height: i64 = 0;
    for &(mult, dx, dy) in parts {
        if mult == 0 || (dx == 0 && dy == 0) {
            continue;
        }
        terms.push(SegmentTerm::new(mult, dx, dy)?);
        height += mult * dy;
    }
    terms.sort_by(|s, t| (t.dy as i128 * s.dx as i128).cmp(&(s.dy as i128 * t.dx as i128)));
    Ok(Diagram::from_terms(pt(0, height), false, &terms)?)
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::OutOfRange(msg.into()))
    }
}

/// The deepest one-step deformation of `tr(p, q)` when `p` does not divide
/// `q`: drop the Newton number by exactly `m = gcd(p, q)`.
pub fn first_jump_diagram(params: &SqhParams) -> Result<NamedDeformation, FamilyError> {
    let SqhParams { p, q, m, .. } = *params;
    require(
        m < p,
        format!("first jump needs p not dividing q, got ({p}, {q})"),
    )?;
    let seq = eea_sequence(p / m, q / m)?;
    let (a1, b1) = seq.pair(1)?;
    let diagram = chain(&[(1, p - a1, q - b1), (1, a1, b1)])?;
    let claimed = (p - 1) * (q - 1) - m;
    Ok(NamedDeformation::new("eq-3.1", diagram, Some(claimed)))
}

/// The bracket chain from `tr(p, q)` down to the closing diagram `L`:
/// the first jump, then for each interior continued-fraction step the pair
/// `D_i` (one long segment plus a tail) and `E_i` (two segment bundles),
/// and finally `L = r*tr(1, k+1) + (p-r)*tr(1, k)`.
///
/// Entries carry claimed Newton numbers only where the catalog pins them;
/// the interior brackets are ordering devices and are left unclaimed.
pub fn staircase_brackets(params: &SqhParams) -> Result<Vec<NamedDeformation>, FamilyError> {
    let SqhParams { p, q, k, r, m } = *params;
    let first = first_jump_diagram(params)?;
    let base = Diagram::segment(p, q)?;
    let nu = (p - 1) * (q - 1);
    let seq = eea_sequence(p / m, q / m)?;
    let l = seq.len();

    let closing = chain(&[(r, 1, k + 1), (p - r, 1, k)])?;
    let closing_claim = nu - r * (p - r);

    let mut out = vec![first];
    let mut closed = false;
    for i in 1..=l.saturating_sub(2) {
        let u = seq.pair(i)?;
        let v = seq.pair(i + 1)?;
        let (cap_n, n) = solve_in_basis(u, v, (seq.a0(), seq.b0())).ok_or_else(|| {
            FamilyError::Internal(format!(
                "no positive decomposition of ({}, {}) in step {i} of the ({p}, {q}) staircase",
                seq.a0(),
                seq.b0()
            ))
        })?;

        let d_i = chain(&[
            (1, m * cap_n * u.0 + v.0, m * cap_n * u.1 + v.1),
            (m * n - 1, v.0, v.1),
        ])?;
        if d_i != base {
            out.push(NamedDeformation::new(
                format!("staircase-D[i={i}]"),
                d_i,
                None,
            ));
        }

        let e_i = chain(&[(m * cap_n, u.0, u.1), (m * n, v.0, v.1)])?;
        if e_i == closing {
            out.push(NamedDeformation::new("closing-L", e_i, Some(closing_claim)));
            closed = true;
            break;
        }
        out.push(NamedDeformation::new(
            format!("staircase-E[i={i}]"),
            e_i,
            None,
        ));
    }
    if !closed {
        out.push(NamedDeformation::new(
            "closing-L",
            closing,
            Some(closing_claim),
        ));
    }
    Ok(out)
}

/// The two-bundle chain read off the continued-fraction expansion of
/// `b0 / a0`, anchored where requested. `reversed` swaps the listing order
/// of the bundles; exactly one orientation is convex unless both bundles
/// share a slope.
pub fn sigma_diagram(
    a0: i64,
    b0: i64,
    anchor: LatticePoint,
    reversed: bool,
) -> Result<Diagram, FamilyError> {
    let seq = eea_sequence(a0, b0)?;
    let (a1, _) = seq.pair(1)?;
    let mut terms = Vec::new();
    let mut push = |mult: i64, dx: i64, dy: i64| -> Result<(), FamilyError> {
        if mult > 0 && !(dx == 0 && dy == 0) {
            terms.push(SegmentTerm::new(mult, dx, dy)?);
        }
        Ok(())
    };
    if seq.len() >= 2 && a1 != 1 {
        let (cap_n, n) = seq.decomposition().ok_or_else(|| {
            FamilyError::Internal(format!("({a0}, {b0}) has no stored decomposition"))
        })?;
        let (a2, b2) = seq.pair(2)?;
        push(cap_n, a1, seq.pair(1)?.1)?;
        push(n, a2, b2)?;
    } else {
        let k = b0 / a0;
        let r = b0 % a0;
        push(r, 1, k + 1)?;
        push(a0 - r, 1, k)?;
    }
    Ok(Diagram::from_terms(anchor, reversed, &terms)?)
}

/// Tries the listed orientation first, then the reverse; returns the convex
/// one together with the flag that produced it.
pub fn sigma_convex(a0: i64, b0: i64) -> Result<(Diagram, bool), FamilyError> {
    let anchor = pt(0, b0);
    match sigma_diagram(a0, b0, anchor, false) {
        Ok(d) => Ok((d, false)),
        Err(_) => Ok((sigma_diagram(a0, b0, anchor, true)?, true)),
    }
}

/// One level of the extended family: the base segment `tr(p, q - offset)`
/// and its staircase brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedStep {
    pub offset: i64,
    pub base: Diagram,
    pub base_nu: i64,
    pub brackets: Vec<NamedDeformation>,
}

/// Staircase brackets for `tr(p, q - offset)` for every offset `0 <= l < r`,
/// so consecutive bases differ by exactly `p - 1` in Newton number. When
/// `r = p - 1` the head level is followed by the expansion of `(p, q - 1)`.
pub fn extended_family(params: &SqhParams) -> Result<Vec<ExtendedStep>, FamilyError> {
    let SqhParams { p, q, r, .. } = *params;
    require(p > 4, format!("extended family needs p > 4, got p = {p}"))?;
    require(
        r != 0,
        format!("extended family needs p not dividing q, got ({p}, {q})"),
    )?;

    let step = |offset: i64| -> Result<ExtendedStep, FamilyError> {
        let level = SqhParams::new(p, q - offset)?;
        Ok(ExtendedStep {
            offset,
            base: Diagram::segment(p, q - offset)?,
            base_nu: (p - 1) * (q - offset - 1),
            brackets: staircase_brackets(&level)?,
        })
    };

    if r == p - 1 {
        let mut out = vec![step(0)?];
        for tail in extended_family(&SqhParams::new(p, q - 1)?)? {
            out.push(ExtendedStep {
                offset: tail.offset + 1,
                ..tail
            });
        }
        return Ok(out);
    }
    (0..r).map(step).collect()
}

/// Interval stitching between level `offset` and the next lower base:
/// the closing diagram must reach at least `p - 1` below the level's top.
pub fn stitch_interval_reaches_next_base(
    params: &SqhParams,
    offset: i64,
) -> Result<bool, FamilyError> {
    let SqhParams { p, q, .. } = *params;
    require(
        offset >= 0 && offset < params.r,
        format!("offset {offset} outside 0..{}", params.r),
    )?;
    let r_l = SqhParams::new(p, q - offset)?.r;
    Ok(r_l * (p - r_l) >= p - 1)
}

/// The drop between consecutive bases of the extended family is exactly
/// `p - 1`.
pub fn stitch_base_jump_is_p_minus_1(params: &SqhParams, offset: i64) -> Result<bool, FamilyError> {
    let SqhParams { p, q, .. } = *params;
    require(
        offset >= 0 && offset < params.r,
        format!("offset {offset} outside 0..{}", params.r),
    )?;
    let here = (p - 1) * (q - offset - 1);
    let next = (p - 1) * (q - offset - 2);
    Ok(here - next == p - 1)
}

/// For `q = k*p + (p - 1)` the pair `(p, q - 1)` keeps the remainder
/// positive, and `gcd(p, q - 1)` is 2 for even `p` and 1 for odd `p`.
/// Returns that gcd together with the parity of `p`.
pub fn gcd_parity(p: i64, q: i64) -> Result<(i64, bool), FamilyError> {
    require(
        p >= 2 && q >= p,
        format!("needs 2 <= p <= q, got ({p}, {q})"),
    )?;
    require(
        q % p == p - 1,
        format!("needs q = p - 1 (mod p), got q mod p = {}", q % p),
    )?;
    let g = gcd(p, q - 1);
    let even = p % 2 == 0;
    let expected = if even { 2 } else { 1 };
    if g != expected {
        return Err(FamilyError::Internal(format!(
            "gcd({p}, {}) = {g}, expected {expected}",
            q - 1
        )));
    }
    Ok((g, even))
}

/// Deformation catalog below `tr(p, kappa * p)` inside the family of
/// `tr(p, k * p)`, for `p >= 5` and `1 <= kappa <= k`. Levels interlock:
/// entries at level `kappa` continue the spectrum started at `kappa + 1`.
pub fn pkp_family(p: i64, k: i64, kappa: i64) -> Result<Vec<NamedDeformation>, FamilyError> {
    require(p >= 5, format!("catalog needs p >= 5, got p = {p}"))?;
    require(k >= 1, format!("needs k >= 1, got k = {k}"))?;
    require(
        (1..=k).contains(&kappa),
        format!("kappa must be in 1..={k}, got {kappa}"),
    )?;
    let mu_kappa = (p - 1) * (kappa * p - 1);
    let mut out = Vec::new();

    out.push(NamedDeformation::new(
        format!("pkp-first-jump[kappa={kappa}]"),
        Diagram::segment(p, kappa * p - 1)?,
        Some(mu_kappa - (p - 1)),
    ));

    if kappa < k {
        for i in 2..=p - 1 {
            let diagram = chain(&[
                (1, 2, p + 2 * kappa),
                (i - 2, 1, kappa),
                (1, p - i, kappa * (p - i) - 1),
            ])?;
            let claimed = if kappa >= 2 || i <= p - 2 {
                Some(mu_kappa - (i - 1))
            } else {
                None
            };
            out.push(NamedDeformation::new(
                format!("eq-4.1[i={i},kappa={kappa}]"),
                diagram,
                claimed,
            ));
        }
        out.push(NamedDeformation::new(
            format!("pkp-2p-1[kappa={kappa}]"),
            chain(&[(1, 2, 2 * kappa + 3), (1, p - 2, (p - 2) * kappa - 2)])?,
            Some(mu_kappa - (2 * p - 1)),
        ));
    }

    if kappa == 1 {
        let bridge = chain(&[(1, 2, p + 6), (1, p - 2, p - 4)])?;
        let claimed = (p - 1) * (p - 2) + 1;
        if k >= 3 {
            out.push(NamedDeformation::new("pkp-bridge", bridge, Some(claimed)));
        } else {
            log::warn!(
                "pkp-bridge for p = {p}, k = {k}: chain [{bridge}] does not fit under tr({p}, {}); dropped",
                k * p
            );
        }
    }
    Ok(out)
}

/// Exhaustive deformation catalogs below `tr(p, k*p)` for `p = 2, 3, 4`.
/// For `p = 2` the catalog is indexed by depth alone and `kappa` is ignored;
/// for `p = 3, 4` it lists the level `2 <= kappa <= k`.
pub fn small_p_family(p: i64, k: i64, kappa: i64) -> Result<Vec<NamedDeformation>, FamilyError> {
    require(
        (2..=4).contains(&p),
        format!("catalog needs p in 2..=4, got {p}"),
    )?;
    require(k >= 2, format!("needs k >= 2, got k = {k}"))?;
    if p != 2 {
        require(
            (2..=k).contains(&kappa),
            format!("kappa must be in 2..={k}, got {kappa}"),
        )?;
    }
    let mut out = Vec::new();
    match p {
        2 => {
            for i in 1..=2 * k - 2 {
                out.push(NamedDeformation::new(
                    format!("p2-family[i={i}]"),
                    Diagram::segment(2, 2 * k - i)?,
                    Some(2 * k - i - 1),
                ));
            }
        }
        3 => {
            let nb = 6 * kappa - 4;
            for i in 0..=2 {
                out.push(NamedDeformation::new(
                    format!("p3-bullet-1[i={i}]"),
                    chain(&[(i, 1, kappa), (1, 3 - i, (3 - i) * kappa - 1)])?,
                    Some(nb - i),
                ));
            }
            out.push(NamedDeformation::new(
                "p3-bullet-2",
                chain(&[(1, 2, 2 * kappa - 1), (1, 1, kappa - 1)])?,
                Some(nb - 3),
            ));
            out.push(NamedDeformation::new(
                "p3-bullet-3",
                Diagram::segment(3, 3 * kappa - 3)?,
                Some(nb - 4),
            ));
            if kappa == 2 {
                let main = chain(&[(1, 2, 2 * kappa + 1), (1, 1, kappa - 2)])?;
                log::warn!(
                    "p3-bullet-4 for kappa = 2: chain [{main}] computes {}, not the claimed {}; replaced by tr(2, 4)",
                    main.newton_number().map_err(FamilyError::Geometry)?,
                    nb - 5
                );
                out.push(NamedDeformation::new(
                    "p3-bullet-4",
                    Diagram::segment(2, 4)?,
                    Some(nb - 5),
                ));
            } else {
                out.push(NamedDeformation::new(
                    "p3-bullet-4",
                    chain(&[(1, 2, 2 * kappa + 1), (1, 1, kappa - 2)])?,
                    Some(nb - 5),
                ));
            }
        }
        _ => {
            let nb = 12 * kappa - 6;
            for i in 0..=3 {
                out.push(NamedDeformation::new(
                    format!("p4-bullet-1[i={i}]"),
                    chain(&[(i, 1, kappa), (1, 4 - i, (4 - i) * kappa - 1)])?,
                    Some(nb - i),
                ));
            }
            for i in 0..=2 {
                out.push(NamedDeformation::new(
                    format!("p4-bullet-2[i={i}]"),
                    chain(&[
                        (i, 1, kappa),
                        (1, 3 - i, (3 - i) * kappa - 1),
                        (1, 1, kappa - 1),
                    ])?,
                    Some(nb - 5 - i),
                ));
            }
            for i in 0..=1 {
                out.push(NamedDeformation::new(
                    format!("p4-bullet-3[i={i}]"),
                    chain(&[
                        (i, 1, kappa),
                        (1, 2 - i, (2 - i) * kappa - 1),
                        (1, 2, 2 * kappa - 2),
                    ])?,
                    Some(nb - 8 - i),
                ));
            }
            for i in 1..=2 {
                out.push(NamedDeformation::new(
                    format!("p4-bullet-4[i={i}]"),
                    chain(&[(1, 2, 2 * kappa + 3 - i), (1, 2, 2 * kappa - 3)])?,
                    Some(nb - 9 - i),
                ));
            }
            if kappa == 2 {
                out.push(NamedDeformation::new(
                    "p4-bullet-5",
                    Diagram::segment(2, 3)?,
                    Some(nb - 16),
                ));
            } else {
                out.push(NamedDeformation::new(
                    "p4-bullet-5",
                    chain(&[(1, 2, 2 * kappa + 1), (1, 2, 2 * kappa - 4)])?,
                    Some(nb - 16),
                ));
            }
            if kappa == 2 && k == 2 {
                out.push(NamedDeformation::new(
                    "p4-tr38",
                    Diagram::segment(3, 8)?,
                    Some(14),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, q: i64) -> SqhParams {
        SqhParams::new(p, q).unwrap()
    }

    fn verts(d: &Diagram) -> Vec<(i64, i64)> {
        d.vertices().iter().map(|v| (v.x, v.y)).collect()
    }

    fn nu(d: &Diagram) -> i64 {
        d.newton_number().unwrap()
    }

    #[test]
    fn first_jump_frozen_values() {
        type Row = (i64, i64, &'static [(i64, i64)], i64);
        let cases: &[Row] = &[
            (2, 3, &[(0, 3), (1, 1), (2, 0)], 1),
            (4, 6, &[(0, 6), (3, 1), (4, 0)], 13),
            (6, 8, &[(0, 8), (5, 1), (6, 0)], 33),
            (6, 9, &[(0, 9), (5, 1), (6, 0)], 37),
            (5, 7, &[(0, 7), (2, 4), (5, 0)], 23),
            (5, 8, &[(0, 8), (3, 3), (5, 0)], 27),
            (8, 11, &[(0, 11), (5, 4), (8, 0)], 69),
            (10, 14, &[(0, 14), (2, 11), (10, 0)], 115),
            (10, 16, &[(0, 16), (8, 3), (10, 0)], 133),
        ];
        for &(p, q, expected, expected_nu) in cases {
            let fj = first_jump_diagram(&params(p, q)).unwrap();
            assert_eq!(fj.label, "eq-3.1");
            assert_eq!(verts(&fj.diagram), expected, "({p}, {q})");
            assert_eq!(fj.claimed_nu, Some(expected_nu));
            assert_eq!(nu(&fj.diagram), expected_nu);
            assert!(fj
                .diagram
                .is_deformation_of(&Diagram::segment(p, q).unwrap()));
        }
    }

    #[test]
    fn first_jump_rejects_divisible() {
        assert!(matches!(
            first_jump_diagram(&params(3, 6)),
            Err(FamilyError::OutOfRange(_))
        ));
    }

    #[test]
    fn staircase_frozen_lists() {
        type Row = (i64, i64, &'static [(&'static str, i64)]);
        let expect: &[Row] = &[
            (4, 6, &[("eq-3.1", 13), ("closing-L", 11)]),
            (6, 9, &[("eq-3.1", 37), ("closing-L", 31)]),
            (
                5,
                7,
                &[("eq-3.1", 23), ("staircase-E[i=1]", 22), ("closing-L", 18)],
            ),
            (
                5,
                8,
                &[
                    ("eq-3.1", 27),
                    ("staircase-E[i=1]", 26),
                    ("staircase-D[i=2]", 25),
                    ("closing-L", 22),
                ],
            ),
            (
                8,
                11,
                &[
                    ("eq-3.1", 69),
                    ("staircase-E[i=1]", 68),
                    ("staircase-D[i=2]", 67),
                    ("staircase-E[i=2]", 64),
                    ("closing-L", 55),
                ],
            ),
            (
                10,
                14,
                &[
                    ("eq-3.1", 115),
                    ("staircase-D[i=1]", 113),
                    ("staircase-E[i=1]", 109),
                    ("closing-L", 93),
                ],
            ),
            (
                10,
                16,
                &[
                    ("eq-3.1", 133),
                    ("staircase-D[i=1]", 131),
                    ("staircase-E[i=1]", 127),
                    ("staircase-D[i=2]", 117),
                    ("closing-L", 111),
                ],
            ),
        ];
        for &(p, q, entries) in expect {
            let base = Diagram::segment(p, q).unwrap();
            let brackets = staircase_brackets(&params(p, q)).unwrap();
            let got: Vec<(String, i64)> = brackets
                .iter()
                .map(|b| (b.label.clone(), nu(&b.diagram)))
                .collect();
            let want: Vec<(String, i64)> =
                entries.iter().map(|&(l, v)| (l.to_string(), v)).collect();
            assert_eq!(got, want, "({p}, {q})");
            for b in &brackets {
                assert!(b.diagram.is_deformation_of(&base), "({p}, {q}) {}", b.label);
                if let Some(c) = b.claimed_nu {
                    assert_eq!(c, nu(&b.diagram), "({p}, {q}) {}", b.label);
                }
            }
        }
    }

    #[test]
    fn staircase_frozen_vertices() {
        let brackets = staircase_brackets(&params(10, 16)).unwrap();
        let by_label: std::collections::HashMap<&str, &Diagram> = brackets
            .iter()
            .map(|b| (b.label.as_str(), &b.diagram))
            .collect();
        assert_eq!(
            verts(by_label["staircase-D[i=1]"]),
            [(0, 16), (1, 14), (10, 0)]
        );
        assert_eq!(
            verts(by_label["staircase-E[i=1]"]),
            [(0, 16), (2, 12), (10, 0)]
        );
        assert_eq!(
            verts(by_label["staircase-D[i=2]"]),
            [(0, 16), (7, 3), (10, 0)]
        );
        assert_eq!(verts(by_label["closing-L"]), [(0, 16), (6, 4), (10, 0)]);

        let brackets = staircase_brackets(&params(8, 11)).unwrap();
        let closing = brackets.last().unwrap();
        assert_eq!(verts(&closing.diagram), [(0, 11), (3, 5), (8, 0)]);
        assert_eq!(closing.claimed_nu, Some(55));
    }

    #[test]
    fn closing_diagram_values() {
        for (p, q, v, n) in [
            (4, 6, vec![(0, 6), (2, 2), (4, 0)], 11),
            (6, 9, vec![(0, 9), (3, 3), (6, 0)], 31),
            (5, 7, vec![(0, 7), (2, 3), (5, 0)], 18),
            (5, 8, vec![(0, 8), (3, 2), (5, 0)], 22),
            (10, 14, vec![(0, 14), (4, 6), (10, 0)], 93),
        ] {
            let brackets = staircase_brackets(&params(p, q)).unwrap();
            let closing = brackets.last().unwrap();
            assert_eq!(closing.label, "closing-L");
            assert_eq!(verts(&closing.diagram), v, "({p}, {q})");
            assert_eq!(nu(&closing.diagram), n, "({p}, {q})");
            assert_eq!(closing.claimed_nu, Some(n));
        }
    }

    #[test]
    fn sigma_frozen() {
        let (d, reversed) = sigma_convex(5, 7).unwrap();
        assert!(!reversed);
        assert_eq!(verts(&d), [(0, 7), (4, 1), (5, 0)]);
        assert_eq!(nu(&d), 22);

        let (d, reversed) = sigma_convex(5, 8).unwrap();
        assert!(reversed);
        assert_eq!(verts(&d), [(0, 8), (1, 6), (5, 0)]);
        assert_eq!(nu(&d), 26);

        let (d, reversed) = sigma_convex(9, 14).unwrap();
        assert!(reversed);
        assert_eq!(verts(&d), [(0, 14), (1, 12), (9, 0)]);
        assert_eq!(nu(&d), 100);

        let (d, _) = sigma_convex(3, 7).unwrap();
        assert_eq!(d.term_form().unwrap(), "tr(1,3) + 2*tr(1,2) @ (0,7)");

        let (d, _) = sigma_convex(1, 4).unwrap();
        assert_eq!(verts(&d), [(0, 4), (1, 0)]);
    }

    #[test]
    fn sigma_wrong_orientation_rejected() {
        assert!(sigma_diagram(5, 8, pt(0, 8), false).is_err());
        assert!(sigma_diagram(5, 7, pt(0, 7), true).is_err());
    }

    #[test]
    fn sigma_is_deformation_of_segment() {
        for a0 in 2..=8i64 {
            for b0 in a0..=14i64 {
                if gcd(a0, b0) != 1 {
                    continue;
                }
                let (d, _) = sigma_convex(a0, b0).unwrap();
                let base = Diagram::segment(a0, b0).unwrap();
                assert!(d.is_deformation_of(&base), "sigma({a0}, {b0})");
            }
        }
    }

    #[test]
    fn extended_family_bases() {
        let steps = extended_family(&params(6, 9)).unwrap();
        assert_eq!(
            steps.iter().map(|s| s.base_nu).collect::<Vec<_>>(),
            [40, 35, 30]
        );
        assert_eq!(steps[1].base, Diagram::segment(6, 8).unwrap());
        for s in &steps {
            assert_eq!(s.brackets[0].label, "eq-3.1");
        }

        let steps = extended_family(&params(6, 11)).unwrap();
        assert_eq!(
            steps
                .iter()
                .map(|s| (s.offset, s.base_nu))
                .collect::<Vec<_>>(),
            [(0, 50), (1, 45), (2, 40), (3, 35), (4, 30)]
        );

        assert!(extended_family(&params(4, 6)).is_err());
        assert!(extended_family(&params(5, 10)).is_err());
    }

    #[test]
    fn stitching_predicates_hold() {
        for p in 5..=8i64 {
            for q in p..=16i64 {
                let params = params(p, q);
                if params.r == 0 {
                    continue;
                }
                for offset in 0..params.r {
                    assert!(
                        stitch_interval_reaches_next_base(&params, offset).unwrap(),
                        "({p}, {q}) offset {offset}"
                    );
                    assert!(stitch_base_jump_is_p_minus_1(&params, offset).unwrap());
                }
                assert!(stitch_interval_reaches_next_base(&params, params.r).is_err());
            }
        }
    }

    #[test]
    fn gcd_parity_frozen() {
        assert_eq!(gcd_parity(6, 11).unwrap(), (2, true));
        assert_eq!(gcd_parity(5, 9).unwrap(), (1, false));
        assert_eq!(gcd_parity(2, 3).unwrap(), (2, true));
        assert!(gcd_parity(5, 8).is_err());
        assert!(gcd_parity(6, 12).is_err());
    }

    #[test]
    fn pkp_frozen_kappa_1() {
        let fam = pkp_family(5, 2, 1).unwrap();
        let by_label: std::collections::HashMap<&str, &NamedDeformation> =
            fam.iter().map(|b| (b.label.as_str(), b)).collect();

        let fj = by_label["pkp-first-jump[kappa=1]"];
        assert_eq!(fj.diagram, Diagram::segment(5, 4).unwrap());
        assert_eq!(fj.claimed_nu, Some(12));

        let i2 = by_label["eq-4.1[i=2,kappa=1]"];
        assert_eq!(verts(&i2.diagram), [(0, 9), (2, 2), (5, 0)]);
        assert_eq!(i2.claimed_nu, Some(15));
        assert_eq!(nu(&i2.diagram), 15);

        let i3 = by_label["eq-4.1[i=3,kappa=1]"];
        assert_eq!(verts(&i3.diagram), [(0, 9), (2, 2), (3, 1), (5, 0)]);
        assert_eq!(i3.claimed_nu, Some(14));
        assert_eq!(nu(&i3.diagram), 14);

        let i4 = by_label["eq-4.1[i=4,kappa=1]"];
        assert_eq!(i4.claimed_nu, None);
        assert_eq!(nu(&i4.diagram), 14);

        let d = by_label["pkp-2p-1[kappa=1]"];
        assert_eq!(verts(&d.diagram), [(0, 6), (2, 1), (5, 0)]);
        assert_eq!(d.claimed_nu, Some(16 - 9));
        assert_eq!(nu(&d.diagram), 7);

        assert!(!by_label.contains_key("pkp-bridge"));
    }

    #[test]
    fn pkp_bridge_needs_k_3() {
        let fam = pkp_family(5, 3, 1).unwrap();
        let bridge = fam.iter().find(|b| b.label == "pkp-bridge").unwrap();
        assert_eq!(verts(&bridge.diagram), [(0, 12), (2, 1), (5, 0)]);
        assert_eq!(bridge.claimed_nu, Some(13));
        assert_eq!(nu(&bridge.diagram), 13);
        assert!(bridge
            .diagram
            .is_deformation_of(&Diagram::segment(5, 15).unwrap()));

        let fam = pkp_family(5, 2, 1).unwrap();
        assert!(fam.iter().all(|b| b.label != "pkp-bridge"));
    }

    #[test]
    fn pkp_kappa_2_claims() {
        let fam = pkp_family(5, 3, 2).unwrap();
        let base = Diagram::segment(5, 15).unwrap();
        let mu2 = 4 * 9;
        for b in &fam {
            assert!(b.diagram.is_deformation_of(&base), "{}", b.label);
            if let Some(c) = b.claimed_nu {
                assert_eq!(c, nu(&b.diagram), "{}", b.label);
            }
        }
        let values: Vec<i64> = fam
            .iter()
            .filter(|b| b.label.starts_with("eq-4.1"))
            .map(|b| b.claimed_nu.unwrap())
            .collect();
        assert_eq!(values, [mu2 - 1, mu2 - 2, mu2 - 3]);

        let top = fam.iter().find(|b| b.label == "pkp-2p-1[kappa=2]").unwrap();
        assert_eq!(top.claimed_nu, Some(mu2 - 9));
    }

    #[test]
    fn pkp_even_p_frozen() {
        let fam = pkp_family(6, 2, 2).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].claimed_nu, Some(5 * 11 - 5));

        let fam = pkp_family(6, 3, 2).unwrap();
        let d = fam.iter().find(|b| b.label == "pkp-2p-1[kappa=2]").unwrap();
        assert_eq!(verts(&d.diagram), [(0, 13), (2, 6), (6, 0)]);
        assert_eq!(d.claimed_nu, Some(44));
        assert_eq!(nu(&d.diagram), 44);
    }

    #[test]
    fn pkp_domain_errors() {
        assert!(pkp_family(4, 2, 1).is_err());
        assert!(pkp_family(5, 2, 3).is_err());
        assert!(pkp_family(5, 2, 0).is_err());
    }

    #[test]
    fn small_p2_catalog() {
        let fam = small_p_family(2, 4, 1).unwrap();
        let claims: Vec<i64> = fam.iter().map(|b| b.claimed_nu.unwrap()).collect();
        assert_eq!(claims, [6, 5, 4, 3, 2, 1]);
        let base = Diagram::segment(2, 8).unwrap();
        for b in &fam {
            assert!(b.diagram.is_deformation_of(&base));
            assert_eq!(b.claimed_nu, Some(nu(&b.diagram)));
        }
    }

    #[test]
    fn small_p3_catalog() {
        let fam = small_p_family(3, 3, 3).unwrap();
        let base = Diagram::segment(3, 9).unwrap();
        let claims: Vec<(String, i64)> = fam
            .iter()
            .map(|b| (b.label.clone(), b.claimed_nu.unwrap()))
            .collect();
        assert_eq!(
            claims,
            [
                ("p3-bullet-1[i=0]".to_string(), 14),
                ("p3-bullet-1[i=1]".to_string(), 13),
                ("p3-bullet-1[i=2]".to_string(), 12),
                ("p3-bullet-2".to_string(), 11),
                ("p3-bullet-3".to_string(), 10),
                ("p3-bullet-4".to_string(), 9),
            ]
        );
        for b in &fam {
            assert!(b.diagram.is_deformation_of(&base), "{}", b.label);
            assert_eq!(b.claimed_nu, Some(nu(&b.diagram)), "{}", b.label);
        }
    }

    #[test]
    fn small_p3_kappa_2_replacement() {
        let fam = small_p_family(3, 2, 2).unwrap();
        let b4 = fam.iter().find(|b| b.label == "p3-bullet-4").unwrap();
        assert_eq!(b4.diagram, Diagram::segment(2, 4).unwrap());
        assert_eq!(b4.claimed_nu, Some(3));
        assert_eq!(nu(&b4.diagram), 3);
    }

    #[test]
    fn small_p4_catalog() {
        for (k, kappa) in [(2i64, 2i64), (3, 2), (3, 3), (4, 3)] {
            let fam = small_p_family(4, k, kappa).unwrap();
            let base = Diagram::segment(4, 4 * k).unwrap();
            for b in &fam {
                assert!(
                    b.diagram.is_deformation_of(&base),
                    "k={k} kappa={kappa} {}",
                    b.label
                );
                assert_eq!(
                    b.claimed_nu,
                    Some(nu(&b.diagram)),
                    "k={k} kappa={kappa} {}",
                    b.label
                );
            }
        }
    }

    #[test]
    fn small_p4_depths() {
        let fam = small_p_family(4, 3, 3).unwrap();
        let nb = 12 * 3 - 6;
        let depths: Vec<i64> = fam.iter().map(|b| nb - b.claimed_nu.unwrap()).collect();
        assert_eq!(depths, [0, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 16]);
    }

    #[test]
    fn small_p4_tr38_only_at_k2() {
        let fam = small_p_family(4, 2, 2).unwrap();
        let t = fam.iter().find(|b| b.label == "p4-tr38").unwrap();
        assert_eq!(t.claimed_nu, Some(14));
        assert_eq!(nu(&t.diagram), 14);

        let fam = small_p_family(4, 3, 2).unwrap();
        assert!(fam.iter().all(|b| b.label != "p4-tr38"));
    }

    #[test]
    fn small_p_domain_errors() {
        assert!(small_p_family(5, 2, 2).is_err());
        assert!(small_p_family(3, 1, 1).is_err());
        assert!(small_p_family(3, 3, 1).is_err());
        assert!(small_p_family(4, 3, 4).is_err());
    }
}
