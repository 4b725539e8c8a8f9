//! Plane Newton diagrams as canonical convex lattice chains, with exact
//! integer area and Newton number arithmetic.

use std::fmt;

use thiserror::Error;

use crate::gcd;

/// Coordinates are kept well inside `i64` so that every cross product and
/// shoelace sum fits in `i128` without overflow.
pub const MAX_COORD: i64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("vertex list is empty")]
    EmptyInput,
    #[error("coordinate ({x}, {y}) outside supported range 0..={MAX_COORD}")]
    CoordinateOutOfRange { x: i64, y: i64 },
    #[error("diagram [{0}] is not convenient: it must start on the y-axis and end on the x-axis")]
    NotConvenient(String),
    #[error("newton number needs both intercepts positive, got a={a}, b={b}")]
    DegenerateIntercepts { a: i64, b: i64 },
    #[error("multiplicity must be positive, got {0}")]
    NonPositiveMultiplicity(i64),
    #[error("segment step ({dx},{dy}) is vertical")]
    VerticalStep { dx: i64, dy: i64 },
    #[error("term {index} breaks convexity: slopes must strictly increase left to right")]
    NonConvexTerms { index: usize },
    #[error("term {index} drops below the x-axis")]
    BelowAxis { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Result<Self, GeometryError> {
        if !(0..=MAX_COORD).contains(&x) || !(0..=MAX_COORD).contains(&y) {
            return Err(GeometryError::CoordinateOutOfRange { x, y });
        }
        Ok(Self { x, y })
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub(crate) fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint { x, y }
}

/// z-component of (a - o) x (b - o); positive when the turn o -> a -> b is
/// counter-clockwise.
fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let ax = (a.x - o.x) as i128;
    let ay = (a.y - o.y) as i128;
    let bx = (b.x - o.x) as i128;
    let by = (b.y - o.y) as i128;
    ax * by - ay * bx
}

/// One maximal-slope segment `multiplicity * tr(dx, dy)`, read as a step of
/// `multiplicity * dx` to the right and `multiplicity * dy` down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentTerm {
    pub multiplicity: i64,
    pub dx: i64,
    pub dy: i64,
}

impl SegmentTerm {
    pub fn new(multiplicity: i64, dx: i64, dy: i64) -> Result<Self, GeometryError> {
        if multiplicity < 1 {
            return Err(GeometryError::NonPositiveMultiplicity(multiplicity));
        }
        if !(0..=MAX_COORD).contains(&dx) || !(0..=MAX_COORD).contains(&dy) {
            return Err(GeometryError::CoordinateOutOfRange { x: dx, y: dy });
        }
        if dx == 0 && dy > 0 {
            return Err(GeometryError::VerticalStep { dx, dy });
        }
        Ok(Self {
            multiplicity,
            dx,
            dy,
        })
    }

    /// `tr(0,0)`; dropped silently wherever terms are assembled.
    pub fn is_null(&self) -> bool {
        self.dx == 0 && self.dy == 0
    }
}

impl fmt::Display for SegmentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity != 1 {
            write!(f, "{}*", self.multiplicity)?;
        }
        write!(f, "tr({},{})", self.dx, self.dy)
    }
}

/// A Newton diagram: the canonical lower-left frontier of a set of lattice
/// points, stored as vertices with strictly increasing x, strictly decreasing
/// y, and strictly convex turns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    vertices: Vec<LatticePoint>,
}

impl Diagram {
    /// Canonicalizes an arbitrary vertex list: sorts, keeps the lowest y per
    /// x-column, drops dominated points, and merges collinear runs.
    pub fn from_vertices(points: &[LatticePoint]) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        let mut pts = points.to_vec();
        for p in &pts {
            LatticePoint::new(p.x, p.y)?;
        }
        pts.sort_unstable();
        pts.dedup();

        let mut stair: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        for p in pts {
            if let Some(&last) = stair.last() {
                if last.x == p.x || p.y >= last.y {
                    continue;
                }
            }
            stair.push(p);
        }

        let mut hull: Vec<LatticePoint> = Vec::with_capacity(stair.len());
        for p in stair {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        Ok(Self { vertices: hull })
    }

    /// The segment diagram `tr(p, q)` from `(0, q)` to `(p, 0)`.
    pub fn segment(p: i64, q: i64) -> Result<Self, GeometryError> {
        Self::from_vertices(&[LatticePoint::new(0, q)?, LatticePoint::new(p, 0)?])
    }

    /// Wraps a vertex list that is already canonical, skipping the sort and
    /// hull passes. Callers guarantee canonical form; debug builds verify it.
    pub(crate) fn from_canonical(vertices: Vec<LatticePoint>) -> Self {
        debug_assert_eq!(
            Self::from_vertices(&vertices).as_ref().map(Self::vertices),
            Ok(vertices.as_slice()),
            "vertex list is not canonical"
        );
        Self { vertices }
    }

    /// Walks `terms` down from `anchor` (the top-left endpoint). Null terms
    /// are dropped, slope-equal neighbours merged; a slope decrease is an
    /// error. With `reversed` the terms are applied in reverse listed order.
    pub fn from_terms(
        anchor: LatticePoint,
        reversed: bool,
        terms: &[SegmentTerm],
    ) -> Result<Self, GeometryError> {
        LatticePoint::new(anchor.x, anchor.y)?;
        let mut ordered: Vec<(usize, SegmentTerm)> = terms
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, t)| !t.is_null())
            .collect();
        if reversed {
            ordered.reverse();
        }

        let mut steps: Vec<(i128, i128, usize)> = Vec::with_capacity(ordered.len());
        for (index, t) in ordered {
            let sdx = t.multiplicity as i128 * t.dx as i128;
            let sdy = t.multiplicity as i128 * t.dy as i128;
            if let Some(last) = steps.last_mut() {
                let lhs = last.1 * sdx;
                let rhs = sdy * last.0;
                if lhs == rhs {
                    last.0 += sdx;
                    last.1 += sdy;
                    continue;
                }
                if lhs < rhs {
                    return Err(GeometryError::NonConvexTerms { index });
                }
            }
            steps.push((sdx, sdy, index));
        }

        let mut verts = vec![anchor];
        let mut cx = anchor.x as i128;
        let mut cy = anchor.y as i128;
        for &(sdx, sdy, index) in &steps {
            cx += sdx;
            cy -= sdy;
            if cy < 0 {
                return Err(GeometryError::BelowAxis { index });
            }
            if cx > MAX_COORD as i128 {
                return Err(GeometryError::CoordinateOutOfRange {
                    x: i64::MAX,
                    y: cy as i64,
                });
            }
            verts.push(LatticePoint {
                x: cx as i64,
                y: cy as i64,
            });
        }
        Self::from_vertices(&verts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn first(&self) -> LatticePoint {
        self.vertices[0]
    }

    pub fn last(&self) -> LatticePoint {
        *self.vertices.last().expect("diagram is never empty")
    }

    /// Convenient means touching both axes: first vertex at x = 0, last at
    /// y = 0.
    pub fn is_convenient(&self) -> bool {
        self.first().x == 0 && self.last().y == 0
    }

    /// `(a, b)` where `a` is the x-intercept and `b` the y-intercept, for
    /// convenient diagrams.
    pub fn intercepts(&self) -> Option<(i64, i64)> {
        self.is_convenient()
            .then(|| (self.last().x, self.first().y))
    }

    /// Twice the area enclosed by the axes and the chain, via an exact
    /// shoelace sum over the closed polygon.
    pub fn twice_area_under(&self) -> Result<i64, GeometryError> {
        if !self.is_convenient() {
            return Err(GeometryError::NotConvenient(self.to_string()));
        }
        let mut sum: i128 = 0;
        let origin = pt(0, 0);
        let mut prev = origin;
        for &v in self.vertices.iter().chain(std::iter::once(&origin)) {
            sum += prev.x as i128 * v.y as i128 - v.x as i128 * prev.y as i128;
            prev = v;
        }
        let s2 = -sum;
        debug_assert!(s2 >= 0, "convex chain walked clockwise");
        Ok(s2 as i64)
    }

    /// Newton number `2S - a - b + 1` of a convenient diagram with both
    /// intercepts positive.
    pub fn newton_number(&self) -> Result<i64, GeometryError> {
        let s2 = self.twice_area_under()?;
        let (a, b) = self.intercepts().expect("checked convenient");
        if a < 1 || b < 1 {
            return Err(GeometryError::DegenerateIntercepts { a, b });
        }
        Ok(s2 - a - b + 1)
    }

    /// Frontier of the union of this diagram's region with `points`. Points
    /// already inside the region leave the diagram unchanged.
    pub fn deform(&self, points: &[LatticePoint]) -> Result<Diagram, GeometryError> {
        if points.is_empty() {
            return Ok(self.clone());
        }
        let mut all = self.vertices.clone();
        all.extend_from_slice(points);
        Self::from_vertices(&all)
    }

    /// Whether `p` lies on or above the chain, inside the region spanned by
    /// the diagram together with the positive quadrant directions.
    pub fn region_contains(&self, p: LatticePoint) -> bool {
        let first = self.first();
        let last = self.last();
        if p.x < first.x {
            return false;
        }
        if p.x >= last.x {
            return p.y >= last.y;
        }
        let i = self.vertices.partition_point(|v| v.x <= p.x) - 1;
        cross(self.vertices[i], self.vertices[i + 1], p) >= 0
    }

    /// `self` deforms `base` exactly when the region of `self` contains the
    /// region of `base`; vertex containment is enough by convexity.
    pub fn is_deformation_of(&self, base: &Diagram) -> bool {
        base.vertices.iter().all(|&v| self.region_contains(v))
    }

    /// Renders the chain as maximal-slope terms anchored at the first vertex,
    /// e.g. `"tr(2,6) + tr(2,1) @ (0,7)"`. Single-point diagrams have none.
    pub fn term_form(&self) -> Option<String> {
        if self.vertices.len() < 2 {
            return None;
        }
        let parts: Vec<String> = self
            .vertices
            .windows(2)
            .map(|w| {
                let dx = w[1].x - w[0].x;
                let dy = w[0].y - w[1].y;
                let g = gcd(dx, dy);
                SegmentTerm {
                    multiplicity: g,
                    dx: dx / g,
                    dy: dy / g,
                }
                .to_string()
            })
            .collect();
        Some(format!("{} @ {}", parts.join(" + "), self.first()))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        for v in &self.vertices {
            write!(f, "{sep}{v}")?;
            sep = " ";
        }
        Ok(())
    }
}
