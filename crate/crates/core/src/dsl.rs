//! Text format for diagrams. Two forms:
//!
//! ```text
//! (0,6) (3,1) (4,0)                 vertex list
//! tr(2,6) + tr(2,1) @ (0,7)         term sum anchored at a point
//! -tr(2,1) + tr(2,6) @ (0,7)        leading '-' applies terms in reverse
//! ```
//!
//! Terms take an optional positive multiplier, `3*tr(1,2)`. Whitespace is
//! free between tokens.

use std::fmt;

use crate::geometry::{Diagram, GeometryError, LatticePoint, SegmentTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.error("expected an integer")),
        }
        let mut value: i64 = 0;
        while let Some(&c) = self.bytes.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as i64))
                .ok_or_else(|| self.error("integer too large"))?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn point(&mut self) -> Result<LatticePoint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        self.expect(b'(')?;
        let x = self.integer()?;
        self.expect(b',')?;
        let y = self.integer()?;
        self.expect(b')')?;
        LatticePoint::new(x, y).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })
    }

    fn keyword_tr(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(b"tr") {
            self.pos += 2;
            Ok(())
        } else {
            Err(self.error("expected 'tr'"))
        }
    }

    /// `[INT '*'] 'tr' '(' INT ',' INT ')'`; returns the term and where it
    /// started.
    fn term(&mut self) -> Result<(SegmentTerm, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let multiplicity = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let m = self.integer()?;
                self.expect(b'*')?;
                m
            }
            _ => 1,
        };
        self.keyword_tr()?;
        self.expect(b'(')?;
        let dx = self.integer()?;
        self.expect(b',')?;
        let dy = self.integer()?;
        self.expect(b')')?;
        let term = SegmentTerm::new(multiplicity, dx, dy).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })?;
        Ok((term, start))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn semantic(position: usize, e: GeometryError) -> ParseError {
    ParseError {
        position,
        message: e.to_string(),
    }
}

/// Parses either form into a canonical diagram. Errors carry the byte offset
/// of the offending token; convexity violations point at the failing term.
pub fn parse_diagram(input: &str) -> Result<Diagram, ParseError> {
    let mut lx = Lexer::new(input);
    match lx.peek() {
        None => Err(lx.error("empty input")),
        Some(b'(') => {
            let mut points = vec![lx.point()?];
            while !lx.at_end() {
                points.push(lx.point()?);
            }
            Diagram::from_vertices(&points).map_err(|e| semantic(0, e))
        }
        Some(_) => {
            let reversed = lx.eat(b'-');
            let mut terms = Vec::new();
            let mut positions = Vec::new();
            loop {
                let (term, start) = lx.term()?;
                terms.push(term);
                positions.push(start);
                if !lx.eat(b'+') {
                    break;
                }
            }
            lx.expect(b'@')?;
            let anchor_pos = lx.pos;
            let anchor = lx.point()?;
            if !lx.at_end() {
                return Err(lx.error("unexpected trailing input"));
            }
            Diagram::from_terms(anchor, reversed, &terms).map_err(|e| {
                let position = match &e {
                    GeometryError::NonConvexTerms { index }
                    | GeometryError::BelowAxis { index } => positions[*index],
                    _ => anchor_pos,
                };
                semantic(position, e)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;

    fn verts(d: &Diagram) -> Vec<(i64, i64)> {
        d.vertices().iter().map(|v| (v.x, v.y)).collect()
    }

    #[test]
    fn vertex_form() {
        let d = parse_diagram("(0,6) (3,1) (4,0)").unwrap();
        assert_eq!(verts(&d), [(0, 6), (3, 1), (4, 0)]);

        let d = parse_diagram(" ( 0 , 8 )  ( 1 , 5 ) ( 4 , 0 ) ").unwrap();
        assert_eq!(verts(&d), [(0, 8), (1, 5), (4, 0)]);

        let d = parse_diagram("(4,0) (0,8) (9,2) (1,5)").unwrap();
        assert_eq!(verts(&d), [(0, 8), (1, 5), (4, 0)]);
    }

    #[test]
    fn term_form() {
        let d = parse_diagram("tr(2,6) + tr(2,1) @ (0,7)").unwrap();
        assert_eq!(verts(&d), [(0, 7), (2, 1), (4, 0)]);

        let d = parse_diagram("2*tr(1,3) + tr(2,2) @ (0,8)").unwrap();
        assert_eq!(verts(&d), [(0, 8), (2, 2), (4, 0)]);

        let d = parse_diagram("tr(2,6)+tr(2,1)@(0,7)").unwrap();
        assert_eq!(verts(&d), [(0, 7), (2, 1), (4, 0)]);
    }

    #[test]
    fn reversed_terms() {
        let listed = parse_diagram("tr(2,6) + tr(2,1) @ (0,7)").unwrap();
        let reversed = parse_diagram("-tr(2,1) + tr(2,6) @ (0,7)").unwrap();
        assert_eq!(listed, reversed);
    }

    #[test]
    fn single_point() {
        let d = parse_diagram("(0,0)").unwrap();
        assert_eq!(verts(&d), [(0, 0)]);
        assert!(d.term_form().is_none());
    }

    #[test]
    fn round_trips() {
        for spec in [
            "(0,6) (3,1) (4,0)",
            "(0,0)",
            "tr(2,6) + tr(2,1) @ (0,7)",
            "5*tr(1,1) @ (0,5)",
        ] {
            let d = parse_diagram(spec).unwrap();
            assert_eq!(parse_diagram(&d.to_string()).unwrap(), d);
            if let Some(t) = d.term_form() {
                assert_eq!(parse_diagram(&t).unwrap(), d);
            }
        }
    }

    #[test]
    fn non_convex_terms_point_at_term() {
        let err = parse_diagram("tr(2,6) + tr(2,7) @ (0,13)").unwrap_err();
        assert_eq!(err.position, 10);
        assert!(err.message.contains("convexity"), "{}", err.message);
    }

    #[test]
    fn below_axis_points_at_term() {
        let err = parse_diagram("tr(1,5) + tr(1,2) @ (0,6)").unwrap_err();
        assert_eq!(err.position, 10);
        assert!(err.message.contains("below the x-axis"), "{}", err.message);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_diagram("").unwrap_err();
        assert_eq!(err.position, 0);

        let err = parse_diagram("(0,8").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.message.contains("expected ')'"));

        let err = parse_diagram("(0,8) x").unwrap_err();
        assert_eq!(err.position, 6);

        let err = parse_diagram("tr(2,6) @ (0,7) junk").unwrap_err();
        assert_eq!(err.position, 16);
        assert!(err.message.contains("trailing"));

        let err = parse_diagram("tr(2,6) (0,7)").unwrap_err();
        assert_eq!(err.position, 8);
        assert!(err.message.contains("expected '@'"));

        let err = parse_diagram("3*(1,2) @ (0,6)").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(err.message.contains("expected 'tr'"));

        let d = parse_diagram("3 * tr( 1 , 2 ) @ (0,6)").unwrap();
        assert_eq!(d, parse_diagram("3*tr(1,2) @ (0,6)").unwrap());

        let err = parse_diagram("99999999999999999999*tr(1,1) @ (0,1)").unwrap_err();
        assert!(err.message.contains("too large"));
    }

    #[test]
    fn semantic_errors() {
        let err = parse_diagram("0*tr(1,2) @ (0,2)").unwrap_err();
        assert!(err.message.contains("multiplicity"));

        let err = parse_diagram("(2000000000,0)").unwrap_err();
        assert!(err.message.contains("outside supported range"));
    }

    #[test]
    fn anchor_mismatch_is_fine_when_terms_fit() {
        let d = parse_diagram("tr(1,5) @ (1,5)").unwrap();
        assert_eq!(verts(&d), [(1, 5), (2, 0)]);
        assert!(!d.is_convenient());
        assert!(d.region_contains(pt(3, 0)));
    }
}
