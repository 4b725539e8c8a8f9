//! Decreasing coprime pair sequences built from continued-fraction
//! convergents, with the unimodular-determinant normalization that makes the
//! sequence unique, and the positive two-term decomposition of the head.

use thiserror::Error;

use crate::gcd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EeaError {
    #[error("inputs must satisfy 1 <= a <= b, got ({0}, {1})")]
    OutOfDomain(i64, i64),
    #[error("inputs must be coprime, got ({0}, {1}) with gcd {2}")]
    NotCoprime(i64, i64, i64),
    #[error("sequence for ({0}, {1}) is too short to decompose")]
    SequenceTooShort(i64, i64),
    #[error("index {index} out of range 0..={last}")]
    IndexOutOfRange { index: usize, last: usize },
    #[error("sequence for ({a0}, {b0}) violates invariant: {detail}")]
    InvariantBroken { a0: i64, b0: i64, detail: String },
}

/// The chain `(a_0, b_0) > (a_1, b_1) > ... > (a_l, b_l) = (0, 1)` with
/// `a_j * b_(j-1) - b_j * a_(j-1) = (-1)^(l-1-j)` at every step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EeaSequence {
    a0: i64,
    b0: i64,
    pairs: Vec<(i64, i64)>,
    decomposition: Option<(i64, i64)>,
}

impl EeaSequence {
    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn b0(&self) -> i64 {
        self.b0
    }

    /// The pairs `(a_j, b_j)` for `j = 1..=l`.
    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(a_j, b_j)` for `j = 0..=l`.
    pub fn pair(&self, j: usize) -> Result<(i64, i64), EeaError> {
        if j == 0 {
            Ok((self.a0, self.b0))
        } else {
            self.pairs
                .get(j - 1)
                .copied()
                .ok_or(EeaError::IndexOutOfRange {
                    index: j,
                    last: self.len(),
                })
        }
    }

    /// `(-1)^(l-1-j)`, defined for `0 <= j <= l`.
    pub fn sign_of(&self, j: usize) -> Result<i64, EeaError> {
        let l = self.len();
        if j > l {
            return Err(EeaError::IndexOutOfRange { index: j, last: l });
        }
        Ok(if (l as i64 - 1 - j as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        })
    }

    /// `(-1)^(l-1)`, the sign attached to the head pair.
    pub fn sign(&self) -> i64 {
        self.sign_of(0).expect("0 is always in range")
    }

    /// `(N, n)`, present when the sequence has at least two pairs.
    pub fn decomposition(&self) -> Option<(i64, i64)> {
        self.decomposition
    }
}

/// Builds the sequence for coprime `(a0, b0)` from the convergents of
/// `b0 / a0`, listed in decreasing order and closed with `(0, 1)`.
pub fn eea_sequence(a0: i64, b0: i64) -> Result<EeaSequence, EeaError> {
    if a0 < 1 || b0 < a0 {
        return Err(EeaError::OutOfDomain(a0, b0));
    }
    let g = gcd(a0, b0);
    if g != 1 {
        return Err(EeaError::NotCoprime(a0, b0, g));
    }

    let mut quotients = Vec::new();
    let (mut num, mut den) = (b0, a0);
    while den > 0 {
        quotients.push(num / den);
        let r = num % den;
        num = den;
        den = r;
    }

    // Convergents h_i / k_i of b0 / a0; the sequence lists them backwards
    // from the next-to-last down to the seed (h, k) = (1, 0).
    let mut hk = vec![(1i64, 0i64)];
    let (mut h_prev, mut k_prev) = (1i64, 0i64);
    let (mut h, mut k) = (quotients[0], 1i64);
    hk.push((h, k));
    for &c in &quotients[1..] {
        let h_next = c * h + h_prev;
        let k_next = c * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        hk.push((h, k));
    }
    debug_assert_eq!(hk.last(), Some(&(b0, a0)));

    let pairs: Vec<(i64, i64)> = hk[..hk.len() - 1]
        .iter()
        .rev()
        .map(|&(h, k)| (k, h))
        .collect();

    let mut seq = EeaSequence {
        a0,
        b0,
        pairs,
        decomposition: None,
    };
    validate(&seq)?;
    if seq.len() >= 2 {
        let (a1, b1) = seq.pair(1).expect("len >= 2");
        let (a2, b2) = seq.pair(2).expect("len >= 2");
        match solve_in_basis((a1, b1), (a2, b2), (a0, b0)) {
            Some(dec) => seq.decomposition = Some(dec),
            None => {
                return Err(EeaError::InvariantBroken {
                    a0,
                    b0,
                    detail: "head pair has no positive decomposition".into(),
                })
            }
        }
    }
    Ok(seq)
}

/// `(N, n)` with `N*a1 + n*a2 = a0` and `N*b1 + n*b2 = b0`, both positive.
pub fn decompose_nn(seq: &EeaSequence) -> Result<(i64, i64), EeaError> {
    seq.decomposition
        .ok_or(EeaError::SequenceTooShort(seq.a0, seq.b0))
}

/// Solves `x*u + y*v = t` over the integers for a basis `u, v` with
/// determinant +-1, returning the solution only when both parts are positive.
pub(crate) fn solve_in_basis(u: (i64, i64), v: (i64, i64), t: (i64, i64)) -> Option<(i64, i64)> {
    let det = u.0 * v.1 - v.0 * u.1;
    debug_assert_eq!(det.abs(), 1);
    let x = (t.0 * v.1 - t.1 * v.0) / det;
    let y = (t.1 * u.0 - t.0 * u.1) / det;
    (x >= 1 && y >= 1).then_some((x, y))
}

fn validate(seq: &EeaSequence) -> Result<(), EeaError> {
    let fail = |detail: String| EeaError::InvariantBroken {
        a0: seq.a0,
        b0: seq.b0,
        detail,
    };
    let l = seq.len();
    if l == 0 {
        return Err(fail("no pairs".into()));
    }
    if seq.pairs[l - 1] != (0, 1) {
        return Err(fail(format!(
            "last pair is {:?}, not (0, 1)",
            seq.pairs[l - 1]
        )));
    }
    for j in 1..=l {
        let (a_prev, b_prev) = seq.pair(j - 1).expect("in range");
        let (a, b) = seq.pair(j).expect("in range");
        if a < 0 || b < 1 {
            return Err(fail(format!("pair {j} = ({a}, {b}) out of range")));
        }
        if b > b_prev || (j < l && b == b_prev) {
            return Err(fail(format!("b does not decrease at step {j}")));
        }
        let e = a * b_prev - b * a_prev;
        let want = if (l as i64 - 1 - j as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        if e != want {
            return Err(fail(format!(
                "determinant at step {j} is {e}, expected {want}"
            )));
        }
    }
    if l >= 2 {
        let (a1, b1) = seq.pair(1).expect("in range");
        if a1 >= seq.a0 {
            return Err(fail("a_1 must be smaller than a_0".into()));
        }
        if seq.b0 < 2 * b1 {
            return Err(fail("b_0 / b_1 must be at least 2".into()));
        }
    }
    Ok(())
}
