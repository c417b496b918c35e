//! Known positive cones, used as membership oracles and checked against
//! ball restrictions.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ball::{Ball, IDENTITY};
use crate::presentation::{Letter, Word};
use crate::solver::SignAssignment;
use crate::wordproblem::WordBackend;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeOracle {
    /// Lexicographic order on exponent vectors of `Z^n`.
    Lex(usize),
    /// `Z^2` cut by the line `m*sqrt(2) + n = 0`.
    Slope,
    /// Klein bottle group `<x, y | x^-1 y x = y^-1>` ordered first by the
    /// exponent of `x`, then by that of `y`.
    Klein,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("unknown cone {0:?} (expected lex:<n>, slope or klein)")]
    UnknownName(String),
    #[error("lex dimension must be between 1 and 26, got {0}")]
    BadDimension(usize),
    #[error("cone {cone} does not apply to this presentation: {reason}")]
    GroupMismatch { cone: String, reason: String },
}

impl FromStr for ConeOracle {
    type Err = ConeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "slope" => Ok(ConeOracle::Slope),
            "klein" => Ok(ConeOracle::Klein),
            _ => {
                let n: usize = s
                    .strip_prefix("lex:")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| ConeError::UnknownName(s.to_string()))?;
                ConeOracle::lex(n)
            }
        }
    }
}

impl fmt::Display for ConeOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeOracle::Lex(n) => write!(f, "lex:{n}"),
            ConeOracle::Slope => f.write_str("slope"),
            ConeOracle::Klein => f.write_str("klein"),
        }
    }
}

/// Sign of `m*sqrt(2) + n`, in exact integer arithmetic.
fn slope_sign(m: i64, n: i64) -> i8 {
    let (m2, n2) = (2 * (m as i128) * (m as i128), (n as i128) * (n as i128));
    match (m.signum(), n.signum()) {
        (0, s) | (s, 0) => s as i8,
        (1, 1) => 1,
        (-1, -1) => -1,
        // Opposite signs: the larger magnitude wins; m2 == n2 is impossible
        // for nonzero integers since sqrt(2) is irrational.
        (1, _) => {
            if m2 > n2 {
                1
            } else {
                -1
            }
        }
        _ => {
            if n2 > m2 {
                1
            } else {
                -1
            }
        }
    }
}

/// Coordinates `(m, n)` with the element equal to `y^m x^n`, using
/// `x^n y = y^((-1)^n) x^n`.
pub fn klein_coordinates(w: &Word) -> (i64, i64) {
    let (mut m, mut n) = (0i64, 0i64);
    for l in w.letters() {
        match l.generator() {
            0 => n += l.exponent(),
            _ => {
                let twist = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                m += twist * l.exponent();
            }
        }
    }
    (m, n)
}

impl ConeOracle {
    pub fn lex(n: usize) -> Result<ConeOracle, ConeError> {
        if (1..=26).contains(&n) {
            Ok(ConeOracle::Lex(n))
        } else {
            Err(ConeError::BadDimension(n))
        }
    }

    /// Whether the cone is conjugation invariant.
    pub fn claims_biorder(&self) -> bool {
        !matches!(self, ConeOracle::Klein)
    }

    /// Membership of the element represented by `w`.
    pub fn contains(&self, w: &Word) -> bool {
        match *self {
            ConeOracle::Lex(n) => {
                let sums = w.exponent_sums(n);
                sums.iter().find(|&&s| s != 0).is_some_and(|&s| s > 0)
            }
            ConeOracle::Slope => {
                let sums = w.exponent_sums(2);
                slope_sign(sums[0], sums[1]) > 0
            }
            ConeOracle::Klein => {
                let (m, n) = klein_coordinates(w);
                n > 0 || (n == 0 && m > 0)
            }
        }
    }

    /// Checks that the backend's group is the one the cone is defined on.
    pub fn check_group(&self, backend: &WordBackend) -> Result<(), ConeError> {
        let p = backend.presentation();
        let mismatch = |reason: String| ConeError::GroupMismatch {
            cone: self.to_string(),
            reason,
        };
        let gens = p.num_generators();
        let word = |letters: &[(usize, bool)]| {
            Word::from_letters(
                letters
                    .iter()
                    .map(|&(g, inv)| Letter::new(g, inv))
                    .collect(),
            )
        };
        match *self {
            ConeOracle::Lex(_) | ConeOracle::Slope => {
                let n = match self {
                    ConeOracle::Lex(n) => *n,
                    _ => 2,
                };
                if gens != n {
                    return Err(mismatch(format!("expected {n} generators, found {gens}")));
                }
                // Abelian with relators in the commutator subgroup: exactly Z^n.
                for r in p.relators() {
                    if r.exponent_sums(n).iter().any(|&s| s != 0) {
                        return Err(mismatch(format!(
                            "relator {} has nonzero exponent sum",
                            p.format_word(r)
                        )));
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        let commutator = word(&[(i, true), (j, true), (i, false), (j, false)]);
                        if !backend.is_identity(&commutator) {
                            return Err(mismatch("generators do not commute".to_string()));
                        }
                    }
                }
                Ok(())
            }
            ConeOracle::Klein => {
                if gens != 2 {
                    return Err(mismatch(format!("expected 2 generators, found {gens}")));
                }
                let conj = word(&[(0, true), (1, false), (0, false)]);
                if !backend.equal(&conj, &word(&[(1, true)])) {
                    return Err(mismatch("x^-1 y x = y^-1 does not hold".to_string()));
                }
                for r in p.relators() {
                    if klein_coordinates(r) != (0, 0) {
                        return Err(mismatch(format!(
                            "relator {} is not trivial in the Klein bottle group",
                            p.format_word(r)
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// `sign(g) = +1` iff `g` is in the cone. The result is a preorder of the
    /// ball whenever the cone is a genuine positive cone of the group.
    pub fn restrict_to_ball(
        &self,
        backend: &WordBackend,
        ball: &Ball,
    ) -> Result<SignAssignment, ConeError> {
        self.check_group(backend)?;
        let signs = ball
            .elements()
            .iter()
            .map(|e| match (e.id, self.contains(&e.nf)) {
                (IDENTITY, _) => 0,
                (_, true) => 1,
                (_, false) => -1,
            })
            .collect();
        Ok(SignAssignment::from_signs(signs))
    }
}
