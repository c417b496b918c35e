//! Finite approximations of the space of orderings: every valid assignment
//! at each radius, and how the levels restrict onto one another.

use std::collections::HashMap;

use thiserror::Error;

use crate::ball::{Ball, BallError};
use crate::par;
use crate::presentation::Word;
use crate::solver::{enumerate, Mode, SignAssignment};
use crate::wordproblem::WordBackend;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub radius: usize,
    pub ball_size: usize,
    pub assignments: Vec<SignAssignment>,
    pub truncated: bool,
}

impl Level {
    pub fn count(&self) -> usize {
        self.assignments.len()
    }
}

/// Levels `1..=k_max` and the restriction maps between consecutive levels.
#[derive(Clone, Debug)]
pub struct LevelDiagram {
    pub mode: Mode,
    pub levels: Vec<Level>,
    /// `restrictions[i][j]`: index in level `i` of the restriction of
    /// assignment `j` of level `i + 1`. `None` only when level `i` was
    /// truncated or the restriction is invalid.
    pub restrictions: Vec<Vec<Option<usize>>>,
    ball: Ball,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error(transparent)]
    Ball(#[from] BallError),
    #[error("no level at radius {0}")]
    NoLevel(usize),
    #[error("constraint word {0} lies outside the ball of radius {1}")]
    OutsideBall(String, usize),
}

impl LevelDiagram {
    /// Builds the largest ball once and enumerates every level on its
    /// restrictions. Levels run in parallel when enabled.
    pub fn build(
        backend: &WordBackend,
        k_max: usize,
        mode: Mode,
        limit: usize,
        ball_cap: usize,
    ) -> Result<LevelDiagram, SpaceError> {
        let ball = Ball::build(backend, k_max, ball_cap)?;
        let levels = par::map_range(k_max, |i| {
            let radius = i + 1;
            let sub = ball.restrict(radius);
            let e = enumerate(&sub, mode, limit);
            Level {
                radius,
                ball_size: sub.len(),
                assignments: e.assignments,
                truncated: e.truncated,
            }
        });
        let restrictions = levels
            .windows(2)
            .map(|pair| {
                let index: HashMap<&SignAssignment, usize> = pair[0]
                    .assignments
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a, i))
                    .collect();
                pair[1]
                    .assignments
                    .iter()
                    .map(|a| index.get(&a.restrict(pair[0].ball_size)).copied())
                    .collect()
            })
            .collect();
        Ok(LevelDiagram {
            mode,
            levels,
            restrictions,
            ball,
        })
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn level(&self, radius: usize) -> Result<&Level, SpaceError> {
        radius
            .checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .ok_or(SpaceError::NoLevel(radius))
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Level::count).collect()
    }

    /// Radius of the first level with no valid assignment.
    pub fn first_empty(&self) -> Option<usize> {
        self.levels
            .iter()
            .find(|l| l.count() == 0)
            .map(|l| l.radius)
    }

    pub fn is_partial(&self) -> bool {
        self.levels.iter().any(|l| l.truncated)
    }

    /// Number of level-(k+1) assignments whose restriction is missing from
    /// a complete level k. Always zero for valid diagrams.
    pub fn restriction_failures(&self) -> usize {
        self.restrictions
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.levels[*i].truncated)
            .map(|(_, map)| map.iter().filter(|r| r.is_none()).count())
            .sum()
    }

    /// For each consecutive pair of levels, the number of level-(k+1)
    /// assignments restricting to each level-k assignment. Zero marks an
    /// assignment with no extension to the next radius.
    pub fn extension_report(&self) -> Vec<Vec<usize>> {
        self.restrictions
            .iter()
            .enumerate()
            .map(|(i, map)| {
                let mut fibers = vec![0; self.levels[i].count()];
                for &r in map.iter().flatten() {
                    fibers[r] += 1;
                }
                fibers
            })
            .collect()
    }

    /// Indices of the level-`radius` assignments satisfying every
    /// constraint; `(w, 1)` asks for `w` positive, `(w, -1)` for negative.
    pub fn neighborhood_query(
        &self,
        backend: &WordBackend,
        radius: usize,
        constraints: &[(Word, i8)],
    ) -> Result<Vec<usize>, SpaceError> {
        let level = self.level(radius)?;
        let mut resolved = Vec::with_capacity(constraints.len());
        for (w, sign) in constraints {
            let nf = backend.normal_form(w);
            match self.ball.find(&nf) {
                Some(id) if id < level.ball_size => resolved.push((id, *sign)),
                _ => {
                    return Err(SpaceError::OutsideBall(
                        backend.presentation().format_word(w),
                        radius,
                    ))
                }
            }
        }
        Ok(level
            .assignments
            .iter()
            .enumerate()
            .filter(|(_, a)| resolved.iter().all(|&(id, s)| a.sign(id) == s))
            .map(|(i, _)| i)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::DEFAULT_BALL_CAP;
    use crate::presentation::Presentation;
    use crate::wordproblem::Budgets;

    fn backend(text: &str) -> WordBackend {
        WordBackend::build(&Presentation::parse(text).unwrap(), Budgets::default()).unwrap()
    }

    fn diagram(b: &WordBackend, k: usize, mode: Mode) -> LevelDiagram {
        LevelDiagram::build(b, k, mode, 100_000, DEFAULT_BALL_CAP).unwrap()
    }

    #[test]
    fn infinite_cyclic_diagram() {
        let b = backend("gens: a\nrels:");
        let d = diagram(&b, 4, Mode::Preorder);
        assert_eq!(d.counts(), vec![2, 2, 2, 2]);
        assert_eq!(d.extension_report(), vec![vec![1, 1]; 3]);
        assert_eq!(d.restriction_failures(), 0);
        assert_eq!(d.first_empty(), None);
    }

    #[test]
    fn z2_levels_and_queries() {
        let b = backend("gens: a,b\nrels: abAB");
        let d = diagram(&b, 2, Mode::Preorder);
        assert_eq!(d.counts(), vec![4, 8]);
        let fibers = d.extension_report();
        assert_eq!(fibers[0].iter().sum::<usize>(), 8);
        assert_eq!(d.restriction_failures(), 0);

        let a = b.presentation().parse_word("a").unwrap();
        assert_eq!(
            d.neighborhood_query(&b, 1, &[(a.clone(), 1)])
                .unwrap()
                .len(),
            2
        );
        assert_eq!(d.neighborhood_query(&b, 1, &[]).unwrap().len(), 4);
        assert!(d
            .neighborhood_query(&b, 1, &[(a.clone(), 1), (a.invert(), 1)])
            .unwrap()
            .is_empty());
        let far = b.presentation().parse_word("aaa").unwrap();
        assert!(matches!(
            d.neighborhood_query(&b, 2, &[(far, 1)]),
            Err(SpaceError::OutsideBall(..))
        ));
        assert!(matches!(
            d.neighborhood_query(&b, 3, &[]),
            Err(SpaceError::NoLevel(3))
        ));
    }

    #[test]
    fn klein_bottle_has_no_pre_biorders() {
        let b = backend("gens: x,y\nrels: Xyxy");
        let d = diagram(&b, 2, Mode::Prebiorder);
        assert_eq!(d.counts(), vec![0, 0]);
        assert_eq!(d.first_empty(), Some(1));
        assert!(d.extension_report()[0].is_empty());
    }

    #[test]
    fn poincare_levels_die() {
        let b = backend("gens: x,z\nrels: zxzxZZZ, zzzXXXXX");
        let d = diagram(&b, 3, Mode::Preorder);
        assert!(d.first_empty().is_some());
        assert_eq!(d.counts()[2], 0);
    }
}
