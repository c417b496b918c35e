//! Enumeration counts against brute force that shares no code with the ball
//! or the solver.

use ordlab::ball::DEFAULT_BALL_CAP;
use ordlab::solver::{enumerate, verify};
use ordlab::{Ball, Budgets, Mode, Presentation, SignAssignment, WordBackend};

/// Points of `Z^d` with L1 norm at most `k`.
fn lattice_ball(d: usize, k: i64) -> Vec<Vec<i64>> {
    let mut points = vec![vec![]];
    for _ in 0..d {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-k..=k).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    points.retain(|p| p.iter().map(|x| x.abs()).sum::<i64>() <= k);
    points
}

/// Counts subsets `P` of the nonzero lattice points with `P`, `-P` a
/// partition and `P + P` (inside the ball) contained in `P`.
fn lattice_preorders(d: usize, k: i64) -> usize {
    let points = lattice_ball(d, k);
    let nonzero: Vec<&Vec<i64>> = points
        .iter()
        .filter(|p| p.iter().any(|&x| x != 0))
        .collect();
    // Representative of each pair: first nonzero coordinate positive.
    let reps: Vec<&Vec<i64>> = nonzero
        .iter()
        .copied()
        .filter(|p| p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    assert!(reps.len() <= 20, "oracle is exhaustive");
    let in_ball = |p: &[i64]| p.iter().map(|x| x.abs()).sum::<i64>() <= k;
    let mut count = 0;
    for mask in 0u32..(1 << reps.len()) {
        let positive = |p: &[i64]| -> bool {
            for (i, r) in reps.iter().enumerate() {
                if r.as_slice() == p {
                    return mask & (1 << i) != 0;
                }
                if r.iter().zip(p).all(|(a, b)| *a == -b) {
                    return mask & (1 << i) == 0;
                }
            }
            unreachable!("nonzero point")
        };
        let closed = nonzero.iter().all(|g| {
            !positive(g)
                || nonzero.iter().all(|h| {
                    let f: Vec<i64> = g.iter().zip(h.iter()).map(|(a, b)| a + b).collect();
                    !positive(h) || !in_ball(&f) || f.iter().all(|&x| x == 0) || positive(&f)
                })
        });
        if closed {
            count += 1;
        }
    }
    count
}

fn backend(text: &str) -> WordBackend {
    WordBackend::build(&Presentation::parse(text).unwrap(), Budgets::default()).unwrap()
}

fn count(b: &WordBackend, k: usize, mode: Mode) -> usize {
    let ball = Ball::build(b, k, DEFAULT_BALL_CAP).unwrap();
    let e = enumerate(&ball, mode, 1_000_000);
    assert!(!e.truncated);
    e.assignments.len()
}

#[test]
fn lattice_oracle_sanity() {
    assert_eq!(lattice_ball(2, 2).len(), 13);
    assert_eq!(lattice_ball(1, 5).len(), 11);
}

#[test]
fn infinite_cyclic_counts_match_oracle() {
    let b = backend("gens: a\nrels:");
    for k in 1..=12 {
        let oracle = lattice_preorders(1, k as i64);
        assert_eq!(oracle, 2, "oracle at k={k}");
        assert_eq!(count(&b, k, Mode::Preorder), oracle, "k={k}");
        assert_eq!(count(&b, k, Mode::Prebiorder), oracle, "k={k}");
    }
}

#[test]
fn free_abelian_rank_two_counts_match_oracle() {
    let b = backend("gens: a,b\nrels: abAB");
    let pinned = [4, 8, 16];
    for k in 1..=3 {
        let oracle = lattice_preorders(2, k as i64);
        assert_eq!(oracle, pinned[k - 1], "oracle at k={k}");
        assert_eq!(count(&b, k, Mode::Preorder), oracle, "k={k}");
        // Abelian: conjugation is trivial.
        assert_eq!(count(&b, k, Mode::Prebiorder), oracle, "k={k}");
    }
}

#[test]
fn free_abelian_rank_three_first_radius() {
    let b = backend("gens: a,b,c\nrels: abAB, acAC, bcBC");
    let oracle = lattice_preorders(3, 1);
    assert_eq!(count(&b, 1, Mode::Preorder), oracle);
}

/// Every sign pattern on the inverse pairs, filtered by `verify`.
fn brute_force(ball: &Ball, mode: Mode) -> Vec<SignAssignment> {
    let reps: Vec<usize> = ball
        .elements()
        .iter()
        .filter(|e| e.id != 0 && e.id < e.inverse_id)
        .map(|e| e.id)
        .collect();
    assert!(reps.len() <= 16);
    let mut found = Vec::new();
    for mask in 0u32..(1 << reps.len()) {
        let mut signs = vec![0i8; ball.len()];
        for (i, &r) in reps.iter().enumerate() {
            let s = if mask & (1 << i) != 0 { 1 } else { -1 };
            signs[r] = s;
            signs[ball.inverse(r)] = -s;
        }
        let a = SignAssignment::from_signs(signs);
        if verify(ball, &a, mode).is_ok() {
            found.push(a);
        }
    }
    found.sort_by(|x, y| x.signs().cmp(y.signs()));
    found
}

#[test]
fn enumeration_equals_brute_force_on_small_balls() {
    let groups = [
        ("gens: a,b\nrels:", 2),
        ("gens: x,y\nrels: Xyxy", 2),
        ("gens: a,b\nrels: abAB", 3),
        ("gens: x\nrels: xxxxx", 2),
        ("gens: x,y\nrels: xyXY, xxx", 1),
    ];
    for (text, k_max) in groups {
        let b = backend(text);
        for k in 1..=k_max {
            let ball = Ball::build(&b, k, DEFAULT_BALL_CAP).unwrap();
            for mode in [Mode::Preorder, Mode::Prebiorder] {
                let mut fast = enumerate(&ball, mode, 1_000_000).assignments;
                fast.sort_by(|x, y| x.signs().cmp(y.signs()));
                assert_eq!(fast, brute_force(&ball, mode), "{text} k={k} {mode:?}");
            }
        }
    }
}
