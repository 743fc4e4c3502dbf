//! Extremal entropy over a variational-distance ball.
//!
//! Both problems optimize `H(p)` over `{p in simplex : sum |p_i - q_i| <= eps}`.
//! The maximizer water-fills: mass above a cap `c` is shaved off and poured
//! into the components below a floor `f`, each side moving exactly `eps/2`.
//! The minimizer concentrates: `eps/2` is added to the largest component and
//! drained from the smallest ones, emptying them in ascending order.
//!
//! Ties are broken by lowest index throughout.

pub mod oracle;

use crate::dist::{entropy_unchecked, l1_distance, validate_probs};
use crate::error::{Error, Result};

const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;
/// Radius slack for the saturated cases; absorbs the rounding of renormalized input.
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Min,
    Max,
}

/// Optimizing distribution and its entropy (nats).
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBallSolution {
    pub argopt: Vec<f64>,
    pub value: f64,
    pub kind: Extremum,
}

impl EntropyBallSolution {
    fn new(argopt: Vec<f64>, kind: Extremum) -> Self {
        let value = entropy_unchecked(&argopt);
        EntropyBallSolution { argopt, value, kind }
    }
}

fn prepare(q: &[f64], epsilon: f64) -> Result<(Vec<f64>, f64)> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::domain("epsilon", epsilon, "ball radius must be >= 0"));
    }
    // V never exceeds 2, so larger radii cover the whole simplex
    Ok((validate_probs(q)?, epsilon.min(2.0)))
}

/// Solve `extremum` over the ball of radius `epsilon` around `q`.
pub fn entropy_in_ball(q: &[f64], epsilon: f64, kind: Extremum) -> Result<EntropyBallSolution> {
    match kind {
        Extremum::Min => min_entropy_in_ball(q, epsilon),
        Extremum::Max => max_entropy_in_ball(q, epsilon),
    }
}

/// Maximum-entropy distribution within variational distance `epsilon` of `q`.
pub fn max_entropy_in_ball(q: &[f64], epsilon: f64) -> Result<EntropyBallSolution> {
    let (q, epsilon) = prepare(q, epsilon)?;
    let d = q.len();
    let uniform = vec![1.0 / d as f64; d];
    if l1_distance(&q, &uniform) <= epsilon + SLACK {
        return Ok(EntropyBallSolution::new(uniform, Extremum::Max));
    }
    if epsilon == 0.0 {
        return Ok(EntropyBallSolution::new(q, Extremum::Max));
    }
    let half = 0.5 * epsilon;
    let cap = water_level(&q, half, Side::Cap);
    let floor = water_level(&q, half, Side::Floor);
    debug_assert!(floor <= cap, "floor {floor} above cap {cap}");
    let argopt = q.iter().map(|&x| x.clamp(floor, cap)).collect();
    Ok(EntropyBallSolution::new(argopt, Extremum::Max))
}

#[derive(Clone, Copy)]
enum Side {
    /// `sum max(q_i - c, 0) = budget`
    Cap,
    /// `sum max(f - q_i, 0) = budget`
    Floor,
}

/// Find the cap or floor level moving exactly `budget` mass.
///
/// Bisection locates the level to within `BISECTION_TOL`; the level is then
/// recomputed exactly from the set of components it touches, since the moved
/// mass is linear in the level once that set is fixed.
fn water_level(q: &[f64], budget: f64, side: Side) -> f64 {
    let moved = |level: f64| -> f64 {
        match side {
            Side::Cap => q.iter().map(|&x| (x - level).max(0.0)).sum(),
            Side::Floor => q.iter().map(|&x| (level - x).max(0.0)).sum(),
        }
    };
    let q_max = q.iter().copied().fold(0.0, f64::max);
    // moved() is decreasing in the cap and increasing in the floor
    let (mut lo, mut hi) = match side {
        Side::Cap => (0.0, q_max),
        Side::Floor => (0.0, 1.0),
    };
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let too_much = moved(mid) > budget;
        match (side, too_much) {
            (Side::Cap, true) | (Side::Floor, false) => lo = mid,
            _ => hi = mid,
        }
    }
    let approx = 0.5 * (lo + hi);
    let (count, sum) = q.iter().fold((0usize, 0.0), |(c, s), &x| {
        let touched = match side {
            Side::Cap => x > approx,
            Side::Floor => x < approx,
        };
        if touched {
            (c + 1, s + x)
        } else {
            (c, s)
        }
    });
    if count == 0 {
        return approx;
    }
    match side {
        Side::Cap => (sum - budget) / count as f64,
        Side::Floor => (sum + budget) / count as f64,
    }
}

/// Minimum-entropy distribution within variational distance `epsilon` of `q`.
pub fn min_entropy_in_ball(q: &[f64], epsilon: f64) -> Result<EntropyBallSolution> {
    let (q, epsilon) = prepare(q, epsilon)?;
    let top = argmax_lowest(&q);
    let to_point = 1.0 - q[top];
    let transfer = if 0.5 * epsilon + SLACK >= to_point {
        to_point
    } else {
        0.5 * epsilon
    };
    let mut p = q.clone();
    if transfer <= 0.0 {
        return Ok(EntropyBallSolution::new(p, Extremum::Min));
    }
    p[top] += transfer;

    let mut order: Vec<usize> = (0..q.len()).filter(|&i| i != top).collect();
    order.sort_by(|&a, &b| q[a].total_cmp(&q[b]).then(a.cmp(&b)));
    let mut remaining = transfer;
    for i in order {
        if remaining <= 0.0 {
            break;
        }
        let take = p[i].min(remaining);
        p[i] -= take;
        remaining -= take;
    }
    if transfer == to_point {
        // everything else drained: exact point mass
        p.iter_mut().for_each(|x| *x = 0.0);
        p[top] = 1.0;
    }
    Ok(EntropyBallSolution::new(p, Extremum::Min))
}

fn argmax_lowest(q: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in q.iter().enumerate() {
        if x > q[best] {
            best = i;
        }
    }
    best
}
