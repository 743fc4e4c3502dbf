//! Brute-force reference for the entropy-ball solvers, for verification only.
//!
//! For every choice of two "free" coordinates, the remaining coordinates run
//! over a grid of spacing `step` (plus their centre value `q_i`), pruned to the
//! ball. With the others fixed, the free pair `(a, m - a)` is a one-dimensional
//! problem: the feasible `a` form an interval and `phi(a) + phi(m - a)` is
//! concave and symmetric about `m/2`, so its extrema are found exactly. This
//! keeps the search exhaustive over the grid while placing the free pair on the
//! ball boundary, which is where the solvers' optima lie.

use crate::dist::{neg_x_ln_x, validate_probs};
use crate::entropy_opt::Extremum;
use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 4;
pub const MAX_STEP: f64 = 0.002;

const SLACK: f64 = 1e-12;

/// Extremal entropy (nats) over the ball of radius `epsilon` around `q`,
/// found by exhaustive search.
pub fn oracle_entropy_extremum(q: &[f64], epsilon: f64, kind: Extremum, step: f64) -> Result<f64> {
    let q = validate_probs(q)?;
    if q.len() > MAX_DIMENSION {
        return Err(Error::domain(
            "dimension",
            q.len() as f64,
            format!("grid search is limited to {MAX_DIMENSION} components"),
        ));
    }
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::domain("step", step, format!("grid spacing must lie in (0, {MAX_STEP}]")));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::domain("epsilon", epsilon, "ball radius must be >= 0"));
    }
    let epsilon = epsilon.min(2.0);
    let d = q.len();
    if d == 1 {
        return Ok(0.0);
    }

    let mut search = Search {
        q: &q,
        step,
        kind,
        best: match kind {
            Extremum::Max => f64::NEG_INFINITY,
            Extremum::Min => f64::INFINITY,
        },
    };
    for a in 0..d {
        for b in (a + 1)..d {
            let gridded: Vec<usize> = (0..d).filter(|&i| i != a && i != b).collect();
            search.descend(&gridded, (a, b), 1.0, epsilon, 0.0);
        }
    }
    Ok(search.best)
}

struct Search<'a> {
    q: &'a [f64],
    step: f64,
    kind: Extremum,
    best: f64,
}

impl Search<'_> {
    fn offer(&mut self, value: f64) {
        self.best = match self.kind {
            Extremum::Max => self.best.max(value),
            Extremum::Min => self.best.min(value),
        };
    }

    /// Assign grid values to `gridded[0]`, recurse, then solve the free pair.
    fn descend(&mut self, gridded: &[usize], pair: (usize, usize), mass: f64, budget: f64, acc: f64) {
        let Some((&i, rest)) = gridded.split_first() else {
            if let Some(v) = self.solve_pair(pair, mass, budget) {
                self.offer(acc + v);
            }
            return;
        };
        let qi = self.q[i];
        let lo = (qi - budget).max(0.0);
        let hi = (qi + budget).min(mass);
        if lo > hi + SLACK {
            return;
        }
        let k_lo = (lo / self.step - SLACK).ceil() as i64;
        let k_hi = (hi / self.step + SLACK).floor() as i64;
        let step = self.step;
        let grid = (k_lo..=k_hi).map(move |k| k as f64 * step);
        for v in grid.chain(std::iter::once(qi)) {
            let v = v.clamp(0.0, mass);
            let used = (v - qi).abs();
            if used > budget + SLACK {
                continue;
            }
            self.descend(rest, pair, mass - v, (budget - used).max(0.0), acc + neg_x_ln_x(v));
        }
    }

    /// Extremal `phi(x) + phi(mass - x)` over feasible `x` for the free pair.
    fn solve_pair(&self, (a, b): (usize, usize), mass: f64, budget: f64) -> Option<f64> {
        // |x - qa| + |x - (mass - qb)| <= budget
        let u = self.q[a];
        let v = mass - self.q[b];
        let gap = (u - v).abs();
        if gap > budget + SLACK {
            return None;
        }
        let r = budget.max(gap);
        let lo = (0.5 * (u + v - r)).max(0.0);
        let hi = (0.5 * (u + v + r)).min(mass);
        if lo > hi + SLACK {
            return None;
        }
        let hi = hi.max(lo);
        let f = |x: f64| neg_x_ln_x(x) + neg_x_ln_x(mass - x);
        Some(match self.kind {
            Extremum::Max => f((0.5 * mass).clamp(lo, hi)),
            Extremum::Min => f(lo).min(f(hi)),
        })
    }
}
