//! Confidence intervals for mutual information and the matching sample-size
//! calculator.
//!
//! Both intervals use the same radius `eps`: with probability at least
//! `1 - alpha` the empirical joint lies within variational distance `eps` of
//! the true joint. The worst-case interval widens the plug-in estimate by the
//! MI-difference bound at `eps`; the entropy-ball interval instead optimizes
//! each entropy term over its own ball around the empirical distribution.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{
    check_alpha, delta_i, delta_i_branch1, epsilon_for_confidence, AlphabetPair, ConfidenceQuery,
};
use crate::dist::{marginal_vectors, CountTable, Unit};
use crate::entropy_opt::{max_entropy_in_ball, min_entropy_in_ball, EntropyBallSolution};
use crate::error::{Error, Result};

const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;
/// Relative slack below an integer that still rounds down in the ceiling.
const CEIL_SNAP: f64 = 1e-12;

/// How an interval was constructed. The string forms are the stable names
/// used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Plug-in estimate plus/minus the distribution-free half-width.
    WorstCase,
    /// Entropy terms optimized over balls around the empirical distribution.
    EntropyBall,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::WorstCase => "thm2",
            Method::EntropyBall => "thm4",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "thm2" => Ok(Method::WorstCase),
            "thm4" => Ok(Method::EntropyBall),
            other => Err(format!("unknown method '{other}' (expected thm2 or thm4)")),
        }
    }
}

/// Interval on mutual information with its construction parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    pub unit: Unit,
    pub method: Method,
    /// Variational-distance radius the interval was built from.
    pub epsilon: f64,
    pub alpha: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    /// Same interval expressed in `unit`.
    pub fn to_unit(self, unit: Unit) -> Interval {
        let nats = |v: f64| self.unit.to_nats(v);
        Interval {
            lower: unit.from_nats(nats(self.lower)),
            upper: unit.from_nats(nats(self.upper)),
            unit,
            ..self
        }
    }

    /// Clip the endpoints to the attainable range `[0, log mx]`.
    pub fn clamped(self, alphabet: AlphabetPair) -> Interval {
        let ceiling = self.unit.log(alphabet.mx() as f64);
        Interval {
            lower: self.lower.clamp(0.0, ceiling),
            upper: self.upper.clamp(0.0, ceiling),
            ..self
        }
    }
}

fn query_for(counts: &CountTable, alpha: f64) -> Result<ConfidenceQuery> {
    let alphabet = AlphabetPair::new(counts.mx(), counts.my())?;
    ConfidenceQuery::new(alpha, counts.n(), alphabet)
}

/// The radius `eps` shared by both interval constructions.
pub fn confidence_radius(counts: &CountTable, alpha: f64) -> Result<f64> {
    Ok(epsilon_for_confidence(&query_for(counts, alpha)?))
}

/// `[I_hat - dI(eps), I_hat + dI(eps)]` in nats, not clamped.
pub fn worst_case_interval(counts: &CountTable, alpha: f64) -> Result<Interval> {
    let query = query_for(counts, alpha)?;
    let epsilon = epsilon_for_confidence(&query);
    let half_width = delta_i(epsilon, query.alphabet())?;
    let mi = counts.mutual_information();
    Ok(Interval {
        lower: mi - half_width,
        upper: mi + half_width,
        unit: Unit::Nats,
        method: Method::WorstCase,
        epsilon,
        alpha,
    })
}

/// Extremal-entropy solutions behind an entropy-ball interval, in the
/// caller's orientation (`x` indexes rows of the count table).
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBallBounds {
    pub epsilon: f64,
    pub x_min: EntropyBallSolution,
    pub x_max: EntropyBallSolution,
    pub y_min: EntropyBallSolution,
    pub y_max: EntropyBallSolution,
    pub joint_min: EntropyBallSolution,
    pub joint_max: EntropyBallSolution,
}

impl EntropyBallBounds {
    /// `min H(X) + min H(Y) - max H(XY)`.
    pub fn mi_lower(&self) -> f64 {
        self.x_min.value + self.y_min.value - self.joint_max.value
    }

    /// `max H(X) + max H(Y) - min H(XY)`.
    pub fn mi_upper(&self) -> f64 {
        self.x_max.value + self.y_max.value - self.joint_min.value
    }
}

/// Solve the six entropy problems at the confidence radius.
///
/// The marginal balls reuse the joint radius: marginalization never increases
/// variational distance.
pub fn entropy_ball_bounds(counts: &CountTable, alpha: f64) -> Result<EntropyBallBounds> {
    let epsilon = confidence_radius(counts, alpha)?;
    let joint = counts.to_distribution();
    let (px, py) = marginal_vectors(joint.probs(), joint.mx(), joint.my());
    Ok(EntropyBallBounds {
        epsilon,
        x_min: min_entropy_in_ball(&px, epsilon)?,
        x_max: max_entropy_in_ball(&px, epsilon)?,
        y_min: min_entropy_in_ball(&py, epsilon)?,
        y_max: max_entropy_in_ball(&py, epsilon)?,
        joint_min: min_entropy_in_ball(joint.probs(), epsilon)?,
        joint_max: max_entropy_in_ball(joint.probs(), epsilon)?,
    })
}

/// `[I_min, I_max]` from per-instance entropy optimization, in nats.
pub fn entropy_ball_interval(counts: &CountTable, alpha: f64) -> Result<Interval> {
    let bounds = entropy_ball_bounds(counts, alpha)?;
    Ok(Interval {
        lower: bounds.mi_lower(),
        upper: bounds.mi_upper(),
        unit: Unit::Nats,
        method: Method::EntropyBall,
        epsilon: bounds.epsilon,
        alpha,
    })
}

/// Either construction by [`Method`].
pub fn interval(counts: &CountTable, alpha: f64, method: Method) -> Result<Interval> {
    match method {
        Method::WorstCase => worst_case_interval(counts, alpha),
        Method::EntropyBall => entropy_ball_interval(counts, alpha),
    }
}

/// Sample size guaranteeing half-width `gamma` at confidence `1 - alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSizePlan {
    pub n_required: u64,
    /// Radius at which the MI-difference bound equals `gamma`.
    pub epsilon: f64,
    /// Target half-width in nats.
    pub gamma: f64,
    pub alpha: f64,
}

/// Smallest `n` for which the worst-case interval has half-width at most
/// `gamma` (nats).
///
/// Solves `dI(eps) = gamma` on the first branch, where the bound is strictly
/// increasing, then inverts the tail bound:
/// `n = ceil((2 / eps^2) ln((2^(mx my) - 2) / alpha))`.
pub fn required_sample_size(gamma: f64, alpha: f64, alphabet: AlphabetPair) -> Result<SampleSizePlan> {
    check_alpha(alpha)?;
    let log_mx = (alphabet.mx() as f64).ln();
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::domain("gamma", gamma, "half-width must be > 0"));
    }
    if gamma >= log_mx {
        return Err(Error::domain(
            "gamma",
            gamma,
            format!("half-width must be < log(mx) = {log_mx} nats; wider intervals hold trivially"),
        ));
    }
    let boundary = alphabet.branch_boundary();
    if delta_i_branch1(boundary, alphabet) < gamma {
        return Err(Error::domain(
            "gamma",
            gamma,
            "no radius on the first branch attains this half-width",
        ));
    }

    let (mut lo, mut hi) = (0.0, boundary);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        // run to full precision: n is a ceiling and sits right on an integer
        // when gamma comes from an interval computed at that n
        if mid <= lo || mid >= hi {
            break;
        }
        if delta_i_branch1(mid, alphabet) < gamma {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(hi - lo <= BISECTION_TOL);
    let epsilon = 0.5 * (lo + hi);
    let n = 2.0 / (epsilon * epsilon) * (alphabet.log_tail_constant() - alpha.ln());
    // a gamma taken from an interval at size n puts the exact answer on n
    // itself, where rounding noise would otherwise push the ceiling to n + 1
    let n_required = (n * (1.0 - CEIL_SNAP)).ceil() as u64;
    Ok(SampleSizePlan {
        n_required: n_required.max(1),
        epsilon,
        gamma,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn table(counts: [u64; 4]) -> CountTable {
        CountTable::new(2, 2, counts.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    const EMPIRICAL_1: [u64; 4] = [44950, 5058, 4868, 45124];
    const EMPIRICAL_2: [u64; 4] = [7996, 2023, 18012, 71969];

    #[test]
    fn worst_case_reproduces_published_rows() {
        let i = worst_case_interval(&table(EMPIRICAL_1), 0.05).unwrap().to_unit(Unit::Bits);
        close(i.lower, 0.38170, 5e-6);
        close(i.upper, 0.68504, 5e-6);
        close(i.width(), 0.30334, 5e-6);
        assert_eq!(i.unit, Unit::Bits);

        let i = worst_case_interval(&table(EMPIRICAL_2), 0.05).unwrap().to_unit(Unit::Bits);
        close(i.lower, -0.04743, 5e-6);
        close(i.upper, 0.25591, 5e-6);
    }

    #[test]
    fn worst_case_tiny_n_uses_log_mx() {
        let counts = CountTable::new(3, 4, vec![1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        let i = worst_case_interval(&counts, 0.05).unwrap();
        assert!(i.epsilon > 2.0 - 2.0 / 3.0);
        close(0.5 * i.width(), 3f64.ln(), 1e-15);
    }

    #[test]
    fn entropy_ball_reproduces_published_rows() {
        let i = entropy_ball_interval(&table(EMPIRICAL_1), 0.05).unwrap().to_unit(Unit::Bits);
        close(i.lower, 0.51645, 1e-5);
        close(i.upper, 0.55091, 1e-5);

        let i = entropy_ball_interval(&table(EMPIRICAL_2), 0.05).unwrap().to_unit(Unit::Bits);
        close(i.lower, 0.05269, 1e-5);
        close(i.upper, 0.15721, 1e-5);
    }

    #[test]
    fn entropy_ball_collapses_as_n_grows() {
        let base = [4495u64, 506, 487, 4512];
        let mi = table(base).mutual_information();
        let mut prev = f64::INFINITY;
        for scale in [1u64, 100, 10_000, 1_000_000, 100_000_000] {
            let t = table(base.map(|c| c * scale));
            let i = entropy_ball_interval(&t, 0.05).unwrap();
            assert!(i.contains(mi));
            assert!(i.width() < prev);
            prev = i.width();
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn invalid_alpha_is_a_domain_error() {
        for alpha in [0.0, -0.1, 1.2, f64::NAN] {
            let err = worst_case_interval(&table(EMPIRICAL_1), alpha).unwrap_err();
            assert!(err.is_domain());
            assert!(entropy_ball_interval(&table(EMPIRICAL_1), alpha).is_err());
        }
    }

    #[test]
    fn unit_conversion_and_clamp() {
        let nats = worst_case_interval(&table(EMPIRICAL_2), 0.05).unwrap();
        let bits = nats.to_unit(Unit::Bits);
        close(bits.lower * LN_2, nats.lower, 1e-15);
        close(bits.to_unit(Unit::Nats).upper, nats.upper, 1e-15);

        let clamped = bits.clamped(AlphabetPair::new(2, 2).unwrap());
        assert_eq!(clamped.lower, 0.0);
        assert_eq!(clamped.upper, bits.upper);
    }

    #[test]
    fn method_names() {
        assert_eq!("thm2".parse::<Method>().unwrap(), Method::WorstCase);
        assert_eq!(Method::EntropyBall.to_string(), "thm4");
        assert!("thm3".parse::<Method>().is_err());
    }

    #[test]
    fn sample_size_round_trip_at_full_precision() {
        let alphabet = AlphabetPair::new(2, 2).unwrap();
        let query = ConfidenceQuery::new(0.05, 100_000, alphabet).unwrap();
        let eps = epsilon_for_confidence(&query);
        let gamma = delta_i(eps, alphabet).unwrap();
        let plan = required_sample_size(gamma, 0.05, alphabet).unwrap();
        assert_eq!(plan.n_required, 100_000);
        close(plan.epsilon, 0.0106158274319, 1e-12);
        close(delta_i(plan.epsilon, alphabet).unwrap(), gamma, 1e-9);
    }

    #[test]
    fn sample_size_at_printed_half_width() {
        // 0.151676 bits sits 5.3e-6 bits above the half-width at n = 1e5, and
        // n is very sensitive to gamma here
        let alphabet = AlphabetPair::new(2, 2).unwrap();
        let plan = required_sample_size(0.151676 * LN_2, 0.05, alphabet).unwrap();
        assert_eq!(plan.n_required, 99_992);
    }

    #[test]
    fn sample_size_plan_meets_target() {
        for (mx, my) in [(2, 2), (2, 5), (3, 3), (4, 6)] {
            let alphabet = AlphabetPair::new(mx, my).unwrap();
            for gamma in [0.01, 0.05, 0.2, 0.6] {
                if gamma >= (mx as f64).ln() {
                    continue;
                }
                let plan = required_sample_size(gamma, 0.05, alphabet).unwrap();
                let q = ConfidenceQuery::new(0.05, plan.n_required, alphabet).unwrap();
                let half = delta_i(epsilon_for_confidence(&q), alphabet).unwrap();
                assert!(half <= gamma + 1e-9);
                if plan.n_required > 1 {
                    let q = ConfidenceQuery::new(0.05, plan.n_required - 1, alphabet).unwrap();
                    assert!(delta_i(epsilon_for_confidence(&q), alphabet).unwrap() > gamma);
                }
            }
        }
    }

    #[test]
    fn sample_size_domain_errors() {
        let alphabet = AlphabetPair::new(2, 3).unwrap();
        let err = required_sample_size(LN_2, 0.05, alphabet).unwrap_err();
        assert!(err.is_domain());
        assert!(err.to_string().contains("log(mx)"));
        assert!(required_sample_size(0.0, 0.05, alphabet).unwrap_err().is_domain());
        assert!(required_sample_size(-1.0, 0.05, alphabet).is_err());
        assert!(required_sample_size(0.1, 0.0, alphabet).is_err());
    }

    #[test]
    fn sample_size_monotonicity() {
        let alphabet = AlphabetPair::new(3, 4).unwrap();
        let mut prev = u64::MAX;
        for k in 1..100 {
            let gamma = 0.01 * k as f64;
            let n = required_sample_size(gamma, 0.05, alphabet).unwrap().n_required;
            assert!(n <= prev);
            prev = n;
        }
        let mut prev = 0;
        for alpha in [1.0, 0.5, 0.1, 0.05, 0.01, 1e-4, 1e-8] {
            let n = required_sample_size(0.1, alpha, alphabet).unwrap().n_required;
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn gamma_near_branch_end() {
        // radius approaches 2 - 2/mx as gamma approaches the branch value there
        let alphabet = AlphabetPair::new(3, 3).unwrap();
        let boundary = alphabet.branch_boundary();
        let top = delta_i_branch1(boundary, alphabet);
        assert!(top > 3f64.ln());
        let gamma = 3f64.ln() - 1e-9;
        let plan = required_sample_size(gamma, 0.5, alphabet).unwrap();
        assert!(plan.epsilon < boundary);
        close(delta_i_branch1(plan.epsilon, alphabet), gamma, 1e-12);
    }
}
