//! Closed-form bounds: the MI-difference bound over a variational-distance
//! ball, the older three-term bound it tightens, and the L1 deviation tail
//! bound of the empirical joint distribution.

use std::f64::consts::LN_2;

use crate::dist::binary_entropy_unchecked;
use crate::error::{Error, Result};

/// Alphabet sizes, normalized so that `mx <= my`.
///
/// MI is symmetric, so swapping the roles of X and Y is harmless; `swapped`
/// records whether the caller's orientation was reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlphabetPair {
    mx: usize,
    my: usize,
    swapped: bool,
}

impl AlphabetPair {
    pub fn new(mx: usize, my: usize) -> Result<Self> {
        for m in [mx, my] {
            if m < 2 {
                return Err(Error::AlphabetTooSmall(m));
            }
        }
        Ok(if mx <= my {
            AlphabetPair { mx, my, swapped: false }
        } else {
            AlphabetPair { mx: my, my: mx, swapped: true }
        })
    }

    /// The smaller alphabet size.
    pub fn mx(&self) -> usize {
        self.mx
    }

    /// The larger alphabet size.
    pub fn my(&self) -> usize {
        self.my
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn cells(&self) -> usize {
        self.mx * self.my
    }

    /// Upper end of the first branch of [`delta_i`]: `2 - 2/mx`.
    pub fn branch_boundary(&self) -> f64 {
        2.0 - 2.0 / self.mx as f64
    }

    /// `ln(2^(mx my) - 2)`, evaluated without forming `2^(mx my)`.
    pub fn log_tail_constant(&self) -> f64 {
        let k = self.cells() as f64;
        // 2^k - 2 = 2^k (1 - 2^(1-k))
        k * LN_2 + (-(1.0 - k).exp2()).ln_1p()
    }
}

/// Confidence level, sample size and alphabet for one interval computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceQuery {
    alpha: f64,
    n: u64,
    alphabet: AlphabetPair,
}

impl ConfidenceQuery {
    pub fn new(alpha: f64, n: u64, alphabet: AlphabetPair) -> Result<Self> {
        check_alpha(alpha)?;
        if n == 0 {
            return Err(Error::NoSamples);
        }
        Ok(ConfidenceQuery { alpha, n, alphabet })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alphabet(&self) -> AlphabetPair {
        self.alphabet
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "alpha must lie in (0, 1]"))
    }
}

/// First branch of [`delta_i`], valid for any `epsilon >= 0` with `epsilon / 2 <= 1`.
pub(crate) fn delta_i_branch1(epsilon: f64, alphabet: AlphabetPair) -> f64 {
    let (mx, my) = (alphabet.mx as f64, alphabet.my as f64);
    let log_term = ((mx * my - 1.0) * (mx - 1.0) * (my - 1.0)).ln();
    0.5 * epsilon * log_term + 3.0 * binary_entropy_unchecked(0.5 * epsilon)
}

/// Largest possible `|I(p) - I(p')|` over joints with `V(p, p') <= epsilon`, in nats.
///
/// For `epsilon <= 2 - 2/mx` this is
/// `(eps/2) ln[(mx my - 1)(mx - 1)(my - 1)] + 3 h(eps/2)`; beyond that the
/// trivial bound `ln mx` applies. The first branch is not capped at `ln mx`
/// near the boundary.
pub fn delta_i(epsilon: f64, alphabet: AlphabetPair) -> Result<f64> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::domain("epsilon", epsilon, "epsilon must be >= 0"));
    }
    if epsilon <= alphabet.branch_boundary() {
        Ok(delta_i_branch1(epsilon, alphabet))
    } else {
        Ok((alphabet.mx as f64).ln())
    }
}

/// The older bound `3 (eps/2) ln(mx my - 1) + 3 h(eps/2)`, in nats.
///
/// Only defined for `0 <= epsilon <= 2 - 2/(mx my)`.
pub fn delta_i_zhang(epsilon: f64, alphabet: AlphabetPair) -> Result<f64> {
    let k = alphabet.cells() as f64;
    let limit = 2.0 - 2.0 / k;
    if !(0.0..=limit).contains(&epsilon) {
        return Err(Error::domain(
            "epsilon",
            epsilon,
            format!("the three-term bound requires 0 <= epsilon <= 2 - 2/(mx my) = {limit}"),
        ));
    }
    Ok(1.5 * epsilon * (k - 1.0).ln() + 3.0 * binary_entropy_unchecked(0.5 * epsilon))
}

/// Upper bound `(2^(mx my) - 2) exp(-n eps^2 / 2)` on `Pr{V(empirical, true) > eps}`.
///
/// Not clipped to 1.
pub fn weissman_tail(n: u64, epsilon: f64, alphabet: AlphabetPair) -> Result<f64> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::domain("epsilon", epsilon, "epsilon must be > 0"));
    }
    let exponent = alphabet.log_tail_constant() - 0.5 * n as f64 * epsilon * epsilon;
    Ok(exponent.exp())
}

/// The deviation `eps = sqrt((2/n) ln((2^(mx my) - 2) / alpha))` reached with
/// probability at least `1 - alpha`.
pub fn epsilon_for_confidence(query: &ConfidenceQuery) -> f64 {
    let log_ratio = query.alphabet.log_tail_constant() - query.alpha.ln();
    (2.0 / query.n as f64 * log_ratio).sqrt()
}
