//! Monte Carlo harness: channel models, seeded multinomial sampling, the
//! sampling distribution of the plug-in MI, and interval coverage.
//!
//! Every replicate draws from its own ChaCha20 stream: the generator is seeded
//! with `seed` and replicate `r` uses stream number `r`. Replicates therefore
//! do not depend on evaluation order or thread count.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::dist::{CountTable, JointDistribution, MarginalDistribution, Unit};
use crate::error::{Error, Result};
use crate::intervals::{interval, Method};

/// Identifies the generator and substream derivation; written into reports.
pub const GENERATOR_ID: &str = "rand_chacha-0.3/ChaCha20Rng seed_from_u64(seed), set_stream(replicate)";

/// Quantile convention used by [`quantile`]; written into reports.
pub const QUANTILE_CONVENTION: &str = "lower order statistic: sorted[ceil(q * reps) - 1]";

/// Random stream for one replicate.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// A channel between a finite input X and output Y.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    /// Binary symmetric channel with crossover probability `ber`.
    Bsc { ber: f64, input: MarginalDistribution },
}

impl ChannelSpec {
    pub fn bsc(ber: f64, input: MarginalDistribution) -> Result<Self> {
        if !(0.0..=0.5).contains(&ber) {
            return Err(Error::domain("ber", ber, "crossover probability must lie in [0, 0.5]"));
        }
        if input.len() != 2 {
            return Err(Error::ShapeMismatch {
                left: "binary input alphabet".into(),
                right: format!("{} input probabilities", input.len()),
            });
        }
        Ok(ChannelSpec::Bsc { ber, input })
    }

    /// `p(x, y) = p_X(x) W(y | x)`.
    pub fn joint(&self) -> JointDistribution {
        match self {
            ChannelSpec::Bsc { ber, input } => {
                let px = input.probs();
                let probs = vec![
                    px[0] * (1.0 - ber),
                    px[0] * ber,
                    px[1] * ber,
                    px[1] * (1.0 - ber),
                ];
                JointDistribution::new(2, 2, probs).expect("product of two distributions")
            }
        }
    }
}

/// Joint distribution of a BSC; see [`ChannelSpec::joint`].
pub fn bsc_joint(spec: &ChannelSpec) -> JointDistribution {
    spec.joint()
}

/// One multinomial draw of `n` observations, as a chain of conditional binomials.
pub fn draw_counts<R: rand::Rng + ?Sized>(joint: &JointDistribution, n: u64, rng: &mut R) -> CountTable {
    let probs = joint.probs();
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = n;
    let mut mass_left = 1.0;
    let last = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i == last {
            counts[i] = remaining;
            break;
        }
        let share = if mass_left > 0.0 { (p / mass_left).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(remaining, share)
            .expect("share lies in [0, 1]")
            .sample(rng);
        counts[i] = k;
        remaining -= k;
        mass_left -= p;
    }
    CountTable::new(joint.mx(), joint.my(), counts).expect("alphabet already validated and n >= 1")
}

/// Draw a count table of `n` samples, deterministically for a given seed.
pub fn sample_counts(joint: &JointDistribution, n: u64, seed: u64) -> Result<CountTable> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    Ok(draw_counts(joint, n, &mut replicate_rng(seed, 0)))
}

/// Sorted plug-in MI values (nats) across Monte Carlo replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingCdf {
    values: Vec<f64>,
    n_per_rep: u64,
    seed: u64,
}

impl SamplingCdf {
    /// Wrap precomputed realizations; they are sorted here.
    pub fn from_values(mut values: Vec<f64>, n_per_rep: u64, seed: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        values.sort_by(f64::total_cmp);
        Ok(SamplingCdf { values, n_per_rep, seed })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn reps(&self) -> usize {
        self.values.len()
    }

    pub fn n_per_rep(&self) -> u64 {
        self.n_per_rep
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Write `value cdf` rows, ascending, values converted to `unit`.
    ///
    /// The header names the column unit, e.g. `mi_bits cdf`.
    pub fn write_text<W: Write>(&self, mut out: W, unit: Unit) -> io::Result<()> {
        writeln!(out, "mi_{unit} cdf")?;
        let reps = self.values.len() as f64;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{} {}", unit.from_nats(*v), (i + 1) as f64 / reps)?;
        }
        out.flush()
    }
}

/// Simulate `reps` empirical tables of size `n` and collect their plug-in MI.
pub fn sampling_cdf(joint: &JointDistribution, n: u64, reps: u64, seed: u64) -> Result<SamplingCdf> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    if reps == 0 {
        return Err(Error::domain("reps", 0.0, "at least one replicate is required"));
    }
    let values: Vec<f64> = (0..reps)
        .into_par_iter()
        .map(|r| draw_counts(joint, n, &mut replicate_rng(seed, r)).mutual_information())
        .collect();
    SamplingCdf::from_values(values, n, seed)
}

/// Empirical quantile: the lower order statistic at rank `ceil(q * reps)`.
pub fn quantile(cdf: &SamplingCdf, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain("q", q, "quantile level must lie in [0, 1]"));
    }
    let reps = cdf.values.len();
    let rank = (q * reps as f64).ceil() as usize;
    Ok(cdf.values[rank.saturating_sub(1).min(reps - 1)])
}

/// Fraction of replicates whose interval contains the true MI of `joint`.
pub fn coverage_experiment(
    joint: &JointDistribution,
    n: u64,
    reps: u64,
    alpha: f64,
    method: Method,
    seed: u64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    if reps == 0 {
        return Err(Error::domain("reps", 0.0, "at least one replicate is required"));
    }
    let truth = joint.mutual_information();
    let hits = (0..reps)
        .into_par_iter()
        .map(|r| {
            let counts = draw_counts(joint, n, &mut replicate_rng(seed, r));
            interval(&counts, alpha, method).map(|i| u64::from(i.contains(truth)))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(hits as f64 / reps as f64)
}
