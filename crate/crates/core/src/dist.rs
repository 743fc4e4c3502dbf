//! Finite-alphabet probability objects and the functionals defined on them.
//!
//! Everything here works in nats. Conversion to bits happens only through
//! [`Unit`] at presentation boundaries.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Absolute tolerance on the sum of a probability vector.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// MI values in `[-MI_CLAMP, 0)` are cancellation noise and reported as 0.
const MI_CLAMP: f64 = 1e-12;

/// Unit of an information quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Unit {
    #[default]
    Nats,
    Bits,
}

impl Unit {
    /// Express a value given in nats in this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / std::f64::consts::LN_2,
        }
    }

    /// Convert a value expressed in this unit to nats.
    pub fn to_nats(self, value: f64) -> f64 {
        match self {
            Unit::Nats => value,
            Unit::Bits => value * std::f64::consts::LN_2,
        }
    }

    /// `ln(m)` expressed in this unit.
    pub fn log(self, m: f64) -> f64 {
        self.from_nats(m.ln())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "nats" | "nat" => Ok(Unit::Nats),
            "bits" | "bit" => Ok(Unit::Bits),
            other => Err(format!("unknown unit '{other}' (expected bits or nats)")),
        }
    }
}

/// Check a probability vector and return a copy renormalized by its sum.
///
/// Entries must be finite and in `[0, 1]`; the sum must be within
/// [`SUM_TOLERANCE`] of 1.
pub fn validate_probs(p: &[f64]) -> Result<Vec<f64>> {
    if p.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in p.iter().enumerate() {
        if value < 0.0 {
            return Err(Error::NegativeProbability { index, value });
        }
        if !value.is_finite() || value > 1.0 {
            return Err(Error::ProbabilityOutOfRange { index, value });
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::NotNormalized {
            sum,
            tolerance: SUM_TOLERANCE,
        });
    }
    Ok(p.iter().map(|v| v / sum).collect())
}

/// `-x ln x` with the `0 ln 0 = 0` convention.
#[inline]
pub(crate) fn neg_x_ln_x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// Entropy of a vector already known to be a distribution.
pub(crate) fn entropy_unchecked(p: &[f64]) -> f64 {
    p.iter().map(|&x| neg_x_ln_x(x)).sum()
}

/// L1 distance without validation.
pub(crate) fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Shannon entropy in nats.
pub fn entropy(p: &[f64]) -> Result<f64> {
    let p = validate_probs(p)?;
    Ok(entropy_unchecked(&p))
}

/// Binary entropy `-x ln x - (1-x) ln(1-x)` in nats.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("x", x, "binary entropy needs 0 <= x <= 1"));
    }
    Ok(binary_entropy_unchecked(x))
}

#[inline]
pub(crate) fn binary_entropy_unchecked(x: f64) -> f64 {
    neg_x_ln_x(x) + neg_x_ln_x(1.0 - x)
}

/// Variational (L1) distance `sum |a_i - b_i|` between two distributions.
pub fn variational_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            left: format!("length {}", a.len()),
            right: format!("length {}", b.len()),
        });
    }
    let a = validate_probs(a)?;
    let b = validate_probs(b)?;
    Ok(l1_distance(&a, &b))
}

/// A distribution over a single finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalDistribution {
    probs: Vec<f64>,
}

impl MarginalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Ok(MarginalDistribution {
            probs: validate_probs(&probs)?,
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        entropy_unchecked(&self.probs)
    }
}

/// Joint distribution of `(X, Y)` stored row-major: row `i` is `X = i`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    mx: usize,
    my: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(mx: usize, my: usize, probs: Vec<f64>) -> Result<Self> {
        check_alphabet(mx)?;
        check_alphabet(my)?;
        if probs.len() != mx * my {
            return Err(Error::ShapeMismatch {
                left: format!("{mx}x{my} alphabet"),
                right: format!("{} probabilities", probs.len()),
            });
        }
        Ok(JointDistribution {
            mx,
            my,
            probs: validate_probs(&probs)?,
        })
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let mx = rows.len();
        let my = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != my) {
            return Err(Error::ShapeMismatch {
                left: format!("row length {my}"),
                right: format!("row length {}", bad.len()),
            });
        }
        Self::new(mx, my, rows.concat())
    }

    /// Product distribution `p_X(i) p_Y(j)`.
    pub fn product(px: &MarginalDistribution, py: &MarginalDistribution) -> Result<Self> {
        let probs = px
            .probs()
            .iter()
            .flat_map(|a| py.probs().iter().map(move |b| a * b))
            .collect();
        Self::new(px.len(), py.len(), probs)
    }

    pub fn mx(&self) -> usize {
        self.mx
    }

    pub fn my(&self) -> usize {
        self.my
    }

    /// Flattened row-major probabilities.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `p(X = i, Y = j)` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.my + j]
    }

    pub fn transpose(&self) -> Self {
        let mut probs = Vec::with_capacity(self.probs.len());
        for j in 0..self.my {
            for i in 0..self.mx {
                probs.push(self.get(i, j));
            }
        }
        JointDistribution {
            mx: self.my,
            my: self.mx,
            probs,
        }
    }

    /// Row sums (`p_X`) and column sums (`p_Y`).
    pub fn marginals(&self) -> (MarginalDistribution, MarginalDistribution) {
        let (px, py) = marginal_vectors(&self.probs, self.mx, self.my);
        (
            MarginalDistribution { probs: px },
            MarginalDistribution { probs: py },
        )
    }

    pub fn joint_entropy(&self) -> f64 {
        entropy_unchecked(&self.probs)
    }

    /// `I(X;Y) = H(X) + H(Y) - H(XY)` in nats.
    pub fn mutual_information(&self) -> f64 {
        let (px, py) = self.marginals();
        clamp_mi(px.entropy() + py.entropy() - self.joint_entropy())
    }

    /// Variational distance to another joint of the same shape.
    pub fn variational_distance(&self, other: &JointDistribution) -> Result<f64> {
        if (self.mx, self.my) != (other.mx, other.my) {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.mx, self.my),
                right: format!("{}x{}", other.mx, other.my),
            });
        }
        Ok(l1_distance(&self.probs, &other.probs))
    }
}

pub(crate) fn marginal_vectors(probs: &[f64], mx: usize, my: usize) -> (Vec<f64>, Vec<f64>) {
    let mut px = vec![0.0; mx];
    let mut py = vec![0.0; my];
    for i in 0..mx {
        for j in 0..my {
            let p = probs[i * my + j];
            px[i] += p;
            py[j] += p;
        }
    }
    (px, py)
}

fn clamp_mi(mi: f64) -> f64 {
    if (-MI_CLAMP..0.0).contains(&mi) {
        0.0
    } else {
        mi
    }
}

fn check_alphabet(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::AlphabetTooSmall(m))
    } else {
        Ok(())
    }
}

/// Cell counts of `n` paired observations, row-major like [`JointDistribution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    mx: usize,
    my: usize,
    counts: Vec<u64>,
    n: u64,
}

impl CountTable {
    pub fn new(mx: usize, my: usize, counts: Vec<u64>) -> Result<Self> {
        check_alphabet(mx)?;
        check_alphabet(my)?;
        if counts.len() != mx * my {
            return Err(Error::ShapeMismatch {
                left: format!("{mx}x{my} alphabet"),
                right: format!("{} counts", counts.len()),
            });
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::NoSamples);
        }
        Ok(CountTable { mx, my, counts, n })
    }

    /// Tally paired observations with 1-based labels `x in 1..=mx`, `y in 1..=my`.
    pub fn from_samples(pairs: &[(usize, usize)], mx: usize, my: usize) -> Result<Self> {
        check_alphabet(mx)?;
        check_alphabet(my)?;
        let mut counts = vec![0u64; mx * my];
        for (index, &(x, y)) in pairs.iter().enumerate() {
            if x == 0 || x > mx || y == 0 || y > my {
                return Err(Error::LabelOutOfRange { index, x, y, mx, my });
            }
            counts[(x - 1) * my + (y - 1)] += 1;
        }
        Self::new(mx, my, counts)
    }

    pub fn mx(&self) -> usize {
        self.mx
    }

    pub fn my(&self) -> usize {
        self.my
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.my + j]
    }

    /// Empirical joint distribution `counts / n`.
    pub fn to_distribution(&self) -> JointDistribution {
        let n = self.n as f64;
        JointDistribution {
            mx: self.mx,
            my: self.my,
            probs: self.counts.iter().map(|&c| c as f64 / n).collect(),
        }
    }

    /// Plug-in mutual information of the empirical distribution, in nats.
    pub fn mutual_information(&self) -> f64 {
        self.to_distribution().mutual_information()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn entropy_examples() {
        close(entropy(&[0.5, 0.5]).unwrap(), LN_2, 1e-15);
        assert_eq!(entropy(&[1.0, 0.0]).unwrap(), 0.0);
        let h = entropy(&[0.45, 0.05, 0.05, 0.45]).unwrap();
        close(h, 1.018230, 5e-7);
        // same quantity through the bits identity 1 + h2(0.1)
        let h2_bits = binary_entropy(0.1).unwrap() / LN_2;
        close(h, (1.0 + h2_bits) * LN_2, 1e-14);
    }

    #[test]
    fn entropy_rejects_invalid_vectors() {
        assert!(matches!(
            entropy(&[0.6, -0.1, 0.5]),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
        assert!(matches!(
            entropy(&[0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(entropy(&[]), Err(Error::Empty));
        assert!(entropy(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn validation_renormalizes_within_tolerance() {
        let p = validate_probs(&[0.5 + 4e-13, 0.5]).unwrap();
        close(p.iter().sum::<f64>(), 1.0, 1e-15);
        assert!(validate_probs(&[0.5 + 4e-12, 0.5]).is_err());
    }

    #[test]
    fn binary_entropy_examples() {
        close(binary_entropy(0.5).unwrap(), LN_2, 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let h = binary_entropy(0.1).unwrap();
        close(h, 0.325083, 5e-7);
        close(h / LN_2, 0.468996, 5e-7);
        assert!(binary_entropy(-0.01).unwrap_err().is_domain());
        assert!(binary_entropy(1.01).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let bsc1 = JointDistribution::from_rows(&[vec![0.45, 0.05], vec![0.05, 0.45]]).unwrap();
        close(bsc1.mutual_information() / LN_2, 0.53100, 5e-6);
        let bsc2 = JointDistribution::from_rows(&[vec![0.08, 0.02], vec![0.18, 0.72]]).unwrap();
        close(bsc2.mutual_information() / LN_2, 0.10482, 5e-6);

        let px = MarginalDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let py = MarginalDistribution::new(vec![0.7, 0.3]).unwrap();
        let prod = JointDistribution::product(&px, &py).unwrap();
        assert_eq!(prod.mutual_information(), 0.0);
    }

    #[test]
    fn variational_distance_examples() {
        let a = [0.45, 0.05, 0.05, 0.45];
        assert_eq!(variational_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(
            variational_distance(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap(),
            2.0
        );
        let emp = [0.44950, 0.05058, 0.04868, 0.45124];
        close(variational_distance(&a, &emp).unwrap(), 0.00364, 1e-12);
        assert!(matches!(
            variational_distance(&a, &[0.5, 0.5]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn marginals_examples() {
        let j = JointDistribution::from_rows(&[vec![0.45, 0.05], vec![0.05, 0.45]]).unwrap();
        let (px, py) = j.marginals();
        assert_eq!(px.probs(), &[0.5, 0.5]);
        assert_eq!(py.probs(), &[0.5, 0.5]);

        let j = JointDistribution::from_rows(&[vec![0.08, 0.02], vec![0.18, 0.72]]).unwrap();
        let (px, py) = j.marginals();
        close(px.probs()[0], 0.1, 1e-15);
        close(px.probs()[1], 0.9, 1e-15);
        close(py.probs()[0], 0.26, 1e-15);
        close(py.probs()[1], 0.74, 1e-15);

        let diag = JointDistribution::new(3, 3, vec![1.0 / 3.0, 0.0, 0.0, 0.0, 1.0 / 3.0, 0.0, 0.0, 0.0, 1.0 / 3.0])
            .unwrap();
        let (px, py) = diag.marginals();
        for p in px.probs().iter().chain(py.probs()) {
            close(*p, 1.0 / 3.0, 1e-15);
        }
    }

    #[test]
    fn joint_shape_errors() {
        assert_eq!(
            JointDistribution::new(1, 2, vec![0.5, 0.5]),
            Err(Error::AlphabetTooSmall(1))
        );
        assert!(matches!(
            JointDistribution::new(2, 2, vec![0.5, 0.5]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(JointDistribution::from_rows(&[vec![0.5, 0.0], vec![0.5]]).is_err());
    }

    #[test]
    fn empirical_from_samples_examples() {
        let t = CountTable::from_samples(&[(1, 1)], 2, 2).unwrap();
        assert_eq!(t.counts(), &[1, 0, 0, 0]);
        assert_eq!(t.n(), 1);

        let t = CountTable::from_samples(&[(1, 1), (2, 2), (1, 2), (2, 1)], 2, 2).unwrap();
        assert_eq!(t.counts(), &[1, 1, 1, 1]);
        assert_eq!(t.n(), 4);

        let err = CountTable::from_samples(&[(1, 1), (3, 1)], 2, 2).unwrap_err();
        assert!(matches!(err, Error::LabelOutOfRange { index: 1, x: 3, .. }));
        assert!(err.to_string().contains("sample 1"));
        assert!(CountTable::from_samples(&[(0, 1)], 2, 2).is_err());
        assert_eq!(CountTable::from_samples(&[], 2, 2), Err(Error::NoSamples));
    }

    #[test]
    fn to_distribution_examples() {
        let t = CountTable::new(2, 2, vec![45, 5, 5, 45]).unwrap();
        assert_eq!(t.to_distribution().probs(), &[0.45, 0.05, 0.05, 0.45]);

        let t = CountTable::new(2, 2, vec![44950, 5058, 4868, 45124]).unwrap();
        let j = t.to_distribution();
        assert_eq!(j.probs(), &[0.44950, 0.05058, 0.04868, 0.45124]);

        let t = CountTable::new(2, 2, vec![1, 0, 0, 0]).unwrap();
        assert_eq!(t.to_distribution().probs(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(CountTable::new(2, 2, vec![0; 4]), Err(Error::NoSamples));
    }

    #[test]
    fn unit_conversion() {
        close(Unit::Bits.from_nats(LN_2), 1.0, 1e-15);
        close(Unit::Bits.to_nats(1.0), LN_2, 1e-15);
        assert_eq!(Unit::Nats.from_nats(0.3), 0.3);
        assert_eq!("bits".parse::<Unit>().unwrap(), Unit::Bits);
        assert!("shannons".parse::<Unit>().is_err());
    }

    #[test]
    fn transpose_swaps_marginals() {
        let j = JointDistribution::new(2, 3, vec![0.1, 0.2, 0.3, 0.05, 0.15, 0.2]).unwrap();
        let t = j.transpose();
        assert_eq!((t.mx(), t.my()), (3, 2));
        assert_eq!(t.get(2, 1), j.get(1, 2));
        close(t.mutual_information(), j.mutual_information(), 1e-15);
    }
}
