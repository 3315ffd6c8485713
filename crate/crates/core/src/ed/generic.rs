use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::EdError;
use crate::poly::{Coefficient, ExactPolynomial, GaussianRational};

const NUMERATOR_RANGE: i64 = 1000;
// A shared denominator of the same size keeps every entry of order one.
const DENOMINATOR_RANGE: std::ops::RangeInclusive<i64> = 500..=1000;

/// The generic parameters of one run: the data point `β`, and two random
/// linear forms used as affine charts on projective solution sets.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericData {
    pub beta: Vec<GaussianRational>,
    pub seed: u64,
    pub chart: Vec<GaussianRational>,
    pub alt_chart: Vec<GaussianRational>,
    /// Whether `β` was supplied by the caller; such data is never resampled.
    pub fixed_beta: bool,
    pub complex_beta: bool,
}

fn random_rational(rng: &mut ChaCha8Rng, den: i64) -> BigRational {
    let num = rng.random_range(-NUMERATOR_RANGE..=NUMERATOR_RANGE);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn random_entry(rng: &mut ChaCha8Rng, den: i64, complex: bool) -> GaussianRational {
    let re = random_rational(rng, den);
    let im = if complex {
        random_rational(rng, den)
    } else {
        BigRational::zero()
    };
    GaussianRational::new(re, im)
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize, complex: bool) -> Vec<GaussianRational> {
    let den = rng.random_range(DENOMINATOR_RANGE);
    (0..len).map(|_| random_entry(rng, den, complex)).collect()
}

fn random_form(rng: &mut ChaCha8Rng, len: usize) -> Vec<GaussianRational> {
    loop {
        let form = random_vector(rng, len, true);
        if form.iter().any(|c| !c.is_zero()) {
            return form;
        }
    }
}

/// `Σ β_i²` computed exactly.
pub fn isotropic_value(beta: &[GaussianRational]) -> GaussianRational {
    beta.iter()
        .fold(GaussianRational::zero(), |acc, b| acc + b.clone() * b.clone())
}

/// Checks the two conditions every `β` must satisfy: `β ≠ 0` and `Σβ_i² ≠ 0`.
pub fn validate_beta(beta: &[GaussianRational]) -> Result<(), EdError> {
    if beta.iter().all(Zero::is_zero) {
        return Err(EdError::InvalidBeta("beta is zero".into()));
    }
    if isotropic_value(beta).is_zero() {
        return Err(EdError::InvalidBeta(
            "beta lies on the isotropic quadric".into(),
        ));
    }
    Ok(())
}

/// Seeded random `β ∈ ℚⁿ⁺¹` (or `ℚ(i)ⁿ⁺¹` when `complex`), rejection-sampled
/// away from zero and from the isotropic quadric.
pub fn sample_generic_beta(n: usize, seed: u64, complex: bool) -> Result<GenericData, EdError> {
    if n == 0 {
        return Err(EdError::InvalidDimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = loop {
        let candidate = random_vector(&mut rng, n + 1, complex);
        if validate_beta(&candidate).is_ok() {
            break candidate;
        }
    };
    let chart = random_form(&mut rng, n + 1);
    let alt_chart = random_form(&mut rng, n + 1);
    Ok(GenericData {
        beta,
        seed,
        chart,
        alt_chart,
        fixed_beta: false,
        complex_beta: complex,
    })
}

impl GenericData {
    /// Caller-supplied `β`; charts still come from `seed`.
    pub fn with_beta(beta: Vec<GaussianRational>, seed: u64) -> Result<Self, EdError> {
        validate_beta(&beta)?;
        let n = beta.len() - 1;
        let mut g = sample_generic_beta(n.max(1), seed, false)?;
        if g.beta.len() != beta.len() {
            return Err(EdError::InvalidDimension(n));
        }
        g.complex_beta = beta.iter().any(|b| !b.is_real());
        g.beta = beta;
        g.fixed_beta = true;
        Ok(g)
    }

    pub fn ambient_dimension(&self) -> usize {
        self.beta.len() - 1
    }

    /// Fresh data for retry number `attempt`; keeps a fixed `β` but redraws
    /// charts.
    pub fn resample(&self, attempt: u64) -> Self {
        let seed = self
            .seed
            .wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut g = sample_generic_beta(self.ambient_dimension(), seed, self.complex_beta)
            .expect("dimension already validated");
        if self.fixed_beta {
            g.beta = self.beta.clone();
            g.fixed_beta = true;
            g.complex_beta = self.complex_beta;
        }
        g
    }

    /// `-β`, same charts.
    pub fn negated(&self) -> Self {
        let mut g = self.clone();
        g.beta = self.beta.iter().map(|b| -b.clone()).collect();
        g
    }

    /// The linear form `l_β = Σ β_i x_i`.
    pub fn l_beta(&self) -> ExactPolynomial {
        linear_form(&self.beta)
    }

    pub fn beta_strings(&self) -> Vec<String> {
        self.beta.iter().map(|b| b.to_string()).collect()
    }

    pub fn beta_complex(&self) -> Vec<num_complex::Complex64> {
        self.beta.iter().map(Coefficient::to_complex).collect()
    }
}

pub(crate) fn linear_form(coefficients: &[GaussianRational]) -> ExactPolynomial {
    let n = coefficients.len();
    let mut p = ExactPolynomial::zero(n);
    for (i, c) in coefficients.iter().enumerate() {
        p = p.add(&ExactPolynomial::variable(n, i).scale(c));
    }
    p
}

/// JSON-friendly view of [`GenericData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericSummary {
    pub seed: u64,
    pub beta: Vec<String>,
    pub chart: Vec<String>,
}

impl GenericSummary {
    /// `β` as complex floats.
    pub fn beta_complex(&self) -> Vec<num_complex::Complex64> {
        self.beta
            .iter()
            .map(|b| {
                crate::poly::parse_constant(b)
                    .expect("summary strings are printed constants")
                    .to_complex()
            })
            .collect()
    }
}

impl From<&GenericData> for GenericSummary {
    fn from(g: &GenericData) -> Self {
        Self {
            seed: g.seed,
            beta: g.beta_strings(),
            chart: g.chart.iter().map(|c| c.to_string()).collect(),
        }
    }
}
