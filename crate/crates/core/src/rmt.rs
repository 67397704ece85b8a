//! Monte Carlo harness for traces of `X = Σ_i (U_i + U_i^*)` with independent
//! Haar unitaries `U_i`.
//!
//! Normalized moments `E[Tr(X^p)]/m` approach the Kesten moments as `m → ∞`,
//! and the polynomials `P_n` should make the centered traces `Tr(P_k(X))`
//! asymptotically uncorrelated. Everything here is a statistical check: each
//! estimate carries a standard error and is judged by its z-score.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::kesten_moment;
use crate::poly::{p_family_from_triangle, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RmtError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("power {power} exceeds the sampled maximum {max}")]
    PowerTooHigh { power: usize, max: usize },
    #[error("need at least {needed} trials, have {have}")]
    InsufficientTrials { needed: usize, have: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Matrix size `m`.
    pub matrix_size: usize,
    /// Number of independent unitaries `N`.
    pub gens: usize,
    pub trials: usize,
    /// Largest power `p` recorded for `Tr(X^p)`.
    pub max_power: usize,
    pub seed: u64,
    /// `|z|` above this fails a check.
    pub z_threshold: f64,
    /// Extra absolute slack on normalized moments for finite-`m` bias.
    pub bias_allowance: f64,
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            matrix_size: 200,
            gens: 2,
            trials: 500,
            max_power: 6,
            seed: 0,
            z_threshold: 4.0,
            bias_allowance: 0.0,
            threads: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), RmtError> {
        let bad = |msg: &str| Err(RmtError::InvalidConfig(msg.to_string()));
        if self.matrix_size < 2 {
            return bad("matrix_size must be at least 2");
        }
        if self.trials < 2 {
            return bad("trials must be at least 2");
        }
        if self.max_power < 1 {
            return bad("max_power must be at least 1");
        }
        if self.gens < 1 {
            return bad("gens must be at least 1");
        }
        if self.z_threshold.is_nan() || self.z_threshold <= 0.0 || self.bias_allowance < 0.0 {
            return bad("z_threshold must be positive and bias_allowance nonnegative");
        }
        Ok(())
    }
}

/// Independent stream for one trial: the master seed picks the key, the
/// trial index picks the ChaCha stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Haar-distributed `m × m` unitary: QR of a complex Ginibre matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: rand::Rng + ?Sized>(m: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(m >= 1);
    loop {
        let z = DMatrix::<Complex64>::from_fn(m, m, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        });
        let qr = z.qr();
        let r = qr.r();
        let diag: Vec<Complex64> = (0..m).map(|j| r[(j, j)]).collect();
        if diag.iter().any(|d| d.norm() < 1e-300) {
            continue;
        }
        let mut q = qr.q();
        for (j, d) in diag.iter().enumerate() {
            let mut col = q.column_mut(j);
            col *= d / d.norm();
        }
        return q;
    }
}

/// `max |(U^* U - I)_{ij}|`.
pub fn unitarity_error(u: &DMatrix<Complex64>) -> f64 {
    let prod = u.adjoint() * u;
    let m = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((prod[(i, j)] - target).norm());
        }
    }
    worst
}

/// `max |(X - X^*)_{ij}|`.
pub fn hermiticity_error(x: &DMatrix<Complex64>) -> f64 {
    let m = x.nrows();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in i..m {
            worst = worst.max((x[(i, j)] - x[(j, i)].conj()).norm());
        }
    }
    worst
}

/// One draw of `X = Σ_i (U_i + U_i^*)`.
pub fn sample_x<R: rand::Rng + ?Sized>(m: usize, gens: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut x = DMatrix::<Complex64>::zeros(m, m);
    for _ in 0..gens {
        let u = haar_unitary(m, rng);
        x += &u;
        x += u.adjoint();
    }
    x
}

/// `Tr(X^p)` for `p = 1..=max_power`, one row per trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSamples {
    pub config: SimConfig,
    pub traces: Vec<Vec<f64>>,
    /// Largest `max |X - X^*|` over all trials.
    pub max_hermiticity_error: f64,
    /// Largest `|λ|` seen; bounded by `2N`.
    pub max_abs_eigenvalue: f64,
}

struct TrialOutcome {
    traces: Vec<f64>,
    hermiticity: f64,
    spectral_radius: f64,
}

fn run_trial(cfg: &SimConfig, trial: usize) -> TrialOutcome {
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let x = sample_x(cfg.matrix_size, cfg.gens, &mut rng);
    let hermiticity = hermiticity_error(&x);
    let eigenvalues = x.symmetric_eigenvalues();
    let mut traces = vec![0.0; cfg.max_power];
    let mut spectral_radius = 0.0f64;
    for &lambda in eigenvalues.iter() {
        spectral_radius = spectral_radius.max(lambda.abs());
        let mut pow = 1.0;
        for t in traces.iter_mut() {
            pow *= lambda;
            *t += pow;
        }
    }
    TrialOutcome { traces, hermiticity, spectral_radius }
}

/// Runs every trial. Bit-identical for a given config regardless of threads.
pub fn sample_traces(cfg: &SimConfig) -> Result<TraceSamples, RmtError> {
    cfg.validate()?;
    let outcomes: Vec<TrialOutcome> = if cfg.threads == 1 {
        (0..cfg.trials).map(|t| run_trial(cfg, t)).collect()
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if cfg.threads > 1 {
            builder = builder.num_threads(cfg.threads);
        }
        let pool = builder.build().map_err(|e| RmtError::ThreadPool(e.to_string()))?;
        pool.install(|| (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect())
    };
    let max_hermiticity_error = outcomes.iter().map(|o| o.hermiticity).fold(0.0, f64::max);
    let max_abs_eigenvalue = outcomes.iter().map(|o| o.spectral_radius).fold(0.0, f64::max);
    Ok(TraceSamples {
        config: cfg.clone(),
        traces: outcomes.into_iter().map(|o| o.traces).collect(),
        max_hermiticity_error,
        max_abs_eigenvalue,
    })
}

impl TraceSamples {
    pub fn trials(&self) -> usize {
        self.traces.len()
    }

    pub fn max_power(&self) -> usize {
        self.config.max_power
    }

    /// `Tr(f(X)) - f(0) m` for every trial. The constant term is dropped since
    /// it never fluctuates.
    pub fn polynomial_traces(&self, f: &IntPolynomial) -> Result<Vec<f64>, RmtError> {
        let coeffs = f.to_f64_coeffs();
        let deg = coeffs.len().saturating_sub(1);
        if deg > self.max_power() {
            return Err(RmtError::PowerTooHigh { power: deg, max: self.max_power() });
        }
        Ok(self
            .traces
            .iter()
            .map(|row| coeffs.iter().skip(1).zip(row).map(|(c, t)| c * t).sum())
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
}

impl Estimate {
    /// `(value - target) / std_err`; 0 when both numerator and error vanish.
    pub fn z_against(&self, target: f64) -> f64 {
        let diff = self.value - target;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_err
        }
    }

    pub fn z(&self) -> f64 {
        self.z_against(0.0)
    }
}

fn mean_and_se(xs: &[f64]) -> Estimate {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Estimate { value: mean, std_err: (var / n).sqrt() }
}

/// Sample mean of `Tr(X^p)/m` with its standard error; compare with the
/// Kesten moment `s_{p,0}`.
pub fn estimate_phi(samples: &TraceSamples, p: usize) -> Result<Estimate, RmtError> {
    if p == 0 || p > samples.max_power() {
        return Err(RmtError::PowerTooHigh { power: p, max: samples.max_power() });
    }
    let m = samples.config.matrix_size as f64;
    let xs: Vec<f64> = samples.traces.iter().map(|row| row[p - 1] / m).collect();
    Ok(mean_and_se(&xs))
}

/// Sample covariance of two series with a delete-one jackknife error.
pub fn jackknife_covariance(xs: &[f64], ys: &[f64]) -> Result<Estimate, RmtError> {
    assert_eq!(xs.len(), ys.len());
    let t = xs.len();
    if t < 3 {
        return Err(RmtError::InsufficientTrials { needed: 3, have: t });
    }
    let tf = t as f64;
    let mx = xs.iter().sum::<f64>() / tf;
    let my = ys.iter().sum::<f64>() / tf;
    let a: Vec<f64> = xs.iter().map(|x| x - mx).collect();
    let b: Vec<f64> = ys.iter().map(|y| y - my).collect();
    let s: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let full = s / (tf - 1.0);
    // With centered data the mean of the remaining t - 1 points is -a_i/(t-1).
    let loo: Vec<f64> =
        a.iter().zip(&b).map(|(x, y)| (s - x * y - x * y / (tf - 1.0)) / (tf - 2.0)).collect();
    let loo_mean = loo.iter().sum::<f64>() / tf;
    let spread: f64 = loo.iter().map(|c| (c - loo_mean).powi(2)).sum();
    Ok(Estimate { value: full, std_err: ((tf - 1.0) / tf * spread).sqrt() })
}

/// Covariance of the centered traces `Tr(f(X))` and `Tr(g(X))` (no `1/m`).
pub fn fluctuation_covariance(
    samples: &TraceSamples,
    f: &IntPolynomial,
    g: &IntPolynomial,
) -> Result<Estimate, RmtError> {
    let xs = samples.polynomial_traces(f)?;
    let ys = samples.polynomial_traces(g)?;
    jackknife_covariance(&xs, &ys)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub p: usize,
    pub estimate: Estimate,
    pub kesten: f64,
    pub z: f64,
    pub passed: bool,
}

/// Compares `Tr(X^p)/m` with the Kesten moments for `p = 1..=max_power`.
///
/// A moment passes when `|mean - kesten| ≤ z_threshold · SE + bias_allowance`.
pub fn moment_checks(samples: &TraceSamples, z_threshold: f64) -> Result<Vec<MomentCheck>, RmtError> {
    let gens = samples.config.gens;
    let bias = samples.config.bias_allowance;
    (1..=samples.max_power())
        .map(|p| {
            let estimate = estimate_phi(samples, p)?;
            let kesten = kesten_moment(p, gens).to_f64().unwrap_or(f64::NAN);
            let z = estimate.z_against(kesten);
            let passed = (estimate.value - kesten).abs() <= z_threshold * estimate.std_err + bias;
            Ok(MomentCheck { p, estimate, kesten, z, passed })
        })
        .collect()
}

/// Symmetric matrix of fluctuation covariances in one polynomial basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceMatrix {
    pub basis: Vec<String>,
    pub entries: Vec<Vec<Estimate>>,
    pub z: Vec<Vec<f64>>,
    pub max_off_diagonal_abs_z: f64,
    pub diagonal_positive: bool,
    /// Every off-diagonal `|z|` is within the threshold.
    pub off_diagonal_within_threshold: bool,
}

fn covariance_matrix(
    samples: &TraceSamples,
    basis: &[IntPolynomial],
    z_threshold: f64,
) -> Result<CovarianceMatrix, RmtError> {
    let series: Vec<Vec<f64>> =
        basis.iter().map(|f| samples.polynomial_traces(f)).collect::<Result<_, _>>()?;
    let k = basis.len();
    let mut entries = vec![vec![Estimate { value: 0.0, std_err: 0.0 }; k]; k];
    for i in 0..k {
        for j in i..k {
            let e = jackknife_covariance(&series[i], &series[j])?;
            entries[i][j] = e;
            entries[j][i] = e;
        }
    }
    let z: Vec<Vec<f64>> = entries.iter().map(|row| row.iter().map(|e| e.z()).collect()).collect();
    let max_off = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| z[i][j].abs())
        .fold(0.0, f64::max);
    Ok(CovarianceMatrix {
        basis: basis.iter().map(|f| f.to_string()).collect(),
        diagonal_positive: (0..k).all(|i| entries[i][i].value > 0.0),
        off_diagonal_within_threshold: max_off <= z_threshold,
        max_off_diagonal_abs_z: max_off,
        entries,
        z,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalizationReport {
    pub seed: u64,
    pub k_max: usize,
    pub z_threshold: f64,
    /// Basis `P_1, …, P_{k_max}` built from the counting triangle.
    pub p_basis: CovarianceMatrix,
    /// Basis `x, x^2, …, x^{k_max}` for contrast.
    pub monomial_basis: CovarianceMatrix,
}

impl DiagonalizationReport {
    /// `P` basis diagonal within threshold, positive variances, and the
    /// monomial basis visibly not diagonal.
    pub fn passed(&self) -> bool {
        self.p_basis.off_diagonal_within_threshold
            && self.p_basis.diagonal_positive
            && !self.monomial_basis.off_diagonal_within_threshold
    }
}

pub fn diagonalization_from_samples(
    samples: &TraceSamples,
    k_max: usize,
) -> Result<DiagonalizationReport, RmtError> {
    if k_max == 0 || k_max > samples.max_power() {
        return Err(RmtError::PowerTooHigh { power: k_max, max: samples.max_power() });
    }
    let z_threshold = samples.config.z_threshold;
    let family = p_family_from_triangle(k_max, samples.config.gens);
    let p_basis = covariance_matrix(samples, &family[1..], z_threshold)?;
    let monomials: Vec<IntPolynomial> = (1..=k_max).map(IntPolynomial::monomial).collect();
    let monomial_basis = covariance_matrix(samples, &monomials, z_threshold)?;
    Ok(DiagonalizationReport {
        seed: samples.config.seed,
        k_max,
        z_threshold,
        p_basis,
        monomial_basis,
    })
}

pub fn diagonalization_report(cfg: &SimConfig, k_max: usize) -> Result<DiagonalizationReport, RmtError> {
    if k_max > cfg.max_power {
        return Err(RmtError::PowerTooHigh { power: k_max, max: cfg.max_power });
    }
    let samples = sample_traces(cfg)?;
    diagonalization_from_samples(&samples, k_max)
}
