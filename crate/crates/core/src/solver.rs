//! The difference map for bit retrieval.
//!
//! The two constraint sets are the hypercube B = {±1/2}^N and the torus
//! T_α of elements whose Fourier moduli are fixed by α. With
//! f_A = (1 + γ_A)Π_A − γ_A and f_B = (1 + γ_B)Π_B − γ_B, one step is
//!
//! ```text
//! x ← x + β (Π_B f_A(x) − Π_A f_B(x))
//! ```
//!
//! and the sign pattern Π_B f_A(x) is tested against α after every step.
//!
//! Detection compares the ±1 pattern s = 2Π_B f_A(x) with the integer
//! target t = 4α_R: first the sum (Σs)² = Σt, then each lag of the exact
//! autocorrelation with early exit. Almost every candidate fails at the
//! first or second lag, so the check costs O(N) per step on average.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclotomic::{real_autocorrelation_from_cyclo, require_odd_prime, CycloElement, Fourier, RingElement};
use crate::error::{Error, Result};
use crate::instances::{random_binary_from, signs_related, BinaryKey, Provenance};
use crate::seeds::{derive_seed, rng_for};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub beta: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub max_iterations: u64,
    /// Re-randomize the iterate after this many steps without a solution.
    pub restart_after: Option<u64>,
    pub seed: u64,
    /// Confirm candidates with the exact integer autocorrelation. When off,
    /// a candidate is accepted once every spectral modulus matches α to
    /// 1e−6 (which for integer data is equivalent, but unchecked).
    pub detect_exact: bool,
    /// Record the residual ‖Π_B f_A(x) − Π_A f_B(x)‖ every this many steps.
    pub trace_every: Option<u64>,
}

impl SolverConfig {
    /// β with the optimal γ_A = 1/β, γ_B = −1/β.
    pub fn with_beta(beta: f64) -> Self {
        SolverConfig {
            beta,
            gamma_a: 1.0 / beta,
            gamma_b: -1.0 / beta,
            ..SolverConfig::default()
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.beta == 0.0 || !self.beta.is_finite() {
            return Err(Error::Precondition("difference map needs a finite β ≠ 0".into()));
        }
        if !(self.gamma_a.is_finite() && self.gamma_b.is_finite()) {
            return Err(Error::Precondition("γ parameters must be finite".into()));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        let beta = 0.7;
        SolverConfig {
            beta,
            gamma_a: 1.0 / beta,
            gamma_b: -1.0 / beta,
            max_iterations: 10_000_000,
            restart_after: None,
            seed: 0,
            detect_exact: true,
            trace_every: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub solution: Option<BinaryKey>,
    /// Total steps over all attempts, up to and including the solving one.
    pub iterations: u64,
    pub restarts: u64,
    pub per_attempt_iterations: Vec<u64>,
    pub residual_trace: Option<Vec<f64>>,
}

impl SolveResult {
    pub fn solved(&self) -> bool {
        self.solution.is_some()
    }
}

/// Π_B: each component to ±1/2 by sign, with 0 ↦ +1/2.
pub fn project_hypercube(x: &RingElement<f64>) -> RingElement<f64> {
    let c = x.coeffs().iter().map(|&v| half_sign(v)).collect();
    RingElement::cyclic(c).expect("same length as input")
}

#[inline]
fn half_sign(v: f64) -> f64 {
    if v >= 0.0 {
        0.5
    } else {
        -0.5
    }
}

/// Fourier moduli a_j = √σ_j(α) of a valid autocorrelation, full length N.
pub fn torus_moduli(alpha: &RingElement<f64>) -> Result<Vec<f64>> {
    let n = alpha.n();
    let f = Fourier::cached(n);
    let spec = f.spectrum_of(alpha.coeffs());
    let scale = spec[0].re.abs().max(1.0);
    let tol = 1e-9 * scale;
    spec.iter()
        .enumerate()
        .map(|(j, z)| {
            if z.im.abs() > 1e-6 * scale || z.re < -tol {
                return Err(Error::InvalidAutocorrelation(format!(
                    "σ_{j}(α) = {z} is not a nonnegative real"
                )));
            }
            Ok(z.re.max(0.0).sqrt())
        })
        .collect()
}

/// Reusable buffers for torus projections at one N.
struct TorusProjector {
    fourier: Arc<Fourier>,
    moduli: Vec<f64>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl TorusProjector {
    fn new(moduli: Vec<f64>) -> Self {
        let n = moduli.len();
        let fourier = Fourier::cached(n);
        let scratch = vec![Complex64::new(0.0, 0.0); fourier.scratch_len()];
        TorusProjector {
            fourier,
            moduli,
            buf: vec![Complex64::new(0.0, 0.0); n],
            scratch,
        }
    }

    /// out ← Π_{T_α}(x).
    fn project(&mut self, x: &[f64], out: &mut [f64]) {
        for (b, &v) in self.buf.iter_mut().zip(x) {
            *b = Complex64::new(v, 0.0);
        }
        self.fourier.sigma_with_scratch(&mut self.buf, &mut self.scratch);
        let s0 = self.buf[0].re;
        self.buf[0] = Complex64::new(if s0 >= 0.0 { self.moduli[0] } else { -self.moduli[0] }, 0.0);
        for (z, &a) in self.buf.iter_mut().zip(&self.moduli).skip(1) {
            let r = z.norm();
            *z = if r > 0.0 { *z * (a / r) } else { Complex64::new(a, 0.0) };
        }
        self.fourier.sigma_inverse_with_scratch(&mut self.buf, &mut self.scratch);
        for (o, z) in out.iter_mut().zip(&self.buf) {
            *o = z.re;
        }
    }
}

/// Π_{T_α}: keep each phase of σ(x), replace each modulus by √σ_j(α); σ₀
/// becomes ±√σ₀(α) with the sign of σ₀(x). Zero moduli take phase 0.
pub fn project_torus(x: &RingElement<f64>, alpha: &RingElement<f64>) -> Result<RingElement<f64>> {
    if x.n() != alpha.n() {
        return Err(Error::DimensionMismatch(x.n(), alpha.n()));
    }
    let mut p = TorusProjector::new(torus_moduli(alpha)?);
    let mut out = vec![0.0; x.n()];
    p.project(x.coeffs(), &mut out);
    RingElement::cyclic(out)
}

/// Working state of one difference-map trajectory.
struct DiffMap {
    torus: TorusProjector,
    beta: f64,
    gamma_a: f64,
    gamma_b: f64,
    pa: Vec<f64>,
    fa: Vec<f64>,
    fb: Vec<f64>,
    pafb: Vec<f64>,
}

impl DiffMap {
    fn new(moduli: Vec<f64>, config: &SolverConfig) -> Self {
        let n = moduli.len();
        DiffMap {
            torus: TorusProjector::new(moduli),
            beta: config.beta,
            gamma_a: config.gamma_a,
            gamma_b: config.gamma_b,
            pa: vec![0.0; n],
            fa: vec![0.0; n],
            fb: vec![0.0; n],
            pafb: vec![0.0; n],
        }
    }

    /// Advances `x` in place, writes the candidate signs (±1) and returns
    /// the residual norm ‖Π_B f_A(x) − Π_A f_B(x)‖.
    fn step(&mut self, x: &mut [f64], candidate: &mut [i8]) -> f64 {
        self.torus.project(x, &mut self.pa);
        let (ga, gb) = (self.gamma_a, self.gamma_b);
        for i in 0..x.len() {
            self.fa[i] = (1.0 + ga) * self.pa[i] - ga * x[i];
            self.fb[i] = (1.0 + gb) * half_sign(x[i]) - gb * x[i];
        }
        self.torus.project(&self.fb, &mut self.pafb);
        let mut residual = 0.0;
        for i in 0..x.len() {
            let pbfa = half_sign(self.fa[i]);
            candidate[i] = if pbfa > 0.0 { 1 } else { -1 };
            let d = pbfa - self.pafb[i];
            residual += d * d;
            x[i] += self.beta * d;
        }
        residual.sqrt()
    }
}

/// One difference-map step: `(x_next, Π_B f_A(x))`.
pub fn diffmap_step(
    x: &RingElement<f64>,
    alpha: &RingElement<f64>,
    config: &SolverConfig,
) -> Result<(RingElement<f64>, RingElement<f64>)> {
    config.validate()?;
    if x.n() != alpha.n() {
        return Err(Error::DimensionMismatch(x.n(), alpha.n()));
    }
    let mut map = DiffMap::new(torus_moduli(alpha)?, config);
    let mut next = x.coeffs().to_vec();
    let mut signs = vec![0i8; x.n()];
    map.step(&mut next, &mut signs);
    if next.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("difference map produced a non-finite iterate".into()));
    }
    let candidate = signs.iter().map(|&s| 0.5 * s as f64).collect();
    Ok((RingElement::cyclic(next)?, RingElement::cyclic(candidate)?))
}

/// The integer target 4α_R of a binary autocorrelation, validated.
#[derive(Clone, Debug)]
struct ExactTarget {
    lags: Vec<i64>,
    abs_sum: i64,
}

impl ExactTarget {
    fn new(alpha: &RingElement<f64>) -> Result<Self> {
        let n = alpha.n();
        let mut lags = Vec::with_capacity(n);
        for &a in alpha.coeffs() {
            let t = (4.0 * a).round();
            if (4.0 * a - t).abs() > 1e-6 {
                return Err(Error::InvalidAutocorrelation(format!(
                    "4α has a non-integer coefficient {}",
                    4.0 * a
                )));
            }
            lags.push(t as i64);
        }
        if lags[0] != n as i64 {
            return Err(Error::InvalidAutocorrelation(format!(
                "[α]₀ must be N/4 for a binary autocorrelation, found {}",
                alpha.coeffs()[0]
            )));
        }
        if (1..n).any(|k| lags[k] != lags[n - k]) {
            return Err(Error::InvalidAutocorrelation("α is not self-conjugate".into()));
        }
        let total: i64 = lags.iter().sum();
        let root = (total.max(0) as f64).sqrt().round() as i64;
        if root * root != total || (root - n as i64) % 2 != 0 {
            return Err(Error::InvalidAutocorrelation(format!(
                "σ₀(4α) = {total} is not the square of a ±1 sum"
            )));
        }
        Ok(ExactTarget { lags, abs_sum: root })
    }

    fn matches(&self, s: &[i8]) -> bool {
        let sum: i64 = s.iter().map(|&v| v as i64).sum();
        if sum.abs() != self.abs_sum {
            return false;
        }
        let n = s.len();
        for k in 1..=n / 2 {
            let mut acc = 0i64;
            for i in 0..n {
                let j = if i + k < n { i + k } else { i + k - n };
                acc += (s[i] * s[j]) as i64;
            }
            if acc != self.lags[k] {
                return false;
            }
        }
        true
    }
}

fn spectral_match(s: &[i8], moduli: &[f64]) -> bool {
    let f = Fourier::cached(s.len());
    let spec = f.spectrum_of(&s.iter().map(|&v| 0.5 * v as f64).collect::<Vec<_>>());
    spec.iter().zip(moduli).all(|(z, a)| (z.norm() - a).abs() < 1e-6)
}

fn random_start(rng: &mut ChaCha8Rng, x: &mut [f64]) {
    for v in x.iter_mut() {
        *v = rng.gen_range(-1.0..=1.0);
    }
}

/// Runs the difference map on α_R until the candidate sign pattern has
/// autocorrelation α exactly, or the iteration budget is spent.
pub fn solve(alpha: &RingElement<f64>, config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    let n = alpha.n();
    require_odd_prime(n)?;
    let target = ExactTarget::new(alpha)?;
    let moduli = torus_moduli(alpha)?;
    let mut map = DiffMap::new(moduli.clone(), config);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut x = vec![0.0; n];
    let mut signs = vec![0i8; n];
    random_start(&mut rng, &mut x);
    let mut trace = config.trace_every.map(|_| Vec::new());
    let mut per_attempt = Vec::new();
    let mut attempt_steps = 0u64;
    let mut total = 0u64;

    while total < config.max_iterations {
        let residual = map.step(&mut x, &mut signs);
        total += 1;
        attempt_steps += 1;
        if let (Some(t), Some(every)) = (trace.as_mut(), config.trace_every) {
            if total % every.max(1) == 0 {
                t.push(residual);
            }
        }
        let found = if config.detect_exact {
            target.matches(&signs)
        } else {
            spectral_match(&signs, &moduli)
        };
        if found {
            per_attempt.push(attempt_steps);
            let key = BinaryKey::from_signs(&signs, Provenance::Explicit)?;
            return Ok(SolveResult {
                solution: Some(key),
                iterations: total,
                restarts: per_attempt.len() as u64 - 1,
                per_attempt_iterations: per_attempt,
                residual_trace: trace,
            });
        }
        let diverged = !residual.is_finite();
        if diverged || config.restart_after.is_some_and(|r| attempt_steps >= r) {
            if diverged {
                log::warn!("non-finite iterate after {attempt_steps} steps, restarting");
            }
            per_attempt.push(attempt_steps);
            attempt_steps = 0;
            random_start(&mut rng, &mut x);
        }
    }
    if attempt_steps > 0 {
        per_attempt.push(attempt_steps);
    }
    Ok(SolveResult {
        solution: None,
        iterations: total,
        restarts: per_attempt.len().saturating_sub(1) as u64,
        per_attempt_iterations: per_attempt,
        residual_trace: trace,
    })
}

/// [`solve`] for an autocorrelation given in O.
pub fn solve_cyclo(alpha: &CycloElement, config: &SolverConfig) -> Result<SolveResult> {
    solve(&real_autocorrelation_from_cyclo(alpha), config)
}

/// Summary of iteration counts against the exponential law
/// P(I) = exp(−I/I₀)/I₀.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationStats {
    pub runs: usize,
    /// Sample mean I₀.
    pub mean: f64,
    pub std: f64,
    pub std_over_mean: f64,
    /// max |F̂(I) − (1 − exp(−I/I₀))| over the sample.
    pub cdf_max_deviation: f64,
    /// std/mean within 15% of 1 and the CDF deviation below the 1%
    /// Kolmogorov–Smirnov critical value 1.63/√n.
    pub exponential_like: bool,
}

pub fn iteration_statistics(results: &[SolveResult]) -> Result<IterationStats> {
    let counts: Vec<u64> = results.iter().filter(|r| r.solved()).map(|r| r.iterations).collect();
    iteration_statistics_from_counts(&counts)
}

pub fn iteration_statistics_from_counts(counts: &[u64]) -> Result<IterationStats> {
    if counts.len() < 30 {
        return Err(Error::InsufficientData(format!(
            "need at least 30 successful runs, have {}",
            counts.len()
        )));
    }
    let m = counts.len() as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / m;
    let var = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let std = var.sqrt();
    let ratio = if mean > 0.0 { std / mean } else { 0.0 };
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let mut dev = 0.0f64;
    for (i, &c) in sorted.iter().enumerate() {
        let model = if mean > 0.0 { 1.0 - (-(c as f64) / mean).exp() } else { 1.0 };
        let lo = i as f64 / m;
        let hi = (i + 1) as f64 / m;
        dev = dev.max((model - lo).abs()).max((model - hi).abs());
    }
    Ok(IterationStats {
        runs: counts.len(),
        mean,
        std,
        std_over_mean: ratio,
        cdf_max_deviation: dev,
        exponential_like: (ratio - 1.0).abs() <= 0.15 && dev < 1.63 / m.sqrt(),
    })
}

/// `runs` independent solves of one instance; run `i` uses seed
/// `derive_seed(seed, i)`.
pub fn solve_runs(alpha: &RingElement<f64>, runs: usize, seed: u64, config: &SolverConfig) -> Result<Vec<SolveResult>> {
    (0..runs as u64)
        .into_par_iter()
        .map(|i| solve(alpha, &config.clone().seeded(derive_seed(seed, i))))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonUniquenessReport {
    pub n: usize,
    pub trials: usize,
    pub solved: usize,
    /// Solved trials whose solution is not symmetry-related to the plant.
    pub unrelated: usize,
}

impl NonUniquenessReport {
    pub fn rate(&self) -> f64 {
        self.unrelated as f64 / self.solved.max(1) as f64
    }
}

/// Plants random keys, solves their autocorrelations and counts solutions
/// that differ from the plant by more than a symmetry.
pub fn non_uniqueness_experiment(n: usize, trials: usize, seed: u64, config: &SolverConfig) -> Result<NonUniquenessReport> {
    require_odd_prime(n)?;
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, 2 * i);
            let key = random_binary_from(n, &mut rng, Provenance::Random(seed))?;
            let cfg = config.clone().seeded(derive_seed(seed, 2 * i + 1));
            let result = solve_cyclo(&key.autocorrelation(), &cfg)?;
            Ok(result
                .solution
                .map(|s| !signs_related(&key.signs(), &s.signs())))
        })
        .collect::<Result<Vec<Option<bool>>>>()?;
    Ok(NonUniquenessReport {
        n,
        trials,
        solved: outcomes.iter().filter(|o| o.is_some()).count(),
        unrelated: outcomes.iter().filter(|o| **o == Some(true)).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::lift_binary;
    use crate::instances::{pi_sequence, random_binary, symmetry_related};
    use std::f64::consts::TAU;

    fn alpha_of(key: &BinaryKey) -> RingElement<f64> {
        real_autocorrelation_from_cyclo(&key.autocorrelation())
    }

    #[test]
    fn hypercube_projection() {
        let x = RingElement::new(vec![0.3, -0.2, 0.0]).unwrap();
        assert_eq!(project_hypercube(&x).coeffs(), &[0.5, -0.5, 0.5]);
        let b = project_hypercube(&x);
        assert_eq!(project_hypercube(&b), b);
    }

    #[test]
    fn hypercube_projection_is_nearest() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x = RingElement::new((0..11).map(|_| rng.gen_range(-2.0..2.0)).collect()).unwrap();
            let b = RingElement::new((0..11).map(|_| if rng.gen() { 0.5 } else { -0.5 }).collect()).unwrap();
            let p = project_hypercube(&x);
            assert!(p.sub(&x).unwrap().euclidean_norm() <= b.sub(&x).unwrap().euclidean_norm() + 1e-12);
        }
    }

    #[test]
    fn torus_projection_properties() {
        let key = random_binary(23, 4).unwrap();
        let alpha = alpha_of(&key);
        let beta_r = lift_binary(key.element()).unwrap();
        let fixed = project_torus(&beta_r, &alpha).unwrap();
        for (a, b) in fixed.coeffs().iter().zip(beta_r.coeffs()) {
            assert!((a - b).abs() < 1e-9);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = RingElement::new((0..23).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let p = project_torus(&x, &alpha).unwrap();
        assert!((p.euclidean_norm() - 23.0 / 4.0).abs() < 1e-9);
        let pp = project_torus(&p, &alpha).unwrap();
        for (a, b) in p.coeffs().iter().zip(pp.coeffs()) {
            assert!((a - b).abs() < 1e-9);
        }
        // x = 0 takes every tie branch: all spectra real and positive.
        let z = project_torus(&RingElement::zeros(23).unwrap(), &alpha).unwrap();
        let spec = Fourier::cached(23).spectrum_of(z.coeffs());
        let moduli = torus_moduli(&alpha).unwrap();
        for (s, m) in spec.iter().zip(&moduli) {
            assert!((s.re - m).abs() < 1e-9 && s.im.abs() < 1e-9);
        }
    }

    #[test]
    fn torus_projection_is_nearest() {
        let n = 13;
        let alpha = alpha_of(&random_binary(n, 21).unwrap());
        let moduli = torus_moduli(&alpha).unwrap();
        let f = Fourier::cached(n);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let x = RingElement::new((0..n).map(|_| rng.gen_range(-1.5..1.5)).collect()).unwrap();
            let p = project_torus(&x, &alpha).unwrap();
            // Random torus point: random σ₀ sign and conjugate-symmetric phases.
            let mut spec = vec![Complex64::new(0.0, 0.0); n];
            spec[0] = Complex64::new(if rng.gen() { moduli[0] } else { -moduli[0] }, 0.0);
            for j in 1..=n / 2 {
                let z = Complex64::from_polar(moduli[j], rng.gen_range(0.0..TAU));
                spec[j] = z;
                spec[n - j] = z.conj();
            }
            let t = RingElement::new(f.coefficients_of(&spec)).unwrap();
            let dp = p.sub(&x).unwrap().euclidean_norm();
            let dt = t.sub(&x).unwrap().euclidean_norm();
            assert!(dp <= dt + 1e-9, "{dp} > {dt}");
        }
    }

    #[test]
    fn rejects_invalid_alpha() {
        let bad = RingElement::new(vec![1.0, 2.0, 0.0]).unwrap();
        assert!(matches!(
            project_torus(&bad, &bad),
            Err(Error::InvalidAutocorrelation(_))
        ));
        let x = RingElement::zeros(3).unwrap();
        assert!(solve(&x, &SolverConfig::default()).is_err());
        let zero_beta = SolverConfig::with_beta(0.0);
        let alpha = alpha_of(&random_binary(5, 1).unwrap());
        assert!(diffmap_step(&alpha, &alpha, &zero_beta).is_err());
    }

    #[test]
    fn default_parameters() {
        let c = SolverConfig::default();
        assert_eq!(c.beta, 0.7);
        assert!((c.gamma_a - 1.0 / 0.7).abs() < 1e-15);
        assert!((c.gamma_b + 1.0 / 0.7).abs() < 1e-15);
        assert_eq!(SolverConfig::with_beta(0.7), c);
    }

    /// Straight-line evaluation of one step at N = 3 with explicit DFT sums.
    #[test]
    fn step_matches_reference() {
        let n = 3usize;
        let key = BinaryKey::from_bits(&[1, 0], Provenance::Explicit).unwrap();
        let alpha = alpha_of(&key);
        let x = [0.31, -0.72, 0.05];
        let cfg = SolverConfig::default();

        let dft = |v: &[f64]| -> Vec<Complex64> {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| Complex64::from_polar(v[k], TAU * (j * k) as f64 / n as f64))
                        .sum()
                })
                .collect()
        };
        let idft = |s: &[Complex64]| -> Vec<f64> {
            (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| s[j] * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / n as f64))
                        .sum::<Complex64>()
                        .re
                        / n as f64
                })
                .collect()
        };
        let a: Vec<f64> = dft(alpha.coeffs()).iter().map(|z| z.re.max(0.0).sqrt()).collect();
        let torus = |v: &[f64]| -> Vec<f64> {
            let s = dft(v);
            let p: Vec<Complex64> = (0..n)
                .map(|j| {
                    if j == 0 {
                        Complex64::new(a[0] * s[0].re.signum(), 0.0)
                    } else {
                        s[j] / s[j].norm() * a[j]
                    }
                })
                .collect();
            idft(&p)
        };
        let cube = |v: &[f64]| -> Vec<f64> { v.iter().map(|&c| if c >= 0.0 { 0.5 } else { -0.5 }).collect() };
        let (ga, gb, b) = (cfg.gamma_a, cfg.gamma_b, cfg.beta);
        let pa = torus(&x);
        let pb = cube(&x);
        let fa: Vec<f64> = (0..n).map(|i| (1.0 + ga) * pa[i] - ga * x[i]).collect();
        let fb: Vec<f64> = (0..n).map(|i| (1.0 + gb) * pb[i] - gb * x[i]).collect();
        let pbfa = cube(&fa);
        let pafb = torus(&fb);
        let want: Vec<f64> = (0..n).map(|i| x[i] + b * (pbfa[i] - pafb[i])).collect();

        let (next, cand) = diffmap_step(&RingElement::new(x.to_vec()).unwrap(), &alpha, &cfg).unwrap();
        for i in 0..n {
            assert!((next.coeffs()[i] - want[i]).abs() < 1e-12);
        }
        assert_eq!(cand.coeffs(), pbfa.as_slice());
    }

    #[test]
    fn fixed_point_is_stationary() {
        // At a solution β the torus and cube agree, so for x = β both
        // projections of f_A, f_B equal β and the step is zero.
        let key = random_binary(11, 2).unwrap();
        let alpha = alpha_of(&key);
        let beta_r = lift_binary(key.element()).unwrap();
        let (next, cand) = diffmap_step(&beta_r, &alpha, &SolverConfig::default()).unwrap();
        for (a, b) in next.coeffs().iter().zip(beta_r.coeffs()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(cand, beta_r);
    }

    #[test]
    fn solves_pi23() {
        let key = pi_sequence(23).unwrap();
        let r = solve_cyclo(&key.autocorrelation(), &SolverConfig::default().seeded(1)).unwrap();
        let sol = r.solution.expect("solved");
        assert!(symmetry_related(sol.element(), key.element()).unwrap());
        assert_eq!(sol.autocorrelation(), key.autocorrelation());
    }

    #[test]
    fn trivial_instance_solves_at_once() {
        let one = CycloElement::one(11).unwrap();
        let r = solve_cyclo(&one.autocorrelation().unwrap(), &SolverConfig::default()).unwrap();
        let sol = r.solution.unwrap();
        assert!(symmetry_related(sol.element(), &one).unwrap());
        assert!(r.iterations < 50, "{}", r.iterations);
    }

    #[test]
    fn exhaustion_is_not_an_error() {
        let key = random_binary(61, 3).unwrap();
        let cfg = SolverConfig {
            max_iterations: 25,
            restart_after: Some(10),
            trace_every: Some(5),
            ..SolverConfig::default()
        };
        let r = solve_cyclo(&key.autocorrelation(), &cfg).unwrap();
        assert!(r.solution.is_none());
        assert_eq!(r.iterations, 25);
        assert_eq!(r.per_attempt_iterations, vec![10, 10, 5]);
        assert_eq!(r.restarts, 2);
        assert_eq!(r.residual_trace.unwrap().len(), 5);
    }

    #[test]
    fn spectral_detection_agrees() {
        let key = random_binary(19, 12).unwrap();
        let cfg = SolverConfig { detect_exact: false, ..SolverConfig::default() };
        let r = solve_cyclo(&key.autocorrelation(), &cfg).unwrap();
        assert_eq!(r.solution.unwrap().autocorrelation(), key.autocorrelation());
    }

    #[test]
    fn statistics_of_exponential_and_constant_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let draws: Vec<u64> = (0..1000)
            .map(|_| (-(1.0 - rng.gen::<f64>()).ln() * 5000.0).ceil() as u64)
            .collect();
        let s = iteration_statistics_from_counts(&draws).unwrap();
        assert!((0.9..=1.1).contains(&s.std_over_mean), "{}", s.std_over_mean);
        assert!(s.exponential_like);

        let s = iteration_statistics_from_counts(&[100; 40]).unwrap();
        assert_eq!(s.std_over_mean, 0.0);
        assert!(!s.exponential_like);
        assert!(iteration_statistics_from_counts(&[1; 29]).is_err());
    }
}
