//! Benchmark drivers: mean iteration counts across instances with a fitted
//! growth rate, and the distribution of iteration counts for one instance.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use bitretrieval::cyclotomic::{real_autocorrelation_from_cyclo, RingElement};
use bitretrieval::instances::{hadamard_legendre, pi_sequence, random_binary, BinaryKey};
use bitretrieval::seeds::derive_seed;
use bitretrieval::solver::{iteration_statistics_from_counts, solve_runs, IterationStats, SolverConfig};
use bitretrieval::{Error, Result};
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Smallest N included in the slope fit.
pub const FIT_MIN_N: usize = 29;

/// Default restart interval 100·2^{0.22N} for the benchmark drivers. Run
/// lengths are close to memoryless, so restarting a stalled run leaves the
/// mean total iteration count unchanged.
pub fn default_restart(n: usize) -> u64 {
    (100.0 * (0.22 * n as f64).exp2()).round() as u64
}

fn instance_config(config: &SolverConfig, n: usize) -> SolverConfig {
    let mut c = config.clone();
    c.restart_after.get_or_insert(default_restart(n));
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Pi,
    Hadamard,
    Random(u64),
}

/// An instance named as `pi:<N>`, `hadamard:<N>` or `random:<N>:<seed>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
}

impl InstanceSpec {
    pub fn key(&self) -> Result<BinaryKey> {
        match self.kind {
            InstanceKind::Pi => pi_sequence(self.n),
            InstanceKind::Hadamard => hadamard_legendre(self.n),
            InstanceKind::Random(seed) => random_binary(self.n, seed),
        }
    }

    /// α_R, the autocorrelation in R the solver works with.
    pub fn alpha(&self) -> Result<RingElement<f64>> {
        Ok(real_autocorrelation_from_cyclo(&self.key()?.autocorrelation()))
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            InstanceKind::Pi => write!(f, "pi:{}", self.n),
            InstanceKind::Hadamard => write!(f, "hadamard:{}", self.n),
            InstanceKind::Random(s) => write!(f, "random:{}:{s}", self.n),
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("instance must be pi:<N>, hadamard:<N> or random:<N>:<seed>, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let n: usize = parts.get(1).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let kind = match (parts[0], parts.len()) {
            ("pi", 2) => InstanceKind::Pi,
            ("hadamard", 2) => InstanceKind::Hadamard,
            ("random", 3) => InstanceKind::Random(parts[2].parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(InstanceSpec { kind, n })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: InstanceSpec,
    pub runs: usize,
    pub solved: usize,
    /// Mean iterations over solved runs.
    pub mean: f64,
    pub std: f64,
}

impl BenchRow {
    /// Rows with unsolved runs are flagged and left out of the fit.
    pub fn complete(&self) -> bool {
        self.solved == self.runs && self.runs > 0
    }
}

/// Least-squares fit log₂ I₀ = c·N + b with a 95% interval for c.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub ci95: (f64, f64),
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `None` when fewer than three distinct N qualify.
    pub fit: Option<SlopeFit>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,N,runs,solved,mean_iterations,std_iterations,log2_mean,flagged\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{:.3},{:.3},{:.6},{}",
                r.instance,
                r.instance.n,
                r.runs,
                r.solved,
                r.mean,
                r.std,
                r.mean.log2(),
                !r.complete()
            )
            .unwrap();
        }
        out
    }

    pub fn fit_summary(&self) -> String {
        match &self.fit {
            Some(f) => format!(
                "slope c = {:.4} (95% CI {:.4} .. {:.4}) over {} instances\n",
                f.slope, f.ci95.0, f.ci95.1, f.points
            ),
            None => "fit refused: fewer than 3 distinct N with complete rows\n".into(),
        }
    }
}

pub fn fit_slope(points: &[(f64, f64)]) -> Option<SlopeFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return None;
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let dof = m - 2.0;
    let se = (rss / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof).ok()?.inverse_cdf(0.975);
    Some(SlopeFit {
        slope,
        intercept,
        ci95: (slope - t * se, slope + t * se),
        points: points.len(),
    })
}

/// Runs every instance `runs` times; instance `k` uses master seed
/// `derive_seed(seed, k)`. Without an explicit `restart_after` the config
/// gets [`default_restart`].
pub fn bench_complexity(instances: &[InstanceSpec], runs: usize, seed: u64, config: &SolverConfig) -> Result<BenchReport> {
    if runs == 0 {
        return Err(Error::Precondition("bench needs at least one run per instance".into()));
    }
    let mut rows = Vec::with_capacity(instances.len());
    for (k, inst) in instances.iter().enumerate() {
        let cfg = instance_config(config, inst.n);
        let results = solve_runs(&inst.alpha()?, runs, derive_seed(seed, k as u64), &cfg)?;
        let counts: Vec<f64> = results.iter().filter(|r| r.solved()).map(|r| r.iterations as f64).collect();
        let solved = counts.len();
        if solved < runs {
            log::warn!("{inst}: {} of {runs} runs hit the iteration cap", runs - solved);
        }
        let mean = if solved > 0 { counts.iter().sum::<f64>() / solved as f64 } else { f64::NAN };
        let std = if solved > 1 {
            (counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (solved - 1) as f64).sqrt()
        } else {
            0.0
        };
        rows.push(BenchRow {
            instance: *inst,
            runs,
            solved,
            mean,
            std,
        });
    }
    rows.sort_by(|a, b| a.instance.n.cmp(&b.instance.n).then(a.instance.to_string().cmp(&b.instance.to_string())));
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.complete() && r.instance.n >= FIT_MIN_N && r.instance.kind == InstanceKind::Pi)
        .map(|r| (r.instance.n as f64, r.mean.log2()))
        .collect();
    let fit = fit_slope(&points);
    Ok(BenchReport { rows, fit })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// count / (runs · width), to compare with e^{−x}.
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport {
    pub counts: Vec<u64>,
    pub stats: IterationStats,
    /// Histogram of I/I₀; the last bin collects everything beyond it.
    pub histogram: Vec<HistogramBin>,
}

pub const HISTOGRAM_WIDTH: f64 = 0.25;
pub const HISTOGRAM_BINS: usize = 20;

impl StatsReport {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let stats = iteration_statistics_from_counts(&counts)?;
        let mut hist = vec![0usize; HISTOGRAM_BINS];
        for &c in &counts {
            let x = if stats.mean > 0.0 { c as f64 / stats.mean } else { 0.0 };
            let b = ((x / HISTOGRAM_WIDTH) as usize).min(HISTOGRAM_BINS - 1);
            hist[b] += 1;
        }
        let runs = counts.len() as f64;
        let histogram = hist
            .into_iter()
            .enumerate()
            .map(|(i, count)| {
                let lo = i as f64 * HISTOGRAM_WIDTH;
                let hi = if i + 1 == HISTOGRAM_BINS { f64::INFINITY } else { lo + HISTOGRAM_WIDTH };
                HistogramBin {
                    lo,
                    hi,
                    count,
                    density: count as f64 / (runs * HISTOGRAM_WIDTH),
                }
            })
            .collect();
        Ok(StatsReport { counts, stats, histogram })
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count,density,exponential_density\n");
        for b in &self.histogram {
            let expected = if b.hi.is_finite() {
                ((-b.lo).exp() - (-b.hi).exp()) / HISTOGRAM_WIDTH
            } else {
                (-b.lo).exp() / HISTOGRAM_WIDTH
            };
            writeln!(out, "{:.2},{:.2},{},{:.6},{:.6}", b.lo, b.hi, b.count, b.density, expected).unwrap();
        }
        out
    }

    pub fn counts_csv(&self) -> String {
        let mut out = String::from("run,iterations\n");
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(out, "{i},{c}").unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let s = &self.stats;
        format!(
            "runs={} I0={:.1} std={:.1} std/mean={:.3} ks={:.4} exponential={}\n",
            s.runs, s.mean, s.std, s.std_over_mean, s.cdf_max_deviation, s.exponential_like
        )
    }
}

pub const MIN_STATS_RUNS: usize = 100;

/// Iteration counts of `runs` solves, restarting as in [`bench_complexity`].
pub fn stats_distribution(instance: &InstanceSpec, runs: usize, seed: u64, config: &SolverConfig) -> Result<StatsReport> {
    if runs < MIN_STATS_RUNS {
        return Err(Error::Precondition(format!("stats needs at least {MIN_STATS_RUNS} runs, got {runs}")));
    }
    let results = solve_runs(&instance.alpha()?, runs, seed, &instance_config(config, instance.n))?;
    let unsolved = results.iter().filter(|r| !r.solved()).count();
    if unsolved > 0 {
        log::warn!("{instance}: {unsolved} runs hit the iteration cap and are excluded");
    }
    StatsReport::from_counts(results.iter().filter(|r| r.solved()).map(|r| r.iterations).collect())
}
