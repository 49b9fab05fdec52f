//! Exact integer lattices for ideals of O: generators, Hermite normal form
//! and LLL reduction, plus the two lattice experiments (counterfeit-key
//! search and principal ideal discovery).
//!
//! A lattice is stored in one of two coordinate systems:
//!
//! * `Perp`: vectors of length N with zero sum, the image of an element w
//!   of R_⊥ scaled by N so that it is integral. Euclidean length here is
//!   N²‖w‖_⊥, so LLL runs in these coordinates.
//! * `Cyclo`: vectors of length N − 1 over the basis ζ, …, ζ^{N−1} of O.
//!   Hermite normal forms are taken here.
//!
//! HNF convention: rows sorted by pivot column, the pivot of a row being its
//! rightmost nonzero entry, pivots positive, and every entry in a pivot
//! column reduced into `[0, pivot)`. For a typical principal ideal ⟨β⟩ this
//! is the basis v₁ = N(β)ζ, v_j = a_jζ + ζ^j.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::{require_odd_prime, CycloElement, RingElement};
use crate::error::{Error, Result};
use crate::instances::{random_binary_from, Provenance};
use crate::seeds::rng_for;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    Perp,
    Cyclo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    /// Ambient ring dimension N.
    pub dimension: usize,
    pub coordinates: Coordinates,
    pub generators: Vec<Vec<BigInt>>,
    /// Divide a `Perp` vector by this to get R_⊥ coordinates (1 for `Cyclo`).
    pub scale: u64,
}

impl IntegerLattice {
    pub fn from_cyclo(n: usize, elements: &[CycloElement]) -> Result<Self> {
        require_odd_prime(n)?;
        let generators = elements
            .iter()
            .map(|e| {
                if e.n() != n {
                    return Err(Error::DimensionMismatch(e.n(), n));
                }
                Ok(e.coeffs().iter().map(|&c| BigInt::from(c)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(IntegerLattice {
            dimension: n,
            coordinates: Coordinates::Cyclo,
            generators,
            scale: 1,
        })
    }

    pub fn rank_bound(&self) -> usize {
        self.generators.len()
    }

    /// Union of generator sets (same N and coordinates).
    pub fn stack(&self, other: &IntegerLattice) -> Result<Self> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch(self.dimension, other.dimension));
        }
        let other = if other.coordinates == self.coordinates {
            other.clone()
        } else if self.coordinates == Coordinates::Cyclo {
            other.to_cyclo()?
        } else {
            other.to_perp()
        };
        let mut generators = self.generators.clone();
        generators.extend(other.generators);
        Ok(IntegerLattice { generators, ..self.clone() })
    }

    /// Ψ(v)/N for each `Perp` vector.
    pub fn to_cyclo(&self) -> Result<Self> {
        if self.coordinates == Coordinates::Cyclo {
            return Ok(self.clone());
        }
        let scale = BigInt::from(self.scale);
        let generators = self
            .generators
            .iter()
            .map(|v| perp_vector_to_cyclo(v, &scale))
            .collect::<Result<_>>()?;
        Ok(IntegerLattice {
            dimension: self.dimension,
            coordinates: Coordinates::Cyclo,
            generators,
            scale: 1,
        })
    }

    /// c ↦ N·c − σ₀(c)Φ_N with c₀ = 0, the scaled R_⊥ image.
    pub fn to_perp(&self) -> Self {
        if self.coordinates == Coordinates::Perp {
            return self.clone();
        }
        let n = self.dimension;
        let generators = self.generators.iter().map(|c| cyclo_vector_to_perp(c, n)).collect();
        IntegerLattice {
            dimension: n,
            coordinates: Coordinates::Perp,
            generators,
            scale: n as u64,
        }
    }

    /// Generator `i` as an element of O.
    pub fn element(&self, i: usize) -> Result<CycloElement> {
        let v = match self.coordinates {
            Coordinates::Cyclo => self.generators[i].clone(),
            Coordinates::Perp => perp_vector_to_cyclo(&self.generators[i], &BigInt::from(self.scale))?,
        };
        let coeffs = v.iter().map(|c| c.to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        CycloElement::new(coeffs)
    }

    /// ‖w‖_⊥ of generator `i`, w its R_⊥ (or O) image.
    pub fn perp_norm(&self, i: usize) -> f64 {
        let v = match self.coordinates {
            Coordinates::Perp => self.generators[i].clone(),
            Coordinates::Cyclo => cyclo_vector_to_perp(&self.generators[i], self.dimension),
        };
        let sq: BigInt = v.iter().map(|c| c * c).sum();
        let scale = match self.coordinates {
            Coordinates::Perp => self.scale as f64,
            Coordinates::Cyclo => self.dimension as f64,
        };
        sq.to_f64().unwrap_or(f64::INFINITY) / (scale * scale)
    }
}

fn perp_vector_to_cyclo(v: &[BigInt], scale: &BigInt) -> Result<Vec<BigInt>> {
    v[1..]
        .iter()
        .map(|c| {
            let (q, r) = (c - &v[0]).div_rem(scale);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Lattice("vector is not N times an element of O".into()))
            }
        })
        .collect()
}

fn cyclo_vector_to_perp(c: &[BigInt], n: usize) -> Vec<BigInt> {
    let s: BigInt = c.iter().sum();
    let nb = BigInt::from(n);
    std::iter::once(-&s)
        .chain(c.iter().map(|x| &nb * x - &s))
        .collect()
}

/// {N·ρx^i − σ₀(ρ)Φ_N : 1 ≤ i ≤ N − 1}, generating N·(ρO) inside R_⊥.
pub fn ideal_generators(rho: &RingElement<i64>) -> Result<IntegerLattice> {
    let n = rho.n();
    require_odd_prime(n)?;
    let s0 = BigInt::from(rho.sigma0());
    let nb = BigInt::from(n);
    let generators = (1..n)
        .map(|i| {
            let r = rho.rotate(i);
            r.coeffs().iter().map(|&c| &nb * c - &s0).collect()
        })
        .collect();
    Ok(IntegerLattice {
        dimension: n,
        coordinates: Coordinates::Perp,
        generators,
        scale: n as u64,
    })
}

fn rightmost_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Incremental row echelon form indexed by pivot column.
struct Echelon {
    rows: Vec<Option<Vec<BigInt>>>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            rows: vec![None; width],
        }
    }

    /// Reduces `v[col]` into `[0, pivot)` against the row with pivot `col`.
    fn reduce_entry(&self, v: &mut [BigInt], col: usize) {
        if let Some(row) = &self.rows[col] {
            let q = v[col].div_floor(&row[col]);
            if !q.is_zero() {
                axpy(v, &q, row);
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        while let Some(col) = rightmost_nonzero(&v) {
            match self.rows[col].take() {
                None => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|c| *c = -&*c);
                    }
                    for lower in (0..col).rev() {
                        self.reduce_entry(&mut v, lower);
                    }
                    self.rows[col] = Some(v);
                    return;
                }
                Some(mut row) => {
                    let a = row[col].clone();
                    let b = v[col].clone();
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &x * r + &y * w).collect();
                    let rest: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &bg * r - &ag * w).collect();
                    row = new_row;
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|c| *c = -&*c);
                    }
                    for lower in (0..col).rev() {
                        self.reduce_entry(&mut row, lower);
                    }
                    self.rows[col] = Some(row);
                    v = rest;
                    for lower in (0..col).rev() {
                        self.reduce_entry(&mut v, lower);
                    }
                }
            }
        }
    }

    /// Full reduction of pivot columns, then rows in pivot order.
    fn finish(mut self) -> Vec<Vec<BigInt>> {
        let width = self.rows.len();
        for c in (0..width).rev() {
            if self.rows[c].is_none() {
                continue;
            }
            for j in c + 1..width {
                if let Some(mut row) = self.rows[j].take() {
                    self.reduce_entry(&mut row, c);
                    self.rows[j] = Some(row);
                }
            }
        }
        self.rows.into_iter().flatten().collect()
    }
}

/// Exact HNF in `Cyclo` coordinates (see the module docs for the shape).
pub fn hermite_normal_form(l: &IntegerLattice) -> Result<IntegerLattice> {
    let c = l.to_cyclo()?;
    let width = c.dimension - 1;
    let mut ech = Echelon::new(width);
    for g in &c.generators {
        if g.len() != width {
            return Err(Error::DimensionMismatch(g.len(), width));
        }
        ech.insert(g.clone());
    }
    let rows = ech.finish();
    if rows.is_empty() {
        return Err(Error::Lattice("zero lattice has no Hermite normal form".into()));
    }
    Ok(IntegerLattice {
        generators: rows,
        ..c
    })
}

/// Product of the HNF pivots: the index of a full-rank lattice in O.
pub fn hnf_determinant(hnf: &IntegerLattice) -> BigInt {
    hnf.generators
        .iter()
        .map(|r| r[rightmost_nonzero(r).expect("HNF rows are nonzero")].clone())
        .product()
}

/// The a-vector of an HNF of shape v₁ = (a₁ + 1)ζ, v_j = a_jζ + ζ^j, or
/// `None` if the basis has a different shape.
pub fn hnf_a_vector(hnf: &IntegerLattice) -> Option<Vec<BigInt>> {
    let width = hnf.dimension - 1;
    if hnf.coordinates != Coordinates::Cyclo || hnf.generators.len() != width {
        return None;
    }
    let mut a = Vec::with_capacity(width);
    for (j, row) in hnf.generators.iter().enumerate() {
        let ok = row
            .iter()
            .enumerate()
            .all(|(i, c)| i == 0 || (i == j && c.is_one()) || (i != j && c.is_zero()));
        if !ok {
            return None;
        }
        a.push(if j == 0 { &row[0] - 1 } else { row[0].clone() });
    }
    Some(a)
}

/// Membership of a `Cyclo` vector in the lattice of an HNF basis.
pub fn hnf_contains(hnf: &IntegerLattice, v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    let mut by_pivot: Vec<Option<&Vec<BigInt>>> = vec![None; v.len()];
    for r in &hnf.generators {
        by_pivot[rightmost_nonzero(r).expect("nonzero row")] = Some(r);
    }
    for col in (0..v.len()).rev() {
        if v[col].is_zero() {
            continue;
        }
        match by_pivot[col] {
            Some(row) => {
                let (q, r) = v[col].div_rem(&row[col]);
                if !r.is_zero() {
                    return false;
                }
                axpy(&mut v, &q, row);
            }
            None => return false,
        }
    }
    true
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact Gram determinant by fraction-free elimination.
pub fn gram_determinant(l: &IntegerLattice) -> BigInt {
    let k = l.generators.len();
    let mut m: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&l.generators[i], &l.generators[j])).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for p in 0..k {
        if m[p][p].is_zero() {
            match (p + 1..k).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    sign * prev
}

/// δ as a fraction p/q with q = 10⁶.
fn delta_fraction(delta: f64) -> Result<(BigInt, BigInt)> {
    if !(delta > 0.25 && delta < 1.0) {
        return Err(Error::Precondition(format!("LLL needs 1/4 < δ < 1, got {delta}")));
    }
    let q = 1_000_000i64;
    Ok((BigInt::from((delta * q as f64).round() as i64), BigInt::from(q)))
}

fn round_div(a: &BigInt, d: &BigInt) -> BigInt {
    // nearest integer to a/d for d > 0, halves rounded up
    (a * BigInt::from(2) + d).div_floor(&(d * BigInt::from(2)))
}

/// Integral LLL (all Gram–Schmidt data kept as exact integers).
struct IntegralLll {
    b: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    p: BigInt,
    q: BigInt,
}

impl IntegralLll {
    fn red(&mut self, k: usize, l: usize) {
        if (&self.lam[k][l] * BigInt::from(2)).abs() <= self.d[l + 1] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l + 1]);
        let (lo, hi) = self.b.split_at_mut(k);
        axpy(&mut hi[0], &q, &lo[l]);
        self.lam[k][l] -= &q * &self.d[l + 1];
        let (lo, hi) = self.lam.split_at_mut(k);
        for i in 0..l {
            let t = &q * &lo[l][i];
            hi[0][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dk2, dk1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bb = (dk2 * dk + &lam * &lam) / dk1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            let new_ik = (dk * &self.lam[i][k - 1] - &lam * &t) / dk1;
            let new_ik1 = (&bb * &t + &lam * &new_ik) / dk;
            self.lam[i][k] = new_ik;
            self.lam[i][k - 1] = new_ik1;
        }
        self.d[k] = bb;
    }

    fn lovasz_fails(&self, k: usize) -> bool {
        // q·d_k·d_{k−2} < p·d_{k−1}² − q·λ²  (1-based d indices)
        let lhs = &self.q * &self.d[k + 1] * &self.d[k - 1];
        let l = &self.lam[k][k - 1];
        let rhs = &self.p * &self.d[k] * &self.d[k] - &self.q * l * l;
        lhs < rhs
    }

    fn run(mut self) -> Result<Vec<Vec<BigInt>>> {
        let n = self.b.len();
        if n == 0 {
            return Ok(self.b);
        }
        self.d[1] = dot(&self.b[0], &self.b[0]);
        if self.d[1].is_zero() {
            return Err(dependent());
        }
        let mut k = 1usize;
        let mut kmax = 0usize;
        while k < n {
            if k > kmax {
                kmax = k;
                for j in 0..=k {
                    let mut u = dot(&self.b[k], &self.b[j]);
                    for i in 0..j {
                        u = (&self.d[i + 1] * u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
                    }
                    if j < k {
                        self.lam[k][j] = u;
                    } else {
                        if u.is_zero() {
                            return Err(dependent());
                        }
                        self.d[k + 1] = u;
                    }
                }
            }
            self.red(k, k - 1);
            if self.lovasz_fails(k) {
                self.swap(k, kmax);
                k = k.saturating_sub(1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    self.red(k, l);
                }
                k += 1;
            }
        }
        Ok(self.b)
    }
}

fn dependent() -> Error {
    Error::Lattice("generators are linearly dependent; take the Hermite normal form first".into())
}

/// LLL reduction with parameter δ, in `Perp` coordinates (a `Cyclo`
/// lattice is converted first so that lengths are ‖·‖_⊥).
pub fn lll_reduce(l: &IntegerLattice, delta: f64) -> Result<IntegerLattice> {
    let (p, q) = delta_fraction(delta)?;
    let l = l.to_perp();
    let n = l.generators.len();
    let lll = IntegralLll {
        b: l.generators.clone(),
        d: vec![BigInt::one(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
        p,
        q,
    };
    Ok(IntegerLattice {
        generators: lll.run()?,
        ..l
    })
}

/// LLL reduction with the plain Euclidean inner product of the lattice's
/// own coordinates (for `Cyclo` lattices, the coefficient norm in the basis
/// ζ, …, ζ^{N−1}).
pub fn lll_reduce_coordinates(l: &IntegerLattice, delta: f64) -> Result<IntegerLattice> {
    let (p, q) = delta_fraction(delta)?;
    let n = l.generators.len();
    let lll = IntegralLll {
        b: l.generators.clone(),
        d: vec![BigInt::one(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
        p,
        q,
    };
    Ok(IntegerLattice {
        generators: lll.run()?,
        ..l.clone()
    })
}

/// Index of the generator with the smallest perp norm.
fn shortest(l: &IntegerLattice) -> usize {
    (0..l.generators.len())
        .min_by(|&a, &b| l.perp_norm(a).total_cmp(&l.perp_norm(b)))
        .expect("nonempty lattice")
}

/// Lovász parameter of the original LLL algorithm, used by both
/// experiments.
pub const CLASSIC_DELTA: f64 = 0.75;

/// Inner product used for reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// ‖·‖_⊥ (equivalently the trace form Σ|σ_j|²).
    Perp,
    /// Coefficient norm in the basis ζ, …, ζ^{N−1}.
    Coefficients,
}

pub fn reduce_with(l: &IntegerLattice, delta: f64, metric: Metric) -> Result<IntegerLattice> {
    match metric {
        Metric::Perp => lll_reduce(l, delta),
        Metric::Coefficients => lll_reduce_coordinates(&l.to_cyclo()?, delta),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackReport {
    pub n: usize,
    pub trials: usize,
    /// Smallest r = ‖γ_min‖_⊥/(N/4) over all trials.
    pub best_ratio: f64,
    pub per_trial_ratios: Vec<f64>,
}

impl AttackReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,trial,ratio\n");
        for (i, r) in self.per_trial_ratios.iter().enumerate() {
            writeln!(out, "{},{},{:.6}", self.n, i, r).unwrap();
        }
        out
    }
}

/// One counterfeit attempt: the shortest LLL vector of ρ₁O + ρ₂O.
pub fn counterfeit_trial(beta: &CycloElement, beta1: &CycloElement, beta2: &CycloElement, delta: f64) -> Result<IntegerLattice> {
    let rho1 = beta.multiply(beta1)?.to_ring();
    let rho2 = beta.multiply(beta2)?.to_ring();
    let gens = ideal_generators(&rho1)?.stack(&ideal_generators(&rho2)?)?;
    lll_reduce(&hermite_normal_form(&gens)?, delta)
}

/// Twenty (or `trials`) LLL counterfeit attacks; trial `i` draws β, β₁, β₂
/// from `rng_for(seed, i)`.
pub fn counterfeit_attack(n: usize, seed: u64, trials: usize) -> Result<AttackReport> {
    counterfeit_attack_with(n, seed, trials, CLASSIC_DELTA)
}

pub fn counterfeit_attack_with(n: usize, seed: u64, trials: usize, delta: f64) -> Result<AttackReport> {
    require_odd_prime(n)?;
    let ratios = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let mut draw = || random_binary_from(n, &mut rng, Provenance::Random(seed));
            let (b, b1, b2) = (draw()?, draw()?, draw()?);
            let reduced = counterfeit_trial(b.element(), b1.element(), b2.element(), delta)?;
            Ok(reduced.perp_norm(shortest(&reduced)) / (n as f64 / 4.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(AttackReport {
        n,
        trials,
        best_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        per_trial_ratios: ratios,
    })
}

/// A vector of the LLL-reduced HNF basis of ⟨β⟩ with norm N(β), if any.
pub fn discover_principal_generator(beta: &CycloElement, delta: f64, metric: Metric) -> Result<Option<CycloElement>> {
    let target = beta.algebraic_norm();
    let target_log = beta.log_algebraic_norm()?;
    let hnf = hermite_normal_form(&ideal_generators(&beta.to_ring())?)?;
    let reduced = reduce_with(&hnf, delta, metric)?;
    for i in 0..reduced.generators.len() {
        let v = reduced.element(i)?;
        // Cheap float screen before the exact resultant.
        let log = v.log_algebraic_norm()?;
        if (log - target_log).abs() > 1e-6 * target_log.abs().max(1.0) {
            continue;
        }
        if v.algebraic_norm().abs() == target.abs() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscoveryReport {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
}

impl DiscoveryReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials.max(1) as f64
    }

    pub fn to_csv(&self) -> String {
        format!("N,trials,success_rate\n{},{},{:.6}\n", self.n, self.trials, self.success_rate())
    }
}

/// Success rate of principal ideal discovery with the classic parameter and
/// the coefficient metric.
pub fn ideal_discovery_experiment(n: usize, seed: u64, trials: usize) -> Result<DiscoveryReport> {
    ideal_discovery_experiment_with(n, seed, trials, CLASSIC_DELTA, Metric::Coefficients)
}

pub fn ideal_discovery_experiment_with(
    n: usize,
    seed: u64,
    trials: usize,
    delta: f64,
    metric: Metric,
) -> Result<DiscoveryReport> {
    require_odd_prime(n)?;
    let hits = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let beta = random_binary_from(n, &mut rng, Provenance::Random(seed))?;
            Ok(discover_principal_generator(beta.element(), delta, metric)?.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(DiscoveryReport {
        n,
        trials,
        successes: hits.iter().filter(|&&h| h).count(),
    })
}
