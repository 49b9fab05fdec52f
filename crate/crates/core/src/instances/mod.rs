//! Benchmark instances and structural diagnostics for binary keys.

mod pi_digits;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{drop_binary_signs, lift_binary_signs, require_odd_prime, CycloElement};
use crate::error::{Error, Result};

pub use pi_digits::{pi_bit, PI_BIT_COUNT};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Where a key came from; written as the `provenance` metadata tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Pi,
    Legendre,
    Random(u64),
    Explicit,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Pi => write!(f, "pi"),
            Provenance::Legendre => write!(f, "legendre"),
            Provenance::Random(seed) => write!(f, "random({seed})"),
            Provenance::Explicit => write!(f, "explicit"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Provenance::Pi),
            "legendre" => Ok(Provenance::Legendre),
            "explicit" => Ok(Provenance::Explicit),
            _ => s
                .strip_prefix("random(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .map(Provenance::Random)
                .ok_or_else(|| Error::parse(format!("unknown provenance {s:?}"))),
        }
    }
}

/// A binary element of O in 0/1 form, the private key of the scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryKey {
    element: CycloElement,
    provenance: Provenance,
}

impl BinaryKey {
    /// Requires every coefficient in {0, 1} and at least one 1.
    pub fn new(element: CycloElement, provenance: Provenance) -> Result<Self> {
        if element.is_zero() || element.coeffs().iter().any(|&c| c != 0 && c != 1) {
            return Err(Error::domain("binary key needs 0/1 coefficients, not all zero"));
        }
        Ok(BinaryKey {
            element,
            provenance,
        })
    }

    /// Key from a ±1 pattern (2β_R). A pattern with positive constant term is
    /// negated first, so the result is the 0/1 representative of ±β.
    pub fn from_signs(signs: &[i8], provenance: Provenance) -> Result<Self> {
        let element = if signs.first() == Some(&1) {
            let neg: Vec<i8> = signs.iter().map(|s| -s).collect();
            drop_binary_signs(&neg)?
        } else {
            drop_binary_signs(signs)?
        };
        BinaryKey::new(element, provenance)
    }

    pub fn from_bits(bits: &[u8], provenance: Provenance) -> Result<Self> {
        BinaryKey::new(CycloElement::new(bits.iter().map(|&b| b as i64).collect())?, provenance)
    }

    pub fn element(&self) -> &CycloElement {
        &self.element
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn n(&self) -> usize {
        self.element.n()
    }

    /// 2β_R ∈ {±1}^N, with constant term −1.
    pub fn signs(&self) -> Vec<i8> {
        lift_binary_signs(&self.element).expect("binary key is binary")
    }

    pub fn autocorrelation(&self) -> CycloElement {
        self.element.autocorrelation().expect("0/1 products fit in i64")
    }
}

/// Leading N − 1 binary digits of π = 11.001…₂ as coefficients of ζ…ζ^{N−1}.
pub fn pi_sequence(n: usize) -> Result<BinaryKey> {
    require_odd_prime(n)?;
    if n - 1 > PI_BIT_COUNT {
        return Err(Error::domain(format!("only {PI_BIT_COUNT} digits of pi are stored")));
    }
    let bits: Vec<u8> = (0..n - 1).map(pi_bit).collect();
    BinaryKey::from_bits(&bits, Provenance::Pi)
}

/// Legendre symbol (a|p) for odd prime p, by Euler's criterion.
pub fn legendre_symbol(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let (mut base, mut exp, mut acc) = (a as u128, (p - 1) / 2, 1u128);
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// `[β]_i = (1 − (i|N))/2`: ones at the quadratic non-residues.
pub fn hadamard_legendre(n: usize) -> Result<BinaryKey> {
    require_odd_prime(n)?;
    if n % 4 != 3 {
        return Err(Error::domain(format!("Legendre construction needs N ≡ 3 mod 4, got {n}")));
    }
    let bits: Vec<u8> = (1..n)
        .map(|i| u8::from(legendre_symbol(i as u64, n as u64) < 0))
        .collect();
    BinaryKey::from_bits(&bits, Provenance::Legendre)
}

/// Uniform random key drawn from `rng`; the all-zero draw is rejected.
pub fn random_binary_from<R: Rng + ?Sized>(n: usize, rng: &mut R, provenance: Provenance) -> Result<BinaryKey> {
    require_odd_prime(n)?;
    loop {
        let bits: Vec<u8> = (0..n - 1).map(|_| rng.gen_range(0..=1u8)).collect();
        if bits.contains(&1) {
            return BinaryKey::from_bits(&bits, provenance);
        }
    }
}

pub fn random_binary(n: usize, seed: u64) -> Result<BinaryKey> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_binary_from(n, &mut rng, Provenance::Random(seed))
}

/// Parameters (N, k, λ) of the cyclic difference set of a perfect element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferenceSetParams {
    pub n: usize,
    pub k: usize,
    pub lam: usize,
}

impl DifferenceSetParams {
    /// k − λ = (N + 1)/4.
    pub fn is_hadamard(&self) -> bool {
        4 * (self.k - self.lam) == self.n + 1
    }
}

/// `Some((N, k, λ))` when β·β̄ is a rational integer. D is the set of
/// positions with positive coefficient in the lifted ±1/2 form.
pub fn is_perfect(b: &CycloElement) -> Result<Option<DifferenceSetParams>> {
    let signs = lift_binary_signs(b)?;
    let alpha = b.autocorrelation()?;
    let first = alpha.coeffs()[0];
    if alpha.coeffs().iter().any(|&c| c != first) {
        return Ok(None);
    }
    let n = b.n();
    let member: Vec<bool> = signs.iter().map(|&s| s > 0).collect();
    let k = member.iter().filter(|&&m| m).count();
    let lam = (0..n).filter(|&i| member[i] && member[(i + 1) % n]).count();
    Ok(Some(DifferenceSetParams { n, k, lam }))
}

fn rotated_matches(a: &[i8], b: &[i8], k: usize, sign: i8, reflect: bool) -> bool {
    let n = a.len();
    (0..n).all(|i| {
        let src = (i + n - k) % n;
        let src = if reflect { (n - src) % n } else { src };
        b[i] == sign * a[src]
    })
}

/// True iff `b2 ∈ {±ζ^k b1, ±ζ^k b̄1}`, checked on the ±1 lifted forms.
pub fn symmetry_related(b1: &CycloElement, b2: &CycloElement) -> Result<bool> {
    if b1.n() != b2.n() {
        return Err(Error::DimensionMismatch(b1.n(), b2.n()));
    }
    let s1 = lift_binary_signs(b1)?;
    let s2 = lift_binary_signs(b2)?;
    Ok(signs_related(&s1, &s2))
}

/// [`symmetry_related`] on ±1 patterns of equal length.
pub fn signs_related(s1: &[i8], s2: &[i8]) -> bool {
    let n = s1.len();
    for reflect in [false, true] {
        for sign in [1i8, -1] {
            for k in 0..n {
                if rotated_matches(s1, s2, k, sign, reflect) {
                    return true;
                }
            }
        }
    }
    false
}

/// ((N + 1)/4)^{(N−1)/2}, exactly.
pub fn norm_bound(n: usize) -> Result<BigRational> {
    require_odd_prime(n)?;
    let base = BigRational::new(BigInt::from(n + 1), BigInt::from(4));
    Ok(Pow::pow(base, (n - 1) / 2))
}

/// True when `N(β) ≤ ((N + 1)/4)^{(N−1)/2}`.
pub fn within_norm_bound(b: &CycloElement) -> Result<bool> {
    let bound = norm_bound(b.n())?;
    Ok(BigRational::from_integer(b.algebraic_norm()) <= bound)
}

/// Mean of log N(β) over uniform random binary β: `(ln(N/4) − γ)·N/2`.
pub fn expected_log_norm(n: usize) -> f64 {
    let n = n as f64;
    0.5 * ((n / 4.0).ln() - EULER_GAMMA) * n
}

/// ln vol(T_α) = ln 2 + ((N − 1)/4)·ln(8π²/N) + ½ log N(β).
pub fn torus_log_volume(b: &CycloElement) -> Result<f64> {
    let n = b.n() as f64;
    let log_norm = b.log_algebraic_norm()?;
    Ok(std::f64::consts::LN_2
        + (n - 1.0) / 4.0 * (8.0 * std::f64::consts::PI.powi(2) / n).ln()
        + 0.5 * log_norm)
}

/// Sample mean of log N(β) over `draws` keys with per-draw seeds.
pub fn mean_log_norm(n: usize, draws: usize, seed: u64) -> Result<f64> {
    use rayon::prelude::*;
    let logs = (0..draws as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = crate::seeds::rng_for(seed, i);
            random_binary_from(n, &mut rng, Provenance::Random(seed))?.element().log_algebraic_norm()
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(logs.iter().sum::<f64>() / draws.max(1) as f64)
}
