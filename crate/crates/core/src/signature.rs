//! Lattice quantizers, the signing map S_β and the verification map V_α.
//!
//! Signing quantizes the content of ρ orthogonal to Φ_N onto the principal
//! ideal βO:
//!
//! ```text
//! γ = σ⁻¹(σ(ρ)/σ(β)),   Q_β(ρ) = β·Q(γ),   S_β(ρ) = Q_β(ρ) + kΦ_N
//! ```
//!
//! where Q is one of the quantizers onto O and the integer k restores the
//! mean of ρ to within 1/2. Verification divides the autocorrelation of the
//! signed data by the public key α = ββ̄ and tests for membership in O.
//!
//! Rounding is half away from zero throughout ([`f64::round`]).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::cyclotomic::text::{Document, Element};
use crate::cyclotomic::{require_odd_prime, CycloElement, Fourier, RingElement};
use crate::error::{Error, Result};
use crate::instances::{random_binary_from, BinaryKey, Provenance};

/// Quantizer onto O used inside the signing map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Quantizer {
    /// Closest point of O in R_⊥.
    O,
    /// Ψ(⌈γ + rΦ_N⌋); r = 0 is the plain rounding quantizer.
    Z(f64),
}

impl Default for Quantizer {
    fn default() -> Self {
        Quantizer::Z(0.5)
    }
}

impl fmt::Display for Quantizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantizer::O => write!(f, "o"),
            Quantizer::Z(r) if *r == 0.0 => write!(f, "z"),
            Quantizer::Z(r) => write!(f, "zr:{r}"),
        }
    }
}

impl FromStr for Quantizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "o" => Ok(Quantizer::O),
            "z" => Ok(Quantizer::Z(0.0)),
            _ => {
                let r = s
                    .strip_prefix("zr:")
                    .and_then(|r| r.parse::<f64>().ok())
                    .filter(|r| r.is_finite())
                    .ok_or_else(|| Error::parse(format!("quantizer must be o, z or zr:<r>, got {s:?}")))?;
                Ok(Quantizer::Z(r))
            }
        }
    }
}

impl Quantizer {
    pub fn apply(&self, gamma: &RingElement<f64>) -> Result<CycloElement> {
        match *self {
            Quantizer::O => quantize_o(gamma),
            Quantizer::Z(r) => quantize_z(gamma, r),
        }
    }
}

fn to_integer(v: f64) -> Result<i64> {
    if !v.is_finite() || v.abs() >= 9.0e15 {
        return Err(Error::Numeric(format!("value {v} cannot be quantized exactly")));
    }
    Ok(v as i64)
}

fn perp_norm_of(e: &[f64]) -> f64 {
    let n = e.len() as f64;
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v * v).sum::<f64>() - s * s / n
}

/// Closest point of O to γ ∈ R_⊥.
///
/// After flooring, the candidates are ⌊γ⌋ + x^{p_1} + … + x^{p_m} where
/// the p's are taken in decreasing order of fractional part, m = 0 … N−1.
/// The first candidate with minimal ‖γ − γ_m‖_⊥ wins (ties go to the
/// smaller m). The error never exceeds (N² − 1)/(12N).
pub fn quantize_o(gamma: &RingElement<f64>) -> Result<CycloElement> {
    let n = gamma.n();
    require_odd_prime(n)?;
    let c = gamma.coeffs();
    let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
    if gamma.sigma0().abs() > 1e-6 * scale {
        return Err(Error::Precondition(format!(
            "Q_O needs σ₀(γ) = 0, got {}",
            gamma.sigma0()
        )));
    }
    let floor: Vec<f64> = c.iter().map(|v| v.floor()).collect();
    let frac: Vec<f64> = c.iter().zip(&floor).map(|(v, f)| v - f).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| frac[b].total_cmp(&frac[a]).then(a.cmp(&b)));

    // Track Σe and Σe² of the error e = γ − γ_m incrementally.
    let mut sum: f64 = frac.iter().sum();
    let mut sq: f64 = frac.iter().map(|v| v * v).sum();
    let nf = n as f64;
    let mut best = (sq - sum * sum / nf, 0usize);
    for (m, &p) in order.iter().enumerate().take(n - 1) {
        let e = frac[p];
        sq += (e - 1.0) * (e - 1.0) - e * e;
        sum -= 1.0;
        let err = sq - sum * sum / nf;
        if err < best.0 {
            best = (err, m + 1);
        }
    }
    let mut point = floor;
    for &p in &order[..best.1] {
        point[p] += 1.0;
    }
    let ints = point.into_iter().map(to_integer).collect::<Result<Vec<_>>>()?;
    RingElement::new(ints)?.quotient()
}

/// Ψ(⌈γ + rΦ_N⌋) with half-away-from-zero rounding.
///
/// For r = 1/2, points of O whose coefficient mean is an integer lie on
/// rounding ties and need not be fixed.
pub fn quantize_z(gamma: &RingElement<f64>, r: f64) -> Result<CycloElement> {
    require_odd_prime(gamma.n())?;
    let ints = gamma
        .coeffs()
        .iter()
        .map(|v| to_integer((v + r).round()))
        .collect::<Result<Vec<_>>>()?;
    RingElement::new(ints)?.quotient()
}

/// ‖γ − q‖_⊥ for a quantizer output q ∈ O.
pub fn quantization_error(gamma: &RingElement<f64>, q: &CycloElement) -> f64 {
    let qr = q.to_ring();
    let e: Vec<f64> = gamma.coeffs().iter().zip(qr.coeffs()).map(|(g, c)| g - *c as f64).collect();
    perp_norm_of(&e)
}

/// Worst-case ‖γ − Q_O(γ)‖_⊥.
pub fn quantize_o_error_bound(n: usize) -> f64 {
    let n = n as f64;
    (n * n - 1.0) / (12.0 * n)
}

fn random_perp(n: usize, rng: &mut ChaCha8Rng, width: f64) -> RingElement<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..width)).collect();
    RingElement::new(raw).expect("prime length").perp_part()
}

/// Monte Carlo mean of ‖γ − Q(γ)‖_⊥ over γ uniform modulo the lattice.
///
/// γ is drawn uniformly from the box [0, 64)^N and projected to R_⊥; since
/// Z^N projects onto O, this is uniform on R_⊥/O.
pub fn estimate_quantizer_error(n: usize, samples: usize, seed: u64, quantizer: Quantizer) -> Result<f64> {
    require_odd_prime(n)?;
    if samples == 0 {
        return Err(Error::InsufficientData("no samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..samples {
        let g = random_perp(n, &mut rng, 64.0);
        total += quantization_error(&g, &quantizer.apply(&g)?);
    }
    Ok(total / samples as f64)
}

/// Δ_O, the mean-squared error of [`quantize_o`], by Monte Carlo.
pub fn estimate_delta_o(n: usize, samples: usize, seed: u64) -> Result<f64> {
    estimate_quantizer_error(n, samples, seed, Quantizer::O)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KeyPair {
    pub private_key: BinaryKey,
    /// α = ββ̄ in O.
    pub public_key: CycloElement,
    pub n: usize,
}

/// Draws `candidates` random keys and keeps the one with the largest norm.
pub fn keygen(n: usize, candidates: usize, seed: u64) -> Result<KeyPair> {
    require_odd_prime(n)?;
    if candidates == 0 {
        return Err(Error::Precondition("keygen needs at least one candidate".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, BinaryKey)> = None;
    for _ in 0..candidates {
        let k = random_binary_from(n, &mut rng, Provenance::Random(seed))?;
        let ln = k.element().log_algebraic_norm()?;
        if best.as_ref().is_none_or(|(b, _)| ln > *b) {
            best = Some((ln, k));
        }
    }
    let (_, private_key) = best.expect("at least one candidate");
    let public_key = private_key.autocorrelation();
    Ok(KeyPair {
        private_key,
        public_key,
        n,
    })
}

/// Full spectrum of an element of O (σ₀ slot unused).
fn cyclo_spectrum(e: &CycloElement) -> Vec<Complex64> {
    let f = Fourier::cached(e.n());
    f.spectrum_of(&e.to_ring().to_real().into_coeffs())
}

/// A signing key: any nonzero element of O (the private key, or a
/// counterfeit multiple of it), with its spectrum cached.
#[derive(Clone, Debug)]
pub struct SigningKey {
    element: CycloElement,
    spectrum: Arc<Vec<Complex64>>,
}

impl SigningKey {
    pub fn new(element: CycloElement) -> Result<Self> {
        if element.is_zero() {
            return Err(Error::domain("signing key must be nonzero"));
        }
        let spectrum = Arc::new(cyclo_spectrum(&element));
        Ok(SigningKey { element, spectrum })
    }

    pub fn from_binary(key: &BinaryKey) -> Self {
        SigningKey::new(key.element().clone()).expect("binary keys are nonzero")
    }

    pub fn element(&self) -> &CycloElement {
        &self.element
    }

    pub fn n(&self) -> usize {
        self.element.n()
    }

    /// γ = σ⁻¹(σ(ρ)/σ(β)) restricted to R_⊥.
    pub fn quotient(&self, rho: &RingElement<f64>) -> Result<RingElement<f64>> {
        if rho.n() != self.n() {
            return Err(Error::DimensionMismatch(rho.n(), self.n()));
        }
        let f = Fourier::cached(self.n());
        let mut s = f.spectrum_of(rho.coeffs());
        s[0] = Complex64::new(0.0, 0.0);
        for (z, b) in s.iter_mut().zip(self.spectrum.iter()).skip(1) {
            *z /= b;
        }
        RingElement::new(f.coefficients_of(&s))
    }

    /// The signing map with full diagnostics.
    pub fn sign_detailed(&self, rho: &RingElement<f64>, quantizer: Quantizer) -> Result<SignOutcome> {
        self.sign_with(rho, quantizer, Some(Amplification::default()))
    }

    /// Signs with a custom contrast-amplification policy. `None` skips the
    /// factor-norm condition entirely and never rescales.
    pub fn sign_with(
        &self,
        rho: &RingElement<f64>,
        quantizer: Quantizer,
        amplification_policy: Option<Amplification>,
    ) -> Result<SignOutcome> {
        let n = self.n();
        if rho.n() != n {
            return Err(Error::DimensionMismatch(rho.n(), n));
        }
        if !rho.is_finite() {
            return Err(Error::Numeric("cannot sign non-finite data".into()));
        }
        let mean = rho.sigma0() / n as f64;
        let perp = rho.perp_part();
        let flat = perp.coeffs().iter().all(|&v| v == 0.0);

        let mut amplification = 0u32;
        let factor = loop {
            let scaled = perp.scale(f64::from(1u32 << amplification));
            let g = quantizer.apply(&self.quotient(&scaled)?)?;
            // A constant block has no content to amplify; it is signed as
            // the zero codeword.
            let Some(policy) = amplification_policy else { break g };
            let threshold = policy.min_factor_norm * n as f64;
            if flat || g.perp_norm() > threshold {
                break g;
            }
            if amplification >= policy.max_doublings {
                return Err(Error::Signing(format!(
                    "quotient factor norm {} ≤ {threshold} after {amplification} contrast doublings",
                    g.perp_norm()
                )));
            }
            amplification += 1;
        };
        let codeword = self.element.multiply(&factor)?;
        let c = codeword.to_ring();
        let offset = mean - c.sigma0() as f64 / n as f64;
        let k = to_integer(offset.round())?;
        let data = c
            .coeffs()
            .iter()
            .map(|&v| v.checked_add(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignOutcome {
            signed: SignedElement {
                data: RingElement::new(data)?,
            },
            factor,
            codeword,
            epsilon: k as f64 - offset,
            amplification,
        })
    }

    pub fn sign(&self, rho: &RingElement<f64>, quantizer: Quantizer) -> Result<SignedElement> {
        Ok(self.sign_detailed(rho, quantizer)?.signed)
    }
}

/// Contrast amplification: ρ_⊥ is doubled, at most `max_doublings` times,
/// until the quotient factor g has ‖g‖_⊥ > `min_factor_norm`·N.
///
/// A 0/1 factor has ‖g‖_⊥ ≤ (N² − 1)/(4N) < N/4, so the default fraction is
/// 1/8: low-contrast blocks quantized to binary factors pass, while short
/// factors such as 0 or units are amplified away.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplification {
    pub max_doublings: u32,
    pub min_factor_norm: f64,
}

impl Default for Amplification {
    fn default() -> Self {
        Amplification {
            max_doublings: 8,
            min_factor_norm: 0.125,
        }
    }
}

/// Signed data ρ_β ∈ Z.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedElement {
    pub data: RingElement<i64>,
}

impl SignedElement {
    pub fn n(&self) -> usize {
        self.data.n()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignOutcome {
    pub signed: SignedElement,
    /// g with Q_β(ρ) = βg.
    pub factor: CycloElement,
    /// Q_β(ρ) = Ψ(ρ_β).
    pub codeword: CycloElement,
    /// π₀(ρ_β − ρ) = εΦ_N.
    pub epsilon: f64,
    /// Number of contrast doublings applied.
    pub amplification: u32,
}

/// S_β(ρ) with the private key.
pub fn sign(rho: &RingElement<f64>, key: &BinaryKey, quantizer: Quantizer) -> Result<SignedElement> {
    SigningKey::from_binary(key).sign(rho, quantizer)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FidelityParams {
    pub delta_o: f64,
    /// Δ_β = N(Δ_O/(N − 1)·‖β‖_⊥ + 1/12).
    pub delta_beta: f64,
    /// √(Δ_β/N).
    pub delta_rms: f64,
    /// Acceptance threshold Δ for ‖ρ − ρ_β‖.
    pub big_delta: f64,
    /// δ_rms² / N(β)^{2/N}.
    pub g: f64,
}

pub const DEFAULT_DELTA_FACTOR: f64 = 4.0;

pub fn fidelity(key: &CycloElement, delta_o: f64) -> Result<FidelityParams> {
    fidelity_with_factor(key, delta_o, DEFAULT_DELTA_FACTOR)
}

pub fn fidelity_with_factor(key: &CycloElement, delta_o: f64, delta_factor: f64) -> Result<FidelityParams> {
    let n = key.n() as f64;
    let perp = key.perp_norm();
    if perp <= 0.0 {
        return Err(Error::domain("key has zero perp norm"));
    }
    let delta_beta = n * (delta_o / (n - 1.0) * perp + 1.0 / 12.0);
    let delta_rms = (delta_beta / n).sqrt();
    let g = delta_rms * delta_rms / (2.0 * key.log_algebraic_norm()? / n).exp();
    Ok(FidelityParams {
        delta_o,
        delta_beta,
        delta_rms,
        big_delta: delta_factor * delta_beta,
        g,
    })
}

/// The asymptotic Δ_O ≈ N/12 used when no estimate is supplied.
pub fn asymptotic_delta_o(n: usize) -> f64 {
    n as f64 / 12.0
}

/// A public key with its (real, positive) spectrum cached.
#[derive(Clone, Debug)]
pub struct PublicKey {
    alpha: CycloElement,
    spectrum: Arc<Vec<f64>>,
}

impl PublicKey {
    pub fn new(alpha: CycloElement) -> Result<Self> {
        if alpha.conjugate() != alpha {
            return Err(Error::InvalidPublicKey("α is not self-conjugate".into()));
        }
        let spec = cyclo_spectrum(&alpha);
        let mut out = Vec::with_capacity(spec.len());
        out.push(0.0);
        for (j, z) in spec.iter().enumerate().skip(1) {
            if z.re <= 1e-9 {
                return Err(Error::InvalidPublicKey(format!("σ_{j}(α) = {} is not positive", z.re)));
            }
            out.push(z.re);
        }
        Ok(PublicKey {
            alpha,
            spectrum: Arc::new(out),
        })
    }

    pub fn alpha(&self) -> &CycloElement {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// ‖β‖_⊥ of any β with ββ̄ = α, by Parseval.
    pub fn key_perp_norm(&self) -> f64 {
        self.spectrum.iter().skip(1).sum::<f64>() / self.n() as f64
    }

    /// O-coordinates of V_α(ρ_β) = σ⁻¹(|σ(ρ_β)|²/σ(α)).
    pub fn verification_map(&self, signed: &RingElement<i64>) -> Result<Vec<f64>> {
        if signed.n() != self.n() {
            return Err(Error::DimensionMismatch(signed.n(), self.n()));
        }
        let f = Fourier::cached(self.n());
        let mut s = f.spectrum_of(signed.to_real().coeffs());
        s[0] = Complex64::new(0.0, 0.0);
        for (z, a) in s.iter_mut().zip(self.spectrum.iter()).skip(1) {
            *z = Complex64::new(z.norm_sqr() / a, 0.0);
        }
        let v = f.coefficients_of(&s);
        Ok(v[1..].iter().map(|x| x - v[0]).collect())
    }

    /// Divisibility test (and optional distance test) for signed data.
    pub fn verify(&self, signed: &SignedElement, opts: &VerifyOptions) -> Result<Verdict> {
        let v = self.verification_map(&signed.data)?;
        let worst = v.iter().map(|x| (x - x.round()).abs()).fold(0.0, f64::max);
        if worst > opts.tolerance {
            return Ok(Verdict::Reject(RejectReason::NotDivisible { max_deviation: worst }));
        }
        if let (Some(rho), Some(threshold)) = (&opts.original, opts.big_delta) {
            if rho.n() != signed.n() {
                return Err(Error::DimensionMismatch(rho.n(), signed.n()));
            }
            let dist: f64 = rho
                .coeffs()
                .iter()
                .zip(signed.data.coeffs())
                .map(|(a, b)| (a - *b as f64).powi(2))
                .sum();
            if dist >= threshold {
                return Ok(Verdict::Reject(RejectReason::TooFar { distance: dist, threshold }));
            }
        }
        Ok(Verdict::Accept)
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Allowed distance of each O-coordinate of V_α(ρ_β) from an integer.
    pub tolerance: f64,
    pub original: Option<RingElement<f64>>,
    pub big_delta: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: DEFAULT_TOLERANCE,
            original: None,
            big_delta: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RejectReason {
    NotDivisible { max_deviation: f64 },
    TooFar { distance: f64, threshold: f64 },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NotDivisible { max_deviation } => {
                write!(f, "not divisible by the public key (max deviation {max_deviation:.3e})")
            }
            RejectReason::TooFar { distance, threshold } => {
                write!(f, "too far from the original ({distance:.3} ≥ {threshold:.3})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// V_α check against a public key given as an element of O.
pub fn verify(
    signed: &SignedElement,
    alpha: &CycloElement,
    tolerance: f64,
    rho: Option<&RingElement<f64>>,
    big_delta: Option<f64>,
) -> Result<Verdict> {
    PublicKey::new(alpha.clone())?.verify(
        signed,
        &VerifyOptions {
            tolerance,
            original: rho.cloned(),
            big_delta,
        },
    )
}

/// Expands SHA-256(document) in counter mode to N components uniform in
/// [0, M): block i is SHA-256(digest ‖ i as big-endian u64), read as
/// big-endian u32 words, with rejection sampling for uniformity.
pub fn hash_to_element(document: &[u8], n: usize, m: u32) -> Result<RingElement<i64>> {
    require_odd_prime(n)?;
    if m == 0 {
        return Err(Error::Precondition("modulus M must be positive".into()));
    }
    let digest = Sha256::digest(document);
    let limit = (u64::from(u32::MAX) + 1) / u64::from(m) * u64::from(m);
    let mut out = Vec::with_capacity(n);
    let mut counter = 0u64;
    while out.len() < n {
        let mut h = Sha256::new();
        h.update(digest);
        h.update(counter.to_be_bytes());
        let block = h.finalize();
        for w in block.chunks_exact(4) {
            let x = u64::from(u32::from_be_bytes([w[0], w[1], w[2], w[3]]));
            if x < limit && out.len() < n {
                out.push((x % u64::from(m)) as i64);
            }
        }
        counter += 1;
    }
    RingElement::new(out)
}

/// Private key file: the 0/1 element with `key=private` and provenance.
pub fn private_key_document(key: &BinaryKey) -> Document {
    Document::new(Element::Cyclo(key.element().clone()))
        .with_meta("key", "private")
        .with_meta("provenance", key.provenance().to_string())
}

pub fn public_key_document(alpha: &CycloElement) -> Document {
    Document::new(Element::Cyclo(alpha.clone())).with_meta("key", "public")
}

pub fn private_key_from_document(doc: &Document) -> Result<BinaryKey> {
    if doc.meta("key") != Some("private") {
        return Err(Error::parse("not a private key file (missing key=private)"));
    }
    let provenance = match doc.meta("provenance") {
        Some(p) => p.parse()?,
        None => Provenance::Explicit,
    };
    match &doc.element {
        Element::Cyclo(e) => BinaryKey::new(e.clone(), provenance),
        _ => Err(Error::parse("private key must be an element of O")),
    }
}

pub fn public_key_from_document(doc: &Document) -> Result<CycloElement> {
    if doc.meta("key") != Some("public") {
        return Err(Error::parse("not a public key file (missing key=public)"));
    }
    match &doc.element {
        Element::Cyclo(e) => Ok(e.clone()),
        _ => Err(Error::parse("public key must be an element of O")),
    }
}

/// Signed-document envelope: header (quantizer, Δ) plus the integer data.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub signed: SignedElement,
    pub quantizer: Quantizer,
    pub big_delta: f64,
}

impl Envelope {
    pub fn to_document(&self) -> Document {
        Document::new(Element::Integer(self.signed.data.clone()))
            .with_meta("signed", "true")
            .with_meta("quantizer", self.quantizer.to_string())
            .with_meta("delta", format!("{:?}", self.big_delta))
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        if doc.meta("signed") != Some("true") {
            return Err(Error::parse("not a signed envelope (missing signed=true)"));
        }
        let quantizer = doc
            .meta("quantizer")
            .ok_or_else(|| Error::parse("envelope lacks quantizer"))?
            .parse()?;
        let big_delta = doc
            .meta("delta")
            .ok_or_else(|| Error::parse("envelope lacks delta"))?
            .parse::<f64>()
            .map_err(|e| Error::parse(format!("bad delta: {e}")))?;
        match &doc.element {
            Element::Integer(data) => {
                require_odd_prime(data.n())?;
                Ok(Envelope {
                    signed: SignedElement { data: data.clone() },
                    quantizer,
                    big_delta,
                })
            }
            _ => Err(Error::parse("envelope payload must be ring=Z")),
        }
    }
}
