//! Arithmetic in the cyclic rings R = ℝ[x]/⟨x^N − 1⟩, Z = ℤ[x]/⟨x^N − 1⟩
//! and the cyclotomic integers O = Z/⟨Φ_N⟩ ≅ ℤ[ζ].
//!
//! Conventions used throughout the crate:
//!
//! * [`RingElement`] stores the coefficient of `x^i` at index `i`
//!   (`0 ≤ i < N`). The scalar type is the domain tag: `RingElement<f64>`
//!   lives in R, `RingElement<i64>` in Z.
//! * [`CycloElement`] uses the basis ζ, ζ², …, ζ^{N−1}; the coefficient of
//!   ζ^i is stored at index `i − 1`. The element 1 is therefore
//!   −ζ − ζ² − … − ζ^{N−1}.
//! * Ψ (the quotient map Z → O) sends `Σ c_i x^i` to `Σ_{i≥1} (c_i − c_0) ζ^i`.
//!
//! Integer arithmetic is exact: products accumulate in `i128` and any
//! coefficient that leaves the `i64` range is reported as
//! [`Error::Overflow`]. The algebraic norm is computed over big integers.

mod fourier;
mod norm;
pub mod text;

pub use fourier::Fourier;
pub use norm::{algebraic_norm_of_coeffs, resultant};

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest-divisor primality test; N stays well below 2^32 here.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: usize) -> bool {
    n > 2 && is_prime(n)
}

pub(crate) fn require_odd_prime(n: usize) -> Result<()> {
    if is_odd_prime(n) {
        Ok(())
    } else {
        Err(Error::domain(format!("N = {n} is not an odd prime")))
    }
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Exact cyclic convolution of two integer sequences of equal length.
pub fn cyclic_convolution(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    check_same_n(a.len(), b.len())?;
    let n = a.len();
    let mut acc = vec![0i128; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let k = if i + j >= n { i + j - n } else { i + j };
            acc[k] = acc[k]
                .checked_add(ai as i128 * bj as i128)
                .ok_or(Error::Overflow)?;
        }
    }
    acc.into_iter().map(narrow).collect()
}

/// Element of R (`T = f64`) or Z (`T = i64`) in the standard basis
/// 1, x, …, x^{N−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Copy> RingElement<T> {
    /// Builds an element of length `coeffs.len()`, which must be an odd prime.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        require_odd_prime(coeffs.len())?;
        Ok(RingElement {
            n: coeffs.len(),
            coeffs,
        })
    }

    /// Builds an element of arbitrary (nonzero) length. Only the cyclic
    /// operations (product, conjugate, autocorrelation, Euclidean norm) accept
    /// composite lengths; everything that touches Φ_N re-checks primality.
    pub fn cyclic(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("empty coefficient vector"));
        }
        Ok(RingElement {
            n: coeffs.len(),
            coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `[ā]_0 = a_0`, `[ā]_j = a_{N−j}`.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let coeffs = (0..n).map(|j| self.coeffs[(n - j) % n]).collect();
        RingElement { n, coeffs }
    }

    /// Multiplication by x^k (cyclic rotation).
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.n;
        let coeffs = (0..n).map(|i| self.coeffs[(i + n - k % n) % n]).collect();
        RingElement { n, coeffs }
    }
}

impl RingElement<i64> {
    pub fn zero(n: usize) -> Result<Self> {
        RingElement::new(vec![0; n])
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut c = vec![0; n];
        c[0] = 1;
        RingElement::new(c)
    }

    /// Φ_N as the all-ones element.
    pub fn phi(n: usize) -> Result<Self> {
        RingElement::new(vec![1; n])
    }

    /// Exact cyclic convolution (schoolbook).
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        Ok(RingElement {
            n: self.n,
            coeffs: cyclic_convolution(&self.coeffs, &other.coeffs)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(RingElement { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(RingElement { n: self.n, coeffs })
    }

    /// β·β̄.
    pub fn autocorrelation(&self) -> Result<Self> {
        self.multiply(&self.conjugate())
    }

    /// σ₀(a) = Σ a_i.
    pub fn sigma0(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    /// ‖a‖ = aᵗa (the squared Euclidean length).
    pub fn euclidean_norm(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128 * c as i128).sum()
    }

    /// ‖a‖_⊥ = ‖a‖ − σ₀(a)²/N.
    pub fn perp_norm(&self) -> f64 {
        let s = self.sigma0() as f64;
        self.euclidean_norm() as f64 - s * s / self.n as f64
    }

    /// Ψ: Z → O.
    pub fn quotient(&self) -> Result<CycloElement> {
        require_odd_prime(self.n)?;
        let c0 = self.coeffs[0];
        let coeffs = self.coeffs[1..]
            .iter()
            .map(|&c| c.checked_sub(c0).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycloElement { n: self.n, coeffs })
    }

    pub fn to_real(&self) -> RingElement<f64> {
        RingElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|&c| c as f64).collect(),
        }
    }
}

impl RingElement<f64> {
    pub fn zeros(n: usize) -> Result<Self> {
        RingElement::new(vec![0.0; n])
    }

    /// Product in R through the convolution theorem.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let f = Fourier::cached(self.n);
        let a = f.spectrum_of(&self.coeffs);
        let b = f.spectrum_of(&other.coeffs);
        let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        Ok(RingElement {
            n: self.n,
            coeffs: f.coefficients_of(&prod),
        })
    }

    pub fn autocorrelation(&self) -> Result<Self> {
        self.multiply(&self.conjugate())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RingElement { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(RingElement { n: self.n, coeffs })
    }

    pub fn scale(&self, s: f64) -> Self {
        RingElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn sigma0(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn perp_norm(&self) -> f64 {
        let s = self.sigma0();
        self.euclidean_norm() - s * s / self.n as f64
    }

    /// ‖a‖_⊥ evaluated on the spectrum: σ̄(a)·σ(a)/N.
    pub fn perp_norm_spectral(&self) -> Result<f64> {
        let s = forward_transform(self)?;
        Ok(s.sigma.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.n as f64)
    }

    /// π₀(a) = σ₀⁻¹σ₀(a): the projection onto ℝ·Φ_N.
    pub fn pi0(&self) -> Self {
        let mean = self.sigma0() / self.n as f64;
        RingElement {
            n: self.n,
            coeffs: vec![mean; self.n],
        }
    }

    /// σ⁻¹σ(a): the projection onto R_⊥.
    pub fn perp_part(&self) -> Self {
        let mean = self.sigma0() / self.n as f64;
        RingElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c - mean).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

/// Fourier data of an element: σ₀ (real) and σ_1 … σ_{N−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub n: usize,
    pub sigma0: f64,
    /// `sigma[j − 1]` holds σ_j.
    pub sigma: Vec<Complex64>,
}

impl Spectrum {
    pub fn sigma_j(&self, j: usize) -> Complex64 {
        if j == 0 {
            Complex64::new(self.sigma0, 0.0)
        } else {
            self.sigma[j - 1]
        }
    }

    /// μ_j = |σ_j|² for j = 1 … N−1.
    pub fn squared_moduli(&self) -> Vec<f64> {
        self.sigma.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn conj(&self) -> Spectrum {
        Spectrum {
            n: self.n,
            sigma0: self.sigma0,
            sigma: self.sigma.iter().map(|z| z.conj()).collect(),
        }
    }

    fn from_full(n: usize, full: Vec<Complex64>) -> Spectrum {
        Spectrum {
            n,
            sigma0: full[0].re,
            sigma: full[1..].to_vec(),
        }
    }

    fn to_full(&self) -> Vec<Complex64> {
        let mut full = Vec::with_capacity(self.n);
        full.push(Complex64::new(self.sigma0, 0.0));
        full.extend_from_slice(&self.sigma);
        full
    }
}

/// σ₀ and σ of an element of R.
pub fn forward_transform(a: &RingElement<f64>) -> Result<Spectrum> {
    require_odd_prime(a.n)?;
    let f = Fourier::cached(a.n);
    Ok(Spectrum::from_full(a.n, f.spectrum_of(&a.coeffs)))
}

/// The pseudoinverse σ₀⁻¹σ₀ + σ⁻¹σ: the unique element of R with the given
/// σ₀ and σ (the imaginary residue of inconsistent input is discarded).
pub fn inverse_transform(s: &Spectrum) -> Result<RingElement<f64>> {
    require_odd_prime(s.n)?;
    if s.sigma.len() + 1 != s.n {
        return Err(Error::DimensionMismatch(s.sigma.len() + 1, s.n));
    }
    let f = Fourier::cached(s.n);
    Ok(RingElement {
        n: s.n,
        coeffs: f.coefficients_of(&s.to_full()),
    })
}

/// Element of O ≅ ℤ[ζ] in the basis ζ, …, ζ^{N−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    n: usize,
    coeffs: Vec<i64>,
}

impl CycloElement {
    /// `coeffs[i − 1]` is the coefficient of ζ^i; `N = coeffs.len() + 1`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let n = coeffs.len() + 1;
        require_odd_prime(n)?;
        Ok(CycloElement { n, coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        require_odd_prime(n)?;
        Ok(CycloElement {
            n,
            coeffs: vec![0; n - 1],
        })
    }

    /// 1 = −ζ − ζ² − … − ζ^{N−1}.
    pub fn one(n: usize) -> Result<Self> {
        require_odd_prime(n)?;
        Ok(CycloElement {
            n,
            coeffs: vec![-1; n - 1],
        })
    }

    /// ζ^k for any k (reduced mod N).
    pub fn zeta_power(n: usize, k: usize) -> Result<Self> {
        let k = k % n;
        if k == 0 {
            return CycloElement::one(n);
        }
        let mut c = CycloElement::zero(n)?;
        c.coeffs[k - 1] = 1;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of ζ^i, `1 ≤ i ≤ N − 1`.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Representative in Z with zero constant term (Ψ of it is `self`).
    pub fn to_ring(&self) -> RingElement<i64> {
        let mut coeffs = Vec::with_capacity(self.n);
        coeffs.push(0);
        coeffs.extend_from_slice(&self.coeffs);
        RingElement { n: self.n, coeffs }
    }

    /// Product modulo Φ_N, computed exactly as Ψ of the cyclic product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        self.to_ring().multiply(&other.to_ring())?.quotient()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycloElement { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n, other.n)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycloElement { n: self.n, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// ζ^i ↦ ζ^{N−i}.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let coeffs = (1..n).map(|i| self.coeffs[n - i - 1]).collect();
        CycloElement { n, coeffs }
    }

    /// Multiplication by ζ^k.
    pub fn rotate(&self, k: usize) -> Result<Self> {
        self.to_ring().rotate(k % self.n).quotient()
    }

    pub fn autocorrelation(&self) -> Result<Self> {
        self.multiply(&self.conjugate())
    }

    /// σ of the element; σ₀ is reported for the R_⊥ representative and is
    /// therefore zero.
    pub fn spectrum(&self) -> Spectrum {
        let f = Fourier::cached(self.n);
        let mut full = f.spectrum_of(&self.to_ring().to_real().coeffs);
        full[0] = Complex64::new(0.0, 0.0);
        Spectrum::from_full(self.n, full)
    }

    /// ‖a‖_⊥, the Euclidean norm appropriate to O.
    pub fn perp_norm(&self) -> f64 {
        self.to_ring().perp_norm()
    }

    /// N·‖a‖_⊥ as an exact integer: N Σ a_i² − (Σ a_i)².
    pub fn scaled_perp_norm(&self) -> i128 {
        let r = self.to_ring();
        let s = r.sigma0();
        self.n as i128 * r.euclidean_norm() - s * s
    }

    /// N(a) = Π σ_j(a), exactly, as the resultant of the representing
    /// polynomial with Φ_N.
    pub fn algebraic_norm(&self) -> BigInt {
        let big: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        algebraic_norm_of_coeffs(&big)
    }

    /// log N(a) = Σ_j log|σ_j(a)| via one FFT.
    pub fn log_algebraic_norm(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::domain("log norm of zero"));
        }
        let spec = self.spectrum();
        Ok(spec.sigma.iter().map(|z| z.norm_sqr().ln()).sum::<f64>() / 2.0)
    }

    /// True when every coefficient is 0/1, or every coefficient is 0/−1, and
    /// the element is nonzero: exactly the images Ψ(β_R) of binary β_R.
    pub fn is_binary(&self) -> bool {
        binary_sign(self).is_some()
    }
}

/// +1 for a 0/1 element, −1 for a 0/−1 element, None otherwise.
fn binary_sign(b: &CycloElement) -> Option<i64> {
    let pos = b.coeffs.iter().all(|&c| c == 0 || c == 1);
    let neg = b.coeffs.iter().all(|&c| c == 0 || c == -1);
    if b.is_zero() {
        None
    } else if pos {
        Some(1)
    } else if neg {
        Some(-1)
    } else {
        None
    }
}

/// Binary element of O → its ±1/2 counterpart in R.
///
/// A 0/1 element lifts with `[β_R]_0 = −1/2`, a 0/−1 element with
/// `[β_R]_0 = +1/2`; in both cases `Ψ(β_R) = β`.
pub fn lift_binary(b: &CycloElement) -> Result<RingElement<f64>> {
    let signs = lift_binary_signs(b)?;
    Ok(RingElement {
        n: b.n,
        coeffs: signs.into_iter().map(|s| 0.5 * s as f64).collect(),
    })
}

/// Same as [`lift_binary`] but returns `2β_R ∈ {±1}^N` as exact integers.
pub fn lift_binary_signs(b: &CycloElement) -> Result<Vec<i8>> {
    let sign = binary_sign(b).ok_or_else(|| Error::domain("element is not binary"))?;
    let mut out = Vec::with_capacity(b.n);
    if sign > 0 {
        out.push(-1);
        out.extend(b.coeffs.iter().map(|&c| if c == 1 { 1 } else { -1 }));
    } else {
        out.push(1);
        out.extend(b.coeffs.iter().map(|&c| if c == 0 { 1 } else { -1 }));
    }
    Ok(out)
}

/// ±1/2 element of R → binary element of O (Ψ restricted to binaries).
pub fn drop_binary(b: &RingElement<f64>) -> Result<CycloElement> {
    require_odd_prime(b.n)?;
    let mut signs = Vec::with_capacity(b.n);
    for &c in &b.coeffs {
        if c == 0.5 {
            signs.push(1i8);
        } else if c == -0.5 {
            signs.push(-1i8);
        } else {
            return Err(Error::domain(format!("coefficient {c} is not ±1/2")));
        }
    }
    drop_binary_signs(&signs)
}

/// `{±1}^N` sign pattern (i.e. 2β_R) → binary element of O.
pub fn drop_binary_signs(signs: &[i8]) -> Result<CycloElement> {
    let n = signs.len();
    require_odd_prime(n)?;
    if signs.iter().all(|&s| s == signs[0]) {
        return Err(Error::domain("all-equal pattern has Ψ(β_R) = 0"));
    }
    let s0 = signs[0] as i64;
    let coeffs = signs[1..].iter().map(|&s| (s as i64 - s0) / 2).collect();
    Ok(CycloElement { n, coeffs })
}

/// α_R from α_O for the autocorrelation of a binary pair:
/// `[α_R]_0 = N/4`, `[α_R]_i = [α_O]_i + N/4`.
pub fn real_autocorrelation_from_cyclo(alpha: &CycloElement) -> RingElement<f64> {
    let q = alpha.n as f64 / 4.0;
    let mut coeffs = Vec::with_capacity(alpha.n);
    coeffs.push(q);
    coeffs.extend(alpha.coeffs.iter().map(|&c| c as f64 + q));
    RingElement {
        n: alpha.n,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cyclo(n: usize, terms: &[(usize, i64)]) -> CycloElement {
        let mut c = CycloElement::zero(n).unwrap();
        for &(k, v) in terms {
            c = c.add(&CycloElement::zeta_power(n, k).unwrap().scale_int(v)).unwrap();
        }
        c
    }

    impl CycloElement {
        fn scale_int(&self, v: i64) -> CycloElement {
            CycloElement {
                n: self.n,
                coeffs: self.coeffs.iter().map(|c| c * v).collect(),
            }
        }
    }

    /// Independent schoolbook product in ℤ[x] followed by reduction modulo
    /// Φ_N through x^N = 1 and x^0 = −Σ x^i.
    fn schoolbook_cyclo(a: &CycloElement, b: &CycloElement) -> Vec<i64> {
        let n = a.n;
        let mut full = vec![0i64; 2 * n];
        for i in 1..n {
            for j in 1..n {
                full[i + j] += a.coeff(i) * b.coeff(j);
            }
        }
        let mut cyc = vec![0i64; n];
        for (k, v) in full.into_iter().enumerate() {
            cyc[k % n] += v;
        }
        (1..n).map(|i| cyc[i] - cyc[0]).collect()
    }

    #[test]
    fn n13_nonunique_factor_product() {
        let b1 = cyclo(13, &[(0, 1), (2, 1), (7, 1)]);
        let b2 = cyclo(13, &[(0, 1), (3, 1), (4, 1)]);
        let expected = cyclo(13, &[(1, -1), (8, -1), (9, -1), (12, -1)]);
        assert_eq!(b1.multiply(&b2).unwrap(), expected);
    }

    #[test]
    fn identity_and_index_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = CycloElement::new((0..12).map(|_| rng.gen_range(-5..=5)).collect()).unwrap();
        assert_eq!(a.multiply(&CycloElement::one(13).unwrap()).unwrap(), a);
        // ζ · ζ^{N−1} = 1 = −Σ ζ^i
        let z = CycloElement::zeta_power(13, 1).unwrap();
        let zl = CycloElement::zeta_power(13, 12).unwrap();
        assert_eq!(z.multiply(&zl).unwrap().coeffs(), &[-1i64; 12][..]);
    }

    #[test]
    fn multiply_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for &n in &[3usize, 5, 7, 11] {
            for _ in 0..50 {
                let a = CycloElement::new((1..n).map(|_| rng.gen_range(-9..=9)).collect()).unwrap();
                let b = CycloElement::new((1..n).map(|_| rng.gen_range(-9..=9)).collect()).unwrap();
                assert_eq!(a.multiply(&b).unwrap().coeffs(), schoolbook_cyclo(&a, &b).as_slice());
            }
        }
    }

    #[test]
    fn ring_multiply_checks_dimensions() {
        let a = RingElement::new(vec![1i64, 2, 3]).unwrap();
        let b = RingElement::new(vec![1i64, 2, 3, 4, 5]).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::DimensionMismatch(3, 5))));
    }

    #[test]
    fn intro_autocorrelation_n10() {
        let b = RingElement::cyclic(vec![1i64, 0, 0, 1, 1, 0, 0, 1, 0, 1]).unwrap();
        let a = b.autocorrelation().unwrap();
        assert_eq!(a.coeffs(), &[5, 2, 1, 3, 3, 2, 3, 3, 1, 2]);
        // composite lengths stay out of the Φ_N machinery
        assert!(a.quotient().is_err());
        assert!(RingElement::new(vec![0i64; 10]).is_err());
    }

    #[test]
    fn conjugation_reflects_indices() {
        let b = cyclo(13, &[(0, 1), (2, 1), (7, 1)]);
        assert_eq!(b.conjugate(), cyclo(13, &[(0, 1), (11, 1), (6, 1)]));
        assert_eq!(b.conjugate().conjugate(), b);
        let spec = b.spectrum();
        let spec_c = b.conjugate().spectrum();
        for (x, y) in spec.sigma.iter().zip(&spec_c.sigma) {
            assert!((x.conj() - y).norm() < 1e-9);
        }
    }

    #[test]
    fn fourier_of_phi_and_zeta() {
        let phi = RingElement::<i64>::phi(11).unwrap().to_real();
        let s = forward_transform(&phi).unwrap();
        assert!((s.sigma0 - 11.0).abs() < 1e-12);
        assert!(s.sigma.iter().all(|z| z.norm() < 1e-12));

        let z = CycloElement::zeta_power(5, 1).unwrap().spectrum();
        for j in 1..5 {
            let ang = std::f64::consts::TAU * j as f64 / 5.0;
            assert!((z.sigma_j(j) - Complex64::new(ang.cos(), ang.sin())).norm() < 1e-12);
        }
    }

    #[test]
    fn transform_roundtrip_and_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &n in &[3usize, 13, 101, 1009] {
            let a = RingElement::new((0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()).unwrap();
            let s = forward_transform(&a).unwrap();
            let back = inverse_transform(&s).unwrap();
            let err = a.coeffs().iter().zip(back.coeffs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            assert!(err < 1e-9 * n as f64);
            let lhs = s.sigma0 * s.sigma0 + s.sigma.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let rhs = n as f64 * a.euclidean_norm();
            assert!((lhs - rhs).abs() < 1e-9 * n as f64 * a.euclidean_norm());
            assert!((a.perp_norm() - a.perp_norm_spectral().unwrap()).abs() < 1e-9 * a.euclidean_norm());
            // π₀ via σ₀⁻¹σ₀
            let pi0 = inverse_transform(&Spectrum {
                n,
                sigma0: s.sigma0,
                sigma: vec![Complex64::new(0.0, 0.0); n - 1],
            })
            .unwrap();
            for (x, y) in pi0.coeffs().iter().zip(a.pi0().coeffs()) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn spectrum_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 31;
        let a = RingElement::new((0..n).map(|_| rng.gen_range(-4i64..=4)).collect()).unwrap();
        let b = RingElement::new((0..n).map(|_| rng.gen_range(-4i64..=4)).collect()).unwrap();
        let ab = forward_transform(&a.multiply(&b).unwrap().to_real()).unwrap();
        let sa = forward_transform(&a.to_real()).unwrap();
        let sb = forward_transform(&b.to_real()).unwrap();
        for j in 0..n {
            let p = sa.sigma_j(j) * sb.sigma_j(j);
            assert!((ab.sigma_j(j) - p).norm() <= 1e-9 * p.norm().max(1.0));
        }
    }

    #[test]
    fn quotient_map_properties() {
        let n = 7;
        let phi = RingElement::<i64>::phi(n).unwrap();
        assert!(phi.quotient().unwrap().is_zero());
        assert_eq!(RingElement::<i64>::one(n).unwrap().quotient().unwrap(), CycloElement::one(n).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &n in &[3usize, 5, 7, 11] {
            for _ in 0..40 {
                let a = RingElement::new((0..n).map(|_| rng.gen_range(-6i64..=6)).collect()).unwrap();
                let b = RingElement::new((0..n).map(|_| rng.gen_range(-6i64..=6)).collect()).unwrap();
                let qa = a.quotient().unwrap();
                let qb = b.quotient().unwrap();
                assert_eq!(a.multiply(&b).unwrap().quotient().unwrap().coeffs(), schoolbook_cyclo(&qa, &qb).as_slice());
                assert_eq!(a.add(&b).unwrap().quotient().unwrap(), qa.add(&qb).unwrap());
                let shifted = a.add(&RingElement::<i64>::phi(n).unwrap()).unwrap();
                assert_eq!(shifted.quotient().unwrap(), qa);
            }
        }
    }

    #[test]
    fn binary_lift_and_drop() {
        let b_r = RingElement::new(vec![0.5, 0.5, -0.5]).unwrap();
        let b_o = drop_binary(&b_r).unwrap();
        assert_eq!(b_o.coeffs(), &[0, -1]);
        assert_eq!(lift_binary(&b_o).unwrap(), b_r);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = 11;
        for _ in 0..100 {
            let b = loop {
                let c: Vec<i64> = (1..n).map(|_| rng.gen_range(0..=1)).collect();
                if c.iter().any(|&x| x != 0) {
                    break CycloElement::new(c).unwrap();
                }
            };
            let lifted = lift_binary(&b).unwrap();
            assert_eq!(drop_binary(&lifted).unwrap(), b);
            assert_eq!(lifted.euclidean_norm(), n as f64 / 4.0);
            // autocorrelations in R and O
            let a_o = b.autocorrelation().unwrap();
            let signs: Vec<i64> = lift_binary_signs(&b).unwrap().into_iter().map(i64::from).collect();
            let a4 = RingElement::new(signs).unwrap().autocorrelation().unwrap();
            assert_eq!(a4.coeffs()[0], n as i64);
            for i in 1..n {
                assert_eq!(a4.coeffs()[i], 4 * a_o.coeff(i) + n as i64);
            }
        }
        assert!(lift_binary(&CycloElement::zero(5).unwrap()).is_err());
        assert!(lift_binary(&CycloElement::new(vec![1, -1, 0, 0]).unwrap()).is_err());
        assert!(drop_binary(&RingElement::new(vec![0.5, 0.5, 0.5]).unwrap()).is_err());
        assert!(drop_binary(&RingElement::new(vec![0.5, 0.25, 0.5]).unwrap()).is_err());
    }

    #[test]
    fn norms_of_phi_and_binary() {
        let phi = RingElement::<i64>::phi(13).unwrap();
        assert_eq!(phi.euclidean_norm(), 13);
        assert!(phi.perp_norm().abs() < 1e-12);
        let b = RingElement::new((0..23).map(|i| if i % 3 == 0 { 0.5 } else { -0.5 }).collect()).unwrap();
        assert_eq!(b.euclidean_norm(), 23.0 / 4.0);
    }

    #[test]
    fn autocorrelation_is_real_and_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = CycloElement::new((1..29).map(|_| rng.gen_range(0..=1)).collect()).unwrap();
        let a = b.autocorrelation().unwrap();
        assert_eq!(a.conjugate(), a);
        assert!(a.spectrum().sigma.iter().all(|z| z.re >= -1e-9 && z.im.abs() < 1e-9));
    }
}
