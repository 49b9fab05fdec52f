//! Discrete Fourier maps on the cyclic ring.
//!
//! With ζ = exp(2πi/N), the conjugate maps are σ_j(a) = Σ_k ζ^{jk} a_k. This
//! is the "inverse" direction of the usual FFT sign convention, so the
//! forward map here is backed by rustfft's inverse plan and vice versa. The
//! pseudoinverse carries the 1/N normalization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Cached transform plans for one length N.
///
/// rustfft handles prime lengths with Rader/Bluestein, so any N works.
pub struct Fourier {
    n: usize,
    sigma: Arc<dyn Fft<f64>>,
    sigma_adjoint: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Fourier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fourier").field("n", &self.n).finish()
    }
}

fn plan_cache() -> &'static Mutex<HashMap<usize, Arc<Fourier>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Fourier>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Fourier {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fourier {
            n,
            sigma: planner.plan_fft_inverse(n),
            sigma_adjoint: planner.plan_fft_forward(n),
        }
    }

    /// Shared plan for length `n`, built once per process.
    pub fn cached(n: usize) -> Arc<Fourier> {
        let mut cache = plan_cache().lock().expect("fourier plan cache poisoned");
        cache
            .entry(n)
            .or_insert_with(|| Arc::new(Fourier::new(n)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In place: coefficients `a_k` → `[σ_0(a), σ_1(a), …, σ_{N-1}(a)]`.
    pub fn sigma_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.sigma.process(buf);
    }

    /// In place: `[σ_0, …, σ_{N-1}]` → coefficients, i.e. the Moore–Penrose
    /// pseudoinverse `σ†/N` applied to the full spectrum.
    pub fn sigma_inverse_in_place(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.sigma_adjoint.process(buf);
        let scale = 1.0 / self.n as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
    }

    /// Scratch length needed by the `_with_scratch` variants.
    pub fn scratch_len(&self) -> usize {
        self.sigma
            .get_inplace_scratch_len()
            .max(self.sigma_adjoint.get_inplace_scratch_len())
    }

    /// [`Self::sigma_in_place`] without allocating.
    pub fn sigma_with_scratch(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.sigma.process_with_scratch(buf, scratch);
    }

    /// [`Self::sigma_inverse_in_place`] without allocating.
    pub fn sigma_inverse_with_scratch(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.sigma_adjoint.process_with_scratch(buf, scratch);
        let scale = 1.0 / self.n as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
    }

    /// Full spectrum (length N, index 0 is σ₀) of a real coefficient vector.
    pub fn spectrum_of(&self, coeffs: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        self.sigma_in_place(&mut buf);
        buf
    }

    /// Real coefficients from a full spectrum (imaginary residue dropped).
    pub fn coefficients_of(&self, spectrum: &[Complex64]) -> Vec<f64> {
        let mut buf = spectrum.to_vec();
        self.sigma_inverse_in_place(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }
}
