//! Orthogonal type-II discrete cosine transform.
//!
//! The transform matrix is
//!
//! ```text
//! F[w][i] = sqrt(2^{1-d(w,0)} / N) * cos(w * pi / N * (i + 1/2))
//! ```
//!
//! so `F` is orthogonal, its top row is the constant vector `1/sqrt(N)`, and
//! every squared entry is at most `2/N`. [`Dct`] applies the transform in
//! `O(N log N)` for any length via an FFT reordering (power-of-two lengths)
//! or a Bluestein chirp convolution (everything else); [`dense_matrix`]
//! materializes `F` itself for use as a test oracle at small sizes.

// Backs f64 math in no_std builds; hosted test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Largest length for which [`dense_matrix`] will materialize the transform.
/// Above this only the fast path is available.
pub const MAX_DENSE: usize = 4096;

/// Single matrix entry `F[omega][i]` of the length-`n` transform.
///
/// `omega` may exceed `n - 1`; the closed form is simply evaluated at the
/// extended index (with the `sqrt(2/N)` normalization), which is what the
/// variance diagnostics need. The integer phase is reduced mod `4n` before
/// the cosine so large indices lose no accuracy.
pub fn entry(n: usize, omega: usize, i: usize) -> f64 {
    debug_assert!(i < n, "sample index out of range");
    let norm = if omega == 0 {
        (1.0 / n as f64).sqrt()
    } else {
        (2.0 / n as f64).sqrt()
    };
    let phase = (omega as u64).wrapping_mul(2 * i as u64 + 1) % (4 * n as u64);
    norm * (PI * phase as f64 / (2.0 * n as f64)).cos()
}

/// Dense row-major transform matrix, `n <= MAX_DENSE`.
pub fn dense_matrix(n: usize) -> Vec<f64> {
    assert!(n >= 1 && n <= MAX_DENSE, "dense matrix limited to 1..={MAX_DENSE}");
    let mut mat = vec![0.0; n * n];
    for omega in 0..n {
        for i in 0..n {
            mat[omega * n + i] = entry(n, omega, i);
        }
    }
    mat
}

/// Reusable O(N log N) forward-transform plan.
///
/// Plans are immutable after construction and cheap to share across threads;
/// build one per clickstream length and reuse it for every circuit.
pub struct Dct {
    n: usize,
    fft: FftPlan,
    /// Post-rotation factors e^{-i pi w / (2n)} for w = 1..n-1.
    post: Vec<Complex64>,
}

impl Dct {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "transform length must be positive");
        let post = (1..n)
            .map(|w| {
                let ang = -PI * w as f64 / (2.0 * n as f64);
                Complex64::new(ang.cos(), ang.sin())
            })
            .collect();
        Dct { n, fft: FftPlan::new(n), post }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Forward transform: returns `F x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "input length does not match plan");
        let n = self.n;
        if n == 1 {
            return vec![x[0]];
        }
        // Even samples in order, then odd samples reversed; the DCT-II of x
        // is the phase-rotated DFT of this permutation.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n.div_ceil(2) {
            v[i] = Complex64::new(x[2 * i], 0.0);
        }
        for i in 0..n / 2 {
            v[n - 1 - i] = Complex64::new(x[2 * i + 1], 0.0);
        }
        let vhat = self.fft.forward(v);
        let mut out = vec![0.0; n];
        out[0] = vhat[0].re / (n as f64).sqrt();
        let scale = (2.0 / n as f64).sqrt();
        for w in 1..n {
            out[w] = scale * (self.post[w - 1] * vhat[w]).re;
        }
        out
    }
}

/// Complex DFT plan: radix-2 for powers of two, Bluestein otherwise.
enum FftPlan {
    Pow2(Pow2Fft),
    Bluestein {
        n: usize,
        m: usize,
        /// e^{-i pi k^2 / n} for k = 0..n-1.
        chirp: Vec<Complex64>,
        /// FFT of the (conjugate) chirp filter, length m.
        chirp_spectrum: Vec<Complex64>,
        inner: Pow2Fft,
    },
}

impl FftPlan {
    fn new(n: usize) -> Self {
        if n.is_power_of_two() {
            return FftPlan::Pow2(Pow2Fft::new(n));
        }
        let m = (2 * n - 1).next_power_of_two();
        let chirp: Vec<Complex64> = (0..n)
            .map(|k| {
                // k^2 reduced mod 2n keeps the cosine argument small.
                let r = (k as u64 * k as u64) % (2 * n as u64);
                let ang = -PI * r as f64 / n as f64;
                Complex64::new(ang.cos(), ang.sin())
            })
            .collect();
        let inner = Pow2Fft::new(m);
        let mut filter = vec![Complex64::new(0.0, 0.0); m];
        filter[0] = Complex64::new(1.0, 0.0);
        for j in 1..n {
            let c = chirp[j].conj();
            filter[j] = c;
            filter[m - j] = c;
        }
        inner.forward(&mut filter);
        FftPlan::Bluestein { n, m, chirp, chirp_spectrum: filter, inner }
    }

    fn forward(&self, mut data: Vec<Complex64>) -> Vec<Complex64> {
        match self {
            FftPlan::Pow2(p) => {
                p.forward(&mut data);
                data
            }
            FftPlan::Bluestein { n, m, chirp, chirp_spectrum, inner } => {
                let mut a = vec![Complex64::new(0.0, 0.0); *m];
                for k in 0..*n {
                    a[k] = data[k] * chirp[k];
                }
                inner.forward(&mut a);
                for (ai, bi) in a.iter_mut().zip(chirp_spectrum.iter()) {
                    *ai *= *bi;
                }
                inner.inverse(&mut a);
                (0..*n).map(|k| a[k] * chirp[k]).collect()
            }
        }
    }
}

struct Pow2Fft {
    n: usize,
    /// e^{-2 pi i j / n} for j = 0..n/2.
    twiddles: Vec<Complex64>,
}

impl Pow2Fft {
    fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let twiddles = (0..n / 2)
            .map(|j| {
                let ang = -2.0 * PI * j as f64 / n as f64;
                Complex64::new(ang.cos(), ang.sin())
            })
            .collect();
        Pow2Fft { n, twiddles }
    }

    fn forward(&self, data: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(data.len(), n);
        // In-place bit-reversal permutation.
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                data.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            let mut start = 0;
            while start < n {
                for k in 0..half {
                    let w = self.twiddles[k * step];
                    let lo = data[start + k];
                    let hi = data[start + k + half] * w;
                    data[start + k] = lo + hi;
                    data[start + k + half] = lo - hi;
                }
                start += len;
            }
            len <<= 1;
        }
    }

    fn inverse(&self, data: &mut [Complex64]) {
        for d in data.iter_mut() {
            *d = d.conj();
        }
        self.forward(data);
        let inv = 1.0 / self.n as f64;
        for d in data.iter_mut() {
            *d = d.conj() * inv;
        }
    }
}
