//! Clickstreams and their standardized power spectra.
//!
//! A clickstream is the ordered sequence of binary outcomes from repeated
//! runs of one circuit. Standardizing (subtracting the sample mean, dividing
//! by the sample standard deviation) and transforming with the orthogonal
//! type-II DCT produces amplitudes whose squares are approximately
//! chi-squared with one degree of freedom at every non-zero frequency when
//! the underlying outcome probability is constant. That null model is what
//! the [`crate::testing`] module thresholds against; this module computes
//! the spectra themselves, spectrum averages, the multi-outcome
//! coarse-graining, and the per-mode variance diagnostics that justify the
//! chi-squared null.

// Backs f64 math in no_std builds; hosted test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::dct::{self, Dct};
use crate::{Error, Result};

/// Ordered binary outcomes of one circuit, with optional timing metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Clickstream {
    circuit_id: String,
    outcomes: Vec<u8>,
    timestamps: Option<Vec<f64>>,
    period: Option<f64>,
}

impl Clickstream {
    /// Build a stream from raw 0/1 outcomes. Fails on empty input or
    /// non-binary values.
    pub fn new(circuit_id: impl Into<String>, outcomes: Vec<u8>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(bad) = outcomes.iter().find(|&&b| b > 1) {
            return Err(Error::invalid(format!("outcome {bad} is not a bit")));
        }
        Ok(Clickstream { circuit_id: circuit_id.into(), outcomes, timestamps: None, period: None })
    }

    /// Attach per-sample wall-clock times (seconds). Must be strictly
    /// increasing and match the outcome count.
    pub fn with_timestamps(mut self, timestamps: Vec<f64>) -> Result<Self> {
        if timestamps.len() != self.outcomes.len() {
            return Err(Error::LengthMismatch {
                expected: self.outcomes.len(),
                got: timestamps.len(),
            });
        }
        if timestamps.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("timestamps must be strictly increasing"));
        }
        self.timestamps = Some(timestamps);
        Ok(self)
    }

    /// Attach a nominal spacing (seconds) between successive repetitions of
    /// this circuit, used for frequency conversion when explicit timestamps
    /// are not available.
    pub fn with_period(mut self, seconds: f64) -> Result<Self> {
        if !(seconds > 0.0) {
            return Err(Error::invalid("raster period must be positive"));
        }
        self.period = Some(seconds);
        Ok(self)
    }

    pub fn circuit_id(&self) -> &str {
        &self.circuit_id
    }

    pub fn outcomes(&self) -> &[u8] {
        &self.outcomes
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Fraction of 1 outcomes.
    pub fn mean(&self) -> f64 {
        let ones: u64 = self.outcomes.iter().map(|&b| b as u64).sum();
        ones as f64 / self.outcomes.len() as f64
    }

    /// True when every outcome is identical (the spectrum falls back to the
    /// flat convention).
    pub fn is_constant(&self) -> bool {
        self.outcomes.iter().all(|&b| b == self.outcomes[0])
    }

    /// Sample-time origin and uniform step, from timestamps when present,
    /// otherwise from the nominal period. `None` when neither is known or
    /// the stream is too short to define a step.
    pub fn time_base(&self) -> Option<TimeBase> {
        let n = self.len();
        if let Some(ts) = &self.timestamps {
            if n < 2 {
                return None;
            }
            let t_step = (ts[n - 1] - ts[0]) / (n - 1) as f64;
            return Some(TimeBase { t0: ts[0], t_step, len: n });
        }
        self.period.map(|p| TimeBase { t0: 0.0, t_step: p, len: n })
    }

    /// Hz per frequency index for this stream's spectrum.
    pub fn index_to_hz(&self) -> Option<f64> {
        self.time_base().map(|tb| tb.index_to_hz())
    }

    /// Coefficient of variation of the inter-sample gaps. `None` without
    /// timestamps. Values well above zero mean the uniform-sampling
    /// assumption behind the DCT basis is shaky.
    pub fn timing_cv(&self) -> Option<f64> {
        let ts = self.timestamps.as_deref()?;
        if ts.len() < 2 {
            return None;
        }
        let gaps: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        let var = gaps.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / gaps.len() as f64;
        Some(var.sqrt() / mean)
    }
}

/// Uniform time grid underlying a clickstream: sample `i` at `t0 + i * t_step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeBase {
    pub t0: f64,
    pub t_step: f64,
    pub len: usize,
}

impl TimeBase {
    /// Physical frequency (Hz) of basis index 1; index `w` maps to `w`
    /// times this.
    pub fn index_to_hz(&self) -> f64 {
        1.0 / (2.0 * self.len as f64 * self.t_step)
    }
}

/// Standardized frequency-domain amplitudes of one clickstream.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes {
    pub values: Vec<f64>,
    /// Set when the stream was constant and the flat `(0, 1, 1, ...)`
    /// convention was substituted; such spectra carry no drift information.
    pub fallback: bool,
}

/// Standardize and transform a clickstream, planning a transform internally.
/// Use [`standardize_with`] to reuse a plan across many streams.
pub fn standardize(stream: &Clickstream) -> Amplitudes {
    standardize_with(&Dct::new(stream.len()), stream)
}

/// Standardized amplitudes `F(x - mean) / sqrt(mean (1 - mean))`, or the
/// flat fallback vector for a constant stream.
pub fn standardize_with(dct: &Dct, stream: &Clickstream) -> Amplitudes {
    let n = stream.len();
    assert_eq!(dct.len(), n, "plan length does not match stream");
    if stream.is_constant() {
        let mut values = vec![1.0; n];
        values[0] = 0.0;
        return Amplitudes { values, fallback: true };
    }
    let xbar = stream.mean();
    let scale = 1.0 / (xbar * (1.0 - xbar)).sqrt();
    let centered: Vec<f64> = stream.outcomes.iter().map(|&b| b as f64 - xbar).collect();
    let mut values = dct.apply(&centered);
    for v in values.iter_mut() {
        *v *= scale;
    }
    // Mean removal annihilates the constant row analytically; pin the
    // rounding residue to zero so downstream invariants hold exactly.
    values[0] = 0.0;
    Amplitudes { values, fallback: false }
}

/// Power spectrum of one clickstream, or an average of several.
///
/// `powers[w]` is scaled so that under the no-drift null it is distributed
/// as `chi2_dof / dof` at every `w > 0` (so the null mean is 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub tag: String,
    pub powers: Vec<f64>,
    /// Effective chi-squared degrees of freedom of the per-mode null.
    pub dof: u64,
    /// Propagated from [`Amplitudes::fallback`]; fallback spectra are
    /// excluded from hypothesis testing.
    pub fallback: bool,
    /// Hz per frequency index, when timing metadata was available.
    pub index_to_hz: Option<f64>,
}

impl PowerSpectrum {
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn hz(&self, index: usize) -> Option<f64> {
        self.index_to_hz.map(|f| f * index as f64)
    }

    /// Largest power over non-zero frequencies, with its index.
    pub fn max_power(&self) -> Option<(usize, f64)> {
        self.powers
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(core::cmp::Ordering::Equal))
            .map(|(i, &p)| (i, p))
    }
}

/// Power spectrum of a single clickstream (dof 1).
pub fn power_spectrum(stream: &Clickstream) -> PowerSpectrum {
    power_spectrum_with(&Dct::new(stream.len()), stream)
}

/// Same as [`power_spectrum`] but reusing a transform plan.
pub fn power_spectrum_with(dct: &Dct, stream: &Clickstream) -> PowerSpectrum {
    let amps = standardize_with(dct, stream);
    PowerSpectrum {
        tag: stream.circuit_id.clone(),
        powers: amps.values.iter().map(|z| z * z).collect(),
        dof: 1,
        fallback: amps.fallback,
        index_to_hz: stream.index_to_hz(),
    }
}

/// Mean of `C` spectra sharing a length and per-spectrum dof; the result has
/// dof `C * d` (null `chi2_{Cd} / (Cd)`).
pub fn average_spectrum(spectra: &[PowerSpectrum]) -> Result<PowerSpectrum> {
    let first = spectra.first().ok_or(Error::Empty)?;
    for s in spectra {
        if s.len() != first.len() {
            return Err(Error::LengthMismatch { expected: first.len(), got: s.len() });
        }
        if s.dof != first.dof {
            return Err(Error::invalid("cannot average spectra with differing dof"));
        }
    }
    Ok(PowerSpectrum {
        tag: "average".to_string(),
        powers: mean_powers(spectra),
        dof: first.dof * spectra.len() as u64,
        fallback: false,
        index_to_hz: common_hz(spectra),
    })
}

/// Mean over the per-bin spectra of one multi-outcome circuit.
///
/// The bins partition every repetition, so the bin streams sum to one at
/// each time index and the average of their powers has only `bins - 1`
/// effective degrees of freedom under the null, not `bins`.
pub fn outcome_average_spectrum(bin_spectra: &[PowerSpectrum]) -> Result<PowerSpectrum> {
    if bin_spectra.len() < 2 {
        return Err(Error::invalid("outcome average needs at least two bins"));
    }
    let first = &bin_spectra[0];
    for s in bin_spectra {
        if s.len() != first.len() {
            return Err(Error::LengthMismatch { expected: first.len(), got: s.len() });
        }
        if s.dof != 1 {
            return Err(Error::invalid("outcome average expects per-bin (dof 1) spectra"));
        }
    }
    Ok(PowerSpectrum {
        tag: "outcome-average".to_string(),
        powers: mean_powers(bin_spectra),
        dof: bin_spectra.len() as u64 - 1,
        fallback: false,
        index_to_hz: common_hz(bin_spectra),
    })
}

fn mean_powers(spectra: &[PowerSpectrum]) -> Vec<f64> {
    let n = spectra[0].len();
    let inv = 1.0 / spectra.len() as f64;
    let mut out = vec![0.0; n];
    for s in spectra {
        for (o, p) in out.iter_mut().zip(&s.powers) {
            *o += p;
        }
    }
    for o in out.iter_mut() {
        *o *= inv;
    }
    out
}

fn common_hz(spectra: &[PowerSpectrum]) -> Option<f64> {
    let first = spectra[0].index_to_hz?;
    spectra
        .iter()
        .all(|s| s.index_to_hz == Some(first))
        .then_some(first)
}

/// Per-mode variance of the standardized amplitudes for a known probability
/// trajectory, computed two independent ways.
///
/// With the trajectory written as `p_i = mean + s_i`, the variance of the
/// standardized amplitude at frequency `w > 0` is
///
/// ```text
/// nu_w = sum_i F[w][i]^2 p_i (1 - p_i) / (pbar (1 - pbar))
///      = 1 + Delta_w / (pbar (1 - pbar))
/// Delta_w = (s~[2w] (1 - 2 pbar) - q~[2w]) / sqrt(2N) - |s|^2 / N
/// ```
///
/// where `q_i = s_i^2` and the `2w` coefficients use the extended-index
/// cosine basis. A constant trajectory gives `nu_w = 1` exactly; for the
/// type-II DCT no trajectory exceeds `7/6`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceDiagnostics {
    /// Direct-sum variances, indexed by `w - 1` for `w = 1..N-1`.
    pub nu_direct: Vec<f64>,
    /// Closed-form variances via `delta`, same indexing.
    pub nu_from_delta: Vec<f64>,
    pub delta: Vec<f64>,
    pub mean_p: f64,
    /// Zero-mean signal vector `s`.
    pub signal: Vec<f64>,
    /// Time-domain signal powers `q = (s_0^2, s_1^2, ...)`.
    pub signal_powers: Vec<f64>,
    /// Frequencies whose direct variance exceeds 1 (beyond rounding).
    pub exceeding: Vec<usize>,
}

pub fn variance_diagnostics(trajectory: &[f64]) -> Result<VarianceDiagnostics> {
    let n = trajectory.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if trajectory.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::invalid("trajectory entries must lie in [0, 1]"));
    }
    let mean_p = trajectory.iter().sum::<f64>() / n as f64;
    if !(mean_p > 0.0 && mean_p < 1.0) {
        return Err(Error::DegenerateProbability(mean_p));
    }
    let denom = mean_p * (1.0 - mean_p);
    let signal: Vec<f64> = trajectory.iter().map(|p| p - mean_p).collect();
    let signal_powers: Vec<f64> = signal.iter().map(|s| s * s).collect();
    let total_power: f64 = signal_powers.iter().sum();

    let dct = Dct::new(n);
    let s_hat = dct.apply(&signal);
    let q_hat = dct.apply(&signal_powers);
    // Extended-index coefficient: c[k] = -c[2N - k] for N < k < 2N, c[N] = 0.
    let extended = |hat: &[f64], k: usize| -> f64 {
        if k < n {
            hat[k]
        } else if k == n {
            0.0
        } else {
            -hat[2 * n - k]
        }
    };

    let mut nu_direct = Vec::with_capacity(n.saturating_sub(1));
    let mut nu_from_delta = Vec::with_capacity(n.saturating_sub(1));
    let mut delta = Vec::with_capacity(n.saturating_sub(1));
    let mut exceeding = Vec::new();
    for w in 1..n {
        let direct: f64 = (0..n)
            .map(|i| {
                let f = dct::entry(n, w, i);
                f * f * trajectory[i] * (1.0 - trajectory[i])
            })
            .sum::<f64>()
            / denom;
        let d = (extended(&s_hat, 2 * w) * (1.0 - 2.0 * mean_p) - extended(&q_hat, 2 * w))
            / (2.0 * n as f64).sqrt()
            - total_power / n as f64;
        nu_direct.push(direct);
        nu_from_delta.push(1.0 + d / denom);
        delta.push(d);
        if direct > 1.0 + 1e-12 {
            exceeding.push(w);
        }
    }
    Ok(VarianceDiagnostics {
        nu_direct,
        nu_from_delta,
        delta,
        mean_p,
        signal,
        signal_powers,
        exceeding,
    })
}

/// Assignment of raw outcome labels to `bins` indicator streams.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseGraining {
    map: BTreeMap<String, usize>,
    names: Vec<String>,
}

impl CoarseGraining {
    /// Explicit label-to-bin map. Every bin index must be below `bin_count`
    /// and `bin_count >= 2`.
    pub fn new(map: BTreeMap<String, usize>, bin_count: usize) -> Result<Self> {
        if bin_count < 2 {
            return Err(Error::invalid("coarse-graining needs at least two bins"));
        }
        if let Some((label, &bin)) = map.iter().find(|(_, &b)| b >= bin_count) {
            return Err(Error::invalid(format!("label {label:?} maps to out-of-range bin {bin}")));
        }
        let names = (0..bin_count).map(|b| format!("bin{b}")).collect();
        Ok(CoarseGraining { map, names })
    }

    /// One bin per distinct label, in sorted label order.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut distinct: Vec<&str> = labels.iter().map(|l| l.as_ref()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::invalid("coarse-graining needs at least two distinct labels"));
        }
        let map = distinct
            .iter()
            .enumerate()
            .map(|(b, l)| (l.to_string(), b))
            .collect();
        let names = distinct.iter().map(|l| l.to_string()).collect();
        Ok(CoarseGraining { map, names })
    }

    pub fn bin_count(&self) -> usize {
        self.names.len()
    }

    pub fn bin_name(&self, bin: usize) -> &str {
        &self.names[bin]
    }

    pub fn bin_of(&self, label: &str) -> Option<usize> {
        self.map.get(label).copied()
    }
}

/// Split one circuit's per-repetition outcome labels into per-bin indicator
/// clickstreams. Bin `b` reads 1 at repetition `i` exactly when outcome `i`
/// falls in bin `b`, so the returned streams sum to one at every index.
pub fn coarse_grain<S: AsRef<str>>(
    circuit_id: &str,
    labels: &[S],
    graining: &CoarseGraining,
) -> Result<Vec<Clickstream>> {
    if labels.is_empty() {
        return Err(Error::Empty);
    }
    let mut bits = vec![vec![0u8; labels.len()]; graining.bin_count()];
    for (i, label) in labels.iter().enumerate() {
        let label = label.as_ref();
        let bin = graining
            .bin_of(label)
            .ok_or_else(|| Error::UnmappedLabel(label.to_string()))?;
        bits[bin][i] = 1;
    }
    bits.into_iter()
        .enumerate()
        .map(|(b, v)| Clickstream::new(format!("{circuit_id}[{}]", graining.bin_name(b)), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(bits: &[u8]) -> Clickstream {
        Clickstream::new("t", bits.to_vec()).unwrap()
    }

    #[test]
    fn constant_stream_falls_back_to_flat_spectrum() {
        let amps = standardize(&stream(&[0, 0, 0, 0]));
        assert!(amps.fallback);
        assert_eq!(amps.values, vec![0.0, 1.0, 1.0, 1.0]);
        let spec = power_spectrum(&stream(&[1, 1, 1]));
        assert!(spec.fallback);
        assert_eq!(spec.powers, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn two_sample_amplitudes_match_hand_values() {
        let amps = standardize(&stream(&[0, 1]));
        assert!(!amps.fallback);
        assert!(amps.values[0].abs() < 1e-15);
        assert!((amps.values[1] - (-core::f64::consts::SQRT_2)).abs() < 1e-12);
        let spec = power_spectrum(&stream(&[0, 1]));
        assert!((spec.powers[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nonzero_powers_sum_to_sample_count() {
        // Parseval plus binary variance identity: the non-zero powers of any
        // non-constant stream sum to exactly N.
        for bits in [&[0u8, 1, 1, 0, 1, 0, 0, 0][..], &[1, 0, 0][..], &[0, 1][..]] {
            let spec = power_spectrum(&stream(bits));
            let total: f64 = spec.powers.iter().skip(1).sum();
            let n = bits.len() as f64;
            assert!((total - n).abs() < 1e-9 * n, "{total} vs {n}");
        }
    }

    #[test]
    fn averaging_is_arithmetic_and_tracks_dof() {
        let a = PowerSpectrum {
            tag: "a".into(),
            powers: vec![0.0, 2.0, 0.0],
            dof: 1,
            fallback: false,
            index_to_hz: None,
        };
        let b = PowerSpectrum { tag: "b".into(), powers: vec![0.0, 0.0, 2.0], ..a.clone() };
        let avg = average_spectrum(&[a.clone(), b]).unwrap();
        assert_eq!(avg.powers, vec![0.0, 1.0, 1.0]);
        assert_eq!(avg.dof, 2);

        let same = average_spectrum(&[a.clone(), a.clone(), a.clone()]).unwrap();
        assert_eq!(same.powers, a.powers);
        assert_eq!(same.dof, 3);

        let short = PowerSpectrum { powers: vec![0.0, 1.0], ..a.clone() };
        assert!(average_spectrum(&[a, short]).is_err());
        assert!(average_spectrum(&[]).is_err());
    }

    #[test]
    fn constant_trajectory_has_unit_variance() {
        let diag = variance_diagnostics(&[0.3; 16]).unwrap();
        for (&a, &b) in diag.nu_direct.iter().zip(&diag.nu_from_delta) {
            assert!((a - 1.0).abs() < 1e-12);
            assert!((b - 1.0).abs() < 1e-12);
        }
        assert!(diag.exceeding.is_empty());
    }

    #[test]
    fn variance_routes_agree_on_random_trajectories() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p: Vec<f64> = (0..37).map(|_| 0.05 + 0.9 * rng.random::<f64>()).collect();
            let diag = variance_diagnostics(&p).unwrap();
            for (&a, &b) in diag.nu_direct.iter().zip(&diag.nu_from_delta) {
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn half_to_one_tone_attains_seven_sixths() {
        // Tone at extended index 2w, phase pi, swinging between 1/2 and 1:
        // the variance at w is exactly 7/6.
        let n = 64;
        let w = 5;
        let p: Vec<f64> = (0..n)
            .map(|i| {
                let ang = 2.0 * w as f64 * core::f64::consts::PI * (i as f64 + 0.5) / n as f64;
                0.75 + 0.25 * (ang + core::f64::consts::PI).cos()
            })
            .collect();
        let diag = variance_diagnostics(&p).unwrap();
        let nu = diag.nu_direct[w - 1];
        assert!((nu - 7.0 / 6.0).abs() < 1e-12, "nu = {nu}");
        assert!(diag.exceeding.contains(&w));
    }

    #[test]
    fn degenerate_mean_is_rejected() {
        assert!(variance_diagnostics(&[0.0, 0.0]).is_err());
        assert!(variance_diagnostics(&[1.0; 4]).is_err());
    }

    #[test]
    fn complement_bins_share_powers() {
        let labels = ["1", "0", "0", "1", "1", "0", "1", "1"];
        let g = CoarseGraining::from_labels(&labels).unwrap();
        let streams = coarse_grain("c", &labels, &g).unwrap();
        assert_eq!(streams.len(), 2);
        for i in 0..labels.len() {
            let total: u8 = streams.iter().map(|s| s.outcomes()[i]).sum();
            assert_eq!(total, 1);
        }
        let s0 = power_spectrum(&streams[0]);
        let s1 = power_spectrum(&streams[1]);
        for w in 1..labels.len() {
            assert!((s0.powers[w] - s1.powers[w]).abs() < 1e-10);
        }
    }

    #[test]
    fn four_outcome_binning_partitions() {
        let labels = ["00", "01", "10", "11", "01", "00", "11", "10"];
        let g = CoarseGraining::from_labels(&labels).unwrap();
        assert_eq!(g.bin_count(), 4);
        let streams = coarse_grain("c", &labels, &g).unwrap();
        for s in &streams {
            assert_eq!(s.len(), labels.len());
        }
        for i in 0..labels.len() {
            let total: u8 = streams.iter().map(|s| s.outcomes()[i]).sum();
            assert_eq!(total, 1);
        }
    }

    #[test]
    fn unmapped_label_is_named() {
        let g = CoarseGraining::from_labels(&["a", "b"]).unwrap();
        let err = coarse_grain("c", &["a", "zzz"], &g).unwrap_err();
        assert_eq!(err, Error::UnmappedLabel("zzz".into()));
    }

    #[test]
    fn timing_metadata() {
        let s = stream(&[0, 1, 0, 1])
            .with_timestamps(vec![0.0, 1.0, 2.0, 3.0])
            .unwrap();
        let tb = s.time_base().unwrap();
        assert_eq!(tb.t_step, 1.0);
        assert!((tb.index_to_hz() - 1.0 / 8.0).abs() < 1e-15);
        assert!(s.timing_cv().unwrap() < 1e-12);

        let jittery = stream(&[0, 1, 0, 1])
            .with_timestamps(vec![0.0, 0.5, 2.0, 3.0])
            .unwrap();
        assert!(jittery.timing_cv().unwrap() > 0.1);

        assert!(stream(&[0, 1]).with_timestamps(vec![1.0, 1.0]).is_err());
        assert!(stream(&[0, 1]).with_timestamps(vec![1.0]).is_err());
    }

    #[test]
    fn rejects_non_binary_outcomes() {
        assert!(Clickstream::new("x", vec![0, 2]).is_err());
        assert!(Clickstream::new("x", vec![]).is_err());
    }
}
