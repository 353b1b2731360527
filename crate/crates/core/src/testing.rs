//! Bonferroni-corrected hypothesis tests on power spectra.
//!
//! Every non-zero frequency of every tested spectrum gets a chi-squared
//! test of the null "no drift component here". Family-wise error is
//! controlled by splitting the global significance `alpha` between the
//! individual (per-circuit, dof 1) spectra and the averaged spectra with a
//! one-parameter weight `w`:
//!
//! ```text
//! T_individual = SFinv_1( (1 - w) alpha / ((N - 1) C) )
//! T_average    = SFinv_d(       w  alpha / ((N - 1) A) ) / d
//! ```
//!
//! where `C` and `A` count the spectra in each class and `d` is the
//! averaged-spectrum dof. `w = 1` disables the individual tests, `w = 0`
//! the averaged ones. Per circuit, the evidence for instability is
//! summarized by `lambda_p`, the negative decimal log of the chi-squared
//! p-value of the circuit's largest power (floored at `1e-16`, so
//! `lambda_p <= 16`).
//!
//! Thresholds computed from the dof-1 null do not strictly control the
//! family-wise error rate for trajectories whose per-mode variance exceeds
//! one (see [`crate::spectral::variance_diagnostics`]); the inflation is
//! bounded by 7/6 at extremal trajectories and is accepted in exchange for
//! test power.

use alloc::string::String;
use alloc::vec::Vec;

use crate::chi2::{chi2_sf, chi2_sf_inv};
use crate::spectral::PowerSpectrum;
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_WEIGHT: f64 = 0.5;
pub const PVALUE_FLOOR: f64 = 1e-16;

/// Significance budget for one round of spectrum testing.
#[derive(Debug, Clone, PartialEq)]
pub struct TestConfig {
    /// Global significance level in (0, 1).
    pub alpha: f64,
    /// Weight of the averaged-spectrum class, in [0, 1].
    pub w: f64,
    /// Testable frequencies per spectrum (`N - 1`).
    pub n_frequencies: usize,
    /// Number of individual (dof 1) spectra under test.
    pub n_individual: usize,
    /// Number of averaged spectra under test.
    pub n_averaged: usize,
    /// Degrees of freedom of each averaged spectrum.
    pub dof_averaged: u64,
    /// Smallest reportable p-value; caps `lambda_p` at `-log10` of this.
    pub pvalue_floor: f64,
}

impl TestConfig {
    /// Standard binary-outcome configuration: `n_circuits` per-circuit
    /// spectra plus one averaged spectrum of dof `n_circuits`.
    pub fn new(alpha: f64, w: f64, n_frequencies: usize, n_circuits: usize) -> Result<Self> {
        let cfg = TestConfig {
            alpha,
            w,
            n_frequencies,
            n_individual: n_circuits,
            n_averaged: if n_circuits > 0 { 1 } else { 0 },
            dof_averaged: n_circuits as u64,
            pvalue_floor: PVALUE_FLOOR,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid("alpha must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.w) {
            return Err(Error::invalid("weight w must lie in [0, 1]"));
        }
        if self.n_frequencies == 0 {
            return Err(Error::invalid("need at least one testable frequency (N >= 2)"));
        }
        if self.n_averaged > 0 && self.dof_averaged == 0 {
            return Err(Error::invalid("averaged spectra need a positive dof"));
        }
        if !(self.pvalue_floor > 0.0 && self.pvalue_floor < 1.0) {
            return Err(Error::invalid("p-value floor must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Largest reportable `lambda_p`.
    pub fn lambda_p_cap(&self) -> f64 {
        -libm::log10(self.pvalue_floor)
    }
}

/// Power thresholds implied by a [`TestConfig`]. Disabled branches hold
/// `+inf` (threshold) and `0` (local significance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub t_individual: f64,
    pub t_average: f64,
    pub local_alpha_individual: f64,
    pub local_alpha_average: f64,
}

impl Thresholds {
    pub fn individual_enabled(&self) -> bool {
        self.t_individual.is_finite()
    }

    pub fn average_enabled(&self) -> bool {
        self.t_average.is_finite()
    }

    /// Significance cut for `lambda_p`: a circuit's largest power is
    /// significant exactly when `lambda_p` exceeds this.
    pub fn lambda_p_threshold(&self) -> f64 {
        -libm::log10(self.local_alpha_individual)
    }
}

/// Compute both class thresholds.
pub fn thresholds(config: &TestConfig) -> Result<Thresholds> {
    config.validate()?;
    let tests_ind = config.n_frequencies * config.n_individual;
    let tests_avg = config.n_frequencies * config.n_averaged;
    let (t_individual, local_alpha_individual) = if config.w < 1.0 && tests_ind > 0 {
        let local = (1.0 - config.w) * config.alpha / tests_ind as f64;
        (chi2_sf_inv(1, local)?, local)
    } else {
        (f64::INFINITY, 0.0)
    };
    let (t_average, local_alpha_average) = if config.w > 0.0 && tests_avg > 0 {
        let local = config.w * config.alpha / tests_avg as f64;
        let d = config.dof_averaged;
        (chi2_sf_inv(d, local)? / d as f64, local)
    } else {
        (f64::INFINITY, 0.0)
    };
    Ok(Thresholds { t_individual, t_average, local_alpha_individual, local_alpha_average })
}

/// Test verdict for one individual spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitTestResult {
    pub tag: String,
    /// Frequencies whose power strictly exceeds the individual threshold.
    pub significant: Vec<usize>,
    pub max_index: usize,
    pub max_power: f64,
    /// `-log10` of the chi-squared p-value of the largest power, floored.
    pub lambda_p: f64,
    pub lambda_p_significant: bool,
}

/// Test verdict for one averaged spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedTestResult {
    pub tag: String,
    pub significant: Vec<usize>,
}

/// Full outcome of one testing round.
#[derive(Debug, Clone, PartialEq)]
pub struct TestOutcome {
    pub thresholds: Thresholds,
    pub circuits: Vec<CircuitTestResult>,
    pub averaged: Vec<AveragedTestResult>,
    /// True exactly when some tested power exceeded its threshold.
    pub drift_detected: bool,
    pub tests_performed: usize,
    /// Tags of fallback (constant-clickstream) spectra, excluded from
    /// testing.
    pub skipped_fallback: Vec<String>,
}

impl TestOutcome {
    pub fn circuit(&self, tag: &str) -> Option<&CircuitTestResult> {
        self.circuits.iter().find(|c| c.tag == tag)
    }

    /// Union of significant frequencies over the averaged spectra, sorted.
    pub fn averaged_significant(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .averaged
            .iter()
            .flat_map(|a| a.significant.iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Run every per-frequency test and assemble the verdicts.
///
/// Fallback spectra in `individual` are skipped (listed in the outcome);
/// `config.n_individual` must count only the non-fallback ones so the
/// Bonferroni split matches the tests actually performed.
pub fn test_spectra(
    individual: &[PowerSpectrum],
    averaged: &[PowerSpectrum],
    config: &TestConfig,
) -> Result<TestOutcome> {
    if individual.is_empty() && averaged.is_empty() {
        return Err(Error::Empty);
    }
    let tested = individual.iter().filter(|s| !s.fallback).count();
    if tested != config.n_individual {
        return Err(Error::invalid(
            "config.n_individual must equal the number of non-fallback spectra",
        ));
    }
    if averaged.len() != config.n_averaged {
        return Err(Error::invalid("config.n_averaged must match the averaged spectra"));
    }
    let expected_len = config.n_frequencies + 1;
    for s in individual.iter().chain(averaged) {
        if s.len() != expected_len {
            return Err(Error::LengthMismatch { expected: expected_len, got: s.len() });
        }
    }
    for s in averaged {
        if s.dof != config.dof_averaged {
            return Err(Error::invalid("averaged spectrum dof does not match config"));
        }
    }

    let th = thresholds(config)?;
    let mut circuits = Vec::with_capacity(tested);
    let mut skipped = Vec::new();
    let mut any = false;
    for spec in individual {
        if spec.fallback {
            skipped.push(spec.tag.clone());
            continue;
        }
        let significant: Vec<usize> = (1..spec.len())
            .filter(|&w| spec.powers[w] > th.t_individual)
            .collect();
        let (max_index, max_power) = spec.max_power().unwrap_or((0, 0.0));
        let p = chi2_sf(1, max_power).max(config.pvalue_floor);
        let lambda_p = -libm::log10(p);
        let lambda_p_significant = max_power > th.t_individual;
        any |= !significant.is_empty();
        circuits.push(CircuitTestResult {
            tag: spec.tag.clone(),
            significant,
            max_index,
            max_power,
            lambda_p,
            lambda_p_significant,
        });
    }
    let mut averaged_results = Vec::with_capacity(averaged.len());
    for spec in averaged {
        let significant: Vec<usize> = (1..spec.len())
            .filter(|&w| spec.powers[w] > th.t_average)
            .collect();
        any |= !significant.is_empty();
        averaged_results.push(AveragedTestResult { tag: spec.tag.clone(), significant });
    }
    Ok(TestOutcome {
        thresholds: th,
        tests_performed: config.n_frequencies * (tested + averaged.len()),
        circuits,
        averaged: averaged_results,
        drift_detected: any,
        skipped_fallback: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(tag: &str, powers: Vec<f64>) -> PowerSpectrum {
        PowerSpectrum { tag: tag.into(), powers, dof: 1, fallback: false, index_to_hz: None }
    }

    #[test]
    fn weights_sum_to_global_alpha() {
        let cfg = TestConfig::new(0.05, 0.3, 99, 7).unwrap();
        let th = thresholds(&cfg).unwrap();
        let total = th.local_alpha_individual * (cfg.n_frequencies * cfg.n_individual) as f64
            + th.local_alpha_average * (cfg.n_frequencies * cfg.n_averaged) as f64;
        assert!((total - cfg.alpha).abs() < 1e-12);
    }

    #[test]
    fn reference_geometry_lambda_p_cut() {
        // 3889 circuits x 300 samples at alpha = 5%, w = 1/2: the per-test
        // significance is 2.15e-8, putting the lambda_p cut at 7.67.
        let cfg = TestConfig::new(0.05, 0.5, 299, 3889).unwrap();
        let th = thresholds(&cfg).unwrap();
        assert!((th.local_alpha_individual - 2.1499624616631953e-8).abs() < 1e-18);
        let cut = th.lambda_p_threshold();
        assert!((cut - 7.667569).abs() < 1e-4, "cut = {cut}");
        assert!((7.0..=8.0).contains(&cut));
    }

    #[test]
    fn single_circuit_threshold_value() {
        let cfg = TestConfig::new(0.05, 0.5, 99, 1).unwrap();
        let th = thresholds(&cfg).unwrap();
        assert!((th.local_alpha_individual - 0.025 / 99.0).abs() < 1e-18);
        assert!((th.t_individual - 13.393295973944138).abs() < 1e-8);
    }

    #[test]
    fn weight_extremes_disable_one_class() {
        let cfg = TestConfig { w: 1.0, ..TestConfig::new(0.05, 0.5, 99, 10).unwrap() };
        let th = thresholds(&cfg).unwrap();
        assert!(!th.individual_enabled());
        assert!(th.average_enabled());

        let cfg = TestConfig { w: 0.0, ..cfg };
        let th = thresholds(&cfg).unwrap();
        assert!(th.individual_enabled());
        assert!(!th.average_enabled());
    }

    #[test]
    fn thresholds_monotone() {
        let base = TestConfig::new(0.05, 0.5, 99, 10).unwrap();
        let tighter = TestConfig::new(0.01, 0.5, 99, 10).unwrap();
        let tb = thresholds(&base).unwrap();
        let tt = thresholds(&tighter).unwrap();
        assert!(tt.t_individual > tb.t_individual);
        assert!(tt.t_average > tb.t_average);

        // More circuits: individual threshold rises, per-mode averaged
        // threshold falls toward 1.
        let more = TestConfig::new(0.05, 0.5, 99, 1000).unwrap();
        let tm = thresholds(&more).unwrap();
        assert!(tm.t_individual > tb.t_individual);
        assert!(tm.t_average < tb.t_average);
        assert!(tm.t_average > 1.0);
    }

    #[test]
    fn null_data_yields_no_detections() {
        let cfg = TestConfig::new(0.05, 0.5, 3, 2).unwrap();
        let ind = vec![spec("a", vec![0.0; 4]), spec("b", vec![0.0; 4])];
        let avg = PowerSpectrum { dof: 2, ..spec("average", vec![0.0; 4]) };
        let out = test_spectra(&ind, core::slice::from_ref(&avg), &cfg).unwrap();
        assert!(!out.drift_detected);
        assert_eq!(out.tests_performed, 9);
        for c in &out.circuits {
            assert_eq!(c.lambda_p, 0.0);
            assert!(!c.lambda_p_significant);
            assert!(c.significant.is_empty());
        }
    }

    #[test]
    fn huge_power_pins_lambda_p_to_cap() {
        let cfg = TestConfig::new(0.05, 0.5, 3, 1).unwrap();
        let ind = vec![spec("a", vec![0.0, 500.0, 0.0, 0.0])];
        let avg = PowerSpectrum { dof: 1, ..spec("average", vec![0.0, 500.0, 0.0, 0.0]) };
        let out = test_spectra(&ind, core::slice::from_ref(&avg), &cfg).unwrap();
        assert_eq!(out.circuits[0].lambda_p, 16.0);
        assert!(out.circuits[0].lambda_p_significant);
        assert_eq!(out.circuits[0].significant, vec![1]);
        assert_eq!(out.averaged[0].significant, vec![1]);
        assert!(out.drift_detected);
    }

    #[test]
    fn power_equal_to_threshold_is_not_flagged() {
        let cfg = TestConfig::new(0.05, 0.5, 3, 1).unwrap();
        let th = thresholds(&cfg).unwrap();
        let ind = vec![spec("a", vec![0.0, th.t_individual, 0.0, 0.0])];
        let avg = PowerSpectrum { dof: 1, ..spec("average", vec![0.0; 4]) };
        let out = test_spectra(&ind, core::slice::from_ref(&avg), &cfg).unwrap();
        assert!(out.circuits[0].significant.is_empty());
        assert!(!out.circuits[0].lambda_p_significant);
    }

    #[test]
    fn fallback_spectra_are_excluded_and_listed() {
        let cfg = TestConfig::new(0.05, 0.5, 3, 1).unwrap();
        let mut flat = spec("const", vec![0.0, 1.0, 1.0, 1.0]);
        flat.fallback = true;
        let ind = vec![flat, spec("live", vec![0.0, 3.0, 0.0, 0.0])];
        let avg = PowerSpectrum { dof: 1, ..spec("average", vec![0.0; 4]) };
        let out = test_spectra(&ind, core::slice::from_ref(&avg), &cfg).unwrap();
        assert_eq!(out.circuits.len(), 1);
        assert_eq!(out.skipped_fallback, vec![String::from("const")]);
    }

    #[test]
    fn flag_set_invariant_under_reordering() {
        let cfg = TestConfig::new(0.05, 0.5, 3, 2).unwrap();
        let a = spec("a", vec![0.0, 30.0, 0.0, 0.0]);
        let b = spec("b", vec![0.0, 0.0, 0.1, 0.0]);
        let avg = PowerSpectrum { dof: 2, ..spec("average", vec![0.0; 4]) };
        let fwd = test_spectra(&[a.clone(), b.clone()], core::slice::from_ref(&avg), &cfg).unwrap();
        let rev = test_spectra(&[b, a], core::slice::from_ref(&avg), &cfg).unwrap();
        let mut f: Vec<_> = fwd.circuits.iter().map(|c| (c.tag.clone(), c.significant.clone())).collect();
        let mut r: Vec<_> = rev.circuits.iter().map(|c| (c.tag.clone(), c.significant.clone())).collect();
        f.sort();
        r.sort();
        assert_eq!(f, r);
    }

    #[test]
    fn empty_input_is_rejected() {
        let cfg = TestConfig { n_averaged: 0, ..TestConfig::new(0.05, 0.5, 3, 0).unwrap() };
        assert!(test_spectra(&[], &[], &cfg).is_err());
    }

    #[test]
    fn invalid_config_is_rejected() {
        assert!(TestConfig::new(1.5, 0.5, 10, 1).is_err());
        assert!(TestConfig::new(0.05, -0.1, 10, 1).is_err());
        assert!(TestConfig::new(0.05, 0.5, 0, 1).is_err());
    }
}
