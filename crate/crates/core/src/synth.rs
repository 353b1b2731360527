//! Seeded synthetic trajectories and clickstreams.
//!
//! Everything here is deterministic given `(spec, seed)`: trajectories come
//! from closed-form families (or a seeded Brownian phase walk) and sampling
//! uses ChaCha8 streams fanned out per circuit with [`mix_seed`], so any
//! generated dataset can be replayed bit-for-bit. These generators are the
//! ground-truth oracles for the end-to-end analysis tests.

// Backs f64 math in no_std builds; hosted test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::spectral::Clickstream;
use crate::{Error, Result};

/// Parameters of the drifting phase process
/// `theta(t) = drift * t + wobble_amp * sin(wobble_freq * t) + c_t`,
/// where `c_t` is a Brownian walk with per-step variance `step_var`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianPhaseParams {
    pub drift: f64,
    pub wobble_amp: f64,
    pub wobble_freq: f64,
    pub step_var: f64,
}

impl Default for BrownianPhaseParams {
    fn default() -> Self {
        BrownianPhaseParams {
            drift: 2.0 * core::f64::consts::PI * 1e-5,
            wobble_amp: 1.5e-2,
            wobble_freq: 2.0 * core::f64::consts::PI * 1e-2,
            step_var: 3.0 / 200.0,
        }
    }
}

/// A deterministic cosine expansion on the sample-index grid:
/// `base + sum amp * cos(w pi (u + 1/2) / N)` at fractional index `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSpec {
    pub base: f64,
    pub terms: Vec<(usize, f64)>,
}

impl CosineSpec {
    pub fn constant(base: f64) -> Self {
        CosineSpec { base, terms: Vec::new() }
    }

    pub fn eval(&self, n: usize, u: f64) -> f64 {
        self.base
            + self
                .terms
                .iter()
                .map(|&(w, a)| {
                    a * (w as f64 * core::f64::consts::PI * (u + 0.5) / n as f64).cos()
                })
                .sum::<f64>()
    }
}

/// Trajectory family to generate.
#[derive(Debug, Clone, PartialEq)]
pub enum SynthKind {
    Constant { p0: f64 },
    /// `p(u) = p0 + amplitude * cos(omega pi (u + 1/2) / N)`: a pure tone on
    /// basis index `omega`.
    CosineTone { p0: f64, amplitude: f64, omega: usize },
    /// Drifting phase mapped through `p = (1 + sin theta) / 2`.
    BrownianPhase(BrownianPhaseParams),
    /// Benchmarking family: `P(u) = a + b * lambda(u)^m`.
    RbFamily { a: f64, b: f64, lambda: CosineSpec, m: u64 },
    /// Ramsey family: `p(u) = a + b exp(-l/l0) sin(2 pi l t_w omega(u))`
    /// with `omega(u)` in Hz.
    RamseyFamily { a: f64, b: f64, l0: f64, t_w: f64, l: u64, omega: CosineSpec },
}

/// One circuit's generation request.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub n: usize,
    pub seed: u64,
    /// Maximum number of samples allowed to clip to [0, 1]; generation with
    /// more clips is an error. Oracle runs keep this at zero.
    pub clip_budget: usize,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, n: usize, seed: u64) -> Self {
        SynthSpec { kind, n, seed, clip_budget: 0 }
    }
}

/// A generated probability trajectory plus its generating signal.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedTrajectory {
    pub probabilities: Vec<f64>,
    /// The underlying signal when the family has one: the phase walk, the
    /// decay parameter `lambda(u)`, or the detuning `omega(u)`.
    pub signal: Option<Vec<f64>>,
    pub clipped: usize,
}

/// Generate the trajectory described by `spec` on the integer index grid.
pub fn gen_trajectory(spec: &SynthSpec) -> Result<GeneratedTrajectory> {
    gen_trajectory_at(spec, 0.0)
}

fn gen_trajectory_at(spec: &SynthSpec, offset: f64) -> Result<GeneratedTrajectory> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::Empty);
    }
    fn clip(p: f64, clipped: &mut usize) -> f64 {
        if (0.0..=1.0).contains(&p) {
            p
        } else {
            *clipped += 1;
            p.clamp(0.0, 1.0)
        }
    }
    let mut clipped = 0usize;
    let (probabilities, signal) = match &spec.kind {
        SynthKind::Constant { p0 } => ((0..n).map(|_| clip(*p0, &mut clipped)).collect(), None),
        SynthKind::CosineTone { p0, amplitude, omega } => {
            let series = CosineSpec { base: *p0, terms: alloc::vec![(*omega, *amplitude)] };
            let p = (0..n)
                .map(|i| clip(series.eval(n, i as f64 + offset), &mut clipped))
                .collect();
            (p, None)
        }
        SynthKind::BrownianPhase(params) => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let step = Normal::new(0.0, params.step_var.sqrt())
                .map_err(|_| Error::invalid("step variance must be non-negative"))?;
            let mut c = 0.0;
            let mut theta = Vec::with_capacity(n);
            for i in 0..n {
                let t = i as f64;
                theta.push(params.drift * t + params.wobble_amp * (params.wobble_freq * t).sin() + c);
                c += step.sample(&mut rng);
            }
            let p = theta
                .iter()
                .map(|&th| clip(0.5 * (1.0 + th.sin()), &mut clipped))
                .collect();
            (p, Some(theta))
        }
        SynthKind::RbFamily { a, b, lambda, m } => {
            let lam: Vec<f64> = (0..n).map(|i| lambda.eval(n, i as f64 + offset)).collect();
            let mut p = Vec::with_capacity(n);
            for &l in &lam {
                let l = clip(l, &mut clipped);
                p.push(clip(a + b * l.powf(*m as f64), &mut clipped));
            }
            (p, Some(lam))
        }
        SynthKind::RamseyFamily { a, b, l0, t_w, l, omega } => {
            let om: Vec<f64> = (0..n).map(|i| omega.eval(n, i as f64 + offset)).collect();
            let envelope = b * (-(*l as f64) / l0).exp();
            let p = om
                .iter()
                .map(|&o| {
                    let s = (2.0 * core::f64::consts::PI * *l as f64 * t_w * o).sin();
                    clip(a + envelope * s, &mut clipped)
                })
                .collect();
            (p, Some(om))
        }
    };
    if clipped > spec.clip_budget {
        return Err(Error::invalid(format!(
            "{clipped} samples clipped to [0, 1], budget is {}",
            spec.clip_budget
        )));
    }
    Ok(GeneratedTrajectory { probabilities, signal, clipped })
}

/// Independent Bernoulli draws from a probability vector; deterministic for
/// a fixed seed.
pub fn sample_clickstream(circuit_id: &str, p: &[f64], seed: u64) -> Result<Clickstream> {
    if p.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::invalid("probabilities must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<u8> = p.iter().map(|&v| (rng.random::<f64>() < v) as u8).collect();
    Clickstream::new(circuit_id, bits)
}

/// Deterministic per-circuit seed fan-out (splitmix64 finalizer over the
/// pair), so parallel generation replays identically.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rastered dataset plus the generating ground truth, index-aligned.
#[derive(Debug, Clone, PartialEq)]
pub struct RasteredDataset {
    pub streams: Vec<Clickstream>,
    pub truth: Vec<GeneratedTrajectory>,
    /// Seconds between consecutive circuit executions (one raster slot).
    pub raster_period: f64,
}

/// Generate `kinds.len()` circuits, each rastered `n` times: circuit `c`'s
/// `i`-th sample happens at `(i * C + c) * raster_period`, and deterministic
/// trajectory families are evaluated at the matching fractional index
/// `i + c / C`.
pub fn gen_rastered_dataset(
    kinds: &[SynthKind],
    n: usize,
    raster_period: f64,
    seed: u64,
    clip_budget: usize,
) -> Result<RasteredDataset> {
    if kinds.is_empty() {
        return Err(Error::Empty);
    }
    if !(raster_period > 0.0) {
        return Err(Error::invalid("raster period must be positive"));
    }
    let circuits = kinds.len();
    let mut streams = Vec::with_capacity(circuits);
    let mut truth = Vec::with_capacity(circuits);
    for (c, kind) in kinds.iter().enumerate() {
        let spec = SynthSpec {
            kind: kind.clone(),
            n,
            seed: mix_seed(seed, 2 * c as u64),
            clip_budget,
        };
        let generated = gen_trajectory_at(&spec, c as f64 / circuits as f64)?;
        let stream = sample_clickstream(
            &format!("c{c:04}"),
            &generated.probabilities,
            mix_seed(seed, 2 * c as u64 + 1),
        )?;
        let timestamps: Vec<f64> = (0..n)
            .map(|i| (i * circuits + c) as f64 * raster_period)
            .collect();
        streams.push(stream.with_timestamps(timestamps)?);
        truth.push(generated);
    }
    Ok(RasteredDataset { streams, truth, raster_period })
}

/// Convenience id matching [`gen_rastered_dataset`]'s naming.
pub fn circuit_id(index: usize) -> String {
    format!("c{index:04}")
}
