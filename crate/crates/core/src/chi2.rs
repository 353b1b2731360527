//! Chi-squared distribution functions with accurate extreme tails.
//!
//! Thresholding power spectra needs the chi-squared quantile function at
//! probabilities as extreme as `1 - 1e-12` and at degrees of freedom as
//! large as the circuit count, so everything here works through the
//! regularized incomplete gamma function in log space: a power series below
//! `a + 1`, a Lentz continued fraction above, and a bracketed Newton
//! iteration for the inverse. The quantile is accurate to better than
//! `1e-10` relative over the full supported range.

// Backs f64 math in no_std builds; hosted test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use crate::{Error, Result};

const MAX_ITER: usize = 20_000;

/// CDF of the chi-squared distribution with `k` degrees of freedom.
pub fn chi2_cdf(k: u64, x: f64) -> f64 {
    ln_reg_gamma(k as f64 / 2.0, x / 2.0).0.exp()
}

/// Survival function (upper tail) of the chi-squared distribution.
pub fn chi2_sf(k: u64, x: f64) -> f64 {
    ln_reg_gamma(k as f64 / 2.0, x / 2.0).1.exp()
}

/// Inverse CDF: the `x` with `CDF_k(x) = q`, for `q` in the open unit
/// interval.
pub fn chi2_cdf_inv(k: u64, q: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("degrees of freedom must be >= 1"));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid("quantile probability must lie in (0, 1)"));
    }
    // 1 - q is exact for q >= 1/2 (Sterbenz), so the upper branch loses
    // nothing by switching to the survival target.
    let a = k as f64 / 2.0;
    let y = if q <= 0.5 {
        invert(a, q.ln(), Tail::Lower)
    } else {
        invert(a, (1.0 - q).ln(), Tail::Upper)
    };
    Ok(2.0 * y)
}

/// Inverse survival function: the `x` with `SF_k(x) = p`.
///
/// Equivalent to `chi2_cdf_inv(k, 1 - p)` but keeps full precision when the
/// tail probability is tiny, which is the regime Bonferroni thresholds live
/// in.
pub fn chi2_sf_inv(k: u64, p: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("degrees of freedom must be >= 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid("tail probability must lie in (0, 1)"));
    }
    let a = k as f64 / 2.0;
    let y = if p >= 0.5 {
        invert(a, (1.0 - p).ln(), Tail::Lower)
    } else {
        invert(a, p.ln(), Tail::Upper)
    };
    Ok(2.0 * y)
}

/// Log of the regularized incomplete gamma pair `(ln P(a, x), ln Q(a, x))`.
fn ln_reg_gamma(a: f64, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x < a + 1.0 {
        let ln_p = ln_gamma_series(a, x);
        (ln_p, ln_1m_exp(ln_p))
    } else {
        let ln_q = ln_gamma_cf(a, x);
        (ln_1m_exp(ln_q), ln_q)
    }
}

/// ln(1 - e^t) for t <= 0, stable near both ends.
fn ln_1m_exp(t: f64) -> f64 {
    if t > -core::f64::consts::LN_2 {
        (-t.exp_m1()).ln()
    } else {
        (-t.exp()).ln_1p()
    }
}

/// ln P(a, x) by power series; requires x < a + 1.
fn ln_gamma_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= x / (a + n as f64);
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    a * x.ln() - x - libm::lgamma(a) + sum.ln()
}

/// ln Q(a, x) by modified Lentz continued fraction; requires x >= a + 1.
fn ln_gamma_cf(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    a * x.ln() - x - libm::lgamma(a) + h.ln()
}

enum Tail {
    Lower,
    Upper,
}

/// Solve `ln P(a, y) = ln_target` (lower) or `ln Q(a, y) = ln_target`
/// (upper) for y, by Newton steps kept inside a shrinking bracket.
fn invert(a: f64, ln_target: f64, tail: Tail) -> f64 {
    let lower = matches!(tail, Tail::Lower);
    let ln_gamma_a = libm::lgamma(a);
    let mut y = initial_guess(a, ln_target, lower);
    let mut lo = 0.0f64;
    let mut hi = f64::INFINITY;
    for _ in 0..128 {
        let (ln_p, ln_q) = ln_reg_gamma(a, y);
        let f = if lower { ln_p - ln_target } else { ln_q - ln_target };
        // P increases with y, Q decreases.
        let too_small = if lower { f < 0.0 } else { f > 0.0 };
        if too_small {
            lo = lo.max(y);
        } else {
            hi = hi.min(y);
        }
        let ln_pdf = (a - 1.0) * y.ln() - y - ln_gamma_a;
        let dlog = if lower {
            (ln_pdf - ln_p).exp()
        } else {
            -(ln_pdf - ln_q).exp()
        };
        let mut next = y - f / dlog;
        if !next.is_finite() || next <= lo || next >= hi {
            next = if hi.is_finite() {
                if lo > 0.0 { (lo * hi).sqrt() } else { hi / 2.0 }
            } else {
                y * 2.0
            };
        }
        if (next - y).abs() <= 1e-13 * y.abs() {
            return next;
        }
        y = next;
    }
    y
}

fn initial_guess(a: f64, ln_target: f64, lower: bool) -> f64 {
    let k = 2.0 * a;
    let q = if lower { ln_target.exp() } else { 1.0 - ln_target.exp() };
    // Wilson-Hilferty: chi2 quantile ~ k (1 - 2/(9k) + z sqrt(2/(9k)))^3.
    let z = norm_quantile_approx(q.clamp(1e-300, 1.0 - 1e-16));
    let t = 1.0 - 2.0 / (9.0 * k) + z * (2.0 / (9.0 * k)).sqrt();
    if t > 0.03 {
        return (k * t * t * t / 2.0).max(1e-290);
    }
    if lower {
        // Deep left tail: P(a, y) ~ y^a / Gamma(a + 1).
        ((ln_target + libm::lgamma(a + 1.0)) / a).exp()
    } else {
        // Deep right tail: ln Q(a, y) ~ -y + (a - 1) ln y - ln Gamma(a).
        let mut y = -ln_target + libm::lgamma(a);
        for _ in 0..4 {
            y = -ln_target + libm::lgamma(a) + (a - 1.0) * y.max(1.0).ln();
        }
        y.max(a + 1.5)
    }
}

/// Rational approximation to the standard normal quantile (Acklam). Only
/// used to seed the Newton iteration, so ~1e-9 accuracy is ample.
fn norm_quantile_approx(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -norm_quantile_approx(1.0 - p)
    }
}
