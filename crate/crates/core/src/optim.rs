//! Projected ascent for concave likelihoods, plus the small dense linear
//! algebra it needs.
//!
//! Every fit in this crate maximizes a Bernoulli log-likelihood over at most
//! a few dozen parameters, subject to simple convex constraints (amplitude
//! polytopes, parameter boxes). A damped Newton / Fisher-scoring step with a
//! backtracking line search and a feasible-set retraction is accurate and
//! fast at these sizes; iterates are accepted only when they strictly
//! improve the objective, so the best value is monotone.

// Backs f64 math in no_std builds; hosted test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec;
use alloc::vec::Vec;

/// Objective to maximize. `curv` receives a positive semi-definite
/// curvature proxy (Fisher information or observed information); the ascent
/// direction solves `curv * d = grad`.
pub trait Objective {
    fn dim(&self) -> usize;
    fn value(&self, theta: &[f64]) -> f64;
    /// Returns the value; fills `grad` (len `dim`) and `curv`
    /// (len `dim * dim`, row-major, symmetric).
    fn value_grad_curv(&self, theta: &[f64], grad: &mut [f64], curv: &mut [f64]) -> f64;
}

#[derive(Debug, Clone)]
pub struct AscentOptions {
    pub max_iters: usize,
    /// Stop once an accepted step improves the objective by less than this.
    pub value_tol: f64,
    /// Per-parameter trust bounds: when set, each proposed step is scaled
    /// uniformly so no component exceeds its cap. Keeps nearly-flat
    /// likelihood directions from teleporting into distant local optima
    /// (wrapped phases).
    pub step_caps: Option<Vec<f64>>,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions { max_iters: 300, value_tol: 1e-9, step_caps: None }
    }
}

#[derive(Debug, Clone)]
pub struct AscentReport {
    pub theta: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximize `objective` starting from `theta0`, keeping iterates feasible
/// with `project` (which must be the identity on feasible points).
pub fn maximize<O, P>(
    theta0: Vec<f64>,
    objective: &O,
    project: P,
    opts: &AscentOptions,
) -> AscentReport
where
    O: Objective + ?Sized,
    P: Fn(&mut [f64]),
{
    let n = objective.dim();
    debug_assert_eq!(theta0.len(), n);
    let mut theta = theta0;
    project(&mut theta);
    let mut value = objective.value(&theta);
    let mut grad = vec![0.0; n];
    let mut curv = vec![0.0; n * n];
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..opts.max_iters {
        iterations = iter + 1;
        objective.value_grad_curv(&theta, &mut grad, &mut curv);
        let mut dir = newton_direction(&curv, &grad, n).unwrap_or_else(|| grad.clone());
        if let Some(caps) = &opts.step_caps {
            let mut scale = 1.0f64;
            for (d, cap) in dir.iter().zip(caps) {
                if d.abs() > *cap {
                    scale = scale.min(cap / d.abs());
                }
            }
            if scale < 1.0 {
                for d in dir.iter_mut() {
                    *d *= scale;
                }
            }
        }

        let mut tau = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let mut cand: Vec<f64> = theta.iter().zip(&dir).map(|(t, d)| t + tau * d).collect();
            project(&mut cand);
            let cand_value = objective.value(&cand);
            if cand_value > value && cand_value.is_finite() {
                let gain = cand_value - value;
                theta = cand;
                value = cand_value;
                accepted = true;
                if gain < opts.value_tol {
                    converged = true;
                }
                break;
            }
            tau *= 0.5;
        }
        if !accepted {
            // No step length improves the objective: stationary (possibly at
            // the boundary) to within line-search resolution.
            converged = true;
        }
        if converged {
            break;
        }
    }
    AscentReport { theta, value, iterations, converged }
}

/// Solve `curv d = grad` with escalating ridge regularization; `None` only
/// if the matrix stays non-positive even heavily ridged.
fn newton_direction(curv: &[f64], grad: &[f64], n: usize) -> Option<Vec<f64>> {
    let trace: f64 = (0..n).map(|i| curv[i * n + i]).sum();
    let base = (trace / n as f64).abs().max(1e-300);
    let mut ridge = 0.0;
    for _ in 0..12 {
        let mut a = curv.to_vec();
        if ridge > 0.0 {
            for i in 0..n {
                a[i * n + i] += ridge;
            }
        }
        if let Some(d) = solve_psd(&a, grad, n) {
            if d.iter().all(|x| x.is_finite()) {
                return Some(d);
            }
        }
        ridge = if ridge == 0.0 { base * 1e-10 } else { ridge * 100.0 };
    }
    None
}

/// Cholesky solve of a symmetric positive-definite system (row-major).
pub fn solve_psd(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let l = cholesky(a, n)?;
    // Forward then backward substitution with L and L^T.
    let mut x = b.to_vec();
    for i in 0..n {
        let mut s = x[i];
        for k in 0..i {
            s -= l[i * n + k] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    Some(x)
}

/// Inverse of a symmetric positive-definite matrix, or `None` when the
/// factorization breaks down (singular or indefinite input).
pub fn invert_psd(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut out = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.fill(0.0);
        e[j] = 1.0;
        let col = solve_psd(a, &e, n)?;
        for i in 0..n {
            out[i * n + j] = col[i];
        }
    }
    Some(out)
}

fn cholesky(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > 0.0) || !s.is_finite() {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Observed information (negative Hessian) by central differences of an
/// analytic gradient, symmetrized. Step sizes scale with the parameter
/// magnitude.
pub fn observed_information<G>(grad_fn: G, theta: &[f64]) -> Vec<f64>
where
    G: Fn(&[f64], &mut [f64]),
{
    let n = theta.len();
    let mut info = vec![0.0; n * n];
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    let mut point = theta.to_vec();
    for i in 0..n {
        let h = 1e-6 * theta[i].abs().max(1.0);
        point[i] = theta[i] + h;
        grad_fn(&point, &mut plus);
        point[i] = theta[i] - h;
        grad_fn(&point, &mut minus);
        point[i] = theta[i];
        for j in 0..n {
            info[i * n + j] -= (plus[j] - minus[j]) / (2.0 * h);
        }
    }
    // Symmetrize: differencing noise breaks exact symmetry.
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (info[i * n + j] + info[j * n + i]);
            info[i * n + j] = m;
            info[j * n + i] = m;
        }
    }
    info
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Quadratic {
        a: Vec<f64>, // SPD
        b: Vec<f64>,
        n: usize,
    }

    impl Objective for Quadratic {
        fn dim(&self) -> usize {
            self.n
        }
        fn value(&self, t: &[f64]) -> f64 {
            // -1/2 t'At + b't
            let mut v = 0.0;
            for i in 0..self.n {
                v += self.b[i] * t[i];
                for j in 0..self.n {
                    v -= 0.5 * t[i] * self.a[i * self.n + j] * t[j];
                }
            }
            v
        }
        fn value_grad_curv(&self, t: &[f64], grad: &mut [f64], curv: &mut [f64]) -> f64 {
            for i in 0..self.n {
                grad[i] = self.b[i];
                for j in 0..self.n {
                    grad[i] -= self.a[i * self.n + j] * t[j];
                }
            }
            curv.copy_from_slice(&self.a);
            self.value(t)
        }
    }

    #[test]
    fn solves_spd_system() {
        let a = vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let x = vec![1.0, -2.0, 0.5];
        let b: Vec<f64> = (0..3)
            .map(|i| (0..3).map(|j| a[i * 3 + j] * x[j]).sum())
            .collect();
        let got = solve_psd(&a, &b, 3).unwrap();
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn inverts_spd_matrix() {
        let a = vec![2.0, 0.3, 0.3, 1.0];
        let inv = invert_psd(&a, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let prod: f64 = (0..2).map(|k| a[i * 2 + k] * inv[k * 2 + j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod - want).abs() < 1e-12);
            }
        }
        assert!(invert_psd(&[1.0, 1.0, 1.0, 1.0], 2).is_none());
    }

    #[test]
    fn maximizes_unconstrained_quadratic() {
        let q = Quadratic { a: vec![2.0, 0.0, 0.0, 8.0], b: vec![1.0, -4.0], n: 2 };
        let rep = maximize(vec![5.0, 5.0], &q, |_t: &mut [f64]| {}, &AscentOptions::default());
        assert!(rep.converged);
        assert!((rep.theta[0] - 0.5).abs() < 1e-7);
        assert!((rep.theta[1] + 0.5).abs() < 1e-7);
    }

    #[test]
    fn respects_projection() {
        // Optimum at (0.5, -0.5) but the feasible box is [0, 1] x [0, 1].
        let q = Quadratic { a: vec![2.0, 0.0, 0.0, 8.0], b: vec![1.0, -4.0], n: 2 };
        let rep = maximize(
            vec![0.9, 0.9],
            &q,
            |t: &mut [f64]| {
                for x in t.iter_mut() {
                    *x = x.clamp(0.0, 1.0);
                }
            },
            &AscentOptions::default(),
        );
        assert!((rep.theta[0] - 0.5).abs() < 1e-6);
        assert!(rep.theta[1].abs() < 1e-6);
    }

    #[test]
    fn iteration_budget_is_honored() {
        let q = Quadratic { a: vec![1.0], b: vec![3.0], n: 1 };
        let start = vec![100.0];
        let v0 = q.value(&start);
        let rep = maximize(
            start,
            &q,
            |_t: &mut [f64]| {},
            &AscentOptions { max_iters: 1, value_tol: 1e-15, step_caps: None },
        );
        assert!(rep.value >= v0);
        assert_eq!(rep.iterations, 1);
    }

    #[test]
    fn observed_information_of_quadratic_is_the_matrix() {
        let q = Quadratic { a: vec![4.0, 1.0, 1.0, 3.0], b: vec![0.0, 0.0], n: 2 };
        let info = observed_information(
            |t, g| {
                let mut grad = vec![0.0; 2];
                let mut curv = vec![0.0; 4];
                q.value_grad_curv(t, &mut grad, &mut curv);
                g.copy_from_slice(&grad);
            },
            &[0.3, -0.7],
        );
        for (got, want) in info.iter().zip(&q.a) {
            assert!((got - want).abs() < 1e-5, "{got} vs {want}");
        }
    }
}
