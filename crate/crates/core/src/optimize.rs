//! Damped Gauss-Newton (Levenberg-Marquardt) with a finite-difference
//! Jacobian, and a seeded multi-start driver.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct LmResult {
    pub x: Vec<f64>,
    /// Half the squared residual norm at `x`.
    pub cost: f64,
    pub iterations: usize,
}

const STALL_WINDOW: usize = 50;
const STALL_RATIO: f64 = 1e-2;

fn cost(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|v| v * v).sum::<f64>()
}

/// Minimizes `|f(x)|^2` from `x0`. Stops when the cost drops below
/// `cost_tol`, the step stalls, the cost falls by less than
/// `STALL_RATIO` over `STALL_WINDOW` iterations, or after `max_iter`.
pub fn levenberg_marquardt(
    f: &dyn Fn(&[f64]) -> Vec<f64>,
    x0: &[f64],
    max_iter: usize,
    cost_tol: f64,
) -> LmResult {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut r = f(&x);
    let mut c = cost(&r);
    if n == 0 {
        return LmResult { x, cost: c, iterations: 0 };
    }
    let mut lambda = 1e-3;
    let mut it = 0;
    let mut checkpoint = c;
    while it < max_iter && c > cost_tol {
        it += 1;
        if it % STALL_WINDOW == 0 {
            if checkpoint - c <= STALL_RATIO * checkpoint {
                break;
            }
            checkpoint = c;
        }
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, n);
        for k in 0..n {
            let h = 1e-7 * x[k].abs().max(1.0);
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let (rp, rm) = (f(&xp), f(&xm));
            for i in 0..m {
                jac[(i, k)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let rv = DVector::from_column_slice(&r);
        let jtj = jac.transpose() * &jac;
        let g = jac.transpose() * &rv;
        let mut accepted = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for k in 0..n {
                a[(k, k)] += lambda * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.cholesky().map(|ch| ch.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rn = f(&xn);
            let cn = cost(&rn);
            if cn.is_finite() && cn < c {
                let small = step.norm() <= 1e-15 * (1.0 + DVector::from_column_slice(&x).norm());
                x = xn;
                r = rn;
                c = cn;
                lambda = (lambda * 0.3).max(1e-12);
                accepted = !small;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    LmResult { x, cost: c, iterations: it }
}

/// Outcome of one start, tagged with its index for deterministic merging.
#[derive(Clone, Debug)]
pub struct StartResult<T> {
    pub start: usize,
    pub residual: f64,
    pub value: T,
}

/// Runs `starts` independent searches. Start `k` receives a generator seeded
/// from `(seed, k)`, so results do not depend on scheduling. The output is
/// sorted by `(residual, start)`.
pub fn multistart<T, F>(starts: usize, seed: u64, run: F) -> Vec<StartResult<T>>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> (f64, T) + Sync,
{
    let one = |k: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let (residual, value) = run(k, &mut rng);
        StartResult { start: k, residual, value }
    };
    #[cfg(feature = "parallel")]
    let mut out: Vec<StartResult<T>> = {
        use rayon::prelude::*;
        (0..starts).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<StartResult<T>> = (0..starts).map(one).collect();
    out.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.start.cmp(&b.start)));
    out
}
