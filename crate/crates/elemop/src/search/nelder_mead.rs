//! Plain Nelder-Mead simplex minimizer with collapse detection, used by the
//! derivative-free searches where eigenvalue objectives are nonsmooth.

/// Reflection/expansion/contraction/shrink coefficients are the textbook
/// (1, 2, 0.5, 0.5).
#[derive(Debug, Clone, Copy)]
pub struct NmOptions {
    pub max_iters: usize,
    /// Stop when the simplex f-spread falls below this (absolute).
    pub ftol: f64,
    /// Declare collapse when the simplex diameter falls below this.
    pub xtol: f64,
    /// Initial orthogonal step from the starting point.
    pub init_step: f64,
}

impl Default for NmOptions {
    fn default() -> Self {
        NmOptions { max_iters: 500, ftol: 1e-12, xtol: 1e-10, init_step: 0.5 }
    }
}

#[derive(Debug, Clone)]
pub struct NmOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    /// Best value after each iteration (non-increasing).
    pub trace: Vec<f64>,
    /// The simplex shrank below `xtol` before the iteration budget ran out.
    pub collapsed: bool,
}

/// Minimize `f` starting from `x0`.
pub fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], opts: &NmOptions) -> NmOutcome {
    let n = x0.len();
    assert!(n >= 1, "nelder_mead needs at least one coordinate");

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = f(x0);
    simplex.push((x0.to_vec(), f0));
    for i in 0..n {
        let mut xi = x0.to_vec();
        xi[i] += opts.init_step;
        let fi = f(&xi);
        simplex.push((xi, fi));
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut trace = vec![simplex[0].1];
    let mut iterations = 0usize;
    let mut collapsed = false;

    for _ in 0..opts.max_iters {
        iterations += 1;

        let spread = simplex[n].1 - simplex[0].1;
        let diam = simplex
            .iter()
            .skip(1)
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0f64, f64::max);
        if diam <= opts.xtol {
            collapsed = true;
            break;
        }
        if spread.abs() <= opts.ftol * (simplex[0].1.abs() + 1e-30) {
            collapsed = true;
            break;
        }

        // centroid of all but the worst
        let mut centroid = vec![0.0f64; n];
        for (x, _) in simplex.iter().take(n) {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let second_worst_f = simplex[n - 1].1;
        let best_f = simplex[0].1;

        let point_at = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = point_at(1.0);
        let fr = f(&xr);
        if fr < best_f {
            let xe = point_at(2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = (xe, fe);
            } else {
                simplex[n] = (xr, fr);
            }
        } else if fr < second_worst_f {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = point_at(0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc: Vec<f64> =
                    centroid.iter().zip(&worst.0).map(|(c, w)| c - 0.5 * (c - w)).collect();
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                // shrink toward the best point
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> =
                        best.iter().zip(&entry.0).map(|(b, x)| b + 0.5 * (x - b)).collect();
                    let fx = f(&x);
                    *entry = (x, fx);
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(simplex[0].1);
    }

    let (x, fbest) = simplex.swap_remove(0);
    NmOutcome { x, f: fbest, iterations, trace, collapsed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2);
        let out = nelder_mead(f, &[3.0, 3.0], &NmOptions { max_iters: 400, ..Default::default() });
        assert!(out.f < 1e-10, "f = {}", out.f);
        assert!((out.x[0] - 1.0).abs() < 1e-4);
        assert!((out.x[1] + 0.5).abs() < 1e-4);
    }

    #[test]
    fn minimizes_rosenbrock_with_budget() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let out = nelder_mead(
            f,
            &[-1.2, 1.0],
            &NmOptions { max_iters: 2000, init_step: 0.3, ..Default::default() },
        );
        assert!(out.f < 1e-8, "f = {}", out.f);
    }

    #[test]
    fn trace_is_monotone() {
        let f = |x: &[f64]| x.iter().map(|v| v.cos() + v * v * 0.1).sum::<f64>();
        let out = nelder_mead(f, &[2.0, -1.0, 0.5], &NmOptions::default());
        for w in out.trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-15);
        }
    }
}
