//! A small Nelder-Mead simplex, specialized to rejection-style objectives:
//! infeasible points score +infinity and the simplex flows around them.

pub struct SimplexOptions {
    pub max_iters: usize,
    /// Stop when the value spread across the simplex falls under
    /// `f_tol * (1 + |best|)`.
    pub f_tol: f64,
    /// ... and the simplex diameter under `x_tol * (1 + |best|_inf)`.
    pub x_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iters: 400,
            f_tol: 1e-10,
            x_tol: 1e-10,
        }
    }
}

pub struct SimplexOutcome {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub evaluations: u64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &SimplexOptions,
) -> SimplexOutcome {
    let dim = start.len();
    let mut evals: u64 = 0;
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    // Initial simplex: the start plus one vertex per coordinate, offset by
    // 5% of the box span, flipped inward when the offset would leave the box.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(start, &mut evals);
    simplex.push((start.to_vec(), f0));
    for i in 0..dim {
        let mut h = 0.05 * (upper[i] - lower[i]);
        if h == 0.0 {
            h = 1e-12;
        }
        let mut v = start.to_vec();
        v[i] = if v[i] + h <= upper[i] { v[i] + h } else { v[i] - h };
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    for _ in 0..opts.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let f_lo = simplex[0].1;
        let f_hi = simplex[dim].1;
        if !f_lo.is_finite() {
            // Nowhere feasible in sight; reflections cannot help.
            break;
        }
        if f_hi.is_finite() {
            let spread = f_hi - f_lo;
            let scale = simplex[0].0.iter().fold(0f64, |m, v| m.max(v.abs()));
            let diam = simplex[1..]
                .iter()
                .flat_map(|(x, _)| {
                    x.iter()
                        .zip(&simplex[0].0)
                        .map(|(a, b)| (a - b).abs())
                })
                .fold(0f64, f64::max);
            if spread <= opts.f_tol * (1.0 + f_lo.abs()) && diam <= opts.x_tol * (1.0 + scale) {
                break;
            }
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(x, _)| x[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let through = |t: f64| -> Vec<f64> {
            (0..dim)
                .map(|i| centroid[i] + t * (centroid[i] - worst.0[i]))
                .collect()
        };

        let xr = through(REFLECT);
        let fr = eval(&xr, &mut evals);
        if fr < simplex[0].1 {
            let xe = through(EXPAND);
            let fe = eval(&xe, &mut evals);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = through(REFLECT * CONTRACT);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = through(-CONTRACT);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < fr.min(worst.1) {
                simplex[dim] = (xc, fc);
            } else {
                for j in 1..=dim {
                    let xj: Vec<f64> = (0..dim)
                        .map(|i| simplex[0].0[i] + SHRINK * (simplex[j].0[i] - simplex[0].0[i]))
                        .collect();
                    let fj = eval(&xj, &mut evals);
                    simplex[j] = (xj, fj);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexOutcome {
        best_x: simplex[0].0.clone(),
        best_f: simplex[0].1,
        evaluations: evals,
    }
}
