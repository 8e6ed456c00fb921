//! Deterministic reproduction of the published constant tables.
//!
//! Every table row is a small box-constrained minimization: at most three
//! free parameters, a smooth objective, and hard validity conditions. The
//! search runs in plain `f64` with infeasible points scored +infinity,
//! from a Latin-hypercube spread of starts plus the published point
//! itself; the winner is then re-evaluated with balls so the reported
//! value carries a certificate and a condition report.

mod nelder_mead;
pub mod reproduce;

pub use reproduce::{
    certified_row, problem_for_row, reproduce_table, FixtureRow, FixtureSet, OptRowReport,
    OptimizeConfig, RowReport, TableId,
};

use crate::bounds::kernels;
use crate::bounds::{self, Condition, HParams, LadderTable, ReciprocalParams, RhParams};
use crate::numerics::zeta_real::zeta_real_f64;
use crate::numerics::{CertifiedReal, Constants, PrecisionContext, W0_F64};
use crate::{Error, Result};
use nelder_mead::{minimize, SimplexOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rug::Float;

/// How far inside every open condition the search stays. Window conditions
/// that the tables deliberately pin at their boundary (the eta window of
/// the strip constant) are checked closed, without slack.
const SLACK: f64 = 1e-9;

/// What a problem minimizes. Each variant documents its vector layout;
/// everything not in the vector is fixed data of the row.
#[derive(Debug, Clone)]
pub enum ObjectiveKind {
    /// Strip log-derivative constant with the width pinned: beta is solved
    /// from (w, d, eps1), so every trial stays on the W = const slice.
    /// x = [eps1, sigma1, eta].
    StripQ { w: f64, d: f64, t0: f64 },
    /// One-line log-derivative constant, beta at its floor.
    /// x = [eps1, sigma1, eta].
    OneLineQ { d: f64, t0: f64 },
    /// Conditional (verified-zeros) log-derivative constant.
    /// x = [eps, sigma1, eta].
    ConditionalQ { sigma0: f64, t0: f64 },
    /// Reciprocal log t constant over a fixed ladder. x = [d1, sigma1, eta].
    ReciprocalY { t0: f64, ladder: Vec<(f64, f64)> },
    /// Slow-growth reciprocal constant. x = [d1].
    ReciprocalYPrime { t0: f64, ladder: Vec<(f64, f64)> },
    /// Additive strip constant over its eta window, with W = W0 and
    /// sigma1 = 1. x = [eta].
    StripConstant { t0: f64 },
    /// The same value everywhere in [0, 1] (degenerate, exercises the
    /// driver).
    Constant { value: f64 },
}

impl ObjectiveKind {
    pub fn dim(&self) -> usize {
        match self {
            ObjectiveKind::StripQ { .. }
            | ObjectiveKind::OneLineQ { .. }
            | ObjectiveKind::ConditionalQ { .. }
            | ObjectiveKind::ReciprocalY { .. } => 3,
            ObjectiveKind::ReciprocalYPrime { .. }
            | ObjectiveKind::StripConstant { .. }
            | ObjectiveKind::Constant { .. } => 1,
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            ObjectiveKind::StripQ { .. } | ObjectiveKind::OneLineQ { .. } => {
                &["eps1", "sigma1", "eta"]
            }
            ObjectiveKind::ConditionalQ { .. } => &["eps", "sigma1", "eta"],
            ObjectiveKind::ReciprocalY { .. } => &["d1", "sigma1", "eta"],
            ObjectiveKind::ReciprocalYPrime { .. } => &["d1"],
            ObjectiveKind::StripConstant { .. } => &["eta"],
            ObjectiveKind::Constant { .. } => &["x"],
        }
    }

    /// The search box. Couplings between free parameters (sigma1 >= 1+eps)
    /// are enforced by rejection in [`ObjectiveKind::eval`], not here.
    pub fn search_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            ObjectiveKind::StripQ { d, t0, .. } | ObjectiveKind::OneLineQ { d, t0 } => {
                let lt = t0.ln();
                (
                    vec![2.0 * d / lt + 2.0 * SLACK, 1.0 + d / lt + 2.0 * SLACK, 0.05],
                    vec![0.5, 2.0, 5.0f64.min(2.0 * t0 - 1.0)],
                )
            }
            ObjectiveKind::ConditionalQ { sigma0, t0 } => (
                vec![(sigma0 - 1.0 + 1e-6).max(1e-6), 1.0 + 1e-6, 0.05],
                vec![
                    (sigma0 - 0.5 - 1e-6).min(0.5),
                    2.0,
                    5.0f64.min(2.0 * t0 - 1.0),
                ],
            ),
            ObjectiveKind::ReciprocalY { t0, .. } => (
                vec![0.005, 1.0 + 1e-4, 0.05],
                vec![0.2, 2.0, 5.0f64.min(2.0 * t0 - 1.0)],
            ),
            ObjectiveKind::ReciprocalYPrime { .. } => (vec![0.005], vec![0.2]),
            ObjectiveKind::StripConstant { t0 } => (vec![2.0 / t0], vec![1.0 - 1.0 / t0]),
            ObjectiveKind::Constant { .. } => (vec![0.0], vec![1.0]),
        }
    }

    /// The search objective: the bound constant at x, or +infinity when any
    /// validity condition fails.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let v = match self {
            ObjectiveKind::StripQ { w, d, t0 } => {
                let (eps1, sigma1, eta) = (x[0], x[1], x[2]);
                let lt = t0.ln();
                if !(eps1 > 2.0 * d / lt + SLACK && eps1 <= 0.5) {
                    return f64::INFINITY;
                }
                let ae = kernels::a_eps1(&eps1, t0);
                let beta = (1.0 / w + d) / (d * (1.0 + 1.0 / ae));
                if !(beta < 1.0 - SLACK) {
                    return f64::INFINITY;
                }
                if !strip_free_ok(sigma1, eta, *d, *t0) {
                    return f64::INFINITY;
                }
                kernels::q_h(d, &beta, &eps1, &sigma1, &eta, t0).1
            }
            ObjectiveKind::OneLineQ { d, t0 } => {
                let (eps1, sigma1, eta) = (x[0], x[1], x[2]);
                if !(eps1 > 2.0 * d / t0.ln() + SLACK && eps1 <= 0.5) {
                    return f64::INFINITY;
                }
                if !strip_free_ok(sigma1, eta, *d, *t0) {
                    return f64::INFINITY;
                }
                kernels::q_one(d, &eps1, &sigma1, &eta, t0).0
            }
            ObjectiveKind::ConditionalQ { sigma0, t0 } => {
                let (eps, sigma1, eta) = (x[0], x[1], x[2]);
                if !(eps > SLACK) {
                    return f64::INFINITY;
                }
                let alpha0 = 2.0 * (1.0 + eps - sigma0);
                if !(alpha0 > SLACK && alpha0 < 1.0 - SLACK) {
                    return f64::INFINITY;
                }
                if !(sigma1 >= 1.0 + eps + SLACK && sigma1 <= 2.0) {
                    return f64::INFINITY;
                }
                if !(eta > SLACK && eta < 2.0 * t0 - SLACK) {
                    return f64::INFINITY;
                }
                let delta_r = 0.5 + eps;
                let z = zeta_real_f64(1.0 + delta_r);
                if !(kernels::t0_onset_margin(&delta_r, t0, &z) > 0.0) {
                    return f64::INFINITY;
                }
                kernels::q_rh(sigma0, &eps, &sigma1, &eta, t0).0
            }
            ObjectiveKind::ReciprocalY { t0, ladder } => {
                let (d1, sigma1, eta) = (x[0], x[1], x[2]);
                if !strip_free_ok(sigma1, eta, d1, *t0) || !(d1 > SLACK) {
                    return f64::INFINITY;
                }
                let ls = kernels::ladder_sum(&d1, ladder);
                kernels::y0(&d1, &sigma1, &eta, t0, &ls).0
            }
            ObjectiveKind::ReciprocalYPrime { t0, ladder } => {
                let d1 = x[0];
                if !(d1 > SLACK) {
                    return f64::INFINITY;
                }
                let ls = kernels::ladder_sum(&d1, ladder);
                kernels::yprime0(&d1, t0, &ls).0
            }
            ObjectiveKind::StripConstant { t0 } => {
                let eta = x[0];
                if !(eta >= 2.0 / t0 && eta <= 1.0 - 1.0 / t0) {
                    return f64::INFINITY;
                }
                kernels::c0_strip(&W0_F64, &1.0, t0, &eta).1
            }
            ObjectiveKind::Constant { value } => {
                if !(0.0..=1.0).contains(&x[0]) {
                    return f64::INFINITY;
                }
                *value
            }
        };
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    }

    /// Re-evaluate the objective at `x` with balls, returning the certified
    /// value and the full condition report of the underlying bound.
    pub fn certify(
        &self,
        x: &[f64],
        ctx: &PrecisionContext,
    ) -> Result<(CertifiedReal, Vec<Condition>)> {
        let prec = ctx.bits();
        let one = CertifiedReal::from_u64(1, prec);
        match self {
            ObjectiveKind::StripQ { w, d, t0 } => {
                let w = wide(*w, prec);
                let d = wide(*d, prec);
                let t0 = wide(*t0, prec);
                let eps1 = wide(x[0], prec);
                let ae = kernels::a_eps1(&eps1, &t0);
                let beta = w
                    .recip()
                    .add(&d)
                    .div(&d.mul(&one.add(&ae.recip())));
                let p = HParams::new(d, beta, eps1, wide(x[1], prec), wide(x[2], prec), t0)?;
                let (_, bound) = bounds::q_h(&p, ctx)?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::OneLineQ { d, t0 } => {
                let bound = bounds::q_one(
                    &wide(*d, prec),
                    &wide(x[0], prec),
                    &wide(x[1], prec),
                    &wide(x[2], prec),
                    &wide(*t0, prec),
                    ctx,
                )?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::ConditionalQ { sigma0, t0 } => {
                let p = RhParams::with_default_horizon(
                    wide(*sigma0, prec),
                    wide(x[0], prec),
                    wide(x[1], prec),
                    wide(x[2], prec),
                    wide(*t0, prec),
                )?;
                let bound = bounds::q_rh(&p, ctx)?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::ReciprocalY { t0, ladder } => {
                let p = ReciprocalParams::new(
                    wide(x[0], prec),
                    wide(x[1], prec),
                    wide(x[2], prec),
                    wide(*t0, prec),
                    ladder_balls(ladder, prec)?,
                    false,
                )?;
                let bound = bounds::y0(&p)?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::ReciprocalYPrime { t0, ladder } => {
                // sigma1 and eta do not enter the slow-growth estimate or
                // its conditions; any admissible placeholders will do.
                let p = ReciprocalParams::new(
                    wide(x[0], prec),
                    CertifiedReal::from_rational(3, 2, prec),
                    CertifiedReal::from_u64(3, prec),
                    wide(*t0, prec),
                    ladder_balls(ladder, prec)?,
                    true,
                )?;
                let bound = bounds::yprime0(&p)?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::StripConstant { t0 } => {
                let w = Constants::w0_ball(prec);
                let (_, bound) =
                    bounds::c0_strip(&w, &one, &wide(*t0, prec), &wide(x[0], prec))?;
                Ok((bound.value, bound.conditions))
            }
            ObjectiveKind::Constant { value } => {
                Ok((CertifiedReal::from_f64(*value, prec), Vec::new()))
            }
        }
    }
}

/// Shared rejection test for the strip-family free parameters.
fn strip_free_ok(sigma1: f64, eta: f64, d: f64, t0: f64) -> bool {
    sigma1 >= 1.0 + d / t0.ln() + SLACK
        && sigma1 <= 2.0
        && eta > SLACK
        && eta < 2.0 * t0 - SLACK
}

/// Ball around a searched f64 point, padded by a couple of ulps so that
/// parameters meant to sit exactly on a window endpoint (an exact rational
/// eta, d = 1/W0, t0 = H) enclose the endpoint instead of falling on its
/// wrong side by a rounding error.
fn wide(x: f64, prec: u32) -> CertifiedReal {
    let pad = Float::with_val(32, x.abs() * 1e-15 + 1e-290);
    CertifiedReal::from_f64(x, prec).widened(&pad)
}

fn ladder_balls(ladder: &[(f64, f64)], prec: u32) -> Result<LadderTable> {
    LadderTable::new(
        ladder
            .iter()
            .map(|(w, q)| {
                (
                    CertifiedReal::from_f64(*w, prec),
                    CertifiedReal::from_f64(*q, prec),
                )
            })
            .collect(),
    )
}

/// A named minimization: objective, box, seed, and the published point to
/// start from (when reproducing a table row).
#[derive(Debug, Clone)]
pub struct OptimizationProblem {
    pub name: String,
    pub kind: ObjectiveKind,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub warm: Option<Vec<f64>>,
    pub seed: u64,
}

impl OptimizationProblem {
    pub fn new(name: impl Into<String>, kind: ObjectiveKind, seed: u64) -> Result<Self> {
        let name = name.into();
        let (lower, upper) = kind.search_box();
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::InfeasibleBox(format!(
                "{name}: the search box is empty"
            )));
        }
        match &kind {
            ObjectiveKind::StripQ { w, d, t0 } => {
                if !(*w > W0_F64) {
                    return Err(Error::InfeasibleBox(format!(
                        "{name}: pinned width {w} does not exceed W0"
                    )));
                }
                check_strip_fixed(&name, *d, *t0)?;
            }
            ObjectiveKind::OneLineQ { d, t0 } => check_strip_fixed(&name, *d, *t0)?,
            _ => {}
        }
        Ok(OptimizationProblem {
            name,
            kind,
            lower,
            upper,
            warm: None,
            seed,
        })
    }

    pub fn with_warm(mut self, warm: Vec<f64>) -> Result<Self> {
        if warm.len() != self.kind.dim() {
            return Err(Error::Domain(format!(
                "{}: warm start has {} coordinates, objective takes {}",
                self.name,
                warm.len(),
                self.kind.dim()
            )));
        }
        self.warm = Some(warm);
        Ok(self)
    }
}

/// The conditions of the strip family that do not move with the free
/// parameters; when these fail, no point of the box is feasible.
fn check_strip_fixed(name: &str, d: f64, t0: f64) -> Result<()> {
    if !(d > 0.0 && d <= 1.0 / W0_F64 + 1e-15) {
        return Err(Error::InfeasibleBox(format!(
            "{name}: d = {d} outside (0, 1/W0]"
        )));
    }
    let delta_r = 0.5 + 2.0 * d / t0.ln();
    let z = zeta_real_f64(1.0 + delta_r);
    if !(kernels::t0_onset_margin(&delta_r, &t0, &z) > 0.0) {
        return Err(Error::InfeasibleBox(format!(
            "{name}: t0 = {t0} sits before the estimate's onset"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct OptSettings {
    /// Latin-hypercube starts, on top of the warm start.
    pub starts: usize,
    pub max_iters: usize,
}

impl Default for OptSettings {
    fn default() -> Self {
        OptSettings {
            starts: 32,
            max_iters: 400,
        }
    }
}

/// The outcome of a minimization: the best point, its certified
/// re-evaluation, and the search's bookkeeping.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub best: Vec<f64>,
    /// Ball re-evaluation of the objective at `best`.
    pub value: CertifiedReal,
    /// The search-phase objective at `best`.
    pub value_f64: f64,
    pub conditions: Vec<Condition>,
    pub evaluations: u64,
    /// (evaluation count, objective) at each improvement of the running
    /// best across starts.
    pub trace: Vec<(u64, f64)>,
}

impl OptResult {
    pub fn all_satisfied(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }
}

pub fn optimize(problem: &OptimizationProblem, ctx: &PrecisionContext) -> Result<OptResult> {
    optimize_with(problem, &OptSettings::default(), ctx)
}

pub fn optimize_with(
    problem: &OptimizationProblem,
    settings: &OptSettings,
    ctx: &PrecisionContext,
) -> Result<OptResult> {
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(settings.starts + 1);
    if let Some(w) = &problem.warm {
        starts.push(w.clone());
    }
    starts.extend(latin_hypercube(
        &problem.lower,
        &problem.upper,
        settings.starts,
        problem.seed,
    ));

    let opts = SimplexOptions {
        max_iters: settings.max_iters,
        ..SimplexOptions::default()
    };
    let mut evaluations: u64 = 0;
    let mut trace: Vec<(u64, f64)> = Vec::new();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in &starts {
        let outcome = minimize(
            |x| problem.kind.eval(x),
            start,
            &problem.lower,
            &problem.upper,
            &opts,
        );
        evaluations += outcome.evaluations;
        if !outcome.best_f.is_finite() {
            continue;
        }
        let take = match &best {
            None => true,
            Some((bf, bx)) => improves(outcome.best_f, &outcome.best_x, *bf, bx),
        };
        if take {
            trace.push((evaluations, outcome.best_f));
            best = Some((outcome.best_f, outcome.best_x));
        }
    }

    let (value_f64, best) = best.ok_or_else(|| {
        Error::InfeasibleBox(format!(
            "{}: no start led to a feasible point",
            problem.name
        ))
    })?;
    let (value, conditions) = problem.kind.certify(&best, ctx)?;
    Ok(OptResult {
        best,
        value,
        value_f64,
        conditions,
        evaluations,
        trace,
    })
}

/// Strictly better, or equal within 1e-9 (relative) and lexicographically
/// smaller; the tie-break keeps the reduction over starts deterministic
/// even if two basins bottom out at the same value.
fn improves(f_new: f64, x_new: &[f64], f_best: f64, x_best: &[f64]) -> bool {
    let tol = 1e-9 * f_best.abs().max(1.0);
    if f_new < f_best - tol {
        return true;
    }
    if f_new > f_best + tol {
        return false;
    }
    for (a, b) in x_new.iter().zip(x_best) {
        if a < b {
            return true;
        }
        if a > b {
            return false;
        }
    }
    false
}

/// One stratified sample per start and dimension, strata visited in an
/// order drawn from the seeded generator.
fn latin_hypercube(lower: &[f64], upper: &[f64], n: usize, seed: u64) -> Vec<Vec<f64>> {
    let dim = lower.len();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let strata: Vec<Vec<usize>> = (0..dim)
        .map(|_| {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            idx
        })
        .collect();
    (0..n)
        .map(|k| {
            (0..dim)
                .map(|d| {
                    let u: f64 = rng.gen();
                    lower[d] + (upper[d] - lower[d]) * ((strata[d][k] as f64 + u) / n as f64)
                })
                .collect()
        })
        .collect()
}
