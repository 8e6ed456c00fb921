//! Certified suprema of `|zeta|` and `|1/zeta|` on vertical segments, and
//! the grid verification of reciprocal bounds of the shape `C log t`.
//!
//! The supremum runs interval branch-and-bound on the segment. For a node
//! of width `w` around midpoint `m`,
//!
//! ```text
//! sup_node |zeta| <= |zeta(m)| + (w/2) |zeta'(m)| + (w/2)^2 M2 / 2 * 2
//! ```
//!
//! where `M2` bounds `|zeta''|` on the whole segment. (The quadratic term
//! uses the crude constant-`M2` form; it only matters near the peak where
//! node widths are small.) `M2` itself comes from the Cauchy estimate
//! `|f''| <= 2 sup_{|z-s|<=R} |f| / R^2`, with the sup over the enclosing
//! rectangle evaluated directly as a single fat-box Dirichlet development.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rug::Float;

use super::{em_zeta_ball, em_zeta_pair, pick_n_deriv, pick_n_zeta, CertifiedComplex, LnCache};
use crate::numerics::{CertifiedReal, PrecisionContext};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupTarget {
    Zeta,
    RecipZeta,
}

#[derive(Debug, Clone)]
pub struct SupResult {
    /// Enclosure of the supremum.
    pub enclosure: CertifiedReal,
    /// Where the best lower bound was observed.
    pub peak_t: f64,
    /// Number of evaluated nodes.
    pub nodes: u32,
    /// False when the heuristic sampler produced the result.
    pub certified: bool,
}

struct QNode {
    key: f64,
    t_lo: f64,
    t_hi: f64,
    bound: f64,
}

impl PartialEq for QNode {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for QNode {}
impl PartialOrd for QNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.total_cmp(&other.key)
    }
}

/// Tiny upward slop for f64 bookkeeping around certified quantities.
fn fup(x: f64) -> f64 {
    x + x.abs() * 1e-13 + 1e-300
}

const NODE_CAP: u32 = 200_000;
const WIDTH_FLOOR: f64 = 1e-11;

/// Upper bound for `|zeta''|` on the rectangle spanned by the segment,
/// through the Cauchy derivative estimate on discs of radius `R`.
fn cauchy_m2(sigma: f64, t_lo: f64, t_hi: f64, prec: u32) -> Result<f64> {
    let dx = (sigma - 1.0).abs();
    let dy = if t_lo <= 0.0 && t_hi >= 0.0 {
        0.0
    } else {
        t_lo.abs().min(t_hi.abs())
    };
    let d_pole = (dx * dx + dy * dy).sqrt();
    let mut r = (0.8 * sigma.min(d_pole)).min(0.4);
    // The enclosing rectangle must not contain the pole.
    let pole_inside = |r: f64| dx <= r && t_lo - r <= 0.0 && t_hi + r >= 0.0;
    if pole_inside(r) {
        r = if dx > 0.0 { 0.75 * dx } else { 0.75 * dy };
    }
    if !(r >= 0.01) {
        return Err(Error::Domain(format!(
            "segment sigma={sigma}, t in [{t_lo},{t_hi}] is too close to the pole for a second-derivative bound"
        )));
    }

    let mut cache = LnCache::new(prec);
    let mut m_r: f64 = 0.0;
    let sig_edges = [sigma - r, sigma, sigma + r];
    let t_full_lo = t_lo - r;
    let t_full_hi = t_hi + r;
    let pieces = ((t_full_hi - t_full_lo) / 1.0).ceil().max(1.0) as usize;
    let t_step = (t_full_hi - t_full_lo) / pieces as f64;
    for si in 0..2 {
        for p in 0..pieces {
            let s_ball = CertifiedComplex::new(
                CertifiedReal::from_endpoints(
                    Float::with_val(prec, sig_edges[si]),
                    Float::with_val(prec, sig_edges[si + 1]),
                ),
                CertifiedReal::from_endpoints(
                    Float::with_val(prec, t_full_lo + p as f64 * t_step),
                    Float::with_val(prec, t_full_lo + (p + 1) as f64 * t_step),
                ),
            );
            let z = em_zeta_ball(&s_ball, 200, prec, Some(&mut cache))?;
            m_r = m_r.max(z.abs().upper_f64());
        }
    }
    Ok(fup(2.0 * fup(m_r) / (r * r)))
}

struct NodeEval {
    abs_lo: f64,
    abs_hi: f64,
    deriv_hi: f64,
    contains_zero: bool,
}

fn eval_point(
    sigma: f64,
    t: f64,
    prec: u32,
    cache: &mut LnCache,
    target_z: f64,
    target_d: f64,
) -> Result<NodeEval> {
    let n = pick_n_zeta(sigma, t, target_z)
        .unwrap_or(super::N_CAP)
        .max(pick_n_deriv(sigma, t, target_d).unwrap_or(super::N_CAP));
    let s = CertifiedComplex::from_f64(sigma, t, prec);
    let (z, d) = em_zeta_pair(&s, n, prec, cache)?;
    let a = z.abs();
    Ok(NodeEval {
        abs_lo: a.lower_f64().max(0.0),
        abs_hi: fup(a.upper_f64()),
        deriv_hi: fup(d.abs().upper_f64()),
        contains_zero: a.lower_f64() <= 0.0,
    })
}

/// Supremum of `|zeta|` or `|1/zeta|` over `sigma + i [t_lo, t_hi]`.
///
/// `certified = false` samples a fixed grid and reports the best midpoint
/// (exploration mode). `certified = true` runs branch-and-bound to either
/// a relative bracket of `10^-4`, or, when `claim` is given, until every
/// node is pruned strictly below the claim, whichever allows stopping
/// first. The returned enclosure always contains the true supremum; a
/// successful claim run has `enclosure.upper() <= claim`.
pub fn sup_modulus_on_segment(
    sigma: f64,
    t_lo: f64,
    t_hi: f64,
    target: SupTarget,
    certified: bool,
    claim: Option<f64>,
    ctx: &PrecisionContext,
) -> Result<SupResult> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("segment needs sigma > 0, got {sigma}")));
    }
    if !(t_lo < t_hi) {
        return Err(Error::Domain(format!("empty segment [{t_lo}, {t_hi}]")));
    }
    if sigma == 1.0 && t_lo <= 0.0 && t_hi >= 0.0 {
        return Err(Error::Domain(
            "segment passes through the pole s = 1".into(),
        ));
    }
    if certified {
        sup_branch_and_bound(sigma, t_lo, t_hi, target, claim, ctx)
    } else {
        sup_heuristic(sigma, t_lo, t_hi, target, ctx)
    }
}

fn sup_heuristic(
    sigma: f64,
    t_lo: f64,
    t_hi: f64,
    target: SupTarget,
    ctx: &PrecisionContext,
) -> Result<SupResult> {
    let prec = ctx.bits().min(128);
    let mut cache = LnCache::new(prec);
    let samples = 257usize;
    let mut best = f64::NEG_INFINITY;
    let mut best_t = t_lo;
    let mut best_ball: Option<CertifiedReal> = None;
    for i in 0..samples {
        let t = t_lo + (t_hi - t_lo) * i as f64 / (samples - 1) as f64;
        let n = pick_n_zeta(sigma, t, 1e-6).unwrap_or(super::N_CAP);
        let s = CertifiedComplex::from_f64(sigma, t, prec);
        let z = em_zeta_ball(&s, n, prec, Some(&mut cache))?;
        let a = z.abs();
        let v = match target {
            SupTarget::Zeta => a.mid_f64(),
            SupTarget::RecipZeta => {
                if a.lower_f64() <= 0.0 {
                    return Err(Error::ZeroCrossing { t });
                }
                1.0 / a.mid_f64()
            }
        };
        if v > best {
            best = v;
            best_t = t;
            best_ball = Some(match target {
                SupTarget::Zeta => a,
                SupTarget::RecipZeta => a.recip(),
            });
        }
    }
    Ok(SupResult {
        enclosure: best_ball.expect("at least one sample"),
        peak_t: best_t,
        nodes: samples as u32,
        certified: false,
    })
}

fn sup_branch_and_bound(
    sigma: f64,
    t_lo: f64,
    t_hi: f64,
    target: SupTarget,
    claim: Option<f64>,
    ctx: &PrecisionContext,
) -> Result<SupResult> {
    let prec = ctx.bits();
    let m2 = cauchy_m2(sigma, t_lo, t_hi, prec.min(128))?;
    let mut cache = LnCache::new(prec);
    let target_z = 1e-5;
    let target_d = 1e-3;

    // In min mode (reciprocal) the roles of the bounds swap; keep a single
    // heap keyed so that the node most in need of refinement pops first.
    let minimize = target == SupTarget::RecipZeta;

    let mut nodes_evaluated: u32 = 0;
    let mut best_lo = f64::NEG_INFINITY; // max of |zeta(m)| lower bounds
    let mut best_hi_min = f64::INFINITY; // min of |zeta(m)| upper bounds
    let mut peak_t = 0.5 * (t_lo + t_hi);
    let mut pruned_extreme = if minimize { f64::INFINITY } else { f64::NEG_INFINITY };

    let eval_node = |lo: f64,
                     hi: f64,
                     cache: &mut LnCache,
                     best_lo: &mut f64,
                     best_hi_min: &mut f64,
                     peak_t: &mut f64|
     -> Result<QNode> {
        let m = 0.5 * (lo + hi);
        let w = hi - lo;
        let e = eval_point(sigma, m, prec, cache, target_z, target_d)?;
        if minimize && e.contains_zero && w <= WIDTH_FLOOR {
            return Err(Error::ZeroCrossing { t: m });
        }
        if e.abs_lo > *best_lo {
            *best_lo = e.abs_lo;
            if !minimize {
                *peak_t = m;
            }
        }
        if e.abs_hi < *best_hi_min {
            *best_hi_min = e.abs_hi;
            if minimize {
                *peak_t = m;
            }
        }
        let halfw = 0.5 * w;
        let lip = fup(halfw * fup(e.deriv_hi + halfw * m2));
        let (bound, key) = if minimize {
            let node_min_lo = (e.abs_lo - lip).max(0.0);
            (node_min_lo, -node_min_lo)
        } else {
            let node_max_hi = fup(e.abs_hi + lip);
            (node_max_hi, node_max_hi)
        };
        Ok(QNode {
            key,
            t_lo: lo,
            t_hi: hi,
            bound,
        })
    };

    let mut heap = BinaryHeap::new();
    heap.push(eval_node(
        t_lo,
        t_hi,
        &mut cache,
        &mut best_lo,
        &mut best_hi_min,
        &mut peak_t,
    )?);
    nodes_evaluated += 1;

    while let Some(node) = heap.pop() {
        // Prune level, recomputed as the incumbent improves.
        let prunable = if minimize {
            let level = match claim {
                // claim c on sup |1/zeta| means inf |zeta| >= 1/c
                Some(c) => {
                    let floor = 1.0 / c;
                    floor + 1e-4 * (best_hi_min - floor).max(0.0)
                }
                None => best_hi_min - 1e-4 * best_hi_min.abs().max(1e-9),
            };
            node.bound >= level
        } else {
            let level = match claim {
                Some(c) => c - 1e-4 * (c - best_lo).max(0.0) - 1e-12,
                None => best_lo + 1e-4 * best_lo.abs().max(1e-9),
            };
            node.bound <= level
        };
        if prunable {
            if minimize {
                pruned_extreme = pruned_extreme.min(node.bound);
            } else {
                pruned_extreme = pruned_extreme.max(node.bound);
            }
            continue;
        }
        let w = node.t_hi - node.t_lo;
        if w <= WIDTH_FLOOR {
            // Cannot refine further; fold the node into the result honestly.
            if minimize {
                pruned_extreme = pruned_extreme.min(node.bound);
            } else {
                pruned_extreme = pruned_extreme.max(node.bound);
            }
            continue;
        }
        if nodes_evaluated >= NODE_CAP {
            return Err(Error::Budget(format!(
                "supremum subdivision exceeded {NODE_CAP} nodes on [{t_lo}, {t_hi}]"
            )));
        }
        let mid = 0.5 * (node.t_lo + node.t_hi);
        for (a, b) in [(node.t_lo, mid), (mid, node.t_hi)] {
            heap.push(eval_node(
                a,
                b,
                &mut cache,
                &mut best_lo,
                &mut best_hi_min,
                &mut peak_t,
            )?);
            nodes_evaluated += 1;
        }
    }

    // The segment is covered by pruned nodes, so in max mode the sup lies in
    // [best_lo, max pruned upper]; in min mode the infimum lies in
    // [min pruned lower, best_hi_min].
    let enclosure = if minimize {
        let inf_lo = pruned_extreme.min(best_hi_min);
        if !(inf_lo > 0.0) {
            return Err(Error::ZeroCrossing { t: peak_t });
        }
        let inf = CertifiedReal::from_endpoints(
            Float::with_val(prec, inf_lo),
            Float::with_val(prec, best_hi_min),
        );
        inf.recip()
    } else {
        CertifiedReal::from_endpoints(
            Float::with_val(prec, best_lo),
            Float::with_val(prec, pruned_extreme.max(best_lo)),
        )
    };

    Ok(SupResult {
        enclosure,
        peak_t,
        nodes: nodes_evaluated,
        certified: true,
    })
}

/// Outcome of the node-by-node verification of `1/|zeta(1+it)| <= coef *
/// log t` on an arithmetic grid.
#[derive(Debug, Clone)]
pub struct GridCheckReport {
    pub nodes: usize,
    pub refined: usize,
    pub pass: bool,
    /// Smallest certified margin of `coef * log t * |zeta(1+it)| - 1`.
    pub worst_margin: f64,
    pub worst_t: f64,
}

/// Check the reciprocal bound at every grid node `t = t_lo + k step`,
/// `t <= t_hi`. The step must be a reciprocal integer times an integer to
/// keep the grid exact (0.05 qualifies). Two passes: a cheap low-precision
/// sweep, then full-precision refinement of any node that did not clear.
pub fn recip_logt_grid_check(
    coef_dec: &str,
    t_lo: f64,
    t_hi: f64,
    step: f64,
    ctx: &PrecisionContext,
) -> Result<GridCheckReport> {
    let den = (1.0 / step).round();
    if !(den >= 1.0) || (den * step - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("step {step} is not a unit fraction")));
    }
    let den = den as u64;
    let num_lo = (t_lo * den as f64).round() as u64;
    let num_hi = (t_hi * den as f64).round() as u64;
    if num_lo as f64 != t_lo * den as f64 || num_hi as f64 != t_hi * den as f64 {
        return Err(Error::Domain(
            "grid endpoints must be multiples of the step".into(),
        ));
    }
    if !(t_lo > 1.0) {
        return Err(Error::Domain("grid needs t > 1 so that log t > 0".into()));
    }

    let coarse_prec = ctx.bits().min(140);
    let mut cache = LnCache::new(coarse_prec);
    let coef_coarse = CertifiedReal::from_decimal(coef_dec, coarse_prec)?;

    let node_margin = |k: u64,
                       prec: u32,
                       coef: &CertifiedReal,
                       target: f64,
                       cache: &mut LnCache|
     -> Result<f64> {
        let t_ball = CertifiedReal::from_u64(num_lo + k, prec)
            .div(&CertifiedReal::from_u64(den, prec));
        let t_mid = (num_lo + k) as f64 / den as f64;
        let n = pick_n_zeta(1.0, t_mid, target).unwrap_or(super::N_CAP);
        let s = CertifiedComplex::new(CertifiedReal::from_u64(1, prec), t_ball.clone());
        let z = em_zeta_ball(&s, n, prec, Some(cache))?;
        let p = z.abs().mul(coef).mul(&t_ball.ln());
        Ok(p.lower_f64() - 1.0)
    };

    let total = (num_hi - num_lo) as usize + 1;
    let mut worst_margin = f64::INFINITY;
    let mut worst_t = t_lo;
    let mut suspects: Vec<u64> = Vec::new();
    for k in 0..total as u64 {
        let margin = node_margin(k, coarse_prec, &coef_coarse, 4e-3, &mut cache)?;
        if margin < 0.0 {
            suspects.push(k);
        } else if margin < worst_margin {
            worst_margin = margin;
            worst_t = (num_lo + k) as f64 / den as f64;
        }
    }

    let fine_prec = ctx.bits();
    let mut fine_cache = LnCache::new(fine_prec);
    let coef_fine = CertifiedReal::from_decimal(coef_dec, fine_prec)?;
    let mut pass = true;
    for &k in &suspects {
        let margin = node_margin(k, fine_prec, &coef_fine, 2e-6, &mut fine_cache)?;
        let t = (num_lo + k) as f64 / den as f64;
        if margin < worst_margin {
            worst_margin = margin;
            worst_t = t;
        }
        if margin < 0.0 {
            pass = false;
        }
    }

    Ok(GridCheckReport {
        nodes: total,
        refined: suspects.len(),
        pass,
        worst_margin,
        worst_t,
    })
}
