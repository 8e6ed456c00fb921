//! Zeta on the real axis, `sigma > 0`, `sigma != 1`, through the truncated
//! Dirichlet sum with its integral and Bernoulli corrections and a
//! certified tail radius.

use super::{CertifiedReal, PrecisionContext};
use crate::{Error, Result};

pub const N_CAP: u64 = 1_000_000;

/// `B_{2k} / (2k)!` for `k = 1..=9`, exact. Eight are used as correction
/// terms; the ninth bounds the remainder.
pub(crate) const EM_COEF: [(i64, u64); 9] = [
    (1, 12),
    (-1, 720),
    (1, 30240),
    (-1, 1209600),
    (1, 47900160),
    (-691, 1307674368000),
    (1, 74724249600),
    (-3617, 10670622842880000),
    (43867, 5109094217170944000),
];

/// How many correction terms the evaluators apply.
pub(crate) const EM_ORDER: usize = 8;

/// The remainder estimate in plain doubles: the magnitude of the first
/// dropped correction term, `|c_9| (sigma)(sigma+1)...(sigma+16) N^{-sigma-17}`.
fn em_tail_estimate(sigma: f64, n: f64) -> f64 {
    let (num, den) = EM_COEF[EM_ORDER];
    let mut ln_t = (num.unsigned_abs() as f64).ln() - (den as f64).ln();
    for j in 0..(2 * EM_ORDER + 1) {
        ln_t += (sigma + j as f64).ln();
    }
    ln_t -= (sigma + 2.0 * EM_ORDER as f64 + 1.0) * n.ln();
    ln_t.exp()
}

/// Smallest cutoff that pushes the remainder under `target`, computed in
/// log space; `None` when the cap is passed.
fn pick_n(sigma: f64, target: f64) -> Option<u64> {
    if !(target > 0.0) {
        return None;
    }
    let mut n = 16u64;
    while n <= N_CAP {
        if em_tail_estimate(sigma, n as f64) < target * 0.5 {
            return Some(n);
        }
        n = n.saturating_mul(2);
    }
    None
}

/// Evaluate with an explicit cutoff: the truncated sum, the integral and
/// midpoint corrections, and eight Bernoulli terms. The integrand
/// `x^{-sigma}` is completely monotone for `sigma > 0`, so the remainder
/// is enveloped by the first dropped term; that term is the returned
/// radius, making the result an enclosure for every `N >= 2`.
pub fn zeta_real_with_n(sigma: f64, n_terms: u64, ctx: &PrecisionContext) -> Result<CertifiedReal> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("zeta_real needs sigma > 0, got {sigma}")));
    }
    if sigma == 1.0 {
        return Err(Error::Pole);
    }
    let n_terms = n_terms.max(2);
    let prec = ctx.bits();
    let s = CertifiedReal::from_f64(sigma, prec);
    let one = CertifiedReal::from_u64(1, prec);

    let mut sum = CertifiedReal::from_u64(1, prec);
    for n in 2..n_terms {
        let ln_n = CertifiedReal::from_u64(n, prec).ln();
        sum = sum.add(&ln_n.mul(&s).neg().exp());
    }

    let ln_big = CertifiedReal::from_u64(n_terms, prec).ln();
    let n_pow = ln_big.mul(&s).neg().exp(); // N^-sigma
    // N^-sigma / 2
    sum = sum.add(&n_pow.div_u32(2));
    // N^{1-sigma} / (sigma - 1)
    let n_1ms = ln_big.mul(&one.sub(&s)).exp();
    sum = sum.add(&n_1ms.div(&s.sub(&one)));

    // Correction terms c_k (sigma)(sigma+1)...(sigma+2k-2) N^{-sigma-2k+1},
    // with a running rising product and power.
    let n_inv_sq = ln_big.mul_u32(2).neg().exp();
    let mut poly = s.clone(); // product of (sigma + j), j = 0..=2k-2
    let mut pw = ln_big.mul(&s.add(&one)).neg().exp(); // N^{-sigma-2k+1}
    for (k, &(num, den)) in EM_COEF.iter().enumerate().take(EM_ORDER) {
        let c = CertifiedReal::from_i64(num, prec).div(&CertifiedReal::from_u64(den, prec));
        sum = sum.add(&c.mul(&poly).mul(&pw));
        let j = 2 * k as u64 + 1;
        poly = poly
            .mul(&s.add(&CertifiedReal::from_u64(j, prec)))
            .mul(&s.add(&CertifiedReal::from_u64(j + 1, prec)));
        pw = pw.mul(&n_inv_sq);
    }

    // Enveloping remainder: the first dropped term.
    let (num, den) = EM_COEF[EM_ORDER];
    let c_next = CertifiedReal::from_i64(num, prec).div(&CertifiedReal::from_u64(den, prec));
    let tail = c_next.mul(&poly).mul(&pw).abs().upper();
    Ok(sum.widened(&tail))
}

/// Evaluate with the cutoff chosen for `target_rad`; `Nonconvergence` when
/// no cutoff under the cap reaches it.
pub fn zeta_real_target(sigma: f64, target_rad: f64, ctx: &PrecisionContext) -> Result<CertifiedReal> {
    let n = pick_n(sigma, target_rad).ok_or_else(|| {
        Error::Nonconvergence(format!(
            "zeta_real at sigma = {sigma} cannot reach radius {target_rad:.2e} within {N_CAP} terms"
        ))
    })?;
    zeta_real_with_n(sigma, n, ctx)
}

/// Evaluate at the context's default accuracy goal of `10^-(digits/2)`,
/// best effort: if the goal needs more than the term cap, the cap is used
/// and the honest (larger) radius is returned.
pub fn zeta_real(sigma: f64, ctx: &PrecisionContext) -> Result<CertifiedReal> {
    let target = 10f64.powi(-((ctx.working_digits() / 2) as i32));
    let n = pick_n(sigma, target).unwrap_or(N_CAP);
    zeta_real_with_n(sigma, n, ctx)
}

/// Plain-double evaluation for the optimizer's search phase: the same sum
/// with the first two Bernoulli corrections at a fixed cutoff of 64, good
/// to ~1e-10 absolute for sigma >= 1.5. Feasibility decided with this is
/// re-certified with balls afterwards.
pub(crate) fn zeta_real_f64(sigma: f64) -> f64 {
    const N: f64 = 64.0;
    let mut sum = 1.0;
    let mut n = 2.0;
    while n < N {
        sum += n.powf(-sigma);
        n += 1.0;
    }
    sum += 0.5 * N.powf(-sigma);
    sum += N.powf(1.0 - sigma) / (sigma - 1.0);
    sum += sigma * N.powf(-sigma - 1.0) / 12.0;
    sum -= sigma * (sigma + 1.0) * (sigma + 2.0) * N.powf(-sigma - 3.0) / 720.0;
    sum
}
