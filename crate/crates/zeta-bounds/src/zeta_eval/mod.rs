//! Certified evaluation of `zeta` and `zeta'` off the real axis.
//!
//! The representation is the truncated Dirichlet sum plus its smoothing
//! corrections,
//!
//! ```text
//! zeta(s) = sum_{n<N} n^-s + N^-s/2 + N^{1-s}/(s-1)
//!           + sum_{k=1}^{K} B_{2k}/(2k)! (s)(s+1)...(s+2k-2) N^{-s-2k+1}
//!           + T_N(s)
//! ```
//!
//! valid for `sigma > 0`, `s != 1`, `N >= 2`, with `K = 8` correction
//! terms. The remainder `T_N` is an integral of `x^{-s-2K-1}` against the
//! periodized Bernoulli polynomial of degree `2K+1`, whose modulus stays
//! under `2 (2K+1)! zeta(2K+1) / (2 pi)^{2K+1}`; bounding the integral
//! over the box's lower real edge gives
//!
//! ```text
//! |T_N(s)| <= 5/2 (2 pi)^{-(2K+1)} |(s)(s+1)...(s+2K)|
//!             N^{-sl-2K} / (sl + 2K),         sl = min Re s.
//! ```
//!
//! The same development differentiated termwise gives `zeta'`; its
//! remainder picks up one `log` factor from each of the two places `s`
//! appears and is bounded in [`em_corrections`]. All evaluation is over
//! midpoint-radius boxes, so the argument itself may be a rectangle; that
//! is what the branch-and-bound layer in [`segment`] relies on.

use crate::numerics::zeta_real::{EM_COEF, EM_ORDER};
use crate::numerics::{CertifiedReal, PrecisionContext};
use crate::{Error, Result};
use rug::Float;

pub mod segment;

pub use segment::{
    recip_logt_grid_check, sup_modulus_on_segment, GridCheckReport, SupResult, SupTarget,
};

/// Hard ceiling on the number of Dirichlet terms.
pub const N_CAP: u64 = 1_000_000;

/// Overrides for a single evaluation: an explicit cutoff, or an explicit
/// radius target. With neither, the evaluation aims the radius just past
/// the context's guard digits, best effort under the cap.
#[derive(Debug, Clone, Copy, Default)]
pub struct EMParams {
    pub n_terms: Option<u64>,
    pub target_rad: Option<f64>,
}

/// A rectangle `re x im` in the complex plane.
#[derive(Debug, Clone)]
pub struct CertifiedComplex {
    pub re: CertifiedReal,
    pub im: CertifiedReal,
}

impl CertifiedComplex {
    pub fn new(re: CertifiedReal, im: CertifiedReal) -> Self {
        CertifiedComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CertifiedComplex {
            re: CertifiedReal::from_f64(re, prec),
            im: CertifiedReal::from_f64(im, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &Self) -> Self {
        CertifiedComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CertifiedComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        CertifiedComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        CertifiedComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CertifiedComplex::new(re, im)
    }

    pub fn mul_real(&self, r: &CertifiedReal) -> Self {
        CertifiedComplex::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn normsq(&self) -> CertifiedReal {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Modulus; never dips below zero.
    pub fn abs(&self) -> CertifiedReal {
        self.normsq().sqrt_nonneg()
    }

    /// Reciprocal. When the box cannot be separated from zero the result
    /// degenerates to the whole plane, mirroring the real-ball convention.
    pub fn recip(&self) -> Self {
        let nsq = self.normsq();
        let inv = nsq.recip(); // whole line if zero cannot be excluded
        CertifiedComplex::new(self.re.mul(&inv), self.im.neg().mul(&inv))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Self {
        let ex = self.re.exp();
        CertifiedComplex::new(ex.mul(&self.im.cos()), ex.mul(&self.im.sin()))
    }

    pub fn contains_f64(&self, re: f64, im: f64) -> bool {
        self.re.contains_f64(re) && self.im.contains_f64(im)
    }

    pub fn display(&self, digits: usize) -> String {
        format!("({}) + ({}) i", self.re.display(digits), self.im.display(digits))
    }
}

/// Lazily grown table of `log n` enclosures at one precision, shared across
/// the many evaluations of a sweep.
pub struct LnCache {
    prec: u32,
    vals: Vec<CertifiedReal>,
}

/// Entries above this index are computed on the fly instead of stored.
const LN_CACHE_LIMIT: usize = 1 << 16;

impl LnCache {
    pub fn new(prec: u32) -> Self {
        LnCache {
            prec,
            vals: Vec::new(),
        }
    }

    pub fn get(&mut self, n: u64) -> CertifiedReal {
        if n as usize >= LN_CACHE_LIMIT {
            return CertifiedReal::from_u64(n, self.prec).ln();
        }
        while self.vals.len() <= n as usize {
            let k = self.vals.len() as u64;
            let v = if k == 0 {
                CertifiedReal::from_u64(0, self.prec) // unused slot
            } else {
                CertifiedReal::from_u64(k, self.prec).ln()
            };
            self.vals.push(v);
        }
        self.vals[n as usize].clone()
    }
}

/// The Bernoulli correction block shared by the value and the derivative:
/// the two correction sums and rigorous remainder radii for both.
struct EmCorrections {
    value: CertifiedComplex,
    deriv: CertifiedComplex,
    value_tail: Float,
    deriv_tail: Float,
}

/// Accumulate `sum_k c_k (s)_{2k-1} N^{-s-2k+1}` and its `s`-derivative
/// `sum_k c_k (s)_{2k-1} N^{-s-2k+1} (H_{2k-1}(s) - log N)` where
/// `H_m(s) = sum_{j<m} 1/(s+j)`, then bound both remainders through the
/// periodized-Bernoulli integral form; see the module header.
fn em_corrections(
    s: &CertifiedComplex,
    n_pow: &CertifiedComplex, // N^-s over the box
    ln_big: &CertifiedReal,   // log N
    n_terms: u64,
    prec: u32,
) -> EmCorrections {
    let inv_n = CertifiedReal::from_u64(n_terms, prec).recip();
    let inv_n_sq = inv_n.sqr();
    let mut value = CertifiedComplex::from_f64(0.0, 0.0, prec);
    let mut deriv = CertifiedComplex::from_f64(0.0, 0.0, prec);
    let mut rising = s.clone(); // (s)_{2k-1}
    let mut harmonic = s.recip(); // H_{2k-1}(s)
    let mut pw = n_pow.mul_real(&inv_n); // N^{-s-2k+1}
    for (k, &(num, den)) in EM_COEF.iter().enumerate().take(EM_ORDER) {
        let c = CertifiedReal::from_i64(num, prec).div(&CertifiedReal::from_u64(den, prec));
        let term = rising.mul(&pw).mul_real(&c);
        value = value.add(&term);
        let h_minus_ln = CertifiedComplex::new(harmonic.re.sub(ln_big), harmonic.im.clone());
        deriv = deriv.add(&term.mul(&h_minus_ln));
        let j = 2 * k as u64 + 1;
        let sj = CertifiedComplex::new(s.re.add(&CertifiedReal::from_u64(j, prec)), s.im.clone());
        let sj1 =
            CertifiedComplex::new(s.re.add(&CertifiedReal::from_u64(j + 1, prec)), s.im.clone());
        rising = rising.mul(&sj).mul(&sj1);
        harmonic = harmonic.add(&sj.recip()).add(&sj1.recip());
        pw = pw.mul_real(&inv_n_sq);
    }

    // After the loop: rising = (s)_{2K+1}, harmonic = H_{2K+1}(s).
    // |T_N| <= 5/2 (2 pi)^{-(2K+1)} |(s)_{2K+1}| N^{-sl-2K} / (sl+2K),
    // |T'_N| <= same * (|H| + log N + 1/(sl+2K)).
    let k2 = 2 * EM_ORDER as u32; // 2K
    let sl = CertifiedReal::from_f64(s.re.lower_f64(), prec);
    let sl_k = sl.add(&CertifiedReal::from_u64(k2 as u64, prec));
    let two_pi_pow = CertifiedReal::pi(prec).mul_u32(2).powi(k2 as i32 + 1);
    let n_drop = ln_big.mul(&sl_k).neg().exp(); // N^{-(sl+2K)}
    let factor = CertifiedReal::from_rational(5, 2, prec)
        .div(&two_pi_pow)
        .mul(&rising.abs())
        .mul(&n_drop)
        .div(&sl_k);
    let value_tail = factor.upper();
    let deriv_extra = harmonic.abs().add(ln_big).add(&sl_k.recip());
    let deriv_tail = factor.mul(&deriv_extra).upper();
    EmCorrections {
        value,
        deriv,
        value_tail,
        deriv_tail,
    }
}

fn check_domain(s: &CertifiedComplex) -> Result<()> {
    if !(s.re.lower_f64() > 0.0) {
        return Err(Error::Domain(format!(
            "evaluation needs sigma > 0 over the whole box, lower edge is {}",
            s.re.lower_f64()
        )));
    }
    let one = CertifiedComplex::from_f64(1.0, 0.0, s.prec());
    if !(s.sub(&one).normsq().lower_f64() > 0.0) {
        return Err(Error::Pole);
    }
    Ok(())
}

/// Is this box exactly the line `sigma = 1` (no width in the real
/// direction)? Then `n^-s` needs no exponential per term.
fn on_one_line(s: &CertifiedComplex) -> bool {
    s.re.rad_f64() == 0.0 && *s.re.mid() == 1u32
}

/// One Dirichlet term `n^-s` over a box.
fn dirichlet_term(
    s: &CertifiedComplex,
    ln_n: &CertifiedReal,
    inv_n: &CertifiedReal,
    fast_one_line: bool,
) -> CertifiedComplex {
    if fast_one_line {
        let theta = s.im.mul(ln_n);
        CertifiedComplex::new(
            theta.cos().mul(inv_n),
            theta.sin().neg().mul(inv_n),
        )
    } else {
        s.mul_real(ln_n).neg().exp()
    }
}

/// Core evaluation over a box with an explicit cutoff. Both components of
/// the result are widened by the tail bound.
pub fn em_zeta_ball(
    s: &CertifiedComplex,
    n_terms: u64,
    prec: u32,
    cache: Option<&mut LnCache>,
) -> Result<CertifiedComplex> {
    check_domain(s)?;
    let n_terms = n_terms.max(2).max(min_terms_for(s));
    let fast = on_one_line(s);
    let mut local;
    let cache = match cache {
        Some(c) => c,
        None => {
            local = LnCache::new(prec);
            &mut local
        }
    };

    let mut acc = CertifiedComplex::from_f64(1.0, 0.0, prec);
    for n in 2..n_terms {
        let ln_n = cache.get(n);
        let inv_n = CertifiedReal::from_u64(n, prec).recip();
        acc = acc.add(&dirichlet_term(s, &ln_n, &inv_n, fast));
    }

    let ln_big = cache.get(n_terms);
    let inv_big = CertifiedReal::from_u64(n_terms, prec).recip();
    let n_pow = dirichlet_term(s, &ln_big, &inv_big, fast); // N^-s
    acc = acc.add(&n_pow.mul_real(&CertifiedReal::from_rational(1, 2, prec)));

    let one = CertifiedComplex::from_f64(1.0, 0.0, prec);
    let s_minus_1 = s.sub(&one);
    // N^{1-s}/(s-1) = N * N^-s / (s-1)
    let pole_term = n_pow
        .mul_real(&CertifiedReal::from_u64(n_terms, prec))
        .div(&s_minus_1);
    acc = acc.add(&pole_term);

    let corr = em_corrections(s, &n_pow, &ln_big, n_terms, prec);
    acc = acc.add(&corr.value);
    Ok(CertifiedComplex::new(
        acc.re.widened(&corr.value_tail),
        acc.im.widened(&corr.value_tail),
    ))
}

/// Termwise derivative over a box with an explicit cutoff.
pub fn em_zeta_deriv_ball(
    s: &CertifiedComplex,
    n_terms: u64,
    prec: u32,
    cache: Option<&mut LnCache>,
) -> Result<CertifiedComplex> {
    check_domain(s)?;
    let n_terms = n_terms.max(2).max(min_terms_for(s));
    let fast = on_one_line(s);
    let mut local;
    let cache = match cache {
        Some(c) => c,
        None => {
            local = LnCache::new(prec);
            &mut local
        }
    };

    let mut acc = CertifiedComplex::from_f64(0.0, 0.0, prec);
    for n in 2..n_terms {
        let ln_n = cache.get(n);
        let inv_n = CertifiedReal::from_u64(n, prec).recip();
        let term = dirichlet_term(s, &ln_n, &inv_n, fast);
        acc = acc.sub(&term.mul_real(&ln_n));
    }

    let ln_big = cache.get(n_terms);
    let inv_big = CertifiedReal::from_u64(n_terms, prec).recip();
    let n_pow = dirichlet_term(s, &ln_big, &inv_big, fast);
    // -log N * N^-s / 2
    acc = acc.sub(&n_pow.mul_real(&ln_big).mul_real(&CertifiedReal::from_rational(1, 2, prec)));

    let one = CertifiedComplex::from_f64(1.0, 0.0, prec);
    let s_minus_1 = s.sub(&one);
    let inv_sm1 = s_minus_1.recip();
    let n_1ms = n_pow.mul_real(&CertifiedReal::from_u64(n_terms, prec)); // N^{1-s}
    // -N^{1-s} log N/(s-1) - N^{1-s}/(s-1)^2
    acc = acc.sub(&n_1ms.mul_real(&ln_big).mul(&inv_sm1));
    acc = acc.sub(&n_1ms.mul(&inv_sm1).mul(&inv_sm1));

    let corr = em_corrections(s, &n_pow, &ln_big, n_terms, prec);
    acc = acc.add(&corr.deriv);
    Ok(CertifiedComplex::new(
        acc.re.widened(&corr.deriv_tail),
        acc.im.widened(&corr.deriv_tail),
    ))
}

/// Value and derivative in one pass over the Dirichlet terms.
pub fn em_zeta_pair(
    s: &CertifiedComplex,
    n_terms: u64,
    prec: u32,
    cache: &mut LnCache,
) -> Result<(CertifiedComplex, CertifiedComplex)> {
    check_domain(s)?;
    let n_terms = n_terms.max(2).max(min_terms_for(s));
    let fast = on_one_line(s);

    let mut zeta_acc = CertifiedComplex::from_f64(1.0, 0.0, prec);
    let mut deriv_acc = CertifiedComplex::from_f64(0.0, 0.0, prec);
    for n in 2..n_terms {
        let ln_n = cache.get(n);
        let inv_n = CertifiedReal::from_u64(n, prec).recip();
        let term = dirichlet_term(s, &ln_n, &inv_n, fast);
        zeta_acc = zeta_acc.add(&term);
        deriv_acc = deriv_acc.sub(&term.mul_real(&ln_n));
    }

    let ln_big = cache.get(n_terms);
    let inv_big = CertifiedReal::from_u64(n_terms, prec).recip();
    let n_pow = dirichlet_term(s, &ln_big, &inv_big, fast);
    let half = CertifiedReal::from_rational(1, 2, prec);
    let one = CertifiedComplex::from_f64(1.0, 0.0, prec);
    let s_minus_1 = s.sub(&one);
    let inv_sm1 = s_minus_1.recip();
    let n_big = CertifiedReal::from_u64(n_terms, prec);
    let corr = em_corrections(s, &n_pow, &ln_big, n_terms, prec);

    zeta_acc = zeta_acc.add(&n_pow.mul_real(&half));
    let n_1ms = n_pow.mul_real(&n_big);
    zeta_acc = zeta_acc.add(&n_1ms.mul(&inv_sm1));
    zeta_acc = zeta_acc.add(&corr.value);
    let zeta_out = CertifiedComplex::new(
        zeta_acc.re.widened(&corr.value_tail),
        zeta_acc.im.widened(&corr.value_tail),
    );

    deriv_acc = deriv_acc.sub(&n_pow.mul_real(&ln_big).mul_real(&half));
    deriv_acc = deriv_acc.sub(&n_1ms.mul_real(&ln_big).mul(&inv_sm1));
    deriv_acc = deriv_acc.sub(&n_1ms.mul(&inv_sm1).mul(&inv_sm1));
    deriv_acc = deriv_acc.add(&corr.deriv);
    let deriv_out = CertifiedComplex::new(
        deriv_acc.re.widened(&corr.deriv_tail),
        deriv_acc.im.widened(&corr.deriv_tail),
    );

    Ok((zeta_out, deriv_out))
}

/// The cutoff is never taken below `ceil(|t|/2)`.
fn min_terms_for(s: &CertifiedComplex) -> u64 {
    let t_hi = s.im.abs().upper_f64();
    (t_hi / 2.0).ceil().max(2.0) as u64
}

/// Shared pieces of the remainder estimate in float form:
/// `ln(5/2) - (2K+1) ln(2 pi) + ln|(s)_{2K+1}| - ln(sigma+2K)` and the
/// crude harmonic sum `sum_j 1/|s+j|`.
fn tail_log_parts(sigma: f64, t: f64) -> (f64, f64) {
    let k2 = 2.0 * EM_ORDER as f64;
    let mut ln_rising = 0.0;
    let mut hsum = 0.0;
    for j in 0..=(2 * EM_ORDER) {
        let norm = (sigma + j as f64) * (sigma + j as f64) + t * t;
        ln_rising += 0.5 * norm.ln();
        hsum += norm.sqrt().recip();
    }
    let base = 2.5f64.ln() - (k2 + 1.0) * (2.0 * std::f64::consts::PI).ln() + ln_rising
        - (sigma + k2).ln();
    (base, hsum)
}

pub(crate) fn pick_n_zeta(sigma: f64, t: f64, target: f64) -> Option<u64> {
    let k2 = 2.0 * EM_ORDER as f64;
    let (base, _) = tail_log_parts(sigma, t);
    // Margin for the float estimate drifting from the ball computation.
    let ln_n = (base - (target * 0.25).ln()) / (sigma + k2);
    let floor = (t.abs() / 2.0).ceil().max(2.0);
    let n = ln_n.exp().ceil().max(floor) + 2.0;
    if !n.is_finite() || n > N_CAP as f64 {
        None
    } else {
        Some(n as u64)
    }
}

pub(crate) fn pick_n_deriv(sigma: f64, t: f64, target: f64) -> Option<u64> {
    let k2 = 2.0 * EM_ORDER as f64;
    let (base0, hsum) = tail_log_parts(sigma, t);
    let base = (base0 - (target * 0.25).ln()) / (sigma + k2);
    // The log N factor in the remainder makes this implicit; iterate the
    // log form a few times.
    let mut ln_n = base.max(1.0);
    for _ in 0..3 {
        let grow = (hsum + ln_n.max(0.0) + (sigma + k2).recip()).ln();
        ln_n = base + grow / (sigma + k2);
    }
    let floor = (t.abs() / 2.0).ceil().max(2.0);
    let n = ln_n.exp().ceil().max(floor) + 2.0;
    if !n.is_finite() || n > N_CAP as f64 {
        None
    } else {
        Some(n as u64)
    }
}

fn resolve_n(
    sigma: f64,
    t: f64,
    params: &EMParams,
    ctx: &PrecisionContext,
    deriv: bool,
) -> Result<u64> {
    if let Some(n) = params.n_terms {
        return Ok(n);
    }
    let pick = if deriv { pick_n_deriv } else { pick_n_zeta };
    match params.target_rad {
        Some(target) => pick(sigma, t, target).ok_or_else(|| {
            Error::Nonconvergence(format!(
                "radius {target:.2e} at ({sigma}, {t}) needs more than {N_CAP} terms"
            ))
        }),
        None => {
            // Default accuracy goal: everything the working precision can
            // deliver past its guard digits, best effort under the cap.
            let target = 10f64.powi(-(ctx.working_digits().saturating_sub(5) as i32));
            Ok(pick(sigma, t, target).unwrap_or(N_CAP))
        }
    }
}

/// Certified `zeta(sigma + it)`.
pub fn em_zeta(sigma: f64, t: f64, params: &EMParams, ctx: &PrecisionContext) -> Result<CertifiedComplex> {
    if sigma == 1.0 && t == 0.0 {
        return Err(Error::Pole);
    }
    let n = resolve_n(sigma, t, params, ctx, false)?;
    let s = CertifiedComplex::from_f64(sigma, t, ctx.bits());
    em_zeta_ball(&s, n, ctx.bits(), None)
}

/// Certified `zeta'(sigma + it)`.
pub fn em_zeta_deriv(
    sigma: f64,
    t: f64,
    params: &EMParams,
    ctx: &PrecisionContext,
) -> Result<CertifiedComplex> {
    if sigma == 1.0 && t == 0.0 {
        return Err(Error::Pole);
    }
    let n = resolve_n(sigma, t, params, ctx, true)?;
    let s = CertifiedComplex::from_f64(sigma, t, ctx.bits());
    em_zeta_deriv_ball(&s, n, ctx.bits(), None)
}
