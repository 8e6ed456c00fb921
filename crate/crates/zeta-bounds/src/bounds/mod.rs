//! Certified evaluation of the explicit bound constants.
//!
//! Each operation returns the constant as a ball together with the region
//! it covers and a report of every side condition, so a caller can tell at
//! a glance not just the value but whether the value means anything. The
//! formulas live in [`kernels`] and are shared verbatim with the `f64`
//! search path of the optimizer.

pub mod kernels;
pub mod params;

pub use params::{HParams, KParams, LadderTable, ReciprocalParams, RhParams};

use crate::numerics::zeta_real::zeta_real_target;
use crate::numerics::Scalar;
use crate::numerics::{stieltjes::StieltjesTable, CertifiedReal, Constants, PrecisionContext};
use crate::{Error, Result};

/// Accuracy requested from the real-axis zeta evaluations that feed
/// condition margins. The margins they certify are at least 10^-2 wide.
const ZETA_MARGIN_RAD: f64 = 1e-12;

/// The sigma-extent of a validity region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaRegion {
    /// All sigma >= c.
    AtLeast(f64),
    /// The widening strip sigma >= 1 - 1/(w log t).
    ZeroFreeStrip { w: f64 },
    /// A fixed band lo <= sigma <= hi.
    Band { lo: f64, hi: f64 },
}

impl std::fmt::Display for SigmaRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SigmaRegion::AtLeast(c) => write!(f, "sigma >= {c}"),
            SigmaRegion::ZeroFreeStrip { w } => {
                write!(f, "sigma >= 1 - 1/({w} log t)")
            }
            SigmaRegion::Band { lo, hi } => write!(f, "{lo} <= sigma <= {hi}"),
        }
    }
}

/// Where a bound holds. `t_hi` is `f64::INFINITY` for unbounded claims.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub sigma: SigmaRegion,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.t_hi.is_finite() {
            write!(f, "{}, {} <= t <= {}", self.sigma, self.t_lo, self.t_hi)
        } else {
            write!(f, "{}, t >= {}", self.sigma, self.t_lo)
        }
    }
}

/// One side condition of a bound. `margin` encloses the slack of the
/// inequality the condition stands for; the condition counts as satisfied
/// unless the margin is certifiably negative, so an equality case (margin
/// exactly zero) passes. `pinned` marks margins that are zero by
/// construction rather than by measurement.
#[derive(Debug, Clone)]
pub struct Condition {
    pub id: &'static str,
    pub satisfied: bool,
    pub margin: CertifiedReal,
    pub pinned: bool,
}

impl Condition {
    pub fn new(id: &'static str, margin: CertifiedReal) -> Self {
        let satisfied = !margin.is_whole_line() && margin.upper_f64() >= 0.0;
        Condition {
            id,
            satisfied,
            margin,
            pinned: false,
        }
    }

    /// A condition that holds with margin exactly zero because the
    /// quantity it constrains was derived from the constraint itself.
    pub fn pinned(id: &'static str) -> Self {
        Condition {
            id,
            satisfied: true,
            margin: CertifiedReal::from_u64(0, 64),
            pinned: true,
        }
    }
}

/// Summary view over a set of conditions.
#[derive(Debug, Clone)]
pub struct ConditionReport<'a> {
    pub conditions: &'a [Condition],
}

impl ConditionReport<'_> {
    pub fn all_satisfied(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }

    pub fn first_violated(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| !c.satisfied)
    }
}

/// A certified constant, the region it covers, and its side conditions.
#[derive(Debug, Clone)]
pub struct ConditionedBound {
    pub value: CertifiedReal,
    pub region: Region,
    pub conditions: Vec<Condition>,
    /// Which term of a two-sided maximum produced the value; empty when
    /// the formula has a single term.
    pub branch: &'static str,
}

impl ConditionedBound {
    pub fn report(&self) -> ConditionReport<'_> {
        ConditionReport {
            conditions: &self.conditions,
        }
    }

    pub fn all_satisfied(&self) -> bool {
        self.report().all_satisfied()
    }
}

fn domain(what: impl Into<String>) -> Error {
    Error::Domain(what.into())
}

/// min(a - lo, hi - a): nonnegative exactly when a sits inside [lo, hi].
fn window_margin(a: &CertifiedReal, lo: &CertifiedReal, hi: &CertifiedReal) -> CertifiedReal {
    a.sub(lo).min_enc(&hi.sub(a))
}

// ---------------------------------------------------------------------
// Correction terms and basic constants
// ---------------------------------------------------------------------

/// The two correction terms that every strip estimate carries.
pub fn a_terms(
    sigma: &CertifiedReal,
    q0: &CertifiedReal,
    t: &CertifiedReal,
) -> Result<(CertifiedReal, CertifiedReal)> {
    if !(t.mid_f64() > 1.0) {
        return Err(domain("correction terms need t > 1"));
    }
    Ok((kernels::a0(sigma, q0, t), kernels::a1(sigma, q0, t)))
}

/// Derivative-phase constant, decreasing in t0 toward 58.096.
pub fn c3(t0: &CertifiedReal) -> Result<CertifiedReal> {
    if !(t0.mid_f64() >= 3.0) {
        return Err(domain("the derivative constant needs t0 >= 3"));
    }
    Ok(kernels::c3(t0))
}

/// Contour-integral constant over the disc of radius k*t0.
pub fn c_backlund(
    sigma1: &CertifiedReal,
    t0: &CertifiedReal,
    k: &CertifiedReal,
    eta: &CertifiedReal,
) -> Result<CertifiedReal> {
    if !(t0.mid_f64() >= 3.0) {
        return Err(domain("the contour constant needs t0 >= 3"));
    }
    if !(k.mid_f64() >= 1.0) {
        return Err(domain("the contour constant needs k >= 1"));
    }
    if !(eta.mid_f64() > 0.0) || eta.mid_f64() / k.mid_f64() >= t0.mid_f64() {
        return Err(domain("eta must satisfy 0 < eta/k < t0"));
    }
    Ok(kernels::c_backlund(sigma1, t0, k, eta))
}

/// Trigonometric-inequality factor V(kappa, sigma1, t0, eta).
pub fn v_factor(
    kappa: &CertifiedReal,
    sigma1: &CertifiedReal,
    t0: &CertifiedReal,
    eta: &CertifiedReal,
) -> Result<CertifiedReal> {
    if !(kappa.mid_f64() > 0.0) {
        return Err(domain("the trigonometric factor needs kappa > 0"));
    }
    if !(t0.mid_f64() >= 3.0) {
        return Err(domain("the trigonometric factor needs t0 >= 3"));
    }
    if !(eta.mid_f64() > 0.0) || eta.mid_f64() / 2.0 >= t0.mid_f64() {
        return Err(domain("eta must satisfy 0 < eta/2 < t0"));
    }
    Ok(kernels::v_factor(kappa, sigma1, t0, eta))
}

/// Additive constant of the zero-free-strip estimate. Returns the log t
/// coefficient e^{1/W} alongside the constant; the eta window
/// [2/t0, 1 - 1/t0] is reported as a condition so that boundary choices
/// (exact rational eta) pass with margin zero.
pub fn c0_strip(
    w: &CertifiedReal,
    sigma1: &CertifiedReal,
    t0: &CertifiedReal,
    eta: &CertifiedReal,
) -> Result<(CertifiedReal, ConditionedBound)> {
    if !(w.mid_f64() > 0.0) {
        return Err(domain("the strip constant needs W > 0"));
    }
    if !(t0.mid_f64() >= 3.0) {
        return Err(domain("the strip constant needs t0 >= 3"));
    }
    let prec = eta.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let lo = CertifiedReal::from_u64(2, prec).div(t0);
    let hi = one.sub(&t0.recip());
    if eta.upper_f64() < lo.lower_f64() || eta.lower_f64() > hi.upper_f64() {
        return Err(domain("eta must lie in [2/t0, 1 - 1/t0]"));
    }
    let (coef, c0) = kernels::c0_strip(w, sigma1, t0, eta);
    let bound = ConditionedBound {
        value: c0,
        region: Region {
            sigma: SigmaRegion::ZeroFreeStrip { w: w.mid_f64() },
            t_lo: t0.mid_f64(),
            t_hi: f64::INFINITY,
        },
        conditions: vec![Condition::new("eta-window", window_margin(eta, &lo, &hi))],
        branch: "",
    };
    Ok((coef, bound))
}

// ---------------------------------------------------------------------
// Strip interpolation estimates
// ---------------------------------------------------------------------

/// The sigma-interpolated strip estimate with explicit knobs. The value is
/// the full right-hand side at (sigma, t); the onset condition records how
/// far t sits past the point where the interpolation anchors cross.
pub fn plp_strip_bound(
    kp: &KParams,
    sigma: &CertifiedReal,
    t: &CertifiedReal,
    t0: &CertifiedReal,
) -> Result<ConditionedBound> {
    if !(t0.mid_f64() >= std::f64::consts::E) {
        return Err(domain("the strip estimate needs t0 >= e"));
    }
    if t.mid_f64() < t0.mid_f64() {
        return Err(domain("the strip estimate needs t >= t0"));
    }
    let hi = 1.0 + kp.delta_r.mid_f64();
    if sigma.mid_f64() < 0.5 || sigma.mid_f64() > hi {
        return Err(domain("sigma outside the interpolation strip"));
    }
    let value = kernels::strip_interpolation(
        &kp.k1, &kp.k2, &kp.k3, &kp.k4, &kp.q0, &kp.delta_r, sigma, t, t0,
    );
    let onset =
        kernels::strip_interpolation_onset(&kp.k1, &kp.k2, &kp.k4, &kp.q0, &kp.delta_r, t0);
    Ok(ConditionedBound {
        value,
        region: Region {
            sigma: SigmaRegion::Band { lo: 0.5, hi },
            t_lo: t0.mid_f64(),
            t_hi: f64::INFINITY,
        },
        conditions: vec![Condition::new("t-past-onset", t.sub(&onset))],
        branch: "",
    })
}

/// Critical-strip estimate with the published half-line growth constant:
/// the value is the coefficient of t^{1/6} log t. The onset condition is
/// checked at t0 and therefore covers every t >= t0.
pub fn plp_cor_bound(
    delta_r: &CertifiedReal,
    t0: &CertifiedReal,
    t: &CertifiedReal,
    ctx: &PrecisionContext,
) -> Result<ConditionedBound> {
    if !(delta_r.mid_f64() > 0.0) {
        return Err(domain("the strip estimate needs delta_r > 0"));
    }
    if !(t0.mid_f64() >= std::f64::consts::E) {
        return Err(domain("the strip estimate needs t0 >= e"));
    }
    if t.mid_f64() < t0.mid_f64() {
        return Err(domain("the strip estimate needs t >= t0"));
    }
    let coef = kernels::hpy_strip_coef(delta_r, t0);
    let zeta = zeta_real_target(1.0 + delta_r.mid_f64(), ZETA_MARGIN_RAD, ctx)?;
    let onset = kernels::t0_onset_margin(delta_r, t0, &zeta);
    Ok(ConditionedBound {
        value: coef,
        region: Region {
            sigma: SigmaRegion::Band {
                lo: 0.5,
                hi: 1.0 + delta_r.mid_f64(),
            },
            t_lo: t0.mid_f64(),
            t_hi: f64::INFINITY,
        },
        conditions: vec![Condition::new("t0-onset", onset)],
        branch: "",
    })
}

// ---------------------------------------------------------------------
// Laurent-coefficient functions
// ---------------------------------------------------------------------

/// The alternating Laurent partial sum and its normalized ratio, with
/// enclosures that propagate the stored generalized-Euler-constant radii.
pub fn phi_family(
    sigma: &CertifiedReal,
    k: u32,
    ctx: &PrecisionContext,
) -> Result<(CertifiedReal, CertifiedReal)> {
    let table = StieltjesTable::bundled(ctx)?;
    phi_family_with(sigma, k, &table)
}

/// As [`phi_family`], against a caller-supplied table.
pub fn phi_family_with(
    sigma: &CertifiedReal,
    k: u32,
    table: &StieltjesTable,
) -> Result<(CertifiedReal, CertifiedReal)> {
    let s = sigma.mid_f64();
    if !(s > 1.0 && s < 3.0) {
        return Err(domain("the Laurent sums need 1 < sigma < 3"));
    }
    if k == 0 {
        return Err(domain("the Laurent sums need k >= 1"));
    }
    let mut gammas = Vec::with_capacity(k as usize + 1);
    for n in 0..=k {
        gammas.push(table.get(n)?.clone());
    }
    let p0 = kernels::phi0(sigma, k as usize, &gammas);
    let p1 = kernels::phi1(sigma, k as usize, &gammas);
    Ok((p0, p1))
}

/// max{phi1(sigma0, 10), 0.852}, the floor used by the one-line
/// log-derivative comparison.
pub fn phi2(sigma0: &CertifiedReal, ctx: &PrecisionContext) -> Result<CertifiedReal> {
    let table = StieltjesTable::bundled(ctx)?;
    phi2_with(sigma0, &table)
}

/// As [`phi2`], against a caller-supplied table.
pub fn phi2_with(sigma0: &CertifiedReal, table: &StieltjesTable) -> Result<CertifiedReal> {
    let s = sigma0.mid_f64();
    if !(s > 1.0 && s <= 1.5) {
        return Err(domain("the floor comparison needs 1 < sigma0 <= 1.5"));
    }
    let (_, p1) = phi_family_with(sigma0, 10, table)?;
    let floor = sigma0.c_dec("0.852");
    Ok(p1.max_enc(&floor))
}

// ---------------------------------------------------------------------
// Log-derivative constants
// ---------------------------------------------------------------------

/// Conditional (verified-zeros) log-derivative constant. The bound
/// Q log t covers sigma >= sigma0 for t0 <= t <= T - 1/2.
pub fn q_rh(p: &RhParams, ctx: &PrecisionContext) -> Result<ConditionedBound> {
    let prec = p.t0.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let two = CertifiedReal::from_u64(2, prec);
    let half = CertifiedReal::from_rational(1, 2, prec);

    let (value, br) = kernels::q_rh(&p.sigma0, &p.eps, &p.sigma1, &p.eta, &p.t0);
    let alpha0 = kernels::alpha0(&p.sigma0, &p.eps);

    let zeta = zeta_real_target(1.5 + p.eps.mid_f64(), ZETA_MARGIN_RAD, ctx)?;
    let delta_r = half.add(&p.eps);
    let onset = kernels::t0_onset_margin(&delta_r, &p.t0, &zeta);

    let sigma1_lo = one.add(&p.eps);
    let conditions = vec![
        Condition::new("t0-onset", onset),
        Condition::new("alpha0-below-one", one.sub(&alpha0)),
        Condition::new("alpha0-positive", alpha0.clone()),
        Condition::new(
            "sigma1-window",
            window_margin(&p.sigma1, &sigma1_lo, &two),
        ),
        Condition::new(
            "eta-window",
            p.eta.min_enc(&two.mul(&p.t0).sub(&p.eta)),
        ),
        Condition::new("horizon-above-t0", p.t_hi.sub(&half).sub(&p.t0)),
    ];
    Ok(ConditionedBound {
        value,
        region: Region {
            sigma: SigmaRegion::AtLeast(p.sigma0.mid_f64()),
            t_lo: p.t0.mid_f64(),
            t_hi: p.t_hi.mid_f64() - 0.5,
        },
        conditions,
        branch: br.label(),
    })
}

fn strip_conditions(
    d: &CertifiedReal,
    eps1: &CertifiedReal,
    sigma1: &CertifiedReal,
    eta: &CertifiedReal,
    t0: &CertifiedReal,
    ctx: &PrecisionContext,
) -> Result<Vec<Condition>> {
    let prec = t0.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let two = CertifiedReal::from_u64(2, prec);
    let half = CertifiedReal::from_rational(1, 2, prec);
    let lt0 = t0.ln();

    let two_d_over_log = two.mul(d).div(&lt0);
    let delta_r = half.add(&two_d_over_log);
    let zeta = zeta_real_target(1.5 + two_d_over_log.mid_f64(), ZETA_MARGIN_RAD, ctx)?;
    let onset = kernels::t0_onset_margin(&delta_r, t0, &zeta);

    let sigma1_lo = one.add(&d.div(&lt0));
    let w0 = Constants::w0_ball(prec);
    let h = Constants::h_ball(prec);
    Ok(vec![
        Condition::new("t0-onset", onset),
        Condition::new(
            "eps1-window",
            window_margin(eps1, &two_d_over_log, &half),
        ),
        Condition::new("sigma1-window", window_margin(sigma1, &sigma1_lo, &two)),
        Condition::new("eta-window", eta.min_enc(&two.mul(t0).sub(eta))),
        Condition::new("d-at-most-w0-inverse", w0.recip().sub(d)),
        Condition::new("t0-at-least-verified-height", t0.sub(&h)),
    ])
}

/// Zero-free-strip log-derivative constant. Returns the strip width W the
/// parameters induce together with the bound; the bound Q log t covers
/// sigma >= 1 - 1/(W log t) for t >= t0.
pub fn q_h(p: &HParams, ctx: &PrecisionContext) -> Result<(CertifiedReal, ConditionedBound)> {
    let prec = p.t0.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let (w, value, br) = kernels::q_h(&p.d, &p.beta, &p.eps1, &p.sigma1, &p.eta, &p.t0);

    let mut conditions = strip_conditions(&p.d, &p.eps1, &p.sigma1, &p.eta, &p.t0, ctx)?;
    let floor = kernels::beta_floor(&p.eps1, &p.t0);
    conditions.push(Condition::new(
        "beta-window",
        window_margin(&p.beta, &floor, &one),
    ));
    let w0 = Constants::w0_ball(prec);
    conditions.push(Condition::new("strip-wider-than-w0", w.sub(&w0)));

    let bound = ConditionedBound {
        value,
        region: Region {
            sigma: SigmaRegion::ZeroFreeStrip { w: w.mid_f64() },
            t_lo: p.t0.mid_f64(),
            t_hi: f64::INFINITY,
        },
        conditions,
        branch: br.label(),
    };
    Ok((w, bound))
}

/// One-line log-derivative constant: beta is pinned at its admissibility
/// floor, which sends the strip width to infinity and leaves the bound
/// valid on all of sigma >= 1, t >= t0.
pub fn q_one(
    d: &CertifiedReal,
    eps1: &CertifiedReal,
    sigma1: &CertifiedReal,
    eta: &CertifiedReal,
    t0: &CertifiedReal,
    ctx: &PrecisionContext,
) -> Result<ConditionedBound> {
    if !(d.mid_f64() > 0.0) {
        return Err(domain("d must be positive"));
    }
    if !(eps1.mid_f64() > 0.0) {
        return Err(domain("eps1 must be positive"));
    }
    if !(eta.mid_f64() > 0.0) {
        return Err(domain("eta must be positive"));
    }
    if !(t0.mid_f64() > 1.0) {
        return Err(domain("t0 must exceed 1"));
    }
    let (value, br) = kernels::q_one(d, eps1, sigma1, eta, t0);
    let mut conditions = strip_conditions(d, eps1, sigma1, eta, t0, ctx)?;
    conditions.push(Condition::pinned("beta-at-floor"));
    Ok(ConditionedBound {
        value,
        region: Region {
            sigma: SigmaRegion::AtLeast(1.0),
            t_lo: t0.mid_f64(),
            t_hi: f64::INFINITY,
        },
        conditions,
        branch: br.label(),
    })
}

// ---------------------------------------------------------------------
// Reciprocal constants
// ---------------------------------------------------------------------

fn reciprocal_common(p: &ReciprocalParams) -> Result<(CertifiedReal, Vec<Condition>, Region)> {
    let prec = p.t0.prec();
    let lsum = kernels::ladder_sum(&p.d1, p.ladder.entries());
    let mut conditions = Vec::new();
    let region = if let Some(w1) = p.ladder.first_width() {
        let w0 = Constants::w0_ball(prec);
        conditions.push(Condition::new("ladder-above-w0", w1.sub(&w0)));
        Region {
            sigma: SigmaRegion::ZeroFreeStrip { w: w1.mid_f64() },
            t_lo: p.t0.mid_f64(),
            t_hi: f64::INFINITY,
        }
    } else {
        Region {
            sigma: SigmaRegion::AtLeast(1.0),
            t_lo: p.t0.mid_f64(),
            t_hi: f64::INFINITY,
        }
    };
    Ok((lsum, conditions, region))
}

/// Reciprocal constant: 1/|zeta| <= Y0 log t on the region the ladder
/// reaches (its first strip, or sigma >= 1 with no ladder).
pub fn y0(p: &ReciprocalParams) -> Result<ConditionedBound> {
    if p.asymptotic {
        return Err(domain(
            "the log t reciprocal estimate needs the asymptotic flag off",
        ));
    }
    let kappa = p.d1.div(&p.t0.ln());
    let s1 = p.sigma1.mid_f64();
    if s1 < 1.0 + kappa.mid_f64() || s1 > 2.0 {
        return Err(domain("sigma1 outside [1 + d1/log t0, 2]"));
    }
    if p.eta.mid_f64() / 2.0 >= p.t0.mid_f64() {
        return Err(domain("eta must satisfy 0 < eta/2 < t0"));
    }
    let (lsum, mut conditions, region) = reciprocal_common(p)?;
    let (value, br) = kernels::y0(&p.d1, &p.sigma1, &p.eta, &p.t0, &lsum);
    let prec = p.t0.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let two = CertifiedReal::from_u64(2, prec);
    conditions.push(Condition::new(
        "sigma1-window",
        window_margin(&p.sigma1, &one.add(&kappa), &two),
    ));
    Ok(ConditionedBound {
        value,
        region,
        conditions,
        branch: br.label(),
    })
}

/// Slow-growth reciprocal constant: the coefficient of the composite
/// power (log t)^{3/4}-of-log-derivative form in the derivative-aware
/// estimate.
pub fn yprime0(p: &ReciprocalParams) -> Result<ConditionedBound> {
    if !p.asymptotic {
        return Err(domain(
            "the slow-growth reciprocal estimate needs the asymptotic flag on",
        ));
    }
    let (lsum, conditions, region) = reciprocal_common(p)?;
    let (value, br) = kernels::yprime0(&p.d1, &p.t0, &lsum);
    Ok(ConditionedBound {
        value,
        region,
        conditions,
        branch: br.label(),
    })
}

// ---------------------------------------------------------------------
// Range conversion and gluing
// ---------------------------------------------------------------------

/// Convert a log t coefficient valid on [t_lo, t_hi] into a log log t
/// coefficient on the same range: Q log t <= (Q log t_hi / log log t_hi)
/// log log t there, because log t / log log t is increasing past e^e.
pub fn rescale_loglog(
    q: &CertifiedReal,
    t_lo: &CertifiedReal,
    t_hi: &CertifiedReal,
) -> Result<CertifiedReal> {
    let prec = q.prec();
    let ee = CertifiedReal::e(prec).exp();
    if t_lo.upper_f64() < ee.lower_f64() {
        return Err(domain("the rescaling needs t_lo >= e^e"));
    }
    if !(t_hi.mid_f64() > t_lo.mid_f64()) {
        return Err(domain("the rescaling needs t_lo < t_hi"));
    }
    let lt = t_hi.ln();
    Ok(q.mul(&lt).div(&lt.ln()))
}

fn sigma_compat_margin(
    high: &SigmaRegion,
    low: &SigmaRegion,
    t_lo: f64,
    prec: u32,
) -> Result<CertifiedReal> {
    let ball = |x: f64| CertifiedReal::from_f64(x, prec);
    let one = CertifiedReal::from_u64(1, prec);
    let strip_floor = |w: f64| {
        // 1 - 1/(w log t_lo): the lowest sigma the strip reaches on the
        // shared range; smallest at t_lo since the floor rises with t.
        one.sub(&ball(w).mul(&ball(t_lo).ln()).recip())
    };
    Ok(match (high, low) {
        (SigmaRegion::ZeroFreeStrip { w }, SigmaRegion::AtLeast(c)) => {
            strip_floor(*w).sub(&ball(*c))
        }
        (SigmaRegion::ZeroFreeStrip { w }, SigmaRegion::Band { lo, .. }) => {
            strip_floor(*w).sub(&ball(*lo))
        }
        (SigmaRegion::AtLeast(c1), SigmaRegion::AtLeast(c2)) => ball(*c1).sub(&ball(*c2)),
        (SigmaRegion::AtLeast(c), SigmaRegion::Band { lo, .. }) => ball(*c).sub(&ball(*lo)),
        (SigmaRegion::ZeroFreeStrip { w: w1 }, SigmaRegion::ZeroFreeStrip { w: w2 }) => {
            ball(*w1).sub(&ball(*w2))
        }
        (SigmaRegion::AtLeast(c), SigmaRegion::ZeroFreeStrip { .. }) => {
            // Only sigma >= 1 fits inside a widening strip for all t.
            ball(*c).sub(&one)
        }
        (SigmaRegion::Band { .. }, _) => {
            return Err(Error::IncompatibleRegion(
                "a banded region cannot cover the unbounded upper range".into(),
            ))
        }
    })
}

/// Glue a bound valid up to t_split to one valid beyond it. The combined
/// constant is the larger of the two; the combined region keeps the
/// high-range sigma shape over the union t-range, and the compatibility
/// check certifies that this shape stays inside the low bound's region on
/// the shared stretch.
pub fn combine_regimes(
    low: &ConditionedBound,
    high: &ConditionedBound,
    t_split: f64,
) -> Result<ConditionedBound> {
    if !(low.region.t_lo <= t_split && t_split <= low.region.t_hi) {
        return Err(Error::IncompatibleRegion(format!(
            "the low bound covers [{}, {}], which misses the split at {}",
            low.region.t_lo, low.region.t_hi, t_split
        )));
    }
    if !(high.region.t_lo <= t_split) {
        return Err(Error::IncompatibleRegion(format!(
            "the high bound starts at {}, after the split at {}",
            high.region.t_lo, t_split
        )));
    }
    let prec = low.value.prec().max(high.value.prec());
    let margin = sigma_compat_margin(
        &high.region.sigma,
        &low.region.sigma,
        low.region.t_lo,
        prec,
    )?;
    if margin.upper_f64() < 0.0 {
        return Err(Error::IncompatibleRegion(format!(
            "the high-range sigma region leaves the low bound's region (margin {:.3e})",
            margin.upper_f64()
        )));
    }
    let value = low.value.max_enc(&high.value);
    let branch = if low.value.mid_f64() >= high.value.mid_f64() {
        "low-range"
    } else {
        "high-range"
    };
    let mut conditions = vec![Condition::new("region-compat", margin)];
    conditions.extend(low.conditions.iter().cloned());
    conditions.extend(high.conditions.iter().cloned());
    Ok(ConditionedBound {
        value,
        region: Region {
            sigma: high.region.sigma,
            t_lo: low.region.t_lo,
            t_hi: high.region.t_hi,
        },
        conditions,
        branch,
    })
}

// ---------------------------------------------------------------------
// Elementary bounds
// ---------------------------------------------------------------------

/// The three elementary sigma > 1 bounds:
/// (zeta upper, |zeta'/zeta| upper, 1/zeta upper).
pub fn trivial_bounds(
    sigma: &CertifiedReal,
) -> Result<(CertifiedReal, CertifiedReal, CertifiedReal)> {
    if !(sigma.mid_f64() > 1.0) {
        return Err(domain("the elementary bounds need sigma > 1"));
    }
    let prec = sigma.prec();
    let one = CertifiedReal::from_u64(1, prec);
    let sm1 = sigma.sub(&one);
    let gamma = CertifiedReal::euler(prec);
    let zeta_upper = gamma
        .mul(&sm1)
        .exp()
        .div(&sm1)
        .min_enc(&sigma.div(&sm1));
    let logderiv_upper = sm1.recip();
    let recip_upper = sigma.div(&sm1);
    Ok((zeta_upper, logderiv_upper, recip_upper))
}

/// Medium-height reciprocal bound 4/(sigma - 1/2), valid on
/// 1/2 < sigma <= 3/2, 0 <= t <= 2 e^{e^2}.
pub fn aleks_bound(sigma: &CertifiedReal, t: &CertifiedReal) -> Result<CertifiedReal> {
    let s = sigma.mid_f64();
    if !(s > 0.5 && s <= 1.5) {
        return Err(domain("the reciprocal box needs 1/2 < sigma <= 3/2"));
    }
    let t_cap = 2.0 * f64::exp(std::f64::consts::E * std::f64::consts::E);
    let tm = t.mid_f64();
    if !(0.0 <= tm && tm <= t_cap) {
        return Err(domain("the reciprocal box needs 0 <= t <= 2 e^{e^2}"));
    }
    let prec = sigma.prec();
    let half = CertifiedReal::from_rational(1, 2, prec);
    Ok(CertifiedReal::from_u64(4, prec).div(&sigma.sub(&half)))
}
