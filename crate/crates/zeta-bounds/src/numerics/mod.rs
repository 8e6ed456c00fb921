//! Precision-controlled real arithmetic with certified enclosures.
//!
//! Everything downstream (zeta evaluation, bound constants, table
//! verification) is built on [`CertifiedReal`], a midpoint-radius ball whose
//! radius is maintained with upward rounding. An operation on balls returns a
//! ball that contains every value the exact operation can take on the input
//! enclosures, plus the rounding error of the midpoint computation itself.
//! Radii are kept in a low-precision float so the bookkeeping stays cheap.

use std::cmp::Ordering;

use rug::float::{Constant, Round, Special};
use rug::ops::AssignRound;
use rug::Float;

use crate::{Error, Result};

mod scalar;
pub mod stieltjes;
pub mod zeta_real;

pub use scalar::Scalar;
pub use stieltjes::{stieltjes_constant, StieltjesTable};
pub use zeta_real::zeta_real;

/// Bits of precision used for radius bookkeeping. Radii only need a couple
/// of significant digits; what matters is that they always round up.
const RAD_PREC: u32 = 32;

/// Rounding-direction policy. `Outward` is what every certified enclosure
/// uses; `Nearest` marks contexts whose consumers only need midpoints fast
/// (the optimizer's exploration phase).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingPolicy {
    Nearest,
    Outward,
}

/// Working precision and rounding policy shared by all operations.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    working_digits: u32,
    rounding_policy: RoundingPolicy,
}

impl PrecisionContext {
    /// Create a context with the given decimal-digit precision. Anything
    /// below 30 digits is refused: certified table reproduction is not
    /// meaningful there.
    pub fn new(working_digits: u32, rounding_policy: RoundingPolicy) -> Result<Self> {
        if working_digits < 30 {
            return Err(Error::InvalidPrecision(format!(
                "working_digits = {working_digits}, minimum is 30"
            )));
        }
        Ok(PrecisionContext {
            working_digits,
            rounding_policy,
        })
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn rounding_policy(&self) -> RoundingPolicy {
        self.rounding_policy
    }

    /// Binary precision of midpoints, with guard bits on top of the
    /// requested decimal digits.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// Same context at twice the decimal precision (used by the soundness
    /// property "recomputing at double precision stays inside the original
    /// enclosure" and by optimizer re-verification).
    pub fn doubled(&self) -> Self {
        PrecisionContext {
            working_digits: self.working_digits * 2,
            rounding_policy: self.rounding_policy,
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            working_digits: 60,
            rounding_policy: RoundingPolicy::Outward,
        }
    }
}

fn rnew<T>(prec: u32, src: T, rnd: Round) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let mut f = Float::new(prec);
    f.assign_round(src, rnd);
    f
}

/// Round up into radius precision.
fn rup<T>(src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    rnew(RAD_PREC, src, Round::Up)
}

/// Round down into radius precision (used for certified lower bounds of
/// denominators and the like).
fn rdown<T>(src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    rnew(RAD_PREC, src, Round::Down)
}

/// Upper bound for the rounding error of a nearest-rounded operation that
/// produced `x` (one ulp; the true error is at most half an ulp).
fn ulp_of(x: &Float) -> Float {
    match x.get_exp() {
        Some(e) => {
            let mut u = Float::with_val(RAD_PREC, 1);
            u <<= e - x.prec() as i32;
            u
        }
        // Zero/inf/nan: an inexact op rounding to zero cannot occur in
        // MPFR's default exponent range for our value scales; return a
        // conservative placeholder that still poisons infinities.
        None => {
            if x.is_finite() {
                Float::new(RAD_PREC)
            } else {
                Float::with_val(RAD_PREC, Special::Infinity)
            }
        }
    }
}

fn mid_op<T>(prec: u32, src: T) -> (Float, Float)
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let mut f = Float::new(prec);
    let ord = f.assign_round(src, Round::Nearest);
    let err = if ord == Ordering::Equal {
        Float::new(RAD_PREC)
    } else {
        ulp_of(&f)
    };
    (f, err)
}

/// A real number known to lie within `[mid - rad, mid + rad]`.
#[derive(Debug, Clone)]
pub struct CertifiedReal {
    mid: Float,
    rad: Float,
}

impl CertifiedReal {
    fn make(mid: Float, rad: Float) -> Self {
        let mut out = CertifiedReal { mid, rad };
        out.normalize();
        out
    }

    /// Keep the invariants: radius nonnegative and finite, or the ball is
    /// the whole line (mid 0, rad infinity). NaN anywhere degrades to the
    /// whole line as well, which is sound and makes downstream checks fail
    /// loudly instead of silently.
    fn normalize(&mut self) {
        if self.mid.is_nan() || !self.rad.is_finite() || self.rad.is_nan() || self.rad < 0 {
            self.mid = Float::new(self.mid.prec());
            self.rad = Float::with_val(RAD_PREC, Special::Infinity);
        }
    }

    pub fn is_whole_line(&self) -> bool {
        self.rad.is_infinite()
    }

    fn whole_line(prec: u32) -> Self {
        CertifiedReal {
            mid: Float::new(prec),
            rad: Float::with_val(RAD_PREC, Special::Infinity),
        }
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    /// Radius as f64, rounded up.
    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_round(Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Certified lower endpoint (full precision, rounded down).
    pub fn lower(&self) -> Float {
        rnew(self.prec(), &self.mid - &self.rad, Round::Down)
    }

    /// Certified upper endpoint (full precision, rounded up).
    pub fn upper(&self) -> Float {
        rnew(self.prec(), &self.mid + &self.rad, Round::Up)
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower().to_f64_round(Round::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper().to_f64_round(Round::Up)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lower() <= x && self.upper() >= x
    }

    pub fn contains(&self, other: &CertifiedReal) -> bool {
        self.lower() <= other.lower() && self.upper() >= other.upper()
    }

    // ----- constructors -----

    pub fn from_f64(x: f64, prec: u32) -> Self {
        CertifiedReal::make(Float::with_val(prec, x), Float::new(RAD_PREC))
    }

    pub fn from_u64(x: u64, prec: u32) -> Self {
        CertifiedReal::make(Float::with_val(prec, x), Float::new(RAD_PREC))
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        CertifiedReal::make(Float::with_val(prec, x), Float::new(RAD_PREC))
    }

    /// Parse a decimal literal into a tight enclosure of the exact decimal
    /// value (directed rounding at both endpoints).
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        let lo_inc = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let hi_inc = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let lo = rnew(prec, lo_inc, Round::Down);
        let hi = rnew(prec, hi_inc, Round::Up);
        Ok(CertifiedReal::from_endpoints(lo, hi))
    }

    /// Enclosure from endpoints; both bounds are kept.
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi || lo.is_nan() || hi.is_nan());
        let prec = lo.prec().max(hi.prec());
        let (mut mid, merr) = mid_op(prec, &lo + &hi);
        mid >>= 1; // exact halving, so merr still bounds the rounding error
        let d1 = rup(&hi - &mid);
        let d2 = rup(&mid - &lo);
        let d = if d1 > d2 { d1 } else { d2 };
        let rad = rup(&d + &merr);
        CertifiedReal::make(mid, rad)
    }

    pub fn from_rational(num: i64, den: u64, prec: u32) -> Self {
        let n = CertifiedReal::from_i64(num, prec);
        let d = CertifiedReal::from_u64(den, prec);
        n.div(&d)
    }

    pub fn pi(prec: u32) -> Self {
        let lo = rnew(prec, Constant::Pi, Round::Down);
        let hi = rnew(prec, Constant::Pi, Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    pub fn euler(prec: u32) -> Self {
        let lo = rnew(prec, Constant::Euler, Round::Down);
        let hi = rnew(prec, Constant::Euler, Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    pub fn ln2(prec: u32) -> Self {
        let lo = rnew(prec, Constant::Log2, Round::Down);
        let hi = rnew(prec, Constant::Log2, Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// Euler's number as an enclosure.
    pub fn e(prec: u32) -> Self {
        CertifiedReal::from_u64(1, prec).exp()
    }

    /// Widen the ball by an absolute amount (`extra` is rounded up).
    pub fn widened(&self, extra: &Float) -> Self {
        CertifiedReal::make(self.mid.clone(), rup(&self.rad + extra))
    }

    // ----- arithmetic -----

    pub fn add(&self, o: &Self) -> Self {
        let (mid, err) = mid_op(self.prec().max(o.prec()), &self.mid + &o.mid);
        let r = rup(&self.rad + &o.rad);
        CertifiedReal::make(mid, rup(&r + &err))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (mid, err) = mid_op(self.prec().max(o.prec()), &self.mid - &o.mid);
        let r = rup(&self.rad + &o.rad);
        CertifiedReal::make(mid, rup(&r + &err))
    }

    pub fn neg(&self) -> Self {
        CertifiedReal {
            mid: rnew(self.prec(), -&self.mid, Round::Nearest),
            rad: self.rad.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        // | |x| - |m| | <= |x - m|, so the radius carries over; negation of
        // the midpoint is exact.
        CertifiedReal {
            mid: rnew(self.prec(), self.mid.abs_ref(), Round::Nearest),
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_whole_line() || o.is_whole_line() {
            return CertifiedReal::whole_line(self.prec().max(o.prec()));
        }
        let (mid, err) = mid_op(self.prec().max(o.prec()), &self.mid * &o.mid);
        // |xy - ab| <= |a| rb + |b| ra + ra rb  for x in a+-ra, y in b+-rb
        let am = rup(self.mid.abs_ref());
        let bm = rup(o.mid.abs_ref());
        let t1 = rup(&am * &o.rad);
        let t2 = rup(&bm * &self.rad);
        let t3 = rup(&self.rad * &o.rad);
        let r = rup(&t1 + &t2);
        let r = rup(&r + &t3);
        CertifiedReal::make(mid, rup(&r + &err))
    }

    pub fn mul_u32(&self, k: u32) -> Self {
        let kf = CertifiedReal::from_u64(k as u64, self.prec());
        self.mul(&kf)
    }

    pub fn div_u32(&self, k: u32) -> Self {
        let kf = CertifiedReal::from_u64(k as u64, self.prec());
        self.mul(&kf.recip())
    }

    /// Square with a tight, sign-aware enclosure: the result never dips
    /// below zero even when the input straddles zero.
    pub fn sqr(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let prec = self.prec();
        let am = rnew(prec, self.mid.abs_ref(), Round::Down);
        let lo = if am >= self.rad {
            let d = rnew(prec, &am - &self.rad, Round::Down);
            rnew(prec, d.square_ref(), Round::Down)
        } else {
            Float::new(prec)
        };
        let amu = rnew(prec, self.mid.abs_ref(), Round::Up);
        let s = rnew(prec, &amu + &self.rad, Round::Up);
        let hi = rnew(prec, s.square_ref(), Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// Reciprocal. If the enclosure straddles zero the result is the whole
    /// line (callers that need a hard error check beforehand).
    pub fn recip(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let a = rdown(self.mid.abs_ref());
        let abs_lo = rdown(&a - &self.rad);
        if !(abs_lo > 0) {
            return CertifiedReal::whole_line(self.prec());
        }
        let (mid, err) = mid_op(self.prec(), self.mid.recip_ref());
        // |1/x - 1/m| = |x-m| / (|x||m|) <= rad / (abs_lo * |m|_lo)
        let m_lo = rdown(self.mid.abs_ref());
        let den = rdown(&abs_lo * &m_lo);
        let prop = rup(&self.rad / &den);
        CertifiedReal::make(mid, rup(&prop + &err))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// Integer power by repeated squaring. Negative exponents go through
    /// the reciprocal.
    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = CertifiedReal::from_u64(1, self.prec());
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    // ----- monotone elementary functions via endpoint evaluation -----

    pub fn exp(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let mut lo = self.lower();
        lo.exp_round(Round::Down);
        let mut hi = self.upper();
        hi.exp_round(Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// Natural log. Whole-line result when the enclosure touches zero or
    /// negative values.
    pub fn ln(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let mut lo = self.lower();
        if !(lo > 0) {
            return CertifiedReal::whole_line(self.prec());
        }
        lo.ln_round(Round::Down);
        let mut hi = self.upper();
        hi.ln_round(Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    pub fn sqrt(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let mut lo = self.lower();
        if lo < 0 {
            return CertifiedReal::whole_line(self.prec());
        }
        lo.sqrt_round(Round::Down);
        let mut hi = self.upper();
        hi.sqrt_round(Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// Square root of a quantity known to be nonnegative (a modulus, a
    /// square). The lower endpoint is clamped to zero first, which is sound
    /// exactly because the true value cannot be negative.
    pub fn sqrt_nonneg(&self) -> Self {
        if self.is_whole_line() {
            return CertifiedReal::whole_line(self.prec());
        }
        let mut lo = self.lower();
        if lo < 0 {
            lo = Float::new(self.prec());
        }
        lo.sqrt_round(Round::Down);
        let mut hi = self.upper();
        if hi < 0 {
            hi = Float::new(self.prec());
        }
        hi.sqrt_round(Round::Up);
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// x^e for positive x, through exp(e ln x).
    pub fn pow(&self, e: &Self) -> Self {
        self.ln().mul(e).exp()
    }

    pub fn pow_ratio(&self, num: i64, den: u64) -> Self {
        let r = CertifiedReal::from_rational(num, den, self.prec());
        self.pow(&r)
    }

    // ----- Lipschitz-bounded trig -----

    pub fn sin(&self) -> Self {
        self.trig(true)
    }

    pub fn cos(&self) -> Self {
        self.trig(false)
    }

    fn trig(&self, sine: bool) -> Self {
        let prec = self.prec();
        // Once the input is wider than half a period there is nothing to
        // gain; [-1, 1] is the honest answer.
        if self.is_whole_line() || self.rad > 3.15f64 {
            return CertifiedReal::make(Float::new(prec), Float::with_val(RAD_PREC, 1));
        }
        let (mid, err) = if sine {
            mid_op(prec, self.mid.sin_ref())
        } else {
            mid_op(prec, self.mid.cos_ref())
        };
        // sin and cos are 1-Lipschitz.
        let rad = rup(&self.rad + &err);
        CertifiedReal::make(mid, rad)
    }

    // ----- order -----

    /// Sound maximum: an enclosure of max(x, y).
    pub fn max_enc(&self, o: &Self) -> Self {
        let lo_a = self.lower();
        let lo_b = o.lower();
        let hi_a = self.upper();
        let hi_b = o.upper();
        let lo = if lo_a >= lo_b { lo_a } else { lo_b };
        let hi = if hi_a >= hi_b { hi_a } else { hi_b };
        CertifiedReal::from_endpoints(lo, hi)
    }

    pub fn min_enc(&self, o: &Self) -> Self {
        let lo_a = self.lower();
        let lo_b = o.lower();
        let hi_a = self.upper();
        let hi_b = o.upper();
        let lo = if lo_a <= lo_b { lo_a } else { lo_b };
        let hi = if hi_a <= hi_b { hi_a } else { hi_b };
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// Smallest ball containing both enclosures. Needed when a formula
    /// takes one of two branches and the input does not decide which.
    pub fn hull(&self, o: &Self) -> Self {
        let lo_a = self.lower();
        let lo_b = o.lower();
        let hi_a = self.upper();
        let hi_b = o.upper();
        let lo = if lo_b < lo_a { lo_b } else { lo_a };
        let hi = if hi_b > hi_a { hi_b } else { hi_a };
        CertifiedReal::from_endpoints(lo, hi)
    }

    /// True iff every point of the enclosure is >= x.
    pub fn definitely_ge(&self, x: f64) -> bool {
        self.lower() >= x
    }

    /// True iff every point of the enclosure is <= x.
    pub fn definitely_le(&self, x: f64) -> bool {
        self.upper() <= x
    }

    /// Render as `mid +- rad` with the requested number of significant
    /// decimal digits on the midpoint.
    pub fn display(&self, digits: usize) -> String {
        format!(
            "{} +- {:.3e}",
            format_float(&self.mid, digits),
            self.rad_f64()
        )
    }
}

/// Decimal rendering of a Float with `digits` significant digits, without
/// the exponent gymnastics of the default formatter for the common range.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if *x < 0 { "-inf".into() } else { "inf".into() };
    }
    let s = x.to_string_radix(10, Some(digits.max(2)));
    // rug prints e.g. "1.234e3"; normalize the exponent marker.
    s.replace('@', "e")
}

/// Cited numeric inputs and program-wide constants.
///
/// The two half-line growth constants, the small-height supremum, and the
/// two small-height reciprocal constants are external inputs; the W0 strip
/// width and the verified height are quoted to full published accuracy.
#[derive(Debug, Clone)]
pub struct Constants {
    pub w0: f64,
    pub h0: f64,
    pub h: f64,
    pub euler_gamma: CertifiedReal,
    pub hpy_half_line: f64,
    pub one_line_23: f64,
    pub small_t_half_line: f64,
    pub chirre_recip: f64,
    pub chirre_logderiv: f64,
}

pub const W0_DEC: &str = "5.558691";
pub const H0_DEC: &str = "3000175332800";
pub const W0_F64: f64 = 5.558691;
/// The H0 height is an exact integer, so `H = H0 - 1/2` is exact in f64.
pub const H0_F64: f64 = 3000175332800.0;
pub const H_F64: f64 = H0_F64 - 0.5;

impl Constants {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Constants {
            w0: W0_F64,
            h0: H0_F64,
            h: H_F64,
            euler_gamma: CertifiedReal::euler(ctx.bits()),
            hpy_half_line: 0.618,
            one_line_23: 58.096,
            small_t_half_line: 1.461,
            chirre_recip: 2.079,
            chirre_logderiv: 0.639,
        }
    }

    /// W0 as a tight decimal enclosure at the given precision.
    pub fn w0_ball(prec: u32) -> CertifiedReal {
        CertifiedReal::from_decimal(W0_DEC, prec).expect("constant parses")
    }

    /// H = H0 - 1/2, exactly representable.
    pub fn h_ball(prec: u32) -> CertifiedReal {
        CertifiedReal::from_f64(H_F64, prec)
    }

    /// The verified height H0 itself, an exact integer.
    pub fn h0_ball(prec: u32) -> CertifiedReal {
        CertifiedReal::from_f64(H0_F64, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_basics() {
        let prec = 128;
        let a = CertifiedReal::from_decimal("0.1", prec).unwrap();
        assert!(a.rad_f64() > 0.0, "0.1 is not a binary rational");
        assert!(a.rad_f64() < 1e-30);
        let b = CertifiedReal::from_f64(0.5, prec);
        assert_eq!(b.rad_f64(), 0.0);
        let s = a.add(&b);
        // 0.6 as an f64 literal is off by ~2e-17, far wider than the ball;
        // compare against the exact rational instead.
        let want = CertifiedReal::from_rational(3, 5, prec);
        assert!(s.sub(&want).contains_f64(0.0));
    }

    #[test]
    fn recip_straddle_is_whole_line() {
        let prec = 96;
        let z = CertifiedReal::from_endpoints(
            Float::with_val(prec, -1),
            Float::with_val(prec, 2),
        );
        assert!(z.recip().is_whole_line());
    }

    #[test]
    fn sqr_straddle_stays_nonnegative() {
        let prec = 96;
        let z = CertifiedReal::from_endpoints(
            Float::with_val(prec, -0.5),
            Float::with_val(prec, 1.5),
        );
        let s = z.sqr();
        assert!(s.lower() >= 0);
        assert!(s.contains_f64(0.0));
        assert!(s.contains_f64(2.25));
    }

    #[test]
    fn trig_saturates_on_wide_input() {
        let prec = 96;
        let wide = CertifiedReal::from_endpoints(
            Float::with_val(prec, 0),
            Float::with_val(prec, 100),
        );
        let c = wide.cos();
        assert!(c.contains_f64(1.0) && c.contains_f64(-1.0));
    }

    #[test]
    fn precision_floor_enforced() {
        assert!(PrecisionContext::new(29, RoundingPolicy::Outward).is_err());
        assert!(PrecisionContext::new(30, RoundingPolicy::Outward).is_ok());
    }
}
