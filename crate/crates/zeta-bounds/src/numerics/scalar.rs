//! One abstraction over plain `f64` and [`CertifiedReal`] so that every
//! bound formula is written exactly once. The optimizer explores with the
//! `f64` instance; verification re-evaluates the same code with balls and
//! outward rounding.

use super::CertifiedReal;

pub trait Scalar: Clone + std::fmt::Debug {
    /// An integer constant carrying the same precision context as `self`.
    fn c_u32(&self, k: u32) -> Self;
    /// A decimal-literal constant. Panics on malformed literals, which are
    /// always programmer-supplied.
    fn c_dec(&self, s: &str) -> Self;
    fn euler_c(&self) -> Self;
    fn pi_c(&self) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn recip(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn pow_ratio(&self, num: i64, den: u64) -> Self;
    fn pow(&self, e: &Self) -> Self;
    fn max_s(&self, o: &Self) -> Self;
    fn min_s(&self, o: &Self) -> Self;
    /// Union of the two enclosures. Exact scalars never straddle a branch
    /// point, so for `f64` this is only ever called with equal arguments.
    fn hull(&self, o: &Self) -> Self;

    /// Certified lower bound (identity for `f64`).
    fn lo64(&self) -> f64;
    /// Certified upper bound (identity for `f64`).
    fn hi64(&self) -> f64;
    fn mid64(&self) -> f64;
}

impl Scalar for f64 {
    fn c_u32(&self, k: u32) -> Self {
        k as f64
    }
    fn c_dec(&self, s: &str) -> Self {
        s.parse().expect("scalar literal")
    }
    fn euler_c(&self) -> Self {
        0.577_215_664_901_532_9_f64
    }
    fn pi_c(&self) -> Self {
        std::f64::consts::PI
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn pow_ratio(&self, num: i64, den: u64) -> Self {
        f64::powf(*self, num as f64 / den as f64)
    }
    fn pow(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn max_s(&self, o: &Self) -> Self {
        f64::max(*self, *o)
    }
    fn min_s(&self, o: &Self) -> Self {
        f64::min(*self, *o)
    }
    fn hull(&self, o: &Self) -> Self {
        f64::max(*self, *o)
    }
    fn lo64(&self) -> f64 {
        *self
    }
    fn hi64(&self) -> f64 {
        *self
    }
    fn mid64(&self) -> f64 {
        *self
    }
}

impl Scalar for CertifiedReal {
    fn c_u32(&self, k: u32) -> Self {
        CertifiedReal::from_u64(k as u64, self.prec())
    }
    fn c_dec(&self, s: &str) -> Self {
        CertifiedReal::from_decimal(s, self.prec()).expect("scalar literal")
    }
    fn euler_c(&self) -> Self {
        CertifiedReal::euler(self.prec())
    }
    fn pi_c(&self) -> Self {
        CertifiedReal::pi(self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        CertifiedReal::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CertifiedReal::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CertifiedReal::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        CertifiedReal::div(self, o)
    }
    fn neg(&self) -> Self {
        CertifiedReal::neg(self)
    }
    fn recip(&self) -> Self {
        CertifiedReal::recip(self)
    }
    fn exp(&self) -> Self {
        CertifiedReal::exp(self)
    }
    fn ln(&self) -> Self {
        CertifiedReal::ln(self)
    }
    fn sqrt(&self) -> Self {
        CertifiedReal::sqrt(self)
    }
    fn powi(&self, n: i32) -> Self {
        CertifiedReal::powi(self, n)
    }
    fn pow_ratio(&self, num: i64, den: u64) -> Self {
        CertifiedReal::pow_ratio(self, num, den)
    }
    fn pow(&self, e: &Self) -> Self {
        CertifiedReal::pow(self, e)
    }
    fn max_s(&self, o: &Self) -> Self {
        self.max_enc(o)
    }
    fn min_s(&self, o: &Self) -> Self {
        self.min_enc(o)
    }
    fn hull(&self, o: &Self) -> Self {
        CertifiedReal::hull(self, o)
    }
    fn lo64(&self) -> f64 {
        self.lower_f64()
    }
    fn hi64(&self) -> f64 {
        self.upper_f64()
    }
    fn mid64(&self) -> f64 {
        self.mid_f64()
    }
}
