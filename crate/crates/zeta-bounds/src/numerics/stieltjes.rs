//! Stieltjes constants with certified radii.
//!
//! The constants are shipped as a data file (one `n mid rad` line per
//! constant) bundled into the library at compile time; an alternate file
//! can be loaded at run time. The file itself is produced by the
//! `gen-stieltjes` binary, which evaluates the Euler-Maclaurin development
//! of `sum (log k)^n / k` with exact rational Bernoulli numbers, exact
//! integer derivative polynomials, and a fully certified remainder, so the
//! stored radii are genuine bounds rather than heuristics.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{format_float, CertifiedReal, PrecisionContext};
use crate::{Error, Result};

const BUNDLED: &str = include_str!("../../data/stieltjes.txt");

/// The first Stieltjes constants `gamma_0 ..= gamma_{n_max}` as certified
/// enclosures, together with the factorial bound used as a sanity envelope.
#[derive(Debug, Clone)]
pub struct StieltjesTable {
    values: Vec<CertifiedReal>,
}

impl StieltjesTable {
    /// Parse the bundled table at the context precision.
    pub fn bundled(ctx: &PrecisionContext) -> Result<Self> {
        Self::parse(BUNDLED, ctx.bits())
    }

    pub fn from_file(path: &std::path::Path, ctx: &PrecisionContext) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, ctx.bits())
    }

    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let mut rows: Vec<(u32, CertifiedReal)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let bad = || Error::Parse(format!("stieltjes line {}: {:?}", lineno + 1, line));
            let n: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let mid = parts.next().ok_or_else(bad)?;
            let rad = parts.next().ok_or_else(bad)?;
            let mid = CertifiedReal::from_decimal(mid, prec)?;
            let rad: f64 = rad.parse().map_err(|_| bad())?;
            if !(rad >= 0.0) || !rad.is_finite() {
                return Err(bad());
            }
            let extra = Float::with_val(32, rad);
            rows.push((n, mid.widened(&extra)));
        }
        rows.sort_by_key(|r| r.0);
        for (i, (n, _)) in rows.iter().enumerate() {
            if *n != i as u32 {
                return Err(Error::Parse(format!(
                    "stieltjes table must cover n = 0.. contiguously, missing n = {i}"
                )));
            }
        }
        let values: Vec<CertifiedReal> = rows.into_iter().map(|r| r.1).collect();
        let table = StieltjesTable { values };
        table.check_envelope()?;
        Ok(table)
    }

    /// Factorial envelope `|gamma_n| <= n! / 2^{n+1}` for `n >= 1`: every
    /// enclosure must sit inside it, otherwise the data file is corrupt.
    /// (`gamma_0` is the Euler constant, above the n = 0 value of 1/2.)
    fn check_envelope(&self) -> Result<()> {
        for (n, v) in self.values.iter().enumerate().skip(1) {
            let bound = factorial_over_pow2(n as u32);
            let hi = v.abs().upper();
            if !(hi <= bound) {
                return Err(Error::Parse(format!(
                    "stieltjes entry {n} violates the factorial envelope"
                )));
            }
        }
        Ok(())
    }

    pub fn n_max(&self) -> u32 {
        (self.values.len() as u32).saturating_sub(1)
    }

    pub fn get(&self, n: u32) -> Result<&CertifiedReal> {
        self.values
            .get(n as usize)
            .ok_or(Error::IndexOutOfRange {
                n,
                max: self.n_max(),
            })
    }
}

fn factorial_over_pow2(n: u32) -> Float {
    let f = Integer::from(Integer::factorial(n));
    let num = Float::with_val(64, &f);
    let den = Float::with_val(64, Integer::from(1) << (n + 1));
    Float::with_val(64, num / den)
}

/// Certified value of the n-th Stieltjes constant at the context precision.
/// Fails with `PrecisionUnreachable` when the stored radius is larger than
/// the context's accuracy target of `10^-(digits-10)`.
pub fn stieltjes_constant(n: u32, ctx: &PrecisionContext) -> Result<CertifiedReal> {
    let table = StieltjesTable::bundled(ctx)?;
    let v = table.get(n)?.clone();
    let target = 10f64.powi(-((ctx.working_digits() as i32) - 10));
    if v.rad_f64() > target {
        return Err(Error::PrecisionUnreachable(format!(
            "stieltjes gamma_{n} stored radius {:.2e} exceeds target {:.2e}",
            v.rad_f64(),
            target
        )));
    }
    Ok(v)
}

/// Parameters of the Euler-Maclaurin generator. `m` is the cut between the
/// explicit sum and the asymptotic part, `j_terms` the number of Bernoulli
/// corrections, `bits` the working precision.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorParams {
    pub n_max: u32,
    pub m: u32,
    pub j_terms: u32,
    pub bits: u32,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            n_max: 20,
            m: 2000,
            j_terms: 25,
            bits: 768,
        }
    }
}

/// Exact Bernoulli numbers `B_0 ..= B_{2J}` from the defining recurrence.
fn bernoulli(upto: u32) -> Vec<Rational> {
    let n = upto as usize;
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for k in 1..=n {
        // Binomials C(k+1, j) for j = 0..k-1, multiplicative rule; the
        // division is exact at every step.
        let mut row: Vec<Integer> = vec![Integer::from(1)];
        for j in 1..=k {
            let t = Integer::from(&row[j - 1] * (k as u64 + 2 - j as u64));
            row.push(t / (j as u64));
        }
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate().take(k) {
            acc += Rational::from((bj.numer().clone() * &row[j], bj.denom().clone()));
        }
        let val = -acc / Rational::from(k as u64 + 1);
        b.push(val);
    }
    b
}

fn ball_from_integer(i: &Integer, prec: u32) -> CertifiedReal {
    let lo = {
        let mut f = Float::new(prec);
        f.assign_round_integer(i, Round::Down);
        f
    };
    let hi = {
        let mut f = Float::new(prec);
        f.assign_round_integer(i, Round::Up);
        f
    };
    CertifiedReal::from_endpoints(lo, hi)
}

fn ball_from_rational(r: &Rational, prec: u32) -> CertifiedReal {
    use rug::ops::AssignRound;
    let mut lo = Float::new(prec);
    lo.assign_round(r, Round::Down);
    let mut hi = Float::new(prec);
    hi.assign_round(r, Round::Up);
    CertifiedReal::from_endpoints(lo, hi)
}

trait AssignRoundInteger {
    fn assign_round_integer(&mut self, i: &Integer, rnd: Round);
}

impl AssignRoundInteger for Float {
    fn assign_round_integer(&mut self, i: &Integer, rnd: Round) {
        use rug::ops::AssignRound;
        self.assign_round(i, rnd);
    }
}

/// Derivative polynomials: with `f(x) = p(log x) / x^{r+1}` one has
/// `f'(x) = (p' - (r+1) p)(log x) / x^{r+2}`. Starting from `p = u^n` the
/// coefficients stay integers.
fn next_poly(p: &[Integer], r_plus_1: u64) -> Vec<Integer> {
    let deg = p.len() - 1;
    let mut out = vec![Integer::new(); deg + 1];
    for i in 0..=deg {
        let mut v = Integer::new();
        if i + 1 <= deg {
            v += Integer::from(&p[i + 1] * (i as u64 + 1));
        }
        v -= Integer::from(&p[i] * r_plus_1);
        out[i] = v;
    }
    out
}

fn eval_poly(p: &[Integer], x: &CertifiedReal, prec: u32) -> CertifiedReal {
    let mut acc = CertifiedReal::from_u64(0, prec);
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&ball_from_integer(c, prec));
    }
    acc
}

/// Upper bound for `zeta(2J)` used by the remainder envelope.
fn zeta_even_upper(two_j: u32, prec: u32) -> CertifiedReal {
    // zeta(x) <= 1 + 2^-x + 2^{1-x}/(x-1) for x > 1 (integral comparison).
    let one = CertifiedReal::from_u64(1, prec);
    let two = CertifiedReal::from_u64(2, prec);
    let x = CertifiedReal::from_u64(two_j as u64, prec);
    let p = two.powi(-(two_j as i32));
    let q = two
        .powi(1 - two_j as i32)
        .div(&x.sub(&one));
    one.add(&p).add(&q)
}

/// Run the certified generator. Returns `(values, worst_radius)`.
pub fn generate(p: &GeneratorParams) -> Result<(Vec<CertifiedReal>, f64)> {
    let prec = p.bits;
    let m = p.m;
    let two_j = 2 * p.j_terms;
    if m < 10 || p.j_terms < 2 {
        return Err(Error::Domain("generator needs m >= 10, j_terms >= 2".into()));
    }

    // Explicit part: sum_{k=1}^{m} (log k)^n / k, accumulated per n with a
    // cached log per k.
    let nmax = p.n_max as usize;
    let mut acc: Vec<CertifiedReal> = vec![CertifiedReal::from_u64(0, prec); nmax + 1];
    for k in 1..=m {
        let lk = CertifiedReal::from_u64(k as u64, prec).ln();
        let inv_k = CertifiedReal::from_u64(k as u64, prec).recip();
        let mut pw = inv_k;
        for slot in acc.iter_mut().take(nmax + 1) {
            *slot = slot.add(&pw);
            pw = pw.mul(&lk);
        }
    }

    let lm = CertifiedReal::from_u64(m as u64, prec).ln();
    let bern = bernoulli(two_j);
    let zeta_up = zeta_even_upper(two_j, prec);
    let two_pi = CertifiedReal::pi(prec).mul_u32(2);
    // 2 zeta(2J) / (2 pi)^{2J}
    let periodic_env = zeta_up
        .mul_u32(2)
        .div(&two_pi.powi(two_j as i32));

    let mut out = Vec::with_capacity(nmax + 1);
    let mut worst: f64 = 0.0;

    for n in 0..=nmax {
        // gamma_n = S_m - (log m)^{n+1}/(n+1) - f(m)/2
        //           - sum_{j} B_{2j}/(2j)! * f^{(2j-1)}(m) + R
        let mut g = acc[n].clone();
        g = g.sub(&lm.powi(n as i32 + 1).div_u32(n as u32 + 1));
        let f_m = lm.powi(n as i32).div(&CertifiedReal::from_u64(m as u64, prec));
        g = g.sub(&f_m.div_u32(2));

        // p_0 = u^n
        let mut poly = vec![Integer::new(); n + 1];
        poly[n] = Integer::from(1);
        let mut r: u64 = 0;
        for j in 1..=p.j_terms {
            // advance derivative polynomial to order 2j-1
            while r < (2 * j - 1) as u64 {
                poly = next_poly(&poly, r + 1);
                r += 1;
            }
            let fac2j = Integer::from(Integer::factorial(2 * j));
            let coeff = Rational::from((bern[(2 * j) as usize].numer().clone(),
                bern[(2 * j) as usize].denom().clone() * fac2j));
            let coeff = ball_from_rational(&coeff, prec);
            let m_pow = Integer::from(m).pow(2 * j);
            let f_deriv = eval_poly(&poly, &lm, prec).div(&ball_from_integer(&m_pow, prec));
            g = g.sub(&coeff.mul(&f_deriv));
        }

        // advance to p_{2J} for the remainder envelope
        while r < two_j as u64 {
            poly = next_poly(&poly, r + 1);
            r += 1;
        }
        // |R| <= 2 zeta(2J)/(2pi)^{2J} * sum_i |c_i| Gamma(i+1, z)/(2J)^{i+1},
        // z = 2J log m, with the incomplete gamma in closed form:
        // Gamma(i+1, z) = i! e^-z sum_{k<=i} z^k/k!.
        let z = lm.mul_u32(two_j);
        let e_mz = z.neg().exp();
        let mut rem = CertifiedReal::from_u64(0, prec);
        for (i, c) in poly.iter().enumerate() {
            let ci = ball_from_integer(&Integer::from(c.abs_ref()), prec);
            let mut partial = CertifiedReal::from_u64(0, prec);
            let mut zk = CertifiedReal::from_u64(1, prec);
            let mut kfact = Integer::from(1);
            for k in 0..=i {
                if k > 0 {
                    zk = zk.mul(&z);
                    kfact *= k as u64;
                }
                partial = partial.add(&zk.div(&ball_from_integer(&kfact, prec)));
            }
            let ifact = ball_from_integer(&Integer::from(Integer::factorial(i as u32)), prec);
            let gamma_inc = ifact.mul(&e_mz).mul(&partial);
            let denom = CertifiedReal::from_u64(two_j as u64, prec).powi(i as i32 + 1);
            rem = rem.add(&ci.mul(&gamma_inc).div(&denom));
        }
        let rem_bound = periodic_env.mul(&rem).upper();
        let g = g.widened(&rem_bound);

        worst = worst.max(g.rad_f64());
        out.push(g);
    }

    Ok((out, worst))
}

/// Render the generated table in the on-disk format.
pub fn render_table(values: &[CertifiedReal]) -> String {
    let mut s = String::new();
    s.push_str("# Stieltjes constants gamma_n as certified enclosures.\n");
    s.push_str("# Columns: n  midpoint  radius. Radii are rigorous upper bounds\n");
    s.push_str("# carried through an Euler-Maclaurin development with exact\n");
    s.push_str("# Bernoulli numbers and a certified remainder envelope.\n");
    const DIGITS: usize = 130;
    for (n, v) in values.iter().enumerate() {
        // The printed radius is inflated to absorb both the f64 round trip
        // of the radius itself and the truncation of the midpoint to the
        // printed digit count, so the stored bound can only get safer.
        let slack = v.abs().upper_f64() * 10f64.powi(-(DIGITS as i32 - 2));
        let rad = (v.rad_f64() * 1.01 + slack).max(1e-300);
        s.push_str(&format!(
            "{} {} {:.3e}\n",
            n,
            format_float(v.mid(), DIGITS),
            rad
        ));
    }
    s
}
