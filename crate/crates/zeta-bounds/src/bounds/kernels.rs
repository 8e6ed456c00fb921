//! The bound formulas themselves, written once, generically over [`Scalar`].
//!
//! The optimizer explores these expressions with plain `f64`; verification
//! re-runs the identical code with balls and outward rounding, so there is
//! no chance of the two paths drifting apart. Domain checking lives in the
//! callers; the kernels assume arguments that keep every intermediate
//! quantity finite.

use crate::numerics::Scalar;

/// Which side of a two-sided maximum produced the reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The structural estimate (disc/ladder/interpolation term).
    Main,
    /// The elementary fallback term that covers the remaining range.
    Fallback,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Main => "main-term",
            Branch::Fallback => "fallback-term",
        }
    }
}

fn pick<S: Scalar>(main: &S, fallback: &S) -> (S, Branch) {
    let v = main.max_s(fallback);
    let br = if main.mid64() >= fallback.mid64() {
        Branch::Main
    } else {
        Branch::Fallback
    };
    (v, br)
}

/// Correction term a0: (σ+Q0)/(2t² log t) + π/(2 log t) + π(σ+Q0)²/(4t log² t).
pub fn a0<S: Scalar>(sigma: &S, q0: &S, t: &S) -> S {
    let lt = t.ln();
    let sq = sigma.add(q0);
    let two = t.c_u32(2);
    let four = t.c_u32(4);
    let pi = t.pi_c();
    let t1 = sq.div(&two.mul(&t.powi(2)).mul(&lt));
    let t2 = pi.div(&two.mul(&lt));
    let t3 = pi.mul(&sq.powi(2)).div(&four.mul(t).mul(&lt.powi(2)));
    t1.add(&t2).add(&t3)
}

/// Correction term a1: (σ+Q0)/t.
pub fn a1<S: Scalar>(sigma: &S, q0: &S, t: &S) -> S {
    sigma.add(q0).div(t)
}

/// Derivative-bound constant 58.096·√(1+9/t0²)·(1+a0(2,1,t0))^{2/3}.
pub fn c3<S: Scalar>(t0: &S) -> S {
    let two = t0.c_u32(2);
    let one = t0.c_u32(1);
    let nine = t0.c_u32(9);
    let root = one.add(&nine.div(&t0.powi(2))).sqrt();
    let corr = one.add(&a0(&two, &one, t0)).pow_ratio(2, 3);
    t0.c_dec("58.096").mul(&root).mul(&corr)
}

/// Contour-integral constant C(σ1, t0, k, η) for the disc of radius k·t0.
pub fn c_backlund<S: Scalar>(sigma1: &S, t0: &S, k: &S, eta: &S) -> S {
    let one = t0.c_u32(1);
    let kt0 = k.mul(t0);
    let inv_kt0 = kt0.recip();
    let c1 = sigma1.powi(2).div(&kt0.powi(2)).add(&one).sqrt();
    let c2 = c1.mul(&sigma1.add(&one).powi(2).div(&kt0.powi(2)).add(&one).sqrt());
    let log_term = eta.recip().add(&inv_kt0).ln();
    let eta2 = eta.powi(2);
    let quartic = eta.powi(4).div(&t0.c_u32(64).mul(&kt0.powi(4)));
    let middle = t0
        .c_u32(12)
        .add(&c1.sub(&inv_kt0).mul(&eta2))
        .div(&t0.c_u32(12).mul(&kt0));
    let last = c2.mul(&eta2).div(&t0.c_u32(24));
    log_term.add(&t0.euler_c()).add(&quartic).add(&middle).add(&last)
}

/// Trigonometric-inequality factor
/// V(κ,σ1,t0,η) = (e^{γκ}/(κ log t0))^{3/4}·(1+(log 2+C(σ1,t0,2,η))/log t0)^{1/4}.
pub fn v_factor<S: Scalar>(kappa: &S, sigma1: &S, t0: &S, eta: &S) -> S {
    let lt0 = t0.ln();
    let one = t0.c_u32(1);
    let two = t0.c_u32(2);
    let first = t0
        .euler_c()
        .mul(kappa)
        .exp()
        .div(&kappa.mul(&lt0))
        .pow_ratio(3, 4);
    let second = one
        .add(&two.ln().add(&c_backlund(sigma1, t0, &two, eta)).div(&lt0))
        .pow_ratio(1, 4);
    first.mul(&second)
}

/// Additive constant of the zero-free-strip estimate, together with the
/// main-term coefficient e^{1/W} that multiplies log t.
pub fn c0_strip<S: Scalar>(w: &S, sigma1: &S, t0: &S, eta: &S) -> (S, S) {
    let one = t0.c_u32(1);
    let coef = w.recip().exp();
    let eta2 = eta.powi(2);
    let log_term = eta.add(&t0.recip()).ln();
    let quad = one.div(&t0.c_u32(12).mul(&eta2));
    let linear = one
        .div(&t0.c_u32(6).mul(&eta2))
        .add(&eta.recip())
        .add(&one)
        .div(t0);
    let s1 = sigma1.powi(2).add(&sigma1.mul(&t0.c_u32(2))).sub(&one);
    let tail = t0
        .c_u32(16)
        .mul(&s1)
        .add(&t0.c_u32(3))
        .div(&t0.c_u32(192).mul(&eta2).mul(&t0.powi(2)));
    let c0 = coef.mul(&log_term.add(&t0.euler_c()).add(&quad).add(&linear).add(&tail));
    (coef, c0)
}

/// Branch function that switches between 1/e and log log t0 / log t0 at
/// t0 = e^e. A ball that straddles the switch point gets the union of the
/// two branch values.
pub fn b_t0<S: Scalar>(t0: &S) -> S {
    let e = t0.c_u32(1).exp();
    let ee = e.exp();
    let inv_e = e.recip();
    if t0.hi64() <= ee.lo64() {
        return inv_e;
    }
    let ratio = t0.ln().ln().div(&t0.ln());
    if t0.lo64() >= ee.hi64() {
        ratio
    } else {
        inv_e.hull(&ratio)
    }
}

/// Shared A3 shape: hpy coefficient, two correction factors at radius
/// offset `rt`, and the trigonometric factor `v`.
fn a3_shape<S: Scalar>(s: &S, rt: &S, v: &S, t0: &S) -> S {
    let one = t0.c_u32(1);
    let q0 = t0.c_dec("1.31");
    let f0 = one.add(&a0(s, &q0, t0));
    let f1 = one.add(&a1(s, &q0, t0)).pow_ratio(7, 6);
    let f2 = one.add(rt).pow_ratio(1, 6);
    let f3 = one.add(&one.add(rt).ln().div(&t0.ln()));
    t0.c_dec("0.618").mul(&f0).mul(&f1).mul(&f2).mul(&f3).mul(v)
}

/// A3 for the conditional (verified-zeros) estimate: evaluation point
/// 3/2+ε, disc offset 1/2, trig factor at κ = ε.
pub fn a3_rh<S: Scalar>(eps: &S, sigma1: &S, t0: &S, eta: &S) -> S {
    let s = t0.c_dec("1.5").add(eps);
    let rt = t0.c_dec("0.5").div(t0);
    let v = v_factor(eps, sigma1, t0, eta);
    a3_shape(&s, &rt, &v, t0)
}

/// A3 for the zero-free-strip estimate: evaluation point 3/2+2d/log t0,
/// disc offset 1/(2t0)+d/(t0 log t0), trig factor at κ = d/log t0.
pub fn a3_h<S: Scalar>(d: &S, sigma1: &S, t0: &S, eta: &S) -> S {
    let lt0 = t0.ln();
    let two = t0.c_u32(2);
    let s = t0.c_dec("1.5").add(&two.mul(d).div(&lt0));
    let rt = two.mul(t0).recip().add(&d.div(&t0.mul(&lt0)));
    let v = v_factor(&d.div(&lt0), sigma1, t0, eta);
    a3_shape(&s, &rt, &v, t0)
}

/// Conditional log-derivative constant:
/// max{ 4/(1−α0)²·(1/6 + 2B_{t0} + log A3/log t0), 1/((ε+α0/2) log t0) }
/// with α0 = 2(1+ε−σ0).
pub fn q_rh<S: Scalar>(sigma0: &S, eps: &S, sigma1: &S, eta: &S, t0: &S) -> (S, Branch) {
    let one = t0.c_u32(1);
    let two = t0.c_u32(2);
    let lt0 = t0.ln();
    let alpha0 = two.mul(&one.add(eps).sub(sigma0));
    let a3 = a3_rh(eps, sigma1, t0, eta);
    let sixth = one.div(&t0.c_u32(6));
    let br1 = t0
        .c_u32(4)
        .div(&one.sub(&alpha0).powi(2))
        .mul(&sixth.add(&two.mul(&b_t0(t0))).add(&a3.ln().div(&lt0)));
    let br2 = eps.add(&alpha0.div(&two)).mul(&lt0).recip();
    pick(&br1, &br2)
}

/// α0 = 2(1+ε−σ0), exposed for condition reporting.
pub fn alpha0<S: Scalar>(sigma0: &S, eps: &S) -> S {
    let one = sigma0.c_u32(1);
    sigma0.c_u32(2).mul(&one.add(eps).sub(sigma0))
}

/// Onset margin shared by every strip estimate built on the t^{1/6} log t
/// pointwise bound: t0^{1/6} log t0 − ζ(1+δr)/(0.618(1+a1(1+δr,1.31,t0))^{1/6}).
/// Positive means the estimate is valid from t0 onward (the left side is
/// increasing). `zeta_val` must enclose ζ(1+δr).
pub fn t0_onset_margin<S: Scalar>(delta_r: &S, t0: &S, zeta_val: &S) -> S {
    let one = t0.c_u32(1);
    let s = one.add(delta_r);
    let lhs = t0.pow_ratio(1, 6).mul(&t0.ln());
    let corr = one.add(&a1(&s, &t0.c_dec("1.31"), t0)).pow_ratio(1, 6);
    let rhs = zeta_val.div(&t0.c_dec("0.618").mul(&corr));
    lhs.sub(&rhs)
}

/// Slow-decay factor a_{ε1}(t0) = 1 + log(1+ε1/log t0)/log t0.
pub fn a_eps1<S: Scalar>(eps1: &S, t0: &S) -> S {
    let lt0 = t0.ln();
    let one = t0.c_u32(1);
    one.add(&one.add(&eps1.div(&lt0)).ln().div(&lt0))
}

/// Smallest admissible β: (1+1/a_{ε1}(t0))^{-1}.
pub fn beta_floor<S: Scalar>(eps1: &S, t0: &S) -> S {
    let one = t0.c_u32(1);
    one.add(&a_eps1(eps1, t0).recip()).recip()
}

/// Strip width W = (dβ(1+1/a_{ε1}(t0)) − d)^{-1}.
pub fn strip_width<S: Scalar>(d: &S, beta: &S, eps1: &S, t0: &S) -> S {
    let one = t0.c_u32(1);
    let ae = a_eps1(eps1, t0);
    d.mul(beta).mul(&one.add(&ae.recip())).sub(d).recip()
}

fn lambda_pair<S: Scalar>(d: &S, beta: &S, t0: &S) -> (S, S) {
    let one = t0.c_u32(1);
    let lt0 = t0.ln();
    let two_d = t0.c_u32(2).mul(d);
    let lam1 = t0
        .c_u32(16)
        .mul(beta)
        .div(&one.sub(beta))
        .mul(&one.sub(&t0.c_u32(8).mul(d).div(&two_d.add(&lt0))).powi(-2));
    let lam2 = one.add(beta).div(&d.mul(&one.sub(beta)));
    (lam1, lam2)
}

fn q_h_first_branch<S: Scalar>(d: &S, beta: &S, sigma1: &S, eta: &S, t0: &S) -> S {
    let one = t0.c_u32(1);
    let lt0 = t0.ln();
    let (lam1, lam2) = lambda_pair(d, beta, t0);
    let a3 = a3_h(d, sigma1, t0, eta);
    let paren = one
        .div(&t0.c_u32(6))
        .add(&t0.c_u32(2).mul(&lt0.ln()).div(&lt0))
        .add(&a3.ln().div(&lt0));
    lam1.mul(&paren).add(&lam2)
}

/// Zero-free-strip log-derivative constant and its strip width.
pub fn q_h<S: Scalar>(
    d: &S,
    beta: &S,
    eps1: &S,
    sigma1: &S,
    eta: &S,
    t0: &S,
) -> (S, S, Branch) {
    let one = t0.c_u32(1);
    let w = strip_width(d, beta, eps1, t0);
    let br1 = q_h_first_branch(d, beta, sigma1, eta, t0);
    let ae = a_eps1(eps1, t0);
    let br2 = d.mul(beta).mul(&one.add(&ae.recip())).add(d).recip();
    let (q, br) = pick(&br1, &br2);
    (w, q, br)
}

/// One-line log-derivative constant: β pinned at its floor, the fallback
/// branch collapses to 1/(2d).
pub fn q_one<S: Scalar>(d: &S, eps1: &S, sigma1: &S, eta: &S, t0: &S) -> (S, Branch) {
    let beta = beta_floor(eps1, t0);
    let br1 = q_h_first_branch(d, &beta, sigma1, eta, t0);
    let br2 = d.mul(&d.c_u32(2)).recip();
    pick(&br1, &br2)
}

/// Telescoped exponent Σ_{j<J} Q_j(1/W_j − 1/W_{j+1}) + Q_J/W_J over a
/// width-ascending ladder of (W, Q) pairs. Empty ladders sum to zero.
pub fn ladder_sum<S: Scalar>(model: &S, ladder: &[(S, S)]) -> S {
    let mut s = model.c_u32(0);
    if ladder.is_empty() {
        return s;
    }
    for j in 0..ladder.len() - 1 {
        let (wj, qj) = &ladder[j];
        let wn = &ladder[j + 1].0;
        s = s.add(&qj.mul(&wj.recip().sub(&wn.recip())));
    }
    let (wl, ql) = &ladder[ladder.len() - 1];
    s.add(&ql.div(wl))
}

/// Reciprocal constant Y0 = max{1/d1 + 1/log t0, V(d1/log t0,σ1,t0,η)·e^{L+24.303 d1}}
/// where L is the ladder sum.
pub fn y0<S: Scalar>(d1: &S, sigma1: &S, eta: &S, t0: &S, lsum: &S) -> (S, Branch) {
    let lt0 = t0.ln();
    let direct = d1.recip().add(&lt0.recip());
    let v = v_factor(&d1.div(&lt0), sigma1, t0, eta);
    let product = v.mul(&lsum.add(&t0.c_dec("24.303").mul(d1)).exp());
    pick(&product, &direct)
}

/// Slow-growth reciprocal constant
/// Y′0 = C3^{1/4}·max{(1/d1+1/log t0)^{3/4}, e^{L+24.303 d1}(e^{γ d1/log t0}/d1)^{3/4}}.
pub fn yprime0<S: Scalar>(d1: &S, t0: &S, lsum: &S) -> (S, Branch) {
    let lt0 = t0.ln();
    let direct = d1.recip().add(&lt0.recip()).pow_ratio(3, 4);
    let inner = t0.euler_c().mul(d1).div(&lt0).exp().div(d1).pow_ratio(3, 4);
    let product = lsum.add(&t0.c_dec("24.303").mul(d1)).exp().mul(&inner);
    let (m, br) = pick(&product, &direct);
    (c3(t0).pow_ratio(1, 4).mul(&m), br)
}

/// Alternating Laurent partial sum
/// φ0(σ,k) = Σ_{n=1}^{k} (1−σ)^n γ_n/n! + ((σ−1)/2)^{k+1}/(σ−3),
/// with `gammas[n]` supplying the n-th generalized Euler constant.
pub fn phi0<S: Scalar>(sigma: &S, k: usize, gammas: &[S]) -> S {
    let one = sigma.c_u32(1);
    let neg = one.sub(sigma);
    let mut pow = one.clone();
    let mut fact = one.clone();
    let mut s = sigma.c_u32(0);
    for (n, gamma_n) in gammas.iter().enumerate().take(k + 1).skip(1) {
        pow = pow.mul(&neg);
        fact = fact.mul(&sigma.c_u32(n as u32));
        s = s.add(&pow.div(&fact).mul(gamma_n));
    }
    let tail = sigma
        .sub(&one)
        .div(&sigma.c_u32(2))
        .powi(k as i32 + 1)
        .div(&sigma.sub(&sigma.c_u32(3)));
    s.add(&tail)
}

/// Normalized upper-bound ratio
/// φ1(σ,k) = ((σ−3)²+(σ−1)²)/((σ−3)²(1+(σ−1)(φ0(σ,k)+γ))).
pub fn phi1<S: Scalar>(sigma: &S, k: usize, gammas: &[S]) -> S {
    let one = sigma.c_u32(1);
    let three = sigma.c_u32(3);
    let p0 = phi0(sigma, k, gammas);
    let sm3 = sigma.sub(&three).powi(2);
    let sm1 = sigma.sub(&one);
    let num = sm3.add(&sm1.powi(2));
    let den = sm3.mul(&one.add(&sm1.mul(&p0.add(&sigma.euler_c()))));
    num.div(&den)
}

/// General σ-interpolated strip estimate:
/// k4^{(σ−1/2)/(1/2+δr)}·(1+a0)^{k3}·log^{k3} t·(1+a1)·(k1(1+a1)^{k2} t^{k2})^{(1+δr−σ)/(1/2+δr)}.
#[allow(clippy::too_many_arguments)]
pub fn strip_interpolation<S: Scalar>(
    k1: &S,
    k2: &S,
    k3: &S,
    k4: &S,
    q0: &S,
    delta_r: &S,
    sigma: &S,
    t: &S,
    t0: &S,
) -> S {
    let one = t.c_u32(1);
    let half = one.div(&t.c_u32(2));
    let s_ref = one.add(delta_r);
    let denom = half.add(delta_r);
    let e_left = sigma.sub(&half).div(&denom);
    let e_right = one.add(delta_r).sub(sigma).div(&denom);
    let f0 = one.add(&a0(&s_ref, q0, t0));
    let f1 = one.add(&a1(&s_ref, q0, t0));
    k4.pow(&e_left)
        .mul(&f0.pow(k3))
        .mul(&t.ln().pow(k3))
        .mul(&f1)
        .mul(&k1.mul(&f1.pow(k2)).mul(&t.pow(k2)).pow(&e_right))
}

/// Onset threshold for the interpolated estimate: the t where the two
/// interpolation anchors cross, (k4/(k1(1+a1)^{k2}))^{1/k2}.
pub fn strip_interpolation_onset<S: Scalar>(
    k1: &S,
    k2: &S,
    k4: &S,
    q0: &S,
    delta_r: &S,
    t0: &S,
) -> S {
    let one = t0.c_u32(1);
    let s_ref = one.add(delta_r);
    let f1 = one.add(&a1(&s_ref, q0, t0));
    k4.div(&k1.mul(&f1.pow(k2))).pow(&k2.recip())
}

/// Coefficient of t^{1/6} log t in the critical-strip estimate:
/// 0.618(1+a0(1+δr,1.31,t0))(1+a1(1+δr,1.31,t0))^{7/6}.
pub fn hpy_strip_coef<S: Scalar>(delta_r: &S, t0: &S) -> S {
    let one = t0.c_u32(1);
    let q0 = t0.c_dec("1.31");
    let s = one.add(delta_r);
    one.add(&a0(&s, &q0, t0))
        .mul(&t0.c_dec("0.618"))
        .mul(&one.add(&a1(&s, &q0, t0)).pow_ratio(7, 6))
}
