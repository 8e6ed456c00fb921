use std::time::Instant;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zeta_bounds::numerics::{PrecisionContext, RoundingPolicy};
use zeta_bounds::zeta_eval::{em_zeta_ball, em_zeta_deriv_ball};
use zeta_bounds::{em_zeta, CertifiedComplex, CertifiedReal, EMParams};

fn main() {
    let ctx = PrecisionContext::new(60, RoundingPolicy::Outward).unwrap();
    let prec = ctx.bits();

    let t0 = Instant::now();
    let _ = em_zeta(0.7, 12.3, &EMParams::default(), &ctx).unwrap();
    println!("em_zeta coarse: {:.2?}", t0.elapsed());
    let t0 = Instant::now();
    let _ = em_zeta(0.7, 12.3, &EMParams::default(), &ctx.doubled()).unwrap();
    println!("em_zeta doubled: {:.2?}", t0.elapsed());

    let trig_params = EMParams { target_rad: Some(1e-20), ..EMParams::default() };
    let t0 = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    for _ in 0..100 {
        let sigma = 2.0 - rng.gen::<f64>();
        let t = 3.0 + 497.0 * rng.gen::<f64>();
        let _ = em_zeta(sigma, 0.0, &trig_params, &ctx).unwrap();
        let _ = em_zeta(sigma, t, &trig_params, &ctx).unwrap();
        let _ = em_zeta(sigma, 2.0 * t, &trig_params, &ctx).unwrap();
    }
    println!("trig 100 samples: {:.2?}", t0.elapsed());

    let h = CertifiedReal::from_rational(1, 10_000_000_000, prec);
    let t0 = Instant::now();
    for j in 0..20u32 {
        let sigma = 1.5 + j as f64 / 19.0;
        let t = 2.0 + 2.0 * j as f64;
        let s0 = CertifiedComplex::from_f64(sigma, t, prec);
        let sp = CertifiedComplex::new(s0.re.add(&h), s0.im.clone());
        let sm = CertifiedComplex::new(s0.re.sub(&h), s0.im.clone());
        let _ = em_zeta_ball(&sp, 3000, prec, None).unwrap();
        let _ = em_zeta_ball(&sm, 3000, prec, None).unwrap();
        let _ = em_zeta_deriv_ball(&s0, 3000, prec, None).unwrap();
    }
    println!("fd block: {:.2?}", t0.elapsed());
}
