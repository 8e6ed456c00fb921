//! Frozen-value and consistency checks of the complex zeta evaluator.

use zeta_bounds::zeta_eval::{
    em_zeta_ball, recip_logt_grid_check, sup_modulus_on_segment, SupTarget,
};
use zeta_bounds::{
    em_zeta, em_zeta_deriv, CertifiedComplex, CertifiedReal, EMParams, Error, PrecisionContext,
    RoundingPolicy,
};

fn ctx60() -> PrecisionContext {
    PrecisionContext::new(60, RoundingPolicy::Outward).unwrap()
}

fn close(ball: &CertifiedReal, want: &str, tol: f64) -> bool {
    let lit = CertifiedReal::from_decimal(want, 300).unwrap();
    ball.sub(&lit).abs().upper_f64() <= tol
}

#[test]
fn zeta_two_on_the_real_axis() {
    let ctx = ctx60();
    let z = em_zeta(2.0, 0.0, &EMParams::default(), &ctx).unwrap();
    assert!(close(&z.re, "1.644934066848226436472415166646025189219", 1e-37));
    assert!(z.im.contains_f64(0.0));
    assert!(z.im.rad_f64() < 1e-25);
}

#[test]
fn zeta_at_half_plus_three_i() {
    let ctx = ctx60();
    let z = em_zeta(0.5, 3.0, &EMParams::default(), &ctx).unwrap();
    assert!(close(&z.re, "0.532736670974232883923384121681", 1e-27));
    assert!(close(&z.im, "-0.078896513425833382656205086906", 1e-27));
}

#[test]
fn zeta_at_one_plus_two_i() {
    let ctx = ctx60();
    let z = em_zeta(1.0, 2.0, &EMParams::default(), &ctx).unwrap();
    assert!(close(&z.re, "0.598165569762381736703456849174", 1e-27));
    assert!(close(&z.im, "-0.351854745217845290496538596797", 1e-27));
    assert!(close(
        &z.abs(),
        "0.69397680838877432587964879815628842",
        1e-27
    ));
}

#[test]
fn zeta_derivative_frozen_values() {
    let ctx = ctx60();
    let d2 = em_zeta_deriv(2.0, 0.0, &EMParams::default(), &ctx).unwrap();
    assert!(close(&d2.re, "-0.9375482543158437537025740945678649778979", 1e-36));
    assert!(d2.im.contains_f64(0.0));
    let d3 = em_zeta_deriv(3.0, 0.0, &EMParams::default(), &ctx).unwrap();
    assert!(close(&d3.re, "-0.1981262428856368533306818215032857968755", 1e-36));
}

#[test]
fn pole_is_refused() {
    let ctx = ctx60();
    assert!(matches!(
        em_zeta(1.0, 0.0, &EMParams::default(), &ctx),
        Err(Error::Pole)
    ));
    assert!(matches!(
        em_zeta_deriv(1.0, 0.0, &EMParams::default(), &ctx),
        Err(Error::Pole)
    ));
}

#[test]
fn conjugate_symmetry() {
    let ctx = ctx60();
    let em = EMParams::default();
    let up = em_zeta(1.2, 7.7, &em, &ctx).unwrap();
    let down = em_zeta(1.2, -7.7, &em, &ctx).unwrap();
    assert!(up.re.sub(&down.re).contains_f64(0.0));
    assert!(up.im.add(&down.im).contains_f64(0.0));
}

#[test]
fn cutoff_consistency() {
    let ctx = ctx60();
    let a = em_zeta(
        0.8,
        14.1,
        &EMParams {
            n_terms: Some(60),
            target_rad: None,
        },
        &ctx,
    )
    .unwrap();
    let b = em_zeta(
        0.8,
        14.1,
        &EMParams {
            n_terms: Some(600),
            target_rad: None,
        },
        &ctx,
    )
    .unwrap();
    assert!(a.re.sub(&b.re).contains_f64(0.0));
    assert!(a.im.sub(&b.im).contains_f64(0.0));
    assert!(b.re.rad_f64() <= a.re.rad_f64());
}

#[test]
fn target_radius_is_respected() {
    let ctx = ctx60();
    let z = em_zeta(
        1.5,
        30.0,
        &EMParams {
            n_terms: None,
            target_rad: Some(1e-20),
        },
        &ctx,
    )
    .unwrap();
    assert!(z.re.rad_f64() <= 1e-20);
    assert!(z.im.rad_f64() <= 1e-20);
}

/// Central differences along t at step h approximate i zeta'(s) with a
/// Taylor error of at most h^2/6 sup|zeta'''|; for sigma >= 2 that sup is
/// generously under 10. Agreement must hold within the combined radii
/// plus that envelope.
#[test]
fn derivative_matches_finite_differences() {
    let ctx = ctx60();
    let prec = ctx.bits();
    let h = CertifiedReal::from_rational(1, 10_000_000_000, prec); // 1e-10
    let two_h = h.mul_u32(2);
    let taylor = 10.0 * 1e-20 / 6.0;
    let n_terms = 3000u64;
    for i in 0..20 {
        let sigma = 2.0 + 1.5 * (i as f64) / 19.0;
        let t = 1.3 * i as f64;
        let sig = CertifiedReal::from_f64(sigma, prec);
        let tb = CertifiedReal::from_f64(t, prec);
        let plus = em_zeta_ball(
            &CertifiedComplex::new(sig.clone(), tb.add(&h)),
            n_terms,
            prec,
            None,
        )
        .unwrap();
        let minus = em_zeta_ball(
            &CertifiedComplex::new(sig.clone(), tb.sub(&h)),
            n_terms,
            prec,
            None,
        )
        .unwrap();
        let fd_re = plus.re.sub(&minus.re).div(&two_h);
        let fd_im = plus.im.sub(&minus.im).div(&two_h);
        let d = em_zeta_deriv(
            sigma,
            t,
            &EMParams {
                n_terms: Some(n_terms),
                target_rad: None,
            },
            &ctx,
        )
        .unwrap();
        // d/dt zeta(sigma + it) = i zeta'(sigma + it). The difference ball
        // has |mid| + radius as its absolute upper bound, so midpoints
        // agree within combined radii + envelope exactly when that upper
        // bound stays under twice the radii plus the envelope.
        let want_re = d.im.neg();
        let want_im = d.re;
        for (fd, want, tag) in [(&fd_re, &want_re, "re"), (&fd_im, &want_im, "im")] {
            let gap = fd.sub(want).abs().upper_f64();
            let radii = fd.rad_f64() + want.rad_f64();
            assert!(
                gap <= 2.0 * radii + taylor,
                "{tag} mismatch at ({sigma}, {t}): gap {gap:.3e}, radii {radii:.3e}"
            );
        }
    }
}

#[test]
fn small_sup_bracket() {
    let ctx = ctx60();
    // |zeta(2 + it)| on t in [0, 1]: decreasing from zeta(2); the sup is
    // zeta(2) itself at the endpoint.
    let sup = sup_modulus_on_segment(2.0, 0.0, 1.0, SupTarget::Zeta, true, None, &ctx).unwrap();
    assert!(sup.certified);
    assert!(sup.enclosure.contains_f64(1.6449340668482264));
    assert!(sup.peak_t < 0.05);
}

#[test]
fn small_grid_check_passes() {
    let ctx = ctx60();
    let rep = recip_logt_grid_check("2.079", 2.0, 20.0, 0.05, &ctx).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.nodes, 361);
    assert!(rep.worst_margin > 0.0);
}

#[test]
fn grid_check_rejects_bad_steps() {
    let ctx = ctx60();
    assert!(recip_logt_grid_check("2.079", 2.0, 20.0, 0.07, &ctx).is_err());
    assert!(recip_logt_grid_check("2.079", 0.5, 20.0, 0.05, &ctx).is_err());
}
