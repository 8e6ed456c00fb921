//! The acceptance gate: nine headline checks, one test and one
//! `[PASS]`/`[FAIL]` line each. Everything here goes through the public
//! API at 60 working digits, with the tolerances and time budgets the
//! checks are specified at.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zeta_bounds::bounds::{
    kernels, phi2_with, phi_family_with, plp_strip_bound, rescale_loglog, KParams,
};
use zeta_bounds::numerics::{PrecisionContext, RoundingPolicy, StieltjesTable};
use zeta_bounds::optimizer::{certified_row, reproduce_table, FixtureSet, TableId};
use zeta_bounds::zeta_eval::{
    em_zeta_ball, em_zeta_deriv_ball, recip_logt_grid_check, sup_modulus_on_segment, SupTarget,
};
use zeta_bounds::{em_zeta, CertifiedComplex, CertifiedReal, EMParams};

const PREC: u32 = 216;

fn ctx60() -> PrecisionContext {
    PrecisionContext::new(60, RoundingPolicy::Outward).unwrap()
}

fn b(s: &str) -> CertifiedReal {
    CertifiedReal::from_decimal(s, PREC).unwrap()
}

fn u(n: u64) -> CertifiedReal {
    CertifiedReal::from_u64(n, PREC)
}

macro_rules! ensure {
    ($n:expr, $cond:expr, $($msg:tt)*) => {
        if !$cond {
            panic!("[FAIL] criterion {}: {}", $n, format!($($msg)*));
        }
    };
}

#[test]
fn criterion_1_strip_table() {
    let start = Instant::now();
    let ctx = ctx60();
    let set = FixtureSet::bundled().unwrap();
    let reports = reproduce_table(TableId::Q, &set, &ctx, false, 0).unwrap();
    ensure!(1, reports.len() == 38, "expected 38 rows, got {}", reports.len());
    let mut max_rel = 0.0f64;
    for r in &reports {
        ensure!(
            1,
            r.rel_err <= 1e-2,
            "row W={} off by {:.2e} (published {})",
            r.key,
            r.rel_err,
            r.published
        );
        max_rel = max_rel.max(r.rel_err);
    }
    for (key, published) in [("10", 71.220), ("13", 52.306), ("5.56", 170199.0)] {
        let r = reports.iter().find(|r| r.key == key).unwrap();
        ensure!(1, r.published == published, "row W={key} published {} in the fixture", r.published);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure!(1, elapsed < 10.0, "took {elapsed:.1} s, budget 10 s");
    println!(
        "[PASS] criterion 1: 38 strip-table rows within 1e-2 (max rel err {max_rel:.1e}, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_2_conditional_table() {
    let start = Instant::now();
    let ctx = ctx60();
    let set = FixtureSet::bundled().unwrap();
    let reports = reproduce_table(TableId::QRh, &set, &ctx, false, 0).unwrap();
    ensure!(2, reports.len() == 11, "expected 11 rows, got {}", reports.len());
    let mut max_rel = 0.0f64;
    let mut min_margin = f64::INFINITY;
    for r in &reports {
        ensure!(
            2,
            r.rel_err <= 1e-2,
            "row sigma0={} off by {:.2e}",
            r.key,
            r.rel_err
        );
        max_rel = max_rel.max(r.rel_err);
        for c in &r.conditions {
            ensure!(
                2,
                c.satisfied && c.margin.lower_f64() > 0.0,
                "row sigma0={} condition {} margin {:.3e}",
                r.key,
                c.id,
                c.margin.lower_f64()
            );
            min_margin = min_margin.min(c.margin.lower_f64());
        }
    }
    for (key, published) in [("0.8", 23.759), ("1", 8.101)] {
        let r = reports.iter().find(|r| r.key == key).unwrap();
        ensure!(2, r.published == published, "row sigma0={key} published {}", r.published);
    }
    let t0 = set.find(TableId::QRh, "0.8").unwrap().param("t0");
    ensure!(2, t0 == Some("14"), "sigma0=0.8 row pins t0={t0:?}");
    let elapsed = start.elapsed().as_secs_f64();
    ensure!(2, elapsed < 5.0, "took {elapsed:.1} s, budget 5 s");
    println!(
        "[PASS] criterion 2: 11 conditional rows within 1e-2, all margins positive (smallest {min_margin:.2e}, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_3_reciprocal_tables() {
    let start = Instant::now();
    let ctx = ctx60();
    let set = FixtureSet::bundled().unwrap();
    let mut max_rel = 0.0f64;
    for (id, anchor_published) in [(TableId::Y, 1719.0), (TableId::Yprime, 4904.0)] {
        let reports = reproduce_table(id, &set, &ctx, false, 0).unwrap();
        for r in &reports {
            let tol = if r.key == "13" { 1e-3 } else { 1e-2 };
            ensure!(
                3,
                r.rel_err <= tol,
                "{id}:{} off by {:.2e} (tolerance {tol:.0e})",
                r.key,
                r.rel_err
            );
            max_rel = max_rel.max(r.rel_err);
            if r.key == "13" {
                ensure!(3, r.published == anchor_published, "{id}:13 published {}", r.published);
            }
        }
    }
    // The one-line constants on sigma >= 1, at the tighter tolerance.
    let consts = reproduce_table(TableId::Consts, &set, &ctx, false, 0).unwrap();
    for (key, published) in [
        ("y0_one_line", 30.812),
        ("yprime0_one_line", 87.725),
        ("q_one", 24.303),
    ] {
        let r = consts.iter().find(|r| r.key == key).unwrap();
        ensure!(3, r.published == published, "{key} published {}", r.published);
        ensure!(3, r.rel_err <= 1e-3, "{key} off by {:.2e}", r.rel_err);
        max_rel = max_rel.max(r.rel_err);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure!(3, elapsed < 5.0, "took {elapsed:.1} s, budget 5 s");
    println!(
        "[PASS] criterion 3: reciprocal tables and one-line constants reproduced (max rel err {max_rel:.1e}, {elapsed:.2} s)"
    );
}

#[test]
fn criterion_4_additive_strip_constants() {
    let ctx = ctx60();
    let set = FixtureSet::bundled().unwrap();
    for (key, published) in [("3", 2.1173), ("1e3", 0.2254)] {
        let row = set.find(TableId::B1, key).unwrap();
        ensure!(4, row.published_f64().unwrap() == published, "row {key}");
        let bound = certified_row(row, &set, &ctx).unwrap();
        let rel = (bound.value.mid_f64() - published).abs() / published;
        ensure!(4, rel <= 1e-3, "row t0={key} off by {rel:.2e}");
    }
    let eta = set.find(TableId::B1, "3").unwrap().param("eta");
    ensure!(4, eta == Some("2/3"), "t0=3 row pins eta={eta:?}");
    println!("[PASS] criterion 4: additive strip constants at t0=3 and t0=1e3 within 1e-3");
}

#[test]
fn criterion_5_slow_growth_rescaling() {
    let ee = CertifiedReal::e(PREC).exp();
    let v = rescale_loglog(&b("7.686"), &ee, &b("1e6")).unwrap();
    let err = v.sub(&b("40.44")).abs().upper_f64();
    ensure!(5, err <= 0.01, "rescaled constant off by {err:.3}");
    println!("[PASS] criterion 5: log log rescaling of 7.686 to height 1e6 gives 40.44 within 0.01");
}

#[test]
fn criterion_6_small_height_certification() {
    let start = Instant::now();
    let ctx = ctx60();

    // Supremum of |zeta| on the central segment, certified against the
    // claimed ceiling.
    let sup = sup_modulus_on_segment(0.5, -3.0, 3.0, SupTarget::Zeta, true, Some(1.461), &ctx)
        .unwrap();
    ensure!(6, sup.certified, "supremum run fell back to sampling");
    ensure!(
        6,
        sup.enclosure.upper_f64() <= 1.461,
        "sup enclosure [{:.6}, {:.6}] exceeds 1.461",
        sup.enclosure.lower_f64(),
        sup.enclosure.upper_f64()
    );

    // 8 / log 500 <= 1.288 in ball arithmetic.
    let ratio = u(8).div(&u(500).ln());
    ensure!(6, ratio.upper_f64() <= 1.288, "8/log 500 = {}", ratio.upper_f64());

    // The reciprocal bound on the 1-line, node by node.
    let grid = recip_logt_grid_check("2.079", 2.0, 500.0, 0.05, &ctx).unwrap();
    ensure!(6, grid.pass, "grid check failed at t = {}", grid.worst_t);
    ensure!(6, grid.nodes == 9961, "expected 9961 nodes, got {}", grid.nodes);
    ensure!(
        6,
        grid.worst_margin > 0.0,
        "worst margin {:.2e} at t = {}",
        grid.worst_margin,
        grid.worst_t
    );

    let elapsed = start.elapsed().as_secs_f64();
    ensure!(6, elapsed < 300.0, "took {elapsed:.1} s, budget 300 s");
    println!(
        "[PASS] criterion 6: sup enclosure [{:.6}, {:.6}] <= 1.461, 8/log 500 <= 1.288, {} grid nodes pass (worst margin {:.1e} at t = {}, {elapsed:.1} s)",
        sup.enclosure.lower_f64(),
        sup.enclosure.upper_f64(),
        grid.nodes,
        grid.worst_margin,
        grid.worst_t
    );
}

#[test]
fn criterion_7_laurent_ratio_positivity() {
    let ctx = ctx60();
    let table = StieltjesTable::bundled(&ctx).unwrap();
    let one = u(1);

    // phi0 >= 0 on a 200-point grid over (1, sigma_k] for each pair.
    for (sk, k) in [("1.45", 1u32), ("2", 3), ("2.51", 10)] {
        let sk_ball = b(sk);
        let span = sk_ball.sub(&one);
        for i in 1..=200u64 {
            let sigma = one.add(&span.mul(&u(i)).div(&u(200)));
            let (p0, _) = phi_family_with(&sigma, k, &table).unwrap();
            ensure!(
                7,
                p0.lower_f64() >= 0.0,
                "phi0({:.4}, {k}) lower bound {:.2e}",
                sigma.mid_f64(),
                p0.lower_f64()
            );
        }
    }

    // phi1(sigma, 3) < 1 up to 1.83.
    let span = b("0.83");
    for i in 1..=200u64 {
        let sigma = one.add(&span.mul(&u(i)).div(&u(200)));
        let (_, p1) = phi_family_with(&sigma, 3, &table).unwrap();
        ensure!(
            7,
            p1.upper_f64() < 1.0,
            "phi1({:.4}, 3) upper bound {}",
            sigma.mid_f64(),
            p1.upper_f64()
        );
    }

    // On [1.48, 1.5] the ratio stays under the 0.852 floor, so the floored
    // value is exactly the floor.
    let floor = b("0.852");
    let lo = b("1.48");
    let span = b("0.02");
    for i in 0..=100u64 {
        let sigma0 = lo.add(&span.mul(&u(i)).div(&u(100)));
        let (_, p1) = phi_family_with(&sigma0, 10, &table).unwrap();
        ensure!(
            7,
            p1.upper_f64() <= 0.852,
            "phi1({:.4}, 10) = {} exceeds the floor",
            sigma0.mid_f64(),
            p1.upper_f64()
        );
        let v = phi2_with(&sigma0, &table).unwrap();
        ensure!(
            7,
            v.sub(&floor).abs().upper_f64() <= 1e-30,
            "floored value at {:.4} strays from 0.852",
            sigma0.mid_f64()
        );
    }
    println!(
        "[PASS] criterion 7: phi0 >= 0 on all three grids, phi1(.,3) < 1 through 1.83, 0.852 floor engaged on [1.48, 1.5]"
    );
}

#[test]
fn criterion_8_optimizer_no_regression() {
    let start = Instant::now();
    let ctx = ctx60();
    let set = FixtureSet::bundled().unwrap();
    let tables = [
        TableId::Q,
        TableId::QRh,
        TableId::Y,
        TableId::Yprime,
        TableId::B1,
        TableId::Consts,
    ];
    let mut rows = 0usize;
    for id in tables {
        let first = reproduce_table(id, &set, &ctx, true, 0).unwrap();
        let second = reproduce_table(id, &set, &ctx, true, 0).unwrap();
        for (a, b) in first.iter().zip(&second) {
            let oa = a.optimized.as_ref().unwrap();
            let ob = b.optimized.as_ref().unwrap();
            ensure!(8, oa.feasible, "{id}:{} best point infeasible", a.key);
            ensure!(
                8,
                oa.value.upper_f64() <= a.published * 1.01,
                "{id}:{} optimized to {} vs published {}",
                a.key,
                oa.value.upper_f64(),
                a.published
            );
            ensure!(
                8,
                oa.params == ob.params && oa.value.mid_f64() == ob.value.mid_f64(),
                "{id}:{} not deterministic across runs",
                a.key
            );
            rows += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "[PASS] criterion 8: optimizer matches or beats all {rows} published rows, bit-identical across two runs ({elapsed:.1} s)"
    );
}

#[test]
fn criterion_9_property_suites() {
    let ctx = ctx60();
    let prec = ctx.bits();

    // Interval soundness under precision doubling: the refined enclosure
    // overlaps the coarse one and is tighter.
    let set = FixtureSet::bundled().unwrap();
    let row = set.find(TableId::Q, "13").unwrap();
    let coarse = certified_row(row, &set, &ctx).unwrap().value;
    let fine = certified_row(row, &set, &ctx.doubled()).unwrap().value;
    let overlap = coarse.lower_f64() <= fine.upper_f64() && fine.lower_f64() <= coarse.upper_f64();
    ensure!(9, overlap, "doubled-precision strip constant drifted apart");
    ensure!(9, fine.rad_f64() <= coarse.rad_f64(), "doubling grew the radius");
    let zc = em_zeta(0.7, 12.3, &EMParams::default(), &ctx).unwrap();
    let zf = em_zeta(0.7, 12.3, &EMParams::default(), &ctx.doubled()).unwrap();
    for (c, f) in [(&zc.re, &zf.re), (&zc.im, &zf.im)] {
        ensure!(
            9,
            c.lower_f64() <= f.upper_f64() && f.lower_f64() <= c.upper_f64(),
            "doubled-precision zeta value drifted apart"
        );
        ensure!(9, f.rad_f64() <= c.rad_f64(), "doubling grew a zeta radius");
    }

    // Pointwise strip bound decreases in sigma wherever its onset margin
    // is positive.
    let zeta15 = b("2.612375348685488343348567567924071630571");
    let half = CertifiedReal::from_rational(1, 2, PREC);
    let kp = KParams::new(
        b("0.618"),
        CertifiedReal::from_rational(1, 6, PREC),
        u(1),
        zeta15.clone(),
        b("1.31"),
        half.clone(),
    )
    .unwrap();
    let t = u(10_000);
    for t0 in [16u64, 30, 100] {
        let t0_ball = u(t0);
        let onset = kernels::t0_onset_margin(&half, &t0_ball, &zeta15);
        ensure!(9, onset.lower_f64() > 0.0, "onset margin at t0 = {t0} not positive");
        let mut prev: Option<CertifiedReal> = None;
        for j in 0..=10u64 {
            let sigma = half.add(&u(j).div(&u(10)));
            let v = plp_strip_bound(&kp, &sigma, &t, &t0_ball).unwrap().value;
            if let Some(p) = prev {
                ensure!(
                    9,
                    v.upper_f64() < p.lower_f64(),
                    "strip bound not decreasing at sigma = {:.2}, t0 = {t0}",
                    sigma.mid_f64()
                );
            }
            prev = Some(v);
        }
    }

    // Nonnegativity product: zeta(s)^3 |zeta(s+it)|^4 |zeta(s+2it)| >= 1
    // on 100 sampled points. The slack is 1e-12, so radii around 1e-20
    // are ample; the default target would force hundred-thousand-term
    // sums at t near 1000 for precision the check cannot use.
    let trig_params = EMParams {
        target_rad: Some(1e-20),
        ..EMParams::default()
    };
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    for _ in 0..100 {
        let sigma = 2.0 - rng.gen::<f64>();
        let t = 3.0 + 497.0 * rng.gen::<f64>();
        let z0 = em_zeta(sigma, 0.0, &trig_params, &ctx).unwrap();
        let z1 = em_zeta(sigma, t, &trig_params, &ctx).unwrap();
        let z2 = em_zeta(sigma, 2.0 * t, &trig_params, &ctx).unwrap();
        let product = z0.abs().powi(3).mul(&z1.abs().powi(4)).mul(&z2.abs());
        ensure!(
            9,
            product.lower_f64() >= 1.0 - 1e-12,
            "trig product {} at sigma = {sigma:.4}, t = {t:.2}",
            product.lower_f64()
        );
    }

    // Lavrik envelope on every stored generalized Euler constant past the
    // zeroth: |gamma_n| <= n! / 2^{n+1}.
    let table = StieltjesTable::bundled(&ctx).unwrap();
    ensure!(9, table.n_max() >= 20, "expected at least 21 stored constants");
    let mut fact: i64 = 1;
    for n in 1..=table.n_max() {
        fact *= n as i64;
        let envelope = CertifiedReal::from_rational(fact, 1u64 << (n + 1), prec);
        let gamma = table.get(n).unwrap().abs();
        ensure!(
            9,
            gamma.upper_f64() <= envelope.lower_f64(),
            "gamma_{n} = {} outside the envelope {}",
            gamma.upper_f64(),
            envelope.lower_f64()
        );
    }

    // Derivative evaluator against central differences, h = 1e-10, with
    // the third-derivative Taylor envelope (|zeta'''| < 100 on the sample
    // strip sigma >= 1.5).
    let h = CertifiedReal::from_rational(1, 10_000_000_000, prec);
    let inv_2h = CertifiedReal::from_u64(5_000_000_000, prec);
    let envelope = 100.0 * 1e-20 / 6.0;
    for j in 0..20u32 {
        let sigma = 1.5 + j as f64 / 19.0;
        let t = 2.0 + 2.0 * j as f64;
        let s0 = CertifiedComplex::from_f64(sigma, t, prec);
        let sp = CertifiedComplex::new(s0.re.add(&h), s0.im.clone());
        let sm = CertifiedComplex::new(s0.re.sub(&h), s0.im.clone());
        let zp = em_zeta_ball(&sp, 3000, prec, None).unwrap();
        let zm = em_zeta_ball(&sm, 3000, prec, None).unwrap();
        let d = em_zeta_deriv_ball(&s0, 3000, prec, None).unwrap();
        let fd = zp.sub(&zm).mul_real(&inv_2h);
        for (a, bb) in [(&fd.re, &d.re), (&fd.im, &d.im)] {
            let gap = a.sub(bb).abs().upper_f64();
            ensure!(
                9,
                gap <= envelope,
                "derivative mismatch {gap:.2e} at sigma = {sigma:.3}, t = {t}"
            );
        }
    }

    println!(
        "[PASS] criterion 9: precision doubling sound, strip bound monotone, trig product >= 1 on 100 samples, Lavrik envelope holds, derivative matches central differences at 20 points"
    );
}
