//! Regenerates the bundled Stieltjes constant table. Run from the crate
//! root; the output lands in data/stieltjes.txt.

use zeta_bounds::numerics::stieltjes::{generate, render_table, GeneratorParams};
use zeta_bounds::CertifiedReal;

fn main() {
    let params = GeneratorParams::default();
    let (values, worst) = generate(&params).expect("generator failed");

    // gamma_0 is the Euler constant; a disagreement here means the
    // generator is broken, not inaccurate.
    let euler = CertifiedReal::euler(params.bits);
    let diff = values[0].sub(&euler);
    assert!(
        diff.contains_f64(0.0),
        "gamma_0 enclosure does not contain the Euler constant"
    );

    // The n!/2^(n+1) envelope holds from n = 1 on (gamma_0 = 0.577... sits
    // above the n = 0 value of 1/2).
    for (n, v) in values.iter().enumerate().skip(1) {
        let cap = factorial_over_pow2(n as u32);
        assert!(
            v.abs().upper_f64() <= cap,
            "gamma_{n} enclosure breaks the n!/2^(n+1) envelope"
        );
    }

    assert!(
        worst <= 1e-80,
        "worst radius {worst:.3e} exceeds the 1e-80 publication bar"
    );

    let text = render_table(&values);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/stieltjes.txt");
    std::fs::write(path, text).expect("cannot write the table");
    println!(
        "wrote {} enclosures to {path}, worst radius {worst:.3e}",
        values.len()
    );
}

fn factorial_over_pow2(n: u32) -> f64 {
    let mut f = 1f64;
    for k in 2..=(n as u64) {
        f *= k as f64;
    }
    f / 2f64.powi(n as i32 + 1)
}
