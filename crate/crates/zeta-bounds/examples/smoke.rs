use zeta_bounds::zeta_eval::recip_logt_grid_check;
use zeta_bounds::{PrecisionContext, RoundingPolicy};

fn main() {
    let ctx = PrecisionContext::new(60, RoundingPolicy::Outward).unwrap();
    let t = std::time::Instant::now();
    let rep = recip_logt_grid_check("2.079", 2.0, 500.0, 0.05, &ctx).unwrap();
    println!(
        "grid [2,500] step 0.05: {} nodes, {} refined, pass {}, worst margin {:.3e} at t = {}, {:?}",
        rep.nodes,
        rep.refined,
        rep.pass,
        rep.worst_margin,
        rep.worst_t,
        t.elapsed()
    );
}
