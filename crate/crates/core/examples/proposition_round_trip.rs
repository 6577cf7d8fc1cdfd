//! Plant a witness, map it to an index tuple and a Delta-set membership,
//! then recover a witness from the membership.

use ffdiophantine::algebra::Field;
use ffdiophantine::cli::generate::{plant_witness, PlantParams};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::limsup::{
    prop_backward_check, prop_forward_check, tau0, ForwardParams, TsetMode, TsetParams,
};
use ffdiophantine::rational::{display, int};

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    let (eta, eps) = (int(1), int(1));
    let params = PlantParams {
        m: 1,
        n: 2,
        eta,
        eps,
        horizon: 8,
        floor: -60,
        exact_hit: false,
    };
    let planted = plant_witness(&params, &f, &mut instance_rng(5, "example", 0))?;
    let alpha = &planted.alpha;
    println!(
        "q = ({})",
        alpha
            .q
            .iter()
            .map(|q| q.format(&f))
            .collect::<Vec<_>>()
            .join(", ")
    );

    let tau = tau0(eps, &TsetParams::new(1, 2, eta, TsetMode::Multiplicative)?)? / int(2);
    let fp = ForwardParams {
        horizon: planted.horizon,
        eta,
        eps,
        tau,
        sigma_threshold: 8,
    };
    let fwd = prop_forward_check(&planted.y, &planted.theta, alpha, &fp, &f)?;
    println!("u = {:?}, v = {:?}", fwd.u, fwd.v);
    println!("forward: {:?}", fwd.report.status);
    for d in &fwd.report.details {
        println!("  {d}");
    }

    if let (Some(t), Some(true)) = (&fwd.tuple, fwd.standard.as_ref().map(|m| m.member)) {
        let back = prop_backward_check(&planted.y, &planted.theta, t, alpha, tau, eta, &f)?;
        println!(
            "backward: {:?} with T' = {}, eps' = {}",
            back.report.status,
            display(back.t_prime),
            display(back.eps_prime)
        );
    }
    Ok(())
}
