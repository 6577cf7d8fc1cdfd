//! Plant Y, theta and a witness with prod |Yq + p + theta| < e^{-(eta+eps)T}.

use ffdiophantine::algebra::{matvec_affine, Field};
use ffdiophantine::cli::generate::{plant_witness, PlantParams};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::limsup::witness_extract_uv;
use ffdiophantine::rational::rat;

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(3)?;
    let params = PlantParams {
        m: 2,
        n: 1,
        eta: rat(3, 2),
        eps: rat(1, 2),
        horizon: 6,
        floor: -50,
        exact_hit: false,
    };
    let planted = plant_witness(&params, &f, &mut instance_rng(4, "example", 0))?;
    for (i, row) in planted.y.format(&f).iter().enumerate() {
        println!("Y_{} = {}", i + 1, row.join(" | "));
    }
    let errs = matvec_affine(
        &planted.y,
        &planted.alpha.q,
        &planted.alpha.p,
        &planted.theta,
        &f,
    )?;
    for (j, e) in errs.iter().enumerate() {
        println!("deg(Y_{0} q + p_{0} + theta_{0}) = {1}", j + 1, e.degree());
    }
    let (u, v) = witness_extract_uv(
        &planted.y,
        &planted.theta,
        &planted.alpha,
        planted.horizon,
        params.eta,
        params.eps,
        &f,
    )?;
    println!("u = {u:?}, v = {v:?}");
    Ok(())
}
