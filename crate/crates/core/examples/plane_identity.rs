//! Delta-set membership agrees with membership in a scaled plane
//! neighbourhood, sample by sample.

use ffdiophantine::algebra::{parse_polynomial, Field, LaurentSeries};
use ffdiophantine::approx::Witness;
use ffdiophantine::cli::generate::sample_plane_matrix;
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::limsup::{plane_identity_check, IndexTuple};
use ffdiophantine::rational::rat;

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    let t = IndexTuple::new(vec![0, 4]);
    let alpha = Witness::new(
        vec![parse_polynomial("0", &f)?],
        vec![parse_polynomial("X", &f)?],
    );
    let theta = vec![LaurentSeries::zero()];
    let mut rng = instance_rng(2, "example", 0);

    let (mut agree, mut members) = (0, 0);
    for k in 0..40 {
        let tops = [-4 + (k % 4) as i64];
        let y = sample_plane_matrix(&alpha, &theta, Some(&tops[..]), -40, &f, &mut rng)?;
        let c = plane_identity_check(&y, &theta, &t, &alpha, rat(1, 2), &f)?;
        agree += c.report.holds() as usize;
        members += c.via_delta as usize;
    }
    println!("40 samples: {agree} agree, {members} members");
    Ok(())
}
