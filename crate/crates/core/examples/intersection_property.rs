//! Two witnesses in the same Delta set differ by a homogeneous member.

use ffdiophantine::algebra::Field;
use ffdiophantine::cli::generate::plant_pair;
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::limsup::intersection_check;
use ffdiophantine::rational::int;

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    for i in 0..5 {
        let pair = plant_pair(
            1,
            2,
            int(1),
            int(1),
            -60,
            &f,
            &mut instance_rng(9, "example", i),
        )?;
        let c = intersection_check(
            &pair.y,
            &pair.theta,
            &pair.t,
            &pair.alpha,
            &pair.alpha2,
            pair.tau,
            &f,
        )?;
        println!(
            "t = {:?}: {:?} {:?}, difference degree {} vs {}",
            pair.t.t,
            c.outcome,
            c.report.status,
            c.report.lhs.as_deref().unwrap_or("-"),
            c.report.rhs.as_deref().unwrap_or("-")
        );
    }
    Ok(())
}
