//! Dirichlet bound, multiplicative dominance and the Bugeaud-Zhang and
//! Dyson diagnostics on a random 1x2 system.

use ffdiophantine::algebra::Field;
use ffdiophantine::cli::generate::{random_matrix, random_series};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::exponents::{profile, ProfileKind};
use ffdiophantine::rational::rat;
use ffdiophantine::report::CheckReport;
use ffdiophantine::transference::{
    check_bz, check_chain, check_dirichlet_bound, check_dyson, check_mult_dominance,
};

fn show(r: &CheckReport) {
    println!(
        "{:<18} {:?} {:?}  lhs={} rhs={}",
        r.name,
        r.severity,
        r.status,
        r.lhs.as_deref().unwrap_or("-"),
        r.rhs.as_deref().unwrap_or("-")
    );
}

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    let mut rng = instance_rng(3, "example", 0);
    let y = random_matrix(1, 2, &f, -80, &mut rng);
    let theta = vec![random_series(&f, -80, &mut rng)];
    let zero = vec![ffdiophantine::algebra::LaurentSeries::zero()];

    show(&check_dirichlet_bound(&profile(
        &y,
        &zero,
        10,
        ProfileKind::Standard,
        &f,
    )?)?);
    let std = profile(&y, &theta, 10, ProfileKind::Standard, &f)?;
    let mult = profile(&y, &theta, 10, ProfileKind::Multiplicative, &f)?;
    show(&check_mult_dominance(&std, &mult)?);
    show(&check_bz(&y, &theta, 24, rat(3, 10), &f)?);
    show(&check_dyson(&y, 24, rat(1, 4), &f)?);
    show(&check_chain(&y, &theta, 12, rat(3, 10), &f)?);
    Ok(())
}
