//! B(T) for a continued-fraction series, computed both by the kernel method
//! and by brute force.

use ffdiophantine::algebra::{Field, LaurentSeries, MatrixF};
use ffdiophantine::approx::{best_error, Method};
use ffdiophantine::cli::generate::{generate_series, SeriesSpec};
use ffdiophantine::cli::rng::instance_rng;

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    let spec = SeriesSpec::parse("cf(1, 2, 1, 3, 1, 1, 2)")?;
    let y = generate_series(&spec, &f, -40, &mut instance_rng(0, "example", 0))?;
    println!("Y = {}", y.format(&f));
    let y = MatrixF::from_rows(vec![vec![y]])?;
    let theta = [LaurentSeries::zero()];

    println!("{:>3} {:>6} {:>6}  q", "T", "kernel", "brute");
    for t in 1..=10 {
        let k = best_error(&y, &theta, t, Method::Kernel, &f)?;
        let b = best_error(&y, &theta, t, Method::Brute, &f)?;
        println!(
            "{t:>3} {:>6} {:>6}  {}",
            k.b.to_string(),
            b.b.to_string(),
            k.witness.q[0].format(&f)
        );
    }
    Ok(())
}
