//! Exponent proxies for a random series and a lacunary one.

use ffdiophantine::algebra::{Field, LaurentSeries, MatrixF};
use ffdiophantine::cli::generate::{generate_series, random_series, SeriesSpec};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::exponents::{estimate, profile, ProfileKind};

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(2)?;
    let mut rng = instance_rng(1, "example", 0);
    let random = random_series(&f, -80, &mut rng);
    let lacunary = generate_series(&SeriesSpec::Lacunary(3), &f, -120, &mut rng)?;
    let theta = [LaurentSeries::zero()];

    for (name, y, t_max) in [("random", random, 36), ("lacunary(3)", lacunary, 28)] {
        let y = MatrixF::from_rows(vec![vec![y]])?;
        let p = profile(&y, &theta, t_max, ProfileKind::Standard, &f)?;
        let e = estimate(&p)?;
        let bs: Vec<String> = p.entries.iter().map(|e| e.b.to_string()).collect();
        println!("{name}: B = [{}]", bs.join(", "));
        println!(
            "  omega ~ {}  omega_hat ~ {}  over T in [{}, {}]",
            e.omega_proxy, e.omega_hat_proxy, e.window.0, e.window.1
        );
    }
    Ok(())
}
