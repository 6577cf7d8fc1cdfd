//! Enumerate the index set for m = 1, n = 2 and audit the sigma bounds.

use ffdiophantine::limsup::{audit_grid, tau0, tset_enumerate, xi_and_t, TsetMode, TsetParams};
use ffdiophantine::rational::{display, int};

fn main() -> ffdiophantine::Result<()> {
    let params = TsetParams::new(1, 2, int(1), TsetMode::Multiplicative)?;
    let tau = tau0(int(1), &params)?;
    println!("tau0 = {}", display(tau));

    let t = xi_and_t(&[5], &[1, 2], &params)?.expect("sigma(u) >= eta sigma(v)");
    let prov = t.provenance.as_ref().unwrap();
    println!(
        "u = (5), v = (1, 2): xi = {}, t = {:?}, sigma = {}",
        display(prov.xi),
        t.t,
        t.sigma
    );

    let e = tset_enumerate(&params, 6, tau)?;
    for (sigma, count) in &e.level_counts {
        println!("sigma = {sigma}: {count} tuples");
    }

    let a = audit_grid(&params, 20)?;
    println!(
        "grid sigma(u)+sigma(v) <= 20: {} pairs, weighted bound violated by {}, with slack by {}",
        a.pairs, a.weighted, a.weighted_with_slack
    );
    Ok(())
}
