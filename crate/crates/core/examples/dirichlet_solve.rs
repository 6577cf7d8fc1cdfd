//! Solve |Y_i q + p_i| < e^{-t_i}, |q_j| <= e^{t_{m+j}} for a 2x1 matrix
//! over F_3 and re-verify the witness.

use ffdiophantine::algebra::{parse_series, Field, MatrixF};
use ffdiophantine::approx::{
    dirichlet_solve, verify_dirichlet, DirichletMode, DirichletOutcome, DirichletTarget,
};

fn main() -> ffdiophantine::Result<()> {
    let f = Field::prime(3)?;
    let y = MatrixF::from_rows(vec![
        vec![parse_series("X^-1 + 2*X^-2 + X^-5 + X^-9 + O(X^-30)", &f)?],
        vec![parse_series(
            "2*X^-1 + X^-3 + 2*X^-4 + X^-8 + O(X^-30)",
            &f,
        )?],
    ])?;
    let target = DirichletTarget::new(vec![2, 1, 3], 2, 1)?;

    for mode in [DirichletMode::Strict, DirichletMode::Relaxed] {
        match dirichlet_solve(&y, &target, mode, &f)? {
            DirichletOutcome::Solved {
                witness,
                errors,
                strict,
            } => {
                println!("{mode:?}: q = {}", witness.q[0].format(&f));
                for (i, (p, e)) in witness.p.iter().zip(&errors).enumerate() {
                    println!(
                        "  p_{} = {:<12} deg(Y_{} q + p_{}) = {e}",
                        i + 1,
                        p.format(&f),
                        i + 1,
                        i + 1
                    );
                }
                println!("  meets the strict bound: {strict}");
                println!(
                    "  re-verified: {}",
                    verify_dirichlet(&y, &target, mode, &witness, &f)?
                );
            }
            DirichletOutcome::NoSolution => println!("{mode:?}: no solution"),
        }
    }
    Ok(())
}
