//! Laurent series in X^-1 over F_2 and F_4: parsing, products, inverses and
//! precision tracking.

use ffdiophantine::algebra::{parse_polynomial, parse_series, Field, FieldSpec, LaurentSeries};

fn main() -> ffdiophantine::Result<()> {
    let f2 = Field::prime(2)?;

    let g = parse_polynomial("X + 1", &f2)?;
    let inv = LaurentSeries::from_poly(&g).inverse(-8, &f2)?;
    println!("1/(X+1)            = {}", inv.format(&f2));
    println!("(X+1) * 1/(X+1)    = {}", inv.mul_poly(&g, &f2).format(&f2));

    let a = parse_series("X^-1 + X^-3 + O(X^-6)", &f2)?;
    let b = parse_series("X^2 + X^-2", &f2)?;
    let prod = a.mul(&b, &f2);
    println!(
        "a * b              = {}  (floor {:?})",
        prod.format(&f2),
        prod.floor()
    );
    println!("deg(a * b)         = {}", prod.degree());

    let (poly, frac) = prod.split_parts();
    println!("polynomial part    = {}", poly.format(&f2));
    println!("fractional part    = {}", frac.format(&f2));

    let f4 = Field::new(FieldSpec::parse("p=2,d=2,modulus=X^2+X+1")?)?;
    let s = parse_series("X^-1 + [0,1]*X^-2", &f4)?;
    println!("over F_4: s^2      = {}", s.mul(&s, &f4).format(&f4));
    Ok(())
}
