//! Series literal syntax: terms `c*X^k` joined by `+`.
//!
//! ```text
//! series := term ('+' term)* ('+' order)? | order
//! term   := coeff ('*' xpow)? | xpow
//! order  := 'O(' xpow ')'
//! coeff  := digits | '[' digits (',' digits)* ']'
//! xpow   := 'X' ('^' '-'? digits)?
//! ```
//!
//! Extension-field coefficients are basis tuples `[c0,c1,...]`. A trailing
//! `O(X^k)` marks every digit at or below `X^k` as unknown. Errors carry the
//! byte position of the offending token.

use super::field::{Field, FieldElement};
use super::poly::Polynomial;
use super::series::LaurentSeries;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::parse(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i64>()
            .map_err(|_| Error::parse(start, format!("number out of range: {text}")))
    }
}

type RawTerm = (usize, Vec<u32>, i64);
/// Position and exponent `k` of a trailing `O(X^k)`.
type OrderMarker = (usize, i64);

fn xpow(lx: &mut Lexer) -> Result<i64> {
    if !(lx.eat(b'X') || lx.eat(b'x')) {
        return Err(Error::parse(lx.pos, "expected X"));
    }
    if lx.eat(b'^') {
        lx.number()
    } else {
        Ok(1)
    }
}

/// Raw terms `(position, coefficient coordinates, exponent)` and the
/// position and exponent of an `O(X^k)` marker, if any.
fn parse_terms(s: &str) -> Result<(Vec<RawTerm>, Option<OrderMarker>)> {
    let mut lx = Lexer::new(s);
    let mut out = Vec::new();
    let mut order = None;
    if lx.peek().is_none() {
        return Err(Error::parse(0, "empty series literal"));
    }
    loop {
        let term_pos = {
            lx.skip_ws();
            lx.pos
        };
        if lx.eat(b'O') {
            if !lx.eat(b'(') {
                return Err(Error::parse(lx.pos, "expected '(' after O"));
            }
            let k = xpow(&mut lx)?;
            if !lx.eat(b')') {
                return Err(Error::parse(lx.pos, "expected ')'"));
            }
            order = Some((term_pos, k));
            if lx.peek().is_some() {
                return Err(Error::parse(lx.pos, "O(X^k) must be the last term"));
            }
            break;
        }
        let coeff = match lx.peek() {
            Some(b'[') => {
                lx.pos += 1;
                let mut cs = Vec::new();
                loop {
                    let pos = lx.pos;
                    let v = lx.number()?;
                    if v < 0 {
                        return Err(Error::parse(pos, "negative coefficient"));
                    }
                    cs.push(v as u32);
                    if lx.eat(b']') {
                        break;
                    }
                    if !lx.eat(b',') {
                        return Err(Error::parse(lx.pos, "expected ',' or ']'"));
                    }
                }
                Some(cs)
            }
            Some(b) if b.is_ascii_digit() => {
                let pos = lx.pos;
                let v = lx.number()?;
                if v < 0 {
                    return Err(Error::parse(pos, "negative coefficient"));
                }
                Some(vec![v as u32])
            }
            Some(b'X') | Some(b'x') => None,
            Some(_) => return Err(Error::parse(lx.pos, "expected a coefficient or X")),
            None => return Err(Error::parse(lx.pos, "expected a term")),
        };
        let has_x = match coeff {
            None => true,
            Some(_) => lx.eat(b'*'),
        };
        let exp = if has_x { xpow(&mut lx)? } else { 0 };
        out.push((term_pos, coeff.unwrap_or_else(|| vec![1]), exp));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(_) => return Err(Error::parse(lx.pos, "expected '+' or end of input")),
        }
    }
    Ok((out, order))
}

fn resolve(f: &Field, pos: usize, coords: &[u32]) -> Result<FieldElement> {
    f.from_coords(coords).map_err(|_| {
        Error::parse(
            pos,
            format!(
                "coefficient {coords:?} is not an element of F_{}",
                f.order()
            ),
        )
    })
}

/// Parses a series literal such as `X^-1 + X^-3`, exact unless it ends in `O(X^k)`.
pub fn parse_series(s: &str, f: &Field) -> Result<LaurentSeries> {
    let (raw, order) = parse_terms(s)?;
    if let Some((_, k)) = order {
        if let Some((pos, _, e)) = raw.iter().find(|t| t.2 <= k) {
            return Err(Error::parse(
                *pos,
                format!("term X^{e} lies inside O(X^{k})"),
            ));
        }
    }
    let terms = raw
        .into_iter()
        .map(|(pos, c, e)| Ok((e, resolve(f, pos, &c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeries::from_terms(
        &terms,
        order.map(|(_, k)| k + 1),
        f,
    ))
}

fn exact_terms(s: &str, what: &str) -> Result<Vec<RawTerm>> {
    match parse_terms(s)? {
        (_, Some((pos, _))) => Err(Error::parse(
            pos,
            format!("O(X^k) is not allowed in a {what}"),
        )),
        (terms, None) => Ok(terms),
    }
}

/// Parses a polynomial literal (no negative exponents).
pub fn parse_polynomial(s: &str, f: &Field) -> Result<Polynomial> {
    let terms = exact_terms(s, "polynomial")?;
    let mut coeffs = Vec::new();
    for (pos, c, e) in terms {
        if e < 0 {
            return Err(Error::parse(pos, "negative exponent in a polynomial"));
        }
        let c = resolve(f, pos, &c)?;
        let e = e as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, FieldElement::ZERO);
        }
        coeffs[e] = f.add(coeffs[e], c);
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Polynomial over the prime field F_p as raw coefficients (used for moduli).
pub(crate) fn parse_prime_poly(s: &str, p: u32) -> Result<Vec<u32>> {
    let mut coeffs: Vec<u32> = Vec::new();
    for (pos, c, e) in exact_terms(s, "modulus")? {
        if e < 0 {
            return Err(Error::parse(pos, "negative exponent in modulus"));
        }
        if c.len() != 1 || c[0] >= p {
            return Err(Error::parse(pos, format!("coefficient must lie in 0..{p}")));
        }
        let e = e as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = (coeffs[e] + c[0]) % p;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn parses_basic_literals() {
        let f = Field::prime(3).unwrap();
        let s = parse_series("X^-1 + 2*X^-3", &f).unwrap();
        assert_eq!(s.top(), Some(-1));
        assert_eq!(s.digit(-3), Some(FieldElement(2)));
        assert!(s.is_exact());
        assert_eq!(s.format(&f), "X^-1 + 2*X^-3");
        let p = parse_polynomial("X^3 + 2*X + 1", &f).unwrap();
        assert_eq!(p.format(&f), "X^3 + 2*X + 1");
        let c = parse_series("2", &f).unwrap();
        assert_eq!(c.top(), Some(0));
    }

    #[test]
    fn repeated_exponents_accumulate() {
        let f = Field::prime(2).unwrap();
        let s = parse_series("X^-2 + X^-2 + X", &f).unwrap();
        assert_eq!(s.format(&f), "X");
    }

    #[test]
    fn extension_coefficients() {
        let f = Field::new(FieldSpec::builtin(2, 2).unwrap()).unwrap();
        let s = parse_series("[0,1]*X^-1 + [1,1]*X^-2", &f).unwrap();
        assert_eq!(s.format(&f), "[0,1]*X^-1 + [1,1]*X^-2");
    }

    #[test]
    fn reports_positions() {
        let f = Field::prime(2).unwrap();
        assert_eq!(
            parse_series("X^-1 + 3*X", &f),
            Err(Error::Parse {
                pos: 7,
                msg: "coefficient [3] is not an element of F_2".into()
            })
        );
        assert!(matches!(
            parse_series("X^-1 + ", &f),
            Err(Error::Parse { pos: 7, .. })
        ));
        assert!(matches!(
            parse_series("X^-1 X", &f),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_series("X^", &f),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("X^-1", &f),
            Err(Error::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn order_marker_sets_the_floor() {
        let f = Field::prime(2).unwrap();
        let s = parse_series("X^-1 + X^-3 + O(X^-6)", &f).unwrap();
        assert_eq!(s.floor(), Some(-5));
        assert_eq!(s.format(&f), "X^-1 + X^-3 + O(X^-6)");
        let z = parse_series("O(X^-4)", &f).unwrap();
        assert_eq!(z, LaurentSeries::zero_to(-3));
        assert!(matches!(
            parse_series("X^-5 + O(X^-4)", &f),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_series("O(X^-4) + X", &f),
            Err(Error::Parse { pos: 8, .. })
        ));
        assert!(matches!(
            parse_polynomial("X + O(X^-2)", &f),
            Err(Error::Parse { pos: 4, .. })
        ));
    }

    #[test]
    fn format_round_trips() {
        let f = Field::prime(3).unwrap();
        let s = parse_series("2*X^2 + X^-1 + 2*X^-7", &f).unwrap();
        let inv = s.inverse(-12, &f).unwrap();
        assert_eq!(parse_series(&inv.format(&f), &f).unwrap(), inv);
    }
}
