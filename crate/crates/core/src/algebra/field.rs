//! The finite field F_q, q = p^d, with table-driven arithmetic.
//!
//! Elements are stored as an index `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`
//! where `(c_0, ..., c_{d-1})` are the coordinates in the power basis
//! `1, x, ..., x^{d-1}` modulo the defining polynomial. Index 0 is zero and
//! index 1 is one. Index order is the tie-break order used by searches.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order supported by the lookup tables.
pub const MAX_ORDER: u32 = 1024;

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> u32 {
        u32::from(self.0)
    }
}

/// Characteristic, degree and (for d > 1) the monic irreducible modulus over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub d: u32,
    /// Modulus coefficients over F_p, lowest degree first, monic of degree d.
    /// Empty when d = 1.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            d: 1,
            modulus: Vec::new(),
        }
    }

    /// Built-in moduli for F_4, F_8 and F_9.
    pub fn builtin(p: u32, d: u32) -> Option<Self> {
        let modulus = match (p, d) {
            (_, 1) => return Some(FieldSpec::prime(p)),
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 2) => vec![1, 0, 1],
            _ => return None,
        };
        Some(FieldSpec { p, d, modulus })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.d)
    }

    /// Parses `p=2` or `p=2,d=2,modulus=X^2+X+1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = None;
        let mut d = None;
        let mut modulus = None;
        let mut offset = 0;
        for part in s.split(',') {
            let pos = offset;
            offset += part.len() + 1;
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(pos, format!("expected key=value, got {part:?}")))?;
            let vpos = pos + key.len() + 1;
            match key.trim() {
                "p" => {
                    p = Some(value.trim().parse::<u32>().map_err(|_| {
                        Error::parse(vpos, format!("invalid characteristic {value:?}"))
                    })?)
                }
                "d" => {
                    d = Some(
                        value
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(vpos, format!("invalid degree {value:?}")))?,
                    )
                }
                "modulus" => modulus = Some((vpos, value.to_string())),
                other => return Err(Error::parse(pos, format!("unknown key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::parse(0, "missing p"))?;
        let d = d.unwrap_or(1);
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let spec = match modulus {
            Some((vpos, text)) => {
                let coeffs =
                    crate::algebra::parse::parse_prime_poly(&text, p).map_err(|e| e.shift(vpos))?;
                FieldSpec {
                    p,
                    d,
                    modulus: coeffs,
                }
            }
            None => FieldSpec::builtin(p, d).ok_or_else(|| {
                Error::InvalidField(format!(
                    "no built-in modulus for p={p}, d={d}; supply modulus="
                ))
            })?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidField(format!("{} is not prime", self.p)));
        }
        if self.order() > MAX_ORDER || self.d > 10 {
            return Err(Error::InvalidField(format!(
                "field order {}^{} exceeds {MAX_ORDER}",
                self.p, self.d
            )));
        }
        if self.d == 1 {
            return Ok(());
        }
        let m = &self.modulus;
        if m.len() != self.d as usize + 1 || m.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField(format!(
                "modulus must have degree {} with coefficients below {}",
                self.d, self.p
            )));
        }
        if m[self.d as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible_mod_p(m, self.p) {
            return Err(Error::InvalidField("modulus is not irreducible".into()));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            return write!(f, "p={}", self.p);
        }
        write!(f, "p={},d={},modulus=", self.p, self.d)?;
        let mut first = true;
        for (k, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, k) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (c, 1) => write!(f, "{c}*X")?,
                (1, k) => write!(f, "X^{k}")?,
                (c, k) => write!(f, "{c}*X^{k}")?,
            }
        }
        Ok(())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// Remainder of `a` modulo `b` over F_p; both lowest degree first.
fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.iter().rposition(|&c| c != 0).expect("nonzero divisor");
    let inv_lead = inv_mod_p(b[db], p);
    loop {
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() <= db {
            return r;
        }
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] * inv_lead) % p;
        for (k, &bc) in b.iter().enumerate().take(db + 1) {
            let idx = k + shift;
            r[idx] = (r[idx] + p - (factor * bc) % p) % p;
        }
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible_mod_p(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(k + 1);
            let mut x = idx;
            for _ in 0..k {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if rem_mod_p(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Finite field with precomputed addition, multiplication and inverse tables.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Arc<Field>> {
        spec.validate()?;
        let p = spec.p;
        let d = spec.d as usize;
        let q = spec.order();
        let qs = q as usize;
        let coords = |idx: u32| -> Vec<u32> {
            let mut x = idx;
            (0..d)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        };
        let index = |c: &[u32]| -> u16 {
            let mut idx = 0u32;
            for &v in c.iter().rev() {
                idx = idx * p + v;
            }
            idx as u16
        };
        let all: Vec<Vec<u32>> = (0..q).map(coords).collect();

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = all[a]
                    .iter()
                    .zip(&all[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = index(&s);
                let mut prod = vec![0u32; 2 * d - 1];
                for (i, &x) in all[a].iter().enumerate() {
                    for (j, &y) in all[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if d == 1 {
                    prod
                } else {
                    rem_mod_p(&prod, &spec.modulus, p)
                };
                let mut full = vec![0u32; d];
                full[..r.len()].copy_from_slice(&r);
                mul[a * qs + b] = index(&full);
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or_else(|| Error::InvalidField("element without inverse".into()))?
                    as u16;
            }
        }
        Ok(Arc::new(Field {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
        }))
    }

    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv[a.0 as usize]))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|i| FieldElement(i as u16))
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::InvalidInput(format!(
                "element index {index} out of range for F_{}",
                self.q
            )));
        }
        Ok(FieldElement(index as u16))
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        let p = self.spec.p;
        if coords.len() > self.spec.d as usize || coords.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "coordinates {coords:?} invalid for F_{}",
                self.q
            )));
        }
        let mut idx = 0u32;
        for &c in coords.iter().rev() {
            idx = idx * p + c;
        }
        Ok(FieldElement(idx as u16))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let p = self.spec.p;
        let mut x = u32::from(a.0);
        (0..self.spec.d)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    /// Literal form used by the series syntax: `c` or `[c0,c1,...]`.
    pub fn format_element(&self, a: FieldElement) -> String {
        if self.spec.d == 1 {
            a.0.to_string()
        } else {
            let c: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }
}
