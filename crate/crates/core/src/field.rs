//! Exact arithmetic in small finite fields `F_q`, `q = p^k`.
//!
//! Elements are packed as base-`p` integers: the coefficient of `x^i` in
//! the reduced polynomial representative is the `i`-th base-`p` digit.
//! All arithmetic goes through precomputed tables, so every operation is
//! a lookup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 32;

/// Built-in defining polynomials (little-endian coefficients, monic) for the
/// non-prime orders. Each entry is the least monic irreducible polynomial of
/// its degree when polynomials are ordered by `sum c_i p^i`.
const POLY_TABLE: &[(u64, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 0, 1]),
];

/// An element of `F_q`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed code in `0..q`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// One field operation; the second operand is an element or an exponent.
#[derive(Clone, Copy, Debug)]
pub enum FieldOp {
    Add(FieldElement, FieldElement),
    Mul(FieldElement, FieldElement),
    Inv(FieldElement),
    Pow(FieldElement, u64),
}

/// A model of `F_{p^k}` as `F_p[x]/(poly)`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    poly: Vec<u32>,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("poly", &self.poly)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

/// Builds `F_{p^k}` with the built-in defining polynomial.
pub fn field(p: u64, k: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if k == 0 || k > 4 || p.checked_pow(k).is_none_or(|q| q > MAX_FIELD_ORDER) {
        return Err(Error::UnsupportedSize { p, k });
    }
    let poly: Vec<u32> = if k == 1 {
        vec![0, 1]
    } else {
        POLY_TABLE
            .iter()
            .find(|(tp, tk, _)| *tp == p && *tk == k)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(Error::UnsupportedSize { p, k })?
    };
    FieldSpec::with_poly(p as u32, poly)
}

/// Builds the field of order `q`.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, k) = crate::arith::prime_power(q)
        .ok_or_else(|| Error::BadParameters(format!("{q} is not a prime power")))?;
    field(p, k)
}

fn poly_mod(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = inv_prime(m[dm], p);
    while a.len() > dm {
        let c = a.pop().unwrap();
        if c == 0 {
            continue;
        }
        let f = c * lead_inv % p;
        let shift = a.len() - dm;
        for (i, mc) in m[..dm].iter().enumerate() {
            let t = &mut a[shift + i];
            *t = (*t + p - f * mc % p) % p;
        }
    }
    a
}

fn inv_prime(a: u32, p: u32) -> u32 {
    crate::arith::inv_mod(a as u64, p as u64).expect("nonzero residue") as u32
}

/// Whether the monic polynomial `poly` (little-endian) is irreducible over
/// `F_p`, by trial division with every monic polynomial of degree at most
/// half its degree.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = digits(code, p, d);
            f.push(1);
            if poly_mod(poly.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

impl FieldSpec {
    /// Builds the field from an explicit monic irreducible polynomial.
    pub fn with_poly(p: u32, poly: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let k = poly.len() as u32 - 1;
        if poly.last() != Some(&1) || poly.iter().any(|&c| c >= p) {
            return Err(Error::BadParameters("polynomial must be monic and reduced".into()));
        }
        if !is_irreducible(&poly, p) {
            return Err(Error::BadParameters(format!("{poly:?} is reducible over F_{p}")));
        }
        let q = (p as usize).pow(k);
        if q as u64 > MAX_FIELD_ORDER {
            return Err(Error::UnsupportedSize { p: p as u64, k });
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let elems: Vec<Vec<u32>> = (0..q).map(|c| digits(c as u64, p, k as usize)).collect();
        let pack = |v: &[u32]| -> u8 {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) as u8
        };
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = (0..k as usize)
                    .map(|i| (elems[a][i] + elems[b][i]) % p)
                    .collect();
                add[a * q + b] = pack(&s);
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for i in 0..k as usize {
                    for j in 0..k as usize {
                        prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
                    }
                }
                let mut r = poly_mod(prod, &poly, p);
                r.resize(k as usize, 0);
                mul[a * q + b] = pack(&r);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| Error::BadParameters("zero divisor".into()))?
                as u8;
        }
        Ok(FieldSpec {
            p,
            k,
            poly,
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|c| FieldElement(c as u8))
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(|c| FieldElement(c as u8))
    }

    pub fn from_code(&self, code: usize) -> FieldElement {
        assert!(code < self.q, "code {code} out of range for F_{}", self.q);
        FieldElement(code as u8)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u8)
    }

    /// Element from its little-endian coefficient vector.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadParameters(format!(
                "{coeffs:?} is not a reduced element of F_{}",
                self.q
            )));
        }
        let code = coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize);
        Ok(FieldElement(code as u8))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.k as usize)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.code() * self.q + b.code()])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.code()])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.code() * self.q + b.code()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv[a.code()]))
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, op: FieldOp) -> Result<FieldElement> {
        match op {
            FieldOp::Add(a, b) => Ok(self.add(a, b)),
            FieldOp::Mul(a, b) => Ok(self.mul(a, b)),
            FieldOp::Inv(a) => self.inv(a),
            FieldOp::Pow(a, e) => Ok(self.pow(a, e)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The least generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.units()
            .find(|&a| self.mult_order(a) == Some(self.q as u64 - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Additive character into `Z/p`: the constant coefficient.
    /// It is a homomorphism `(F_q, +) -> Z/p` sending `1` to `1`.
    pub fn constant_coeff(&self, a: FieldElement) -> u32 {
        (a.code() % self.p as usize) as u32
    }

    /// Matrix of multiplication by `a` on `F_q` viewed as `F_p^k` in the
    /// power basis; entry `[i][j]` is the `x^i` coefficient of `a * x^j`.
    pub fn mul_matrix(&self, a: FieldElement) -> Vec<Vec<u32>> {
        let k = self.k as usize;
        let mut m = vec![vec![0u32; k]; k];
        for j in 0..k {
            let basis = self.from_code((self.p as usize).pow(j as u32));
            let c = self.coeffs(self.mul(a, basis));
            for i in 0..k {
                m[i][j] = c[i];
            }
        }
        m
    }

    pub fn format(&self, a: FieldElement) -> String {
        if self.k == 1 {
            return a.code().to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "x".to_string(),
                (1, v) => format!("{v}x"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
        let count = (p as u64).pow(k);
        (0..count)
            .map(|code| {
                let mut f = digits(code, p, k as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .unwrap()
    }

    #[test]
    fn builtin_table_is_least_irreducible() {
        for &(p, k, poly) in POLY_TABLE {
            assert_eq!(least_irreducible(p as u32, k), poly, "q = {p}^{k}");
        }
    }

    #[test]
    fn construction_examples() {
        let f2 = field(2, 1).unwrap();
        assert_eq!(f2.poly(), &[0, 1]);
        let f4 = field(2, 2).unwrap();
        assert_eq!(f4.poly(), &[1, 1, 1]);
        assert_eq!(field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(field(2, 5), Err(Error::UnsupportedSize { .. })));
        assert!(matches!(field(7, 2), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn operation_examples() {
        let f2 = field(2, 1).unwrap();
        assert_eq!(f2.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
        let f4 = field(2, 2).unwrap();
        let x = f4.element(&[0, 1]).unwrap();
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        let f5 = field(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f5.apply(FieldOp::Pow(f5.from_int(2), 4)).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn element_roundtrip_and_format() {
        let f9 = field(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.element(&f9.coeffs(a)).unwrap(), a);
        }
        assert_eq!(f9.format(f9.element(&[2, 1]).unwrap()), "x+2");
        assert!(f9.element(&[3]).is_err());
    }
}
