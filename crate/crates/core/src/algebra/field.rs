//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)` via base-p packing of the
//! polynomial coefficients (low degree first): `enc(c) = sum c_i * p^i`.
//! The encoding is canonical, so element equality is integer equality and
//! serialized matrices are bit-exact across implementations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),
    #[error("reduction polynomial is reducible over GF({p})")]
    ReduciblePolynomial { p: u64 },
    #[error("extension degree m = {m} requires a monic degree-{m} reduction polynomial")]
    BadPolynomial { m: u32 },
    #[error("field order q = {0} exceeds the supported limit 2^16")]
    FieldTooLarge(u64),
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {value} out of range for field of order {q}")]
    ElementOutOfRange { value: u64, q: u64 },
}

const MAX_Q: u64 = 1 << 16;

/// A concrete finite field GF(p^m) with a fixed reduction polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    /// Coefficients of the reduction polynomial, low-to-high, length m+1.
    /// Empty when m == 1.
    poly: Vec<u64>,
    q: u64,
}

impl FieldSpec {
    /// Builds a field, validating primality of `p` and irreducibility of the
    /// reduction polynomial by exhaustive trial division (fields here are tiny).
    pub fn new(p: u64, m: u32, poly: Option<&[u64]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeP(p));
        }
        if m == 0 {
            return Err(FieldError::BadPolynomial { m });
        }
        let q = (p as u128).checked_pow(m).filter(|&q| q <= MAX_Q as u128);
        let q = q.ok_or(FieldError::FieldTooLarge(u64::MAX))? as u64;
        let poly = if m == 1 {
            Vec::new()
        } else {
            let raw = poly.ok_or(FieldError::BadPolynomial { m })?;
            if raw.len() != m as usize + 1 || raw[m as usize] % p != 1 {
                return Err(FieldError::BadPolynomial { m });
            }
            let reduced: Vec<u64> = raw.iter().map(|&c| c % p).collect();
            if !is_irreducible(&reduced, p) {
                return Err(FieldError::ReduciblePolynomial { p });
            }
            reduced
        };
        Ok(FieldSpec { p, m, poly, q })
    }

    /// GF(2), the smallest field.
    pub fn gf2() -> Self {
        FieldSpec::new(2, 1, None).unwrap()
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        FieldSpec::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn reduction_poly(&self) -> Option<&[u64]> {
        if self.m == 1 {
            None
        } else {
            Some(&self.poly)
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        value < self.q
    }

    fn to_digits(&self, value: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.m as usize];
        let mut v = value;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn from_digits(&self, digits: &[u64]) -> u64 {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * self.p + d % self.p;
        }
        v
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            (a + b) % self.p
        } else {
            let da = self.to_digits(a);
            let db = self.to_digits(b);
            let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
            self.from_digits(&sum)
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        if self.m == 1 {
            (self.p - a) % self.p
        } else {
            let da = self.to_digits(a);
            let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
            self.from_digits(&neg)
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            a * b % self.p
        } else {
            let da = self.to_digits(a);
            let db = self.to_digits(b);
            let mut prod = vec![0u64; 2 * self.m as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % self.p;
                }
            }
            self.reduce(&mut prod);
            self.from_digits(&prod[..self.m as usize])
        }
    }

    // In-place reduction of a coefficient vector modulo the reduction polynomial.
    fn reduce(&self, coeffs: &mut [u64]) {
        let m = self.m as usize;
        for i in (m..coeffs.len()).rev() {
            let c = coeffs[i];
            if c == 0 {
                continue;
            }
            coeffs[i] = 0;
            // x^i = -tail(poly) * x^(i-m), tail = poly[0..m]
            for (j, &pc) in self.poly[..m].iter().enumerate() {
                let sub = c * pc % self.p;
                coeffs[i - m + j] = (coeffs[i - m + j] + self.p - sub) % self.p;
            }
        }
    }

    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        // a^(q-2) = a^(-1) in GF(q)
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

/// A field element paired with its field, for callers that want
/// mismatch checking at the value level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    pub value: u64,
    pub field: FieldSpec,
}

impl FieldElem {
    pub fn new(value: u64, field: &FieldSpec) -> Result<Self, FieldError> {
        if !field.contains(value) {
            return Err(FieldError::ElementOutOfRange {
                value,
                q: field.order(),
            });
        }
        Ok(FieldElem {
            value,
            field: field.clone(),
        })
    }

    fn check(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        FieldElem::new(self.field.add(self.value, other.value), &self.field)
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        FieldElem::new(self.field.mul(self.value, other.value), &self.field)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            value: self.field.neg(self.value),
            field: self.field.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        Ok(FieldElem {
            value: self.field.inv(self.value)?,
            field: self.field.clone(),
        })
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exhaustive irreducibility test: trial division by every monic polynomial
/// of degree 1..=deg/2 over GF(p).
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if poly[deg] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // enumerate monic polynomials of degree d: p^d choices of lower coefficients
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut divisor = vec![0u64; d + 1];
            let mut v = idx;
            for c in divisor.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            divisor[d] = 1;
            if poly_divides(&divisor, poly, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(divisor: &[u64], poly: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = divisor.len() - 1;
    // divisor is monic, so plain long division works
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (j, &dc) in divisor.iter().enumerate() {
                let sub = lead * dc % p;
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_add() {
        let f = FieldSpec::gf2();
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NonPrimeP(4)));
    }

    #[test]
    fn gf13_inverse() {
        let f = FieldSpec::prime(13).unwrap();
        assert_eq!(f.inv(5).unwrap(), 8);
        assert_eq!(f.mul(5, 8), 1);
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn gf8_reduction() {
        // GF(8) with x^3 + x + 1: x * x^2 = x^3 = x + 1
        let f = FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let x = 2; // enc(x) = 2
        let x2 = 4; // enc(x^2) = 4
        assert_eq!(f.mul(x, x2), 3); // enc(x + 1) = 3
    }

    #[test]
    fn reducible_poly_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::ReduciblePolynomial { p: 2 })
        );
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        let fields = [
            FieldSpec::gf2(),
            FieldSpec::prime(3).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(),
            FieldSpec::new(2, 4, Some(&[1, 1, 0, 0, 1])).unwrap(),
            FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap(),
        ];
        for f in &fields {
            let q = f.order();
            assert!(q <= 16 || f.m() == 1);
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn elem_mismatch() {
        let a = FieldElem::new(1, &FieldSpec::gf2()).unwrap();
        let b = FieldElem::new(1, &FieldSpec::prime(3).unwrap()).unwrap();
        assert_eq!(a.add(&b), Err(FieldError::FieldMismatch));
    }
}
